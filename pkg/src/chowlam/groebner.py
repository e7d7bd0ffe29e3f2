"""Buchberger's algorithm with Gebauer-Moeller pair criteria.

Internally a polynomial is a dict from *order keys* to ``mpq``.  Keys are
linear in exponent vectors, so a monomial product is a componentwise sum of
keys and the leading term is simply ``max(poly)``.  Divisibility tests run on
raw exponent vectors.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from operator import add, le, sub

from .polyengine import (
    BlockOrder,
    MonomialOrder,
    Polynomial,
    VarTable,
    degrevlex,
    from_json_obj,
    order_from_descriptor,
    ONE,
    to_json_obj,
)


class BudgetExceeded(RuntimeError):
    """A Groebner computation hit its resource cap (not a mathematical failure)."""


class NotZeroDimensional(ValueError):
    pass


@dataclass
class Budget:
    """Caps on a single Groebner computation; ``None`` disables a cap."""

    max_basis: int | None = 20000
    max_reductions: int | None = 50_000_000
    max_seconds: float | None = None
    reductions: int = field(default=0, compare=False)
    started: float = field(default_factory=time.monotonic, compare=False)

    def fresh(self) -> "Budget":
        return Budget(self.max_basis, self.max_reductions, self.max_seconds)

    def charge(self, steps: int):
        self.reductions += steps
        if self.max_reductions is not None and self.reductions > self.max_reductions:
            raise BudgetExceeded(f"more than {self.max_reductions} reduction steps")
        if self.max_seconds is not None and time.monotonic() - self.started > self.max_seconds:
            raise BudgetExceeded(f"exceeded {self.max_seconds} s")

    def check_basis(self, size: int):
        if self.max_basis is not None and size > self.max_basis:
            raise BudgetExceeded(f"basis grew beyond {self.max_basis} elements")


class Ideal:
    """A finite generating list over one :class:`VarTable`."""

    def __init__(self, generators, vars: VarTable | None = None):
        gens = list(generators)
        if vars is None:
            if not gens:
                raise ValueError("empty ideal needs an explicit table")
            vars = gens[0].vars
        for g in gens:
            if g.vars != vars:
                raise ValueError("ideal generators must share a table")
        self.vars = vars
        self.generators = gens

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"

    def nonzero(self):
        return [g for g in self.generators if g.terms]

    def to_json_obj(self, order: MonomialOrder | None = None) -> dict:
        order = order or degrevlex(len(self.vars))
        return {
            "vars": list(self.vars.names),
            "polys": [to_json_obj(g) for g in self.generators],
            "order": order.descriptor(self.vars),
        }

    @classmethod
    def from_json_obj(cls, obj: dict):
        table = VarTable(obj["vars"])
        gens = [from_json_obj(p).to_table(table) for p in obj["polys"]]
        order = order_from_descriptor(obj.get("order", {"kind": "degrevlex"}), table)
        return cls(gens, table), order

    def to_json(self, order=None) -> str:
        return json.dumps(self.to_json_obj(order))


def _gens(gens) -> list[Polynomial]:
    if isinstance(gens, Ideal):
        return gens.generators
    return list(gens)


class _Elt:
    __slots__ = ("lm_key", "lm_exps", "tail", "deg")

    def __init__(self, poly: dict, exps):
        lm = max(poly)
        self.lm_key = lm
        self.lm_exps = exps(lm)
        self.deg = sum(self.lm_exps)
        # poly is monic; tail sorted descending for reproducible reduction
        self.tail = sorted(((k, c) for k, c in poly.items() if k != lm), reverse=True)

    def as_dict(self):
        d = {k: c for k, c in self.tail}
        d[self.lm_key] = ONE
        return d


def _monic(poly: dict) -> dict:
    lc = poly[max(poly)]
    if lc == 1:
        return poly
    inv = 1 / lc
    return {k: c * inv for k, c in poly.items()}


def _reduce(f: dict, elts, exps, budget: Budget | None, full: bool = True) -> dict:
    """Remainder of ``f`` (consumed) on division by ``elts``."""
    r = {}
    steps = 0
    lms = [(e.lm_exps, e.lm_key, e.tail, e.deg) for e in elts]
    while f:
        m = max(f)
        c = f.pop(m)
        ex = exps(m)
        d = sum(ex)
        for ge, gk, tail, gd in lms:
            if gd <= d and all(map(le, ge, ex)):
                q = tuple(map(sub, m, gk))
                get = f.get
                for tk, tc in tail:
                    k = tuple(map(add, tk, q))
                    v = get(k)
                    if v is None:
                        f[k] = -c * tc
                    else:
                        v -= c * tc
                        if v:
                            f[k] = v
                        else:
                            del f[k]
                steps += 1 + len(tail)
                break
        else:
            r[m] = c
            if not full:
                r.update(f)
                break
        if steps > 20000 and budget is not None:
            budget.charge(steps)
            steps = 0
    if budget is not None:
        budget.charge(steps)
    return r


class GroebnerBasis:
    """A Groebner basis together with its order and table."""

    def __init__(self, generators, order: MonomialOrder, vars: VarTable, reduced: bool = True):
        self.generators = list(generators)
        self.order = order
        self.vars = vars
        self.reduced = reduced
        self._elts = None

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.generators]})"

    def _internal(self):
        if self._elts is None:
            key = self.order.key
            elts = []
            for g in self.generators:
                d = {key(e): c for e, c in g.terms.items()}
                elts.append(_Elt(_monic(d), self.order.exps))
            self._elts = elts
        return self._elts

    def leading_monomials(self):
        return [e.lm_exps for e in self._internal()]

    def is_unit(self) -> bool:
        return any(not any(e) for e in self.leading_monomials())

    def normal_form(self, f: Polynomial, budget: Budget | None = None) -> Polynomial:
        return normal_form(f, self, budget)

    def contains(self, f: Polynomial) -> bool:
        return not normal_form(f, self).terms

    def dimension(self) -> int:
        return dimension(self)

    def zero_dim_degree(self) -> int:
        return zero_dim_degree(self)


def _to_internal(polys, order):
    key = order.key
    out = []
    for p in polys:
        if p.terms:
            out.append({key(e): c for e, c in p.terms.items()})
    return out


def _from_internal(d: dict, order, vars) -> Polynomial:
    exps = order.exps
    return Polynomial(vars, {exps(k): c for k, c in d.items()}, _trusted=True)


def _lcm(a, b):
    return tuple(map(max, a, b))


def buchberger(gens, order: MonomialOrder | None = None, budget: Budget | None = None,
               strategy: str = "normal") -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are processed by the normal strategy (smallest LCM degree first,
    ties broken by the LCM exponent vector and then by index), or by sugar
    degree when ``strategy="sugar"``.  Product and chain criteria are applied
    through the Gebauer-Moeller update.
    """
    polys = _gens(gens)
    if not polys:
        raise ValueError("buchberger needs at least one generator")
    vars = polys[0].vars
    if isinstance(gens, Ideal):
        vars = gens.vars
    n = len(vars)
    order = order or degrevlex(n)
    budget = budget.fresh() if budget is not None else Budget()
    key, exps = order.key, order.exps

    items = [_monic(d) for d in _to_internal(polys, order)]
    if not items:
        return GroebnerBasis([Polynomial.zero(vars)], order, vars)

    # reduce inputs against each other once, smallest leading monomial first
    items.sort(key=lambda d: max(d))
    f: list[_Elt] = []
    sugar: list[int] = []
    G: list[int] = []
    B: list[tuple] = []

    def spoly_deg(d):
        return max(sum(exps(k)) for k in d)

    def update(ih):
        mh = f[ih].lm_exps
        C = list(G)
        D = []
        while C:
            ig = C.pop(0)
            mg = f[ig].lm_exps
            lhg = _lcm(mh, mg)
            disjoint = tuple(map(add, mh, mg)) == lhg
            if disjoint:
                D.append((ih, ig))
                continue

            def lcm_divides(ip):
                m = _lcm(mh, f[ip].lm_exps)
                return all(map(le, m, lhg))

            if not any(lcm_divides(ip) for ip in C) and not any(lcm_divides(p[1]) for p in D):
                D.append((ih, ig))
        E = []
        for ih_, ig in D:
            mg = f[ig].lm_exps
            if tuple(map(add, mh, mg)) != _lcm(mh, mg):
                E.append(_make_pair(ih_, ig))
        newB = []
        for pair in B:
            i1, i2 = pair[-2], pair[-1]
            m1, m2 = f[i1].lm_exps, f[i2].lm_exps
            l12 = _lcm(m1, m2)
            if not all(map(le, mh, l12)) or _lcm(m1, mh) == l12 or _lcm(m2, mh) == l12:
                newB.append(pair)
        newB.extend(E)
        newG = [ig for ig in G if not all(map(le, mh, f[ig].lm_exps))]
        newG.append(ih)
        return newG, newB

    def _make_pair(i, j):
        i, j = min(i, j), max(i, j)
        L = _lcm(f[i].lm_exps, f[j].lm_exps)
        if strategy == "sugar":
            s = max(sugar[i] - f[i].deg, sugar[j] - f[j].deg) + sum(L)
            return (s, sum(L), key(L), i, j)
        return (sum(L), L, i, j)

    def add_elt(d, s):
        nonlocal G, B
        f.append(_Elt(d, exps))
        sugar.append(s)
        budget.check_basis(len(f))
        G, B = update(len(f) - 1)

    for d in items:
        h = _reduce(dict(d), [f[i] for i in G], exps, budget)
        if h:
            h = _monic(h)
            if not any(exps(max(h))):
                return GroebnerBasis([Polynomial.one(vars)], order, vars)
            add_elt(h, spoly_deg(d))

    while B:
        best = min(B)
        B.remove(best)
        i, j = best[-2], best[-1]
        fi, fj = f[i], f[j]
        L = _lcm(fi.lm_exps, fj.lm_exps)
        kL = key(L)
        qi = tuple(map(sub, kL, fi.lm_key))
        qj = tuple(map(sub, kL, fj.lm_key))
        s = {}
        for k, c in fi.tail:
            s[tuple(map(add, k, qi))] = c
        for k, c in fj.tail:
            kk = tuple(map(add, k, qj))
            v = s.get(kk)
            if v is None:
                s[kk] = -c
            else:
                v -= c
                if v:
                    s[kk] = v
                else:
                    del s[kk]
        if not s:
            continue
        ssugar = max(sugar[i] - fi.deg, sugar[j] - fj.deg) + sum(L)
        h = _reduce(s, [f[g] for g in G], exps, budget)
        if h:
            h = _monic(h)
            if not any(exps(max(h))):
                return GroebnerBasis([Polynomial.one(vars)], order, vars)
            add_elt(h, ssugar)

    basis = _interreduce([f[g] for g in G], exps, budget)
    polys_out = [_from_internal(d, order, vars) for d in basis]
    return GroebnerBasis(polys_out, order, vars, reduced=True)


def _interreduce(elts, exps, budget):
    elts = sorted(elts, key=lambda e: e.lm_key)
    kept = []
    for e in elts:
        if not any(all(map(le, k.lm_exps, e.lm_exps)) for k in kept):
            kept.append(e)
    out = []
    for i, e in enumerate(kept):
        others = kept[:i] + kept[i + 1:]
        tail = {k: c for k, c in e.tail}
        red = _reduce(tail, others, exps, budget) if tail else {}
        red[e.lm_key] = ONE
        out.append(red)
    out.sort(key=lambda d: max(d), reverse=True)
    return out


def normal_form(f: Polynomial, gb: GroebnerBasis, budget: Budget | None = None) -> Polynomial:
    """Fully reduced remainder of ``f`` modulo ``gb``."""
    if f.vars != gb.vars:
        f = f.to_table(gb.vars)
    if not f.terms:
        return f
    key = gb.order.key
    d = {key(e): c for e, c in f.terms.items()}
    r = _reduce(d, gb._internal(), gb.order.exps, budget)
    return _from_internal(r, gb.order, gb.vars)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    ef, cf = f.leading_term(order)
    eg, cg = g.leading_term(order)
    L = _lcm(ef, eg)
    mf = Polynomial.monomial(f.vars, tuple(map(sub, L, ef)), ONE / cf)
    mg = Polynomial.monomial(f.vars, tuple(map(sub, L, eg)), ONE / cg)
    return mf * f - mg * g


def is_groebner(gb: GroebnerBasis) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    gens = [g for g in gb.generators if g.terms]
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            s = s_polynomial(gens[i], gens[j], gb.order)
            if normal_form(s, gb).terms:
                return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    lms = gb.leading_monomials()
    for i, g in enumerate(gb.generators):
        _, lc = g.leading_term(gb.order)
        if lc != 1:
            return False
        for e in g.terms:
            for j, m in enumerate(lms):
                if j != i and all(map(le, m, e)):
                    return False
    return True


# ------------------------------------------------------------ elimination


def elimination_order(vars: VarTable, elim_vars, inner: str = "degrevlex") -> BlockOrder:
    idx = [vars.index[v] for v in elim_vars]
    return BlockOrder(len(vars), [idx], inner)


def eliminate(gens, elim_vars, budget: Budget | None = None, target: VarTable | None = None,
              strategy: str = "normal") -> Ideal:
    """Generators of ``I`` intersected with the subring free of ``elim_vars``.

    The result lives over ``target`` if given (it must contain every
    surviving variable), else over the input table.
    """
    polys = _gens(gens)
    vars = gens.vars if isinstance(gens, Ideal) else polys[0].vars
    elim_vars = [v for v in elim_vars]
    order = elimination_order(vars, elim_vars)
    gb = buchberger(Ideal(polys, vars), order, budget, strategy=strategy)
    elim_idx = [vars.index[v] for v in elim_vars]
    out = []
    for g in gb.generators:
        if not g.terms:
            continue
        if any(e[i] for e in g.terms for i in elim_idx):
            continue
        out.append(g)
    table = target or vars
    out = [g.to_table(table) for g in out]
    return Ideal(out, table)


_TVAR = "_sat_t"


def saturate(gens, f: Polynomial, budget: Budget | None = None) -> Ideal:
    """Generators of ``I : f^oo`` via the Rabinowitsch trick."""
    polys = _gens(gens)
    vars = gens.vars if isinstance(gens, Ideal) else polys[0].vars
    if not f.terms:
        raise ValueError("cannot saturate by the zero polynomial")
    name = _TVAR
    while name in vars:
        name += "_"
    ext = VarTable((name,) + vars.names)
    t = Polynomial.var(ext, name)
    lifted = [p.to_table(ext) for p in polys]
    lifted.append(Polynomial.one(ext) - t * f.to_table(ext))
    res = eliminate(Ideal(lifted, ext), [name], budget)
    return Ideal([g.to_table(vars) if g.terms else Polynomial.zero(vars) for g in res.generators] or
                 [Polynomial.zero(vars)], vars)


# ---------------------------------------------------------- dimensions


def _min_hitting_set(supports, best=None):
    """Size of a smallest set meeting every support (branch and bound)."""
    supports = [s for s in supports]
    if not supports:
        return 0
    if best is not None and best <= 0:
        return best
    s = min(supports, key=len)
    result = None
    for v in sorted(s):
        rest = [t for t in supports if v not in t]
        bound = None if result is None else result - 1
        if best is not None:
            bound = best - 1 if bound is None else min(bound, best - 1)
        if bound is not None and bound < 0:
            continue
        sub = _min_hitting_set(rest, bound)
        if sub is None:
            continue
        cand = sub + 1
        if result is None or cand < result:
            result = cand
    if result is not None and best is not None and result > best:
        return None
    return result


def dimension(gb: GroebnerBasis) -> int:
    """Krull dimension of ``k[x]/I`` from the leading-term ideal; -1 for the unit ideal."""
    n = len(gb.vars)
    lms = [e for e in gb.leading_monomials()]
    if not lms or all(not g.terms for g in gb.generators):
        return n
    if any(not any(e) for e in lms):
        return -1
    supports = {frozenset(i for i, x in enumerate(e) if x) for e in lms}
    minimal = [s for s in supports if not any(t < s for t in supports)]
    return n - _min_hitting_set(minimal)


def zero_dim_degree(gb: GroebnerBasis) -> int:
    """Number of standard monomials (points counted with multiplicity)."""
    if dimension(gb) != 0:
        raise NotZeroDimensional("ideal is not zero-dimensional")
    lms = gb.leading_monomials()
    n = len(gb.vars)
    bounds = [None] * n
    for e in lms:
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) == 1:
            i = nz[0]
            bounds[i] = e[i] if bounds[i] is None else min(bounds[i], e[i])
    count = 0
    stack = [(0,) * n]
    seen = {stack[0]}
    while stack:
        m = stack.pop()
        count += 1
        for i in range(n):
            nm = m[:i] + (m[i] + 1,) + m[i + 1:]
            if nm in seen or nm[i] >= bounds[i]:
                continue
            if any(all(map(le, e, nm)) for e in lms):
                continue
            seen.add(nm)
            stack.append(nm)
    return count
