"""Exact rational scalars and sparse multivariate polynomials.

Polynomials are immutable maps from exponent tuples to ``gmpy2.mpq``
coefficients over a named :class:`VarTable`.  Term order only matters for
display, leading terms and Groebner computations, so storage is an unordered
dict and ordering is applied on demand through a :class:`MonomialOrder`.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm
from operator import add

from gmpy2 import mpq, mpz

Rational = type(mpq(0))

ZERO = mpq(0)
ONE = mpq(1)


class TableMismatch(ValueError):
    """Raised when two polynomials live over different variable tables."""


def rational(x) -> Rational:
    """Coerce ints, Fractions, mpq and ``"num/den"`` strings to ``mpq``."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, str):
        s = x.strip().replace("−", "-")
        if "/" in s:
            num, den = s.split("/")
            return mpq(int(num), int(den))
        return mpq(int(s))
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, (int, type(mpz(0)))):
        return mpq(x)
    if isinstance(x, Polynomial):
        return x.constant_value()
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def format_rational(c: Rational) -> str:
    c = rational(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class VarTable:
    """Ordered, duplicate-free list of variable names."""

    __slots__ = ("names", "index", "_hash")

    def __init__(self, names):
        names = tuple(names)
        index = {name: i for i, name in enumerate(names)}
        if len(index) != len(names):
            raise ValueError("variable names must be unique")
        self.names = names
        self.index = index
        self._hash = hash(names)

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __getitem__(self, i):
        return self.names[i]

    def __contains__(self, name):
        return name in self.index

    def __eq__(self, other):
        return isinstance(other, VarTable) and (self is other or self.names == other.names)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"VarTable({list(self.names)!r})"

    def extend(self, more) -> "VarTable":
        return VarTable(self.names + tuple(n for n in more if n not in self.index))

    def gens(self) -> list["Polynomial"]:
        return [Polynomial.var(self, name) for name in self.names]


def polynomial_ring(names):
    """Return ``(table, generators)`` for a comma separated string or list of names."""
    if isinstance(names, str):
        names = [s.strip() for s in re.split(r",(?![^\[]*\])", names) if s.strip()]
    table = VarTable(names)
    return table, table.gens()


# ---------------------------------------------------------------- orders


class MonomialOrder:
    """A monomial order given by a linear key map on exponent vectors.

    ``key(e)`` is a tuple compared lexicographically, and ``key(a + b) ==
    key(a) + key(b)`` componentwise, so monomial multiplication can be done
    directly on keys.  ``exps`` inverts ``key``.
    """

    kind = "abstract"

    def __init__(self, nvars: int, slots):
        # slots: list of ("deg", indices) or ("var", index, sign)
        self.nvars = nvars
        self.slots = tuple(slots)
        pos = [None] * nvars
        sign = [1] * nvars
        for p, slot in enumerate(self.slots):
            if slot[0] == "var":
                pos[slot[1]] = p
                sign[slot[1]] = slot[2]
        if any(p is None for p in pos):
            raise ValueError("order does not cover every variable")
        self._pos = tuple(pos)
        self._sign = tuple(sign)
        self._build()

    def _build(self):
        parts = []
        for slot in self.slots:
            if slot[0] == "deg":
                idx = slot[1]
                parts.append("(" + "+".join(f"e[{i}]" for i in idx) + ")" if idx else "0")
            else:
                _, i, s = slot
                parts.append(f"e[{i}]" if s > 0 else f"-e[{i}]")
        self.key = eval("lambda e: (" + ",".join(parts) + ",)")
        back = ",".join(
            (f"k[{p}]" if s > 0 else f"-k[{p}]") for p, s in zip(self._pos, self._sign)
        )
        self.exps = eval("lambda k: (" + back + ",)")

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.slots == other.slots

    def __hash__(self):
        return hash(self.slots)

    def sort_terms(self, terms: dict):
        key = self.key
        return sorted(terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading(self, terms: dict):
        key = self.key
        return max(terms, key=key)


class Lex(MonomialOrder):
    kind = "lex"

    def __init__(self, nvars: int):
        super().__init__(nvars, [("var", i, 1) for i in range(nvars)])

    def descriptor(self, table):
        return {"kind": "lex"}


class DegRevLex(MonomialOrder):
    kind = "degrevlex"

    def __init__(self, nvars: int):
        slots = [("deg", tuple(range(nvars)))]
        slots += [("var", i, -1) for i in reversed(range(nvars))]
        super().__init__(nvars, slots)

    def descriptor(self, table):
        return {"kind": "degrevlex"}


class BlockOrder(MonomialOrder):
    """Elimination order: variables of earlier blocks dominate later ones.

    ``blocks`` is a list of index lists; indices not mentioned form a final
    block.  Each block is ordered by ``inner`` (``"degrevlex"`` or ``"lex"``).
    """

    kind = "block"

    def __init__(self, nvars: int, blocks, inner: str = "degrevlex"):
        blocks = [tuple(b) for b in blocks]
        seen = {i for b in blocks for i in b}
        rest = tuple(i for i in range(nvars) if i not in seen)
        if rest:
            blocks.append(rest)
        self.blocks = tuple(blocks)
        self.inner = inner
        slots = []
        for b in blocks:
            if inner == "degrevlex":
                slots.append(("deg", b))
                slots += [("var", i, -1) for i in reversed(b)]
            elif inner == "lex":
                slots += [("var", i, 1) for i in b]
            else:
                raise ValueError(f"unknown inner order {inner!r}")
        super().__init__(nvars, slots)

    def descriptor(self, table):
        return {
            "kind": "block",
            "elim": [table[i] for i in self.blocks[0]],
            "inner": self.inner,
        }


def order_from_descriptor(desc: dict, table: VarTable) -> MonomialOrder:
    kind = desc.get("kind", "degrevlex")
    if kind == "lex":
        return Lex(len(table))
    if kind == "degrevlex":
        return DegRevLex(len(table))
    if kind == "block":
        elim = [table.index[name] for name in desc["elim"]]
        return BlockOrder(len(table), [elim], desc.get("inner", "degrevlex"))
    raise ValueError(f"unknown order kind {kind!r}")


_DRL_CACHE: dict[int, DegRevLex] = {}


def degrevlex(nvars: int) -> DegRevLex:
    order = _DRL_CACHE.get(nvars)
    if order is None:
        order = _DRL_CACHE[nvars] = DegRevLex(nvars)
    return order


# ------------------------------------------------------------ polynomials


def _madd(a, b):
    return tuple(map(add, a, b))


class Polynomial:
    """Sparse polynomial over Q.  Treat instances as immutable."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: VarTable, terms=None, *, _trusted=False):
        self.vars = vars
        self._hash = None
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            n = len(vars)
            clean = {}
            for e, c in dict(terms).items():
                e = tuple(int(x) for x in e)
                if len(e) != n or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent vector {e} for {n} variables")
                c = rational(c)
                if c:
                    clean[e] = clean.get(e, ZERO) + c
            self.terms = {e: c for e, c in clean.items() if c}

    # -- construction
    @classmethod
    def zero(cls, vars):
        return cls(vars, {}, _trusted=True)

    @classmethod
    def constant(cls, vars, c):
        c = rational(c)
        if not c:
            return cls.zero(vars)
        return cls(vars, {(0,) * len(vars): c}, _trusted=True)

    @classmethod
    def one(cls, vars):
        return cls.constant(vars, 1)

    @classmethod
    def var(cls, vars, name):
        i = vars.index[name] if isinstance(name, str) else int(name)
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): ONE}, _trusted=True)

    @classmethod
    def monomial(cls, vars, exps, coeff=1):
        return cls(vars, {tuple(exps): coeff})

    def _new(self, terms):
        return Polynomial(self.vars, terms, _trusted=True)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise TableMismatch(f"{self.vars!r} != {other.vars!r}")
            return other
        return Polynomial.constant(self.vars, other)

    # -- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for e, c in small.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        c = rational(c)
        if not c:
            return Polynomial.zero(self.vars)
        return self._new({e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial.zero(self.vars)
        if len(a) < len(b):
            a, b = b, a
        out = {}
        get = out.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(map(add, e1, e2))
                v = get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return self._new({e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, c):
        if isinstance(c, Polynomial):
            if c.is_constant():
                return self.scale(1 / c.constant_value())
            return exact_divide(self, c)
        return self.scale(1 / rational(c))

    # -- comparison
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.vars == other.vars and self.terms == other.terms
        try:
            other = rational(other)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_value() == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # -- queries
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * len(self.vars), ZERO)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name) -> int:
        i = self.vars.index[name] if isinstance(name, str) else name
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def support(self) -> set[str]:
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return {self.vars[i] for i in sorted(used)}

    def sorted_terms(self, order: MonomialOrder | None = None):
        order = order or degrevlex(len(self.vars))
        return order.sort_terms(self.terms)

    def leading_term(self, order: MonomialOrder | None = None):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        order = order or degrevlex(len(self.vars))
        e = order.leading(self.terms)
        return e, self.terms[e]

    def coefficient(self, exps) -> Rational:
        return self.terms.get(tuple(exps), ZERO)

    def coeff_of(self, monomial: "Polynomial") -> Rational:
        (e,) = monomial.terms
        return self.terms.get(e, ZERO)

    # -- evaluation / substitution
    def evaluate(self, point) -> Rational:
        return evaluate(self, point)

    def subs(self, values: dict) -> "Polynomial":
        """Partially evaluate: ``values`` maps variable names to rationals."""
        idx = {self.vars.index[k]: rational(v) for k, v in values.items()}
        out = {}
        for e, c in self.terms.items():
            e = list(e)
            for i, v in idx.items():
                if e[i]:
                    c = c * v ** e[i]
                    e[i] = 0
            if c:
                e = tuple(e)
                out[e] = out.get(e, ZERO) + c
        return self._new({e: c for e, c in out.items() if c})

    def substitute(self, mapping: dict, target: VarTable | None = None) -> "Polynomial":
        return substitute(self, mapping, target)

    def to_table(self, table: VarTable) -> "Polynomial":
        """Re-express over another table containing every used variable."""
        if table == self.vars:
            return self
        pos = []
        for i, name in enumerate(self.vars.names):
            pos.append(table.index.get(name))
        n = len(table)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, x in enumerate(e):
                if x:
                    j = pos[i]
                    if j is None:
                        raise TableMismatch(f"variable {self.vars[i]} missing from target table")
                    ne[j] = x
            out[tuple(ne)] = c
        return Polynomial(table, out, _trusted=True)

    def map_coefficients(self, f):
        return Polynomial(self.vars, {e: f(c) for e, c in self.terms.items()})

    def diff(self, name) -> "Polynomial":
        """Partial derivative with respect to the variable ``name``."""
        i = self.vars.index[name]
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return self._new(out)

    # -- normalisation
    def content(self) -> Rational:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self.terms:
            return ZERO
        num = reduce(gcd, (int(c.numerator) for c in self.terms.values()))
        den = reduce(lcm, (int(c.denominator) for c in self.terms.values()))
        return mpq(abs(num), den)

    def canonical(self) -> "Polynomial":
        """Integer primitive representative with positive DegRevLex leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        _, lc = self.leading_term()
        if lc < 0:
            c = -c
        return self.scale(1 / c)

    def monic(self, order=None) -> "Polynomial":
        _, lc = self.leading_term(order)
        return self.scale(1 / lc)

    # -- text
    def to_text(self) -> str:
        return to_text(self)

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Polynomial({to_text(self)!r})"


# ----------------------------------------------------------- operations


def add_polys(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul_polys(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def poly_sum(polys, vars: VarTable | None = None) -> Polynomial:
    """Sum many polynomials with a single accumulator dict."""
    out: dict = {}
    for p in polys:
        if vars is None:
            vars = p.vars
        for e, c in p.terms.items():
            v = out.get(e)
            out[e] = c if v is None else v + c
    if vars is None:
        raise ValueError("empty sum needs an explicit table")
    return Polynomial(vars, {e: c for e, c in out.items() if c}, _trusted=True)


def evaluate(p: Polynomial, point) -> Rational:
    """Exact value of ``p`` at ``point`` (sequence indexed like the table, or dict by name)."""
    if isinstance(point, dict):
        vals = [rational(point[name]) if name in point else None for name in p.vars]
    else:
        vals = [rational(v) for v in point]
        if len(vals) != len(p.vars):
            raise ValueError(f"point has {len(vals)} entries, table has {len(p.vars)}")
    total = ZERO
    powcache: dict = {}
    for e, c in p.terms.items():
        t = c
        for i, x in enumerate(e):
            if x:
                v = vals[i]
                if v is None:
                    raise KeyError(f"no value for {p.vars[i]}")
                if x == 1:
                    t *= v
                else:
                    k = (i, x)
                    pv = powcache.get(k)
                    if pv is None:
                        pv = powcache[k] = v ** x
                    t *= pv
        total += t
    return total


def substitute(p: Polynomial, mapping: dict, target: VarTable | None = None) -> Polynomial:
    """Simultaneously replace variables of ``p`` by polynomials.

    ``mapping`` is keyed by variable name.  Variables of ``p`` that are absent
    from ``mapping`` are carried over only if they exist in ``target``;
    otherwise an error is raised when they occur.
    """
    if target is None:
        for v in mapping.values():
            if isinstance(v, Polynomial):
                target = v.vars
                break
        else:
            target = p.vars
    images = []
    for i, name in enumerate(p.vars.names):
        img = mapping.get(name)
        if img is None:
            if name in target:
                img = Polynomial.var(target, name)
        elif not isinstance(img, Polynomial):
            img = Polynomial.constant(target, img)
        elif img.vars != target:
            raise TableMismatch("substitution images must share one table")
        images.append(img)
    powers: dict = {}

    def power(i, k):
        key = (i, k)
        r = powers.get(key)
        if r is None:
            if k == 1:
                r = images[i]
            else:
                r = power(i, k // 2) * power(i, k - k // 2)
            powers[key] = r
        return r

    out: dict = {}
    zero_exp = (0,) * len(target)
    for e, c in p.terms.items():
        term = None
        for i, x in enumerate(e):
            if x:
                if images[i] is None:
                    raise KeyError(f"unmapped variable {p.vars[i]}")
                f = power(i, x)
                term = f if term is None else term * f
                if not term.terms:
                    break
        if term is None:
            out[zero_exp] = out.get(zero_exp, ZERO) + c
            continue
        for te, tc in term.terms.items():
            v = out.get(te)
            out[te] = c * tc if v is None else v + c * tc
    return Polynomial(target, {e: c for e, c in out.items() if c}, _trusted=True)


def equal_up_to_scalar(p: Polynomial, q: Polynomial):
    """Return ``lam`` with ``p == lam * q``, or ``None`` when no such scalar exists."""
    if p.vars != q.vars:
        try:
            table = p.vars.extend(q.vars)
            p, q = p.to_table(table), q.to_table(table)
        except TableMismatch:
            return None
    if not p.terms and not q.terms:
        return ONE
    if not p.terms or not q.terms or len(p.terms) != len(q.terms):
        return None
    e = next(iter(q.terms))
    if e not in p.terms:
        return None
    lam = p.terms[e] / q.terms[e]
    for e, c in q.terms.items():
        if p.terms.get(e) != lam * c:
            return None
    return lam


def exact_divide(p: Polynomial, q: Polynomial) -> Polynomial:
    """Quotient ``p / q`` when ``q`` divides ``p`` exactly; ``ValueError`` otherwise."""
    q = p._coerce(q)
    if not q.terms:
        raise ZeroDivisionError("division by zero polynomial")
    order = Lex(len(p.vars))
    key = order.key
    qe, qc = q.leading_term(order)
    rem = dict(p.terms)
    quot = {}
    qterms = list(q.terms.items())
    while rem:
        e = max(rem, key=key)
        c = rem[e]
        d = tuple(a - b for a, b in zip(e, qe))
        if min(d) < 0:
            raise ValueError("polynomial division is not exact")
        f = c / qc
        quot[d] = f
        for te, tc in qterms:
            k = _madd(te, d)
            v = rem.get(k, ZERO) - f * tc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return Polynomial(p.vars, quot, _trusted=True)


# ----------------------------------------------------------- determinants


def _is_const(x):
    return not isinstance(x, Polynomial) or x.is_constant()


def determinant(m, method: str = "auto"):
    """Exact determinant of a square matrix of Polynomials and/or rationals.

    ``method`` is ``"laplace"`` (memoised minor expansion, rows taken
    sparsest first), ``"bareiss"`` (fraction free elimination), or
    ``"auto"``, which uses plain elimination for numeric matrices, Bareiss
    for dense matrices dominated by numeric entries and Laplace otherwise.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    table = None
    for row in m:
        for x in row:
            if isinstance(x, Polynomial):
                table = x.vars
                break
        if table is not None:
            break
    if table is None:
        from .linalg import det as numeric_det

        return numeric_det(m)
    rows = [[x if isinstance(x, Polynomial) else Polynomial.constant(table, x) for x in row] for row in m]
    if method == "auto":
        entries = [x for row in rows for x in row]
        nonzero = sum(1 for x in entries if x.terms)
        symbolic = sum(1 for x in entries if not x.is_constant())
        if nonzero >= 0.75 * n * n and symbolic <= 0.25 * n * n and n > 3:
            method = "bareiss"
        else:
            method = "laplace"
    if method == "laplace":
        return _det_laplace(rows, table)
    if method == "bareiss":
        return _det_bareiss(rows, table)
    raise ValueError(f"unknown determinant method {method!r}")


def _det_laplace(rows, table):
    n = len(rows)
    # expand sparsest rows first; track the sign of the row permutation
    perm = sorted(range(n), key=lambda i: sum(1 for x in rows[i] if x.terms))
    sign = _perm_sign(perm)
    rows = [rows[i] for i in perm]
    memo: dict = {}
    zero = Polynomial.zero(table)

    def minor(r, cols):
        if r == n:
            return Polynomial.one(table)
        res = memo.get(cols)
        if res is not None:
            return res
        parts = []
        k = 0
        for j in range(n):
            if cols >> j & 1:
                a = rows[r][j]
                if a.terms:
                    sub = minor(r + 1, cols & ~(1 << j))
                    if sub.terms:
                        t = a * sub
                        parts.append(t if k % 2 == 0 else -t)
                k += 1
        res = poly_sum(parts, table) if parts else zero
        memo[cols] = res
        return res

    d = minor(0, (1 << n) - 1)
    return d if sign > 0 else -d


def _det_bareiss(rows, table):
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = Polynomial.one(table)
    for k in range(n - 1):
        if not a[k][k].terms:
            for i in range(k + 1, n):
                if a[i][k].terms:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Polynomial.zero(table)
        akk = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * akk - a[i][k] * a[k][j]
                a[i][j] = num if prev.is_constant() and prev.constant_value() == 1 else exact_divide(num, prev)
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def _perm_sign(perm) -> int:
    perm = list(perm)
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def permutation_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (0 if it has repeats)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    inv = sum(1 for a, b in combinations(seq, 2) if a > b)
    return -1 if inv % 2 else 1


# -------------------------------------------------------------- text/json

_NAME = r"[A-Za-z_][A-Za-z0-9_]*(?:\[[0-9,\s]*\])?"
_TOKEN = re.compile(rf"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>{_NAME})|(?P<op>[-+*^()])|(?P<bad>\S))")


def _format_monomial(vars, e):
    parts = []
    for i, x in enumerate(e):
        if x == 1:
            parts.append(vars[i])
        elif x:
            parts.append(f"{vars[i]}^{x}")
    return "*".join(parts)


def to_text(p: Polynomial) -> str:
    """Canonical text: DegRevLex descending, ``num/den*x^2*y`` terms."""
    if not p.terms:
        return "0"
    out = []
    for e, c in p.sorted_terms():
        mono = _format_monomial(p.vars, e)
        a = abs(c)
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)


def _tokenize(text):
    text = text.replace("−", "-")
    pos = 0
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.start() != pos and text[pos:m.start()].strip():
            raise ValueError(f"cannot parse near {text[pos:]!r}")
        pos = m.end()
        if m.group("bad"):
            raise ValueError(f"unexpected character {m.group('bad')!r}")
        for kind in ("num", "name", "op"):
            if m.group(kind) is not None:
                val = m.group(kind)
                if kind == "name":
                    val = re.sub(r"\s+", "", val)
                tokens.append((kind, val))
    return tokens


def parse_polynomial(text: str, vars: VarTable | None = None) -> Polynomial:
    """Parse a polynomial in the text format (``+ - * ^`` and parentheses).

    When ``vars`` is omitted the table is built from variable names in order
    of first appearance.
    """
    tokens = _tokenize(text)
    if vars is None:
        names = []
        for kind, val in tokens:
            if kind == "name" and val not in names:
                names.append(val)
        vars = VarTable(names)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def expr():
        kind, val = peek()
        neg = False
        if kind == "op" and val in "+-":
            take()
            neg = val == "-"
        acc = term()
        if neg:
            acc = -acc
        while True:
            kind, val = peek()
            if kind == "op" and val in "+-":
                take()
                t = term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term():
        acc = factor()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                take()
                acc = acc * factor()
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                acc = acc * factor()
            else:
                return acc

    def factor():
        kind, val = take()
        if kind == "num":
            base = Polynomial.constant(vars, rational(val))
        elif kind == "name":
            if val not in vars:
                raise ValueError(f"unknown variable {val!r}")
            base = Polynomial.var(vars, val)
        elif kind == "op" and val == "(":
            base = expr()
            k, v = take()
            if v != ")":
                raise ValueError("unbalanced parentheses")
        elif kind == "op" and val == "-":
            return -factor()
        else:
            raise ValueError(f"unexpected token {val!r}")
        kind, val = peek()
        if kind == "op" and val == "^":
            take()
            k, v = take()
            if k != "num":
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(v)
        return base

    if not tokens:
        raise ValueError("empty polynomial text")
    result = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input at token {tokens[pos]!r}")
    return result


def to_json_obj(p: Polynomial) -> dict:
    return {
        "vars": list(p.vars.names),
        "terms": [{"coeff": format_rational(c), "exps": list(e)} for e, c in p.sorted_terms()],
    }


def from_json_obj(obj: dict) -> Polynomial:
    table = VarTable(obj["vars"])
    return Polynomial(table, {tuple(t["exps"]): rational(t["coeff"]) for t in obj["terms"]})


def to_json(p: Polynomial) -> str:
    return json.dumps(to_json_obj(p))


def from_json(s: str) -> Polynomial:
    return from_json_obj(json.loads(s))


def is_rational(x) -> bool:
    return isinstance(x, (Rational, int, Fraction)) or isinstance(x, type(mpz(0)))


__all__ = [
    "Rational", "rational", "format_rational", "VarTable", "polynomial_ring",
    "MonomialOrder", "Lex", "DegRevLex", "BlockOrder", "degrevlex",
    "order_from_descriptor", "Polynomial", "TableMismatch", "add_polys",
    "mul_polys", "poly_sum", "evaluate", "substitute", "equal_up_to_scalar",
    "exact_divide", "determinant", "permutation_sign", "to_text",
    "parse_polynomial", "to_json", "from_json", "to_json_obj", "from_json_obj",
]
