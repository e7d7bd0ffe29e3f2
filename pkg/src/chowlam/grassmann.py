"""Grassmannian coordinates: index sets, Pluecker vectors and relations,
wedge products, containment equations, twistor maps and straightening.

Conventions.  A subspace given as the row space of a k x n matrix has *dual*
coordinates ``q_I`` (its k x k minors); the same subspace given as the
kernel of an (n-k) x n matrix has *primal* coordinates ``p_J`` (minors of the
kernel matrix).  The two agree up to a global scalar via

    p_J = sign(J, J^c) * q_{J^c},

where ``sign(J, J^c)`` is the sign of the permutation listing ``J`` and then
its complement.  Index sets are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from . import linalg
from .polyengine import (
    ONE,
    ZERO,
    Polynomial,
    VarTable,
    determinant,
    permutation_sign,
    poly_sum,
    substitute,
)


# ------------------------------------------------------------ index sets


@dataclass(frozen=True, order=True)
class IndexSet:
    """A strictly increasing tuple of 1-based indices inside [1..n]."""

    entries: tuple
    n: int

    def __post_init__(self):
        e = tuple(int(i) for i in self.entries)
        if any(a >= b for a, b in zip(e, e[1:])):
            raise ValueError(f"index set {e} is not strictly increasing")
        if e and (e[0] < 1 or e[-1] > self.n):
            raise ValueError(f"index set {e} outside [1..{self.n}]")
        object.__setattr__(self, "entries", e)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def complement(self) -> "IndexSet":
        return IndexSet(complement(self.entries, self.n), self.n)

    def __str__(self):
        return "[" + ",".join(map(str, self.entries)) + "]"


def subsets(n: int, k: int):
    """All k-subsets of [1..n] in lexicographic order."""
    return list(combinations(range(1, n + 1), k))


def complement(I, n: int) -> tuple:
    s = set(I)
    return tuple(i for i in range(1, n + 1) if i not in s)


def shuffle_sign(I, J) -> int:
    """Sign of the permutation that sorts the concatenation ``I + J``."""
    return permutation_sign(tuple(I) + tuple(J))


def var_name(letter: str, I) -> str:
    return f"{letter}[{','.join(map(str, I))}]"


def plucker_names(letter: str, k: int, n: int) -> list[str]:
    return [var_name(letter, I) for I in subsets(n, k)]


@lru_cache(maxsize=None)
def plucker_table(letter: str, k: int, n: int) -> VarTable:
    return VarTable(plucker_names(letter, k, n))


def parse_index(name: str) -> tuple:
    """``"q[1,2]"`` -> ``(1, 2)``."""
    inner = name[name.index("[") + 1:name.rindex("]")]
    return tuple(int(s) for s in inner.split(",") if s.strip())


def primal_dual_convert(I, k: int, n: int, kind: str = "dual"):
    """Complement of ``I`` and the sign relating the two coordinates.

    With ``kind="dual"`` (``|I| = k``) returns ``(I^c, s)`` with
    ``q_I = s * p_{I^c}``; with ``kind="primal"`` (``|I| = n-k``) returns
    ``(I^c, s)`` with ``p_I = s * q_{I^c}``.  Converting twice gives back
    ``I`` with total sign +1.
    """
    I = tuple(I)
    if kind == "dual":
        if len(I) != k:
            raise ValueError(f"dual index set must have size {k}")
        Ic = complement(I, n)
        return Ic, shuffle_sign(Ic, I)
    if kind == "primal":
        if len(I) != n - k:
            raise ValueError(f"primal index set must have size {n - k}")
        Ic = complement(I, n)
        return Ic, shuffle_sign(I, Ic)
    raise ValueError(f"unknown coordinate kind {kind!r}")


# ------------------------------------------------------- Pluecker vectors


class PluckerVector:
    """Alternating table of Pluecker coordinates keyed by sorted index tuples.

    ``size`` is the length of the index sets (``k`` for dual coordinates
    of a k-plane, ``n-k`` for primal ones).  Values are rationals or
    Polynomials.  Lookups with unsorted indices pick up the permutation sign
    and repeated indices give zero.
    """

    def __init__(self, size: int, n: int, coords: dict, kind: str = "dual"):
        if kind not in ("dual", "primal"):
            raise ValueError(f"unknown coordinate kind {kind!r}")
        self.size = size
        self.n = n
        self.kind = kind
        self.coords = {}
        for I, v in coords.items():
            I = tuple(I)
            s = permutation_sign(I)
            if s == 0:
                continue
            key = tuple(sorted(I))
            self.coords[key] = v if s > 0 else -v

    @property
    def k(self) -> int:
        """Dimension of the subspace represented."""
        return self.size if self.kind == "dual" else self.n - self.size

    def __getitem__(self, I):
        if isinstance(I, IndexSet):
            I = I.entries
        I = tuple(I)
        s = permutation_sign(I)
        if s == 0:
            return self._zero()
        v = self.coords.get(tuple(sorted(I)))
        if v is None:
            return self._zero()
        return v if s > 0 else -v

    def _zero(self):
        for v in self.coords.values():
            if isinstance(v, Polynomial):
                return Polynomial.zero(v.vars)
        return ZERO

    def keys(self):
        return subsets(self.n, self.size)

    def values(self):
        return [self[I] for I in self.keys()]

    def __eq__(self, other):
        if not isinstance(other, PluckerVector):
            return NotImplemented
        return (self.size, self.n, self.kind) == (other.size, other.n, other.kind) and all(
            self[I] == other[I] for I in self.keys())

    def __repr__(self):
        return f"PluckerVector({self.kind}, size={self.size}, n={self.n})"

    def scale(self, c) -> "PluckerVector":
        return PluckerVector(self.size, self.n, {I: v * c for I, v in self.coords.items()}, self.kind)

    def __neg__(self):
        return self.scale(-1)

    def converted(self) -> "PluckerVector":
        """The same subspace in the other coordinate kind."""
        out = {}
        k = self.k
        for I, v in self.coords.items():
            Ic, s = primal_dual_convert(I, k, self.n, self.kind)
            out[Ic] = v if s > 0 else -v
        return PluckerVector(self.n - self.size, self.n, out,
                             "primal" if self.kind == "dual" else "dual")

    def to_dual(self):
        return self if self.kind == "dual" else self.converted()

    def to_primal(self):
        return self if self.kind == "primal" else self.converted()

    def evaluate(self, f: Polynomial, letter: str | None = None):
        """Evaluate ``f`` (in variables ``letter[I]``) at these coordinates."""
        letter = letter or ("q" if self.kind == "dual" else "p")
        point = []
        for name in f.vars.names:
            point.append(self[parse_index(name)] if name.startswith(letter + "[") else None)
        used = {i for e in f.terms for i, x in enumerate(e) if x}
        if any(point[i] is None for i in used):
            raise ValueError("form has variables outside this Pluecker vector")
        return f.evaluate([x if x is not None else ZERO for x in point])

    @classmethod
    def symbolic(cls, letter: str, size: int, n: int, kind: str = "dual", table: VarTable | None = None):
        table = table or plucker_table(letter, size, n)
        return cls(size, n, {I: Polynomial.var(table, var_name(letter, I)) for I in subsets(n, size)}, kind)


def maximal_minors(M, kind: str = "dual") -> PluckerVector:
    """All maximal minors of a k x n matrix (rationals or Polynomials)."""
    k = len(M)
    n = len(M[0]) if k else 0
    if k > n:
        raise ValueError("maximal minors need at most as many rows as columns")
    symbolic = any(isinstance(x, Polynomial) for row in M for x in row)
    if not symbolic:
        M = linalg.as_matrix(M)
        if linalg.rank(M) < k:
            raise ValueError("matrix is rank deficient")
    coords = {}
    for I in subsets(n, k):
        sub = [[row[j - 1] for j in I] for row in M]
        d = determinant(sub) if symbolic else linalg.det(sub)
        coords[I] = d
    return PluckerVector(k, n, coords, kind)


def dual_coordinates(M) -> PluckerVector:
    """Dual coordinates of the row space of ``M``."""
    return maximal_minors(M, "dual")


def primal_coordinates(M) -> PluckerVector:
    """Primal coordinates of the row space of ``M`` (minors of a kernel basis)."""
    ker = linalg.nullspace(linalg.as_matrix(M))
    n = len(M[0])
    if not ker:
        return PluckerVector(0, n, {(): ONE}, "primal")
    return maximal_minors(ker, "primal")


def wedge(l: PluckerVector, m: PluckerVector) -> PluckerVector:
    """Exterior product: ``(l ^ m)_K = sum sign(I, J) l_I m_J`` over ``I + J = K``."""
    if l.n != m.n:
        raise ValueError("wedge of vectors in different ambient spaces")
    a, b, n = l.size, m.size, l.n
    if a + b > n:
        raise ValueError("wedge exceeds the ambient dimension")
    out = {}
    for K in subsets(n, a + b):
        parts = []
        for I in combinations(K, a):
            J = tuple(x for x in K if x not in I)
            li = l.coords.get(I)
            mj = m.coords.get(J)
            if li is None or mj is None:
                continue
            t = li * mj
            parts.append(t if shuffle_sign(I, J) > 0 else -t)
        if parts:
            v = parts[0]
            for t in parts[1:]:
                v = v + t
            out[K] = v
    return PluckerVector(a + b, n, out, l.kind)


# ------------------------------------------------------------ relations


def plucker_relations(k: int, n: int, letter: str = "q", table: VarTable | None = None) -> list[Polynomial]:
    """Quadratic Pluecker relations of Gr(k, n) in variables ``letter[I]``.

    For k = 2 these are the three-term relations
    ``q_ij q_kl - q_ik q_jl + q_il q_jk`` for ``i<j<k<l``; in general the
    shuffle relations ``sum_l (-1)^l q_{I j_l} q_{J - j_l}`` over
    (k-1)-subsets I and (k+1)-subsets J, with duplicates removed.
    """
    table = table or plucker_table(letter, k, n)
    if k <= 1 or k >= n - 1:
        return []

    def v(I):
        s = permutation_sign(I)
        if s == 0:
            return None
        return s, Polynomial.var(table, var_name(letter, tuple(sorted(I))))

    if k == 2:
        out = []
        for i, j, a, b in combinations(range(1, n + 1), 4):
            x = v((i, j))[1] * v((a, b))[1] - v((i, a))[1] * v((j, b))[1] + v((i, b))[1] * v((j, a))[1]
            out.append(x)
        return out
    seen = set()
    out = []
    for I in combinations(range(1, n + 1), k - 1):
        for J in combinations(range(1, n + 1), k + 1):
            parts = []
            for l, j in enumerate(J):
                a = v(I + (j,))
                if a is None:
                    continue
                b = v(J[:l] + J[l + 1:])
                t = a[1] * b[1]
                if (a[0] * b[0] * (-1) ** l) < 0:
                    t = -t
                parts.append(t)
            if not parts:
                continue
            f = poly_sum(parts, table)
            if not f.terms:
                continue
            c = f.canonical()
            if c in seen:
                continue
            seen.add(c)
            out.append(c)
    return out


def incidence_table(k: int, n: int, m: int) -> VarTable:
    """Variables ``q[I]`` (|I| = k) followed by ``p[J]`` (|J| = n - m)."""
    return VarTable(plucker_names("q", k, n) + plucker_names("p", n - m, n))


def incidence_equations(k: int, n: int, m: int, table: VarTable | None = None) -> list[Polynomial]:
    """Bilinear equations in dual ``q`` of Q in Gr(k,n) and primal ``p`` of
    P in Gr(m,n) cutting out the flag condition Q in P.

    For each (k-1)-subset S and (n-m-1)-subset T the equation is the
    contraction ``sum_j q_{j S} p_{j T}`` with alternating coordinates.
    """
    if not 0 < k < m < n:
        raise ValueError("need 0 < k < m < n")
    table = table or incidence_table(k, n, m)

    def var(letter, I):
        s = permutation_sign(I)
        if s == 0:
            return None
        return s, Polynomial.var(table, var_name(letter, tuple(sorted(I))))

    out = []
    for S in combinations(range(1, n + 1), k - 1):
        for T in combinations(range(1, n + 1), n - m - 1):
            parts = []
            for j in range(1, n + 1):
                a = var("q", (j,) + S)
                b = var("p", (j,) + T)
                if a is None or b is None:
                    continue
                t = a[1] * b[1]
                parts.append(t if a[0] * b[0] > 0 else -t)
            out.append(poly_sum(parts, table) if parts else Polynomial.zero(table))
    return out


# ---------------------------------------------------------- substitution


class SubstitutionMap:
    """A ring map sending each source variable to a Polynomial over ``target``."""

    def __init__(self, source: VarTable, target: VarTable, image: dict):
        missing = [v for v in source.names if v not in image]
        if missing:
            raise ValueError(f"unmapped variables: {missing[:5]}")
        self.source = source
        self.target = target
        self.image = dict(image)

    def apply(self, f: Polynomial) -> Polynomial:
        mapping = {v: self.image[v] for v in f.vars.names if v in self.image}
        return substitute(f, mapping, self.target)

    __call__ = apply

    def __getitem__(self, name):
        return self.image[name]


def twistor_map(Z, subset_size: int, emission: str = "dual", letter: str = "p",
                yletter: str = "y") -> SubstitutionMap:
    """Send ``p_I`` (|I| = ``subset_size``) to ``det[Z_I | Y]``.

    ``Z`` is r x n and ``Y`` has ``c = r - subset_size`` columns.  By Laplace
    expansion along the Z block the image is
    ``sum_R sign(R, R^c) det Z[R, I] * Y_{R^c}`` where ``Y_{R^c}`` is the
    maximal minor of Y on rows ``R^c``.  ``emission`` selects the target
    variables: ``"stiefel"`` (entries ``y[i,j]``, or ``y[i]`` if c = 1),
    ``"dual"`` (minors ``y[R^c]``) or ``"primal"`` (``y[R]``, the primal
    coordinates of the column space of Y).
    """
    Z = linalg.as_matrix(Z)
    r = len(Z)
    n = len(Z[0])
    s = subset_size
    c = r - s
    if not 0 < s <= r or c < 0:
        raise ValueError("subset size must lie in [1, r]")
    source = plucker_table(letter, s, n)
    rows_all = list(range(1, r + 1))
    if emission == "stiefel":
        if c == 1:
            names = [f"{yletter}[{i}]" for i in rows_all]
        else:
            names = [f"{yletter}[{i},{j}]" for i in rows_all for j in range(1, c + 1)]
        target = VarTable(names)
        if c == 1:
            Y = [[Polynomial.var(target, f"{yletter}[{i}]")] for i in rows_all]
        else:
            Y = [[Polynomial.var(target, f"{yletter}[{i},{j}]") for j in range(1, c + 1)] for i in rows_all]
        ymin = {}
        for Rc in combinations(rows_all, c):
            ymin[Rc] = determinant([Y[i - 1] for i in Rc]) if c else Polynomial.one(target)
    elif emission == "dual":
        target = plucker_table(yletter, c, r)
        ymin = {Rc: Polynomial.var(target, var_name(yletter, Rc)) for Rc in combinations(rows_all, c)}
    elif emission == "primal":
        target = plucker_table(yletter, s, r)
        ymin = {}
        for R in combinations(rows_all, s):
            Rc = complement(R, r)
            # primal y_R = sign(R, R^c) * dual y_{R^c}
            v = Polynomial.var(target, var_name(yletter, R))
            ymin[Rc] = v if shuffle_sign(R, Rc) > 0 else -v
    else:
        raise ValueError(f"unknown emission {emission!r}")
    image = {}
    for I in subsets(n, s):
        parts = []
        for R in combinations(rows_all, s):
            d = linalg.det([[Z[i - 1][j - 1] for j in I] for i in R])
            if not d:
                continue
            Rc = complement(R, r)
            coef = d * shuffle_sign(R, Rc)
            parts.append(ymin[Rc].scale(coef))
        image[var_name(letter, I)] = poly_sum(parts, target) if parts else Polynomial.zero(target)
    return SubstitutionMap(source, target, image)


# ----------------------------------------------------------- straightening


def _is_standard_pair(a, b) -> bool:
    (i1, j1), (i2, j2) = sorted((a, b))
    return i1 <= i2 and j1 <= j2


def _straighten_monomial(mono: tuple, memo: dict) -> dict:
    """``mono`` is a sorted tuple of pairs; returns {standard monomial: coeff}."""
    got = memo.get(mono)
    if got is not None:
        return got
    for x in range(len(mono)):
        for y in range(x + 1, len(mono)):
            (i, l), (j, k) = mono[x], mono[y]
            if i < j and k < l:
                # q_il q_jk = q_ik q_jl - q_ij q_kl
                rest = mono[:x] + mono[x + 1:y] + mono[y + 1:]
                out: dict = {}
                for pair, sgn in ((((i, k), (j, l)), 1), (((i, j), (k, l)), -1)):
                    sub = _straighten_monomial(tuple(sorted(rest + pair)), memo)
                    for m, c in sub.items():
                        v = out.get(m, 0) + sgn * c
                        if v:
                            out[m] = v
                        else:
                            out.pop(m, None)
                memo[mono] = out
                return out
    res = {mono: 1}
    memo[mono] = res
    return res


def straighten(f: Polynomial, letter: str = "q") -> Polynomial:
    """Rewrite ``f`` in Pluecker variables of Gr(2,n) as a combination of
    standard monomials (sorted factors with both index rows weakly increasing).

    Variables not named ``letter[i,j]`` are carried along as coefficients.
    """
    names = f.vars.names
    pairs = {}
    for idx, name in enumerate(names):
        if name.startswith(letter + "["):
            I = parse_index(name)
            if len(I) != 2:
                raise ValueError("straighten is implemented for k = 2 only")
            pairs[idx] = I
    if not pairs:
        return f
    n = max(max(I) for I in pairs.values())
    full = f.vars.extend(plucker_names(letter, 2, n))
    if full != f.vars:
        return straighten(f.to_table(full), letter)
    lookup = {I: idx for idx, I in pairs.items()}
    memo: dict = {}
    out: dict = {}
    nv = len(names)
    for e, c in f.terms.items():
        mono = []
        other = [0] * nv
        for idx, x in enumerate(e):
            if not x:
                continue
            if idx in pairs:
                mono.extend([pairs[idx]] * x)
            else:
                other[idx] = x
        for m, cc in _straighten_monomial(tuple(sorted(mono)), memo).items():
            ne = list(other)
            for pr in m:
                if pr not in lookup:
                    raise ValueError(f"variable {var_name(letter, pr)} missing from the table")
                ne[lookup[pr]] += 1
            ne = tuple(ne)
            v = out.get(ne, ZERO) + c * cc
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
    return Polynomial(f.vars, out, _trusted=True)


def is_standard(f: Polynomial, letter: str = "q") -> bool:
    names = f.vars.names
    for e in f.terms:
        mono = []
        for idx, x in enumerate(e):
            if x and names[idx].startswith(letter + "["):
                mono.extend([parse_index(names[idx])] * x)
        mono.sort()
        for a, b in zip(mono, mono[1:]):
            if b[1] < a[1]:
                return False
    return True
