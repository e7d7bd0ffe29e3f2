"""Schubert calculus for Chow-Lam degrees.

Rank 2 positroid classes are products of complete homogeneous symmetric
polynomials in two variables; they are handled dehomogenized (y = 1) as
ordinary integer coefficient lists.  Classes of other varieties are
computed numerically by counting points in a random translate of a
Schubert variety.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from . import linalg
from .grassmann import IndexSet, plucker_relations, subsets, var_name
from .groebner import Budget, Ideal, NotZeroDimensional, buchberger, zero_dim_degree
from .polyengine import Polynomial, VarTable, degrevlex, poly_sum


class ParityError(ValueError):
    """n - t is even, so the positroid is not in a Chow-Lam setting."""


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(b) for b in self.parts)
        if not parts or min(parts) < 1 or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"{parts} is not a partition")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("()")
        if "," in text:
            return cls(tuple(int(x) for x in text.split(",") if x.strip()))
        return cls(tuple(int(c) for c in text))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def t(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        if max(self.parts) < 10:
            return "(" + "".join(map(str, self.parts)) + ")"
        return "(" + ",".join(map(str, self.parts)) + ")"


def _as_partition(beta) -> Partition:
    return beta if isinstance(beta, Partition) else Partition(tuple(beta))


def schubert_dim(I) -> int:
    """Dimension of the Schubert variety indexing the class basis: k-planes
    whose s-th basis row is supported on the first i_s coordinates."""
    return sum(i - s for s, i in enumerate(I, start=1))


def dual_index(I, n: int) -> tuple:
    """The index set ``{n+1-i_k, ..., n+1-i_1}`` of complementary dimension."""
    return tuple(sorted(n + 1 - i for i in I))


def chow_lam_index(k: int, r: int) -> tuple:
    """The index set ``(r-k, r-k+2, ..., r)`` whose coefficient is the Chow-Lam degree."""
    return (r - k,) + tuple(range(r - k + 2, r + 1))


@dataclass
class CohomologyClass:
    """``sum delta_I [S_I]`` in Gr(k,n)."""

    k: int
    n: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for I, c in self.coeffs.items():
            I = tuple(I)
            if c < 0:
                raise ValueError("cohomology coefficients are nonnegative")
            if c:
                clean[I] = int(c)
        dims = {schubert_dim(I) for I in clean}
        if len(dims) > 1:
            raise ValueError("class mixes Schubert classes of different dimensions")
        self.coeffs = clean

    def __getitem__(self, I) -> int:
        if isinstance(I, IndexSet):
            I = I.entries
        return self.coeffs.get(tuple(I), 0)

    @property
    def dim(self):
        return schubert_dim(next(iter(self.coeffs))) if self.coeffs else None

    def chow_lam_degree(self, r: int) -> int:
        return self[chow_lam_index(self.k, r)]

    def __str__(self):
        items = sorted(self.coeffs.items())
        return " + ".join(f"{c}*S{''.join(map(str, I)) if self.n < 10 else list(I)}" for I, c in items) or "0"


# ------------------------------------------------------------- rank two


def _hpoly(beta: Partition) -> list[int]:
    """Coefficients of prod_i (1 + x + ... + x^(beta_i - 1))."""
    f = [1]
    for b in beta:
        g = [0] * (len(f) + b - 1)
        for i, c in enumerate(f):
            for j in range(b):
                g[i + j] += c
        f = g
    return f


def _coeff(f, i):
    return f[i] if 0 <= i < len(f) else 0


def chow_lam_degree_rank2(beta) -> int:
    """Chow-Lam degree of the rank 2 positroid variety of the partition ``beta``."""
    beta = _as_partition(beta)
    if beta.n < 3:
        raise ValueError("rank 2 positroids need n >= 3")
    c = beta.n - beta.t
    if c % 2 == 0:
        raise ParityError(f"n - t = {c} is even")
    f = _hpoly(beta)
    return _coeff(f, (c - 1) // 2) - _coeff(f, (c - 3) // 2)


def positroid_class_rank2(beta) -> CohomologyClass:
    """Schubert expansion of the positroid variety class in Gr(2,n).

    The class ``x^i y^(c-i) + ... + x^(c-i) y^i`` is the Schubert class of
    the partition (c-i, i), i.e. of ``S_I`` with ``I = (n-1-c+i, n-i)``.
    """
    beta = _as_partition(beta)
    if beta.n < 3:
        raise ValueError("rank 2 positroids need n >= 3")
    n, c = beta.n, beta.n - beta.t
    f = _hpoly(beta)
    coeffs = {}
    for i in range(c // 2 + 1):
        if c - i > n - 2:
            continue
        d = _coeff(f, i) - _coeff(f, i - 1)
        if d:
            coeffs[(n - 1 - c + i, n - i)] = d
    return CohomologyClass(2, n, coeffs)


def partitions(n: int, max_part: int | None = None):
    """All partitions of n, largest parts first."""
    max_part = n if max_part is None else max_part
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def max_table(n_lo: int, n_hi: int):
    """Rows ``(n, lambda_max, [maximizing partitions])``."""
    if n_lo > n_hi:
        raise ValueError("empty range")
    rows = []
    for n in range(n_lo, n_hi + 1):
        best, arg = None, []
        for parts in partitions(n):
            if (n - len(parts)) % 2 == 0:
                continue
            lam = chow_lam_degree_rank2(parts)
            if best is None or lam > best:
                best, arg = lam, [Partition(parts)]
            elif lam == best:
                arg.append(Partition(parts))
        rows.append((n, best, arg))
    return rows


def max_table_tsv(rows) -> str:
    lines = ["n\tlambda\tpartitions"]
    for n, lam, arg in rows:
        lines.append(f"{n}\t{lam}\t{' '.join(str(b) for b in arg)}")
    return "\n".join(lines) + "\n"


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


def grassmannian_degree(k: int, s: int) -> int:
    """Degree of Gr(k,s) in its Pluecker embedding."""
    if not 1 <= k <= s:
        raise ValueError("need 1 <= k <= s")
    d = k * (s - k)
    val = Fraction(factorial(d))
    for i in range(k):
        val *= Fraction(factorial(i), factorial(s - k + i))
    assert val.denominator == 1
    return int(val)


def disjoint_nonbases_degree(k: int, t: int) -> int:
    """Chow-Lam degree for a rank k matroid on n = kt elements whose t
    nonbases are pairwise disjoint, with t = (s-k)k + 1."""
    if (t - 1) % k:
        raise ValueError(f"t = {t} is not of the form (s-k)k + 1")
    s = k + (t - 1) // k
    if s <= k:
        raise ValueError("no valid s > k")
    n = k * t
    val = Fraction(n, s) * grassmannian_degree(k, s)
    assert val.denominator == 1
    return int(val)


# ------------------------------------------------------------- numerics


def _translated_schubert(J, k: int, n: int, G, table: VarTable):
    """Linear forms cutting out the translate by G (Cauchy-Binet) of the
    Schubert variety V(q_L : L not <= J), which has dimension sum(j_s - s)."""
    out = []
    for L in subsets(n, k):
        if all(l <= j for l, j in zip(L, J)):
            continue
        parts = []
        for M in subsets(n, k):
            c = linalg.det([[G[m - 1][l - 1] for l in L] for m in M])
            if c:
                parts.append(Polynomial.var(table, var_name("q", M)).scale(c))
        out.append(poly_sum(parts, table))
    return out


def _count_points(gens, table, rng, bound, budget):
    chart = poly_sum([Polynomial.var(table, v).scale(rng.randint(-bound, bound)) for v in table.names], table)
    gb = buchberger(Ideal(gens + [chart - 1], table), degrevlex(len(table)), budget)
    if gb.is_unit():
        return 0
    return zero_dim_degree(gb)


def cohomology_class_numeric(spec, seed: int = 0, bound: int = 10**6, budget: Budget | None = None,
                             indices=None) -> CohomologyClass:
    """Schubert coefficients ``delta_I`` as point counts of V meeting a random translate of S_{I^c}.

    ``indices`` restricts the computation to some I (default: every I of
    dimension dim V).  A translate giving a positive dimensional
    intersection is non-generic; it is redrawn once before giving up.
    """
    k, n = spec.k, spec.n
    T = spec.table
    base = [g for g in spec.ideal_generators() if g.terms] + plucker_relations(k, n, "q", T)
    dim = spec.expected_dim
    if indices is None:
        indices = [I for I in subsets(n, k) if schubert_dim(I) == dim]
    rng = random.Random(seed)
    coeffs = {}
    for I in indices:
        J = dual_index(I, n)
        for attempt in range(2):
            G = linalg.random_matrix(n, n, rng, bound)
            gens = base + _translated_schubert(J, k, n, G, T)
            try:
                coeffs[tuple(I)] = _count_points(gens, T, rng, bound, budget)
                break
            except NotZeroDimensional:
                if attempt:
                    raise
    return CohomologyClass(k, n, coeffs)


def chow_lam_degree_numeric(spec, seed: int = 0, budget: Budget | None = None) -> int:
    I = chow_lam_index(spec.k, spec.r)
    return cohomology_class_numeric(spec, seed=seed, budget=budget, indices=[I])[I]
