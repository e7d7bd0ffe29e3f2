"""Dense exact linear algebra over Q on lists of lists of ``mpq``."""

from __future__ import annotations

import csv
import io
import random

from gmpy2 import mpq

from .polyengine import rational, format_rational, ZERO, ONE


def as_matrix(rows):
    return [[rational(x) for x in row] for row in rows]


def shape(m):
    return len(m), (len(m[0]) if m else 0)


def transpose(m):
    return [list(col) for col in zip(*m)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in bt] for row in a]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def rref(m):
    """Reduced row echelon form and pivot columns."""
    a = [list(row) for row in m]
    rows, cols = shape(a)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def det(m):
    a = [[rational(x) for x in row] for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        piv = a[c][c]
        d *= piv
        inv = 1 / piv
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def nullspace(m):
    """Basis (list of vectors) of ``{v : m v = 0}``."""
    rows, cols = shape(m)
    if rows == 0:
        return [[ONE if i == j else ZERO for i in range(cols)] for j in range(cols)]
    red, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def left_kernel(m):
    """Basis of ``{v : v m = 0}``."""
    return nullspace(transpose(m))


def solve(a, b):
    """One solution of ``a x = b`` (``b`` a vector), or ``None``."""
    rows, cols = shape(a)
    aug = [list(r) + [rational(x)] for r, x in zip(a, b)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [ZERO] * cols
    for r, p in enumerate(pivots):
        x[p] = red[r][cols]
    return x


def minor(m, rows, cols):
    return det([[m[i][j] for j in cols] for i in rows])


def random_matrix(rows, cols, rng: random.Random, bound: int = 10**6, full_rank: bool = True):
    """Integer entries uniform in ``[-bound, bound]``; resampled until full rank if asked."""
    while True:
        m = [[mpq(rng.randint(-bound, bound)) for _ in range(cols)] for _ in range(rows)]
        if not full_rank or rank(m) == min(rows, cols):
            return m


def random_vector(n, rng: random.Random, bound: int = 10**6):
    return [mpq(rng.randint(-bound, bound)) for _ in range(n)]


def combine(coeffs, vectors):
    out = [ZERO] * len(vectors[0])
    for c, v in zip(coeffs, vectors):
        if c:
            out = [x + c * y for x, y in zip(out, v)]
    return out


def read_csv_matrix(text: str):
    """Parse a CSV of exact rationals (``num/den`` or integers)."""
    rows = []
    for row in csv.reader(io.StringIO(text)):
        cells = [c for c in row if c.strip()]
        if cells:
            rows.append([rational(c) for c in cells])
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix in CSV input")
    return rows


def write_csv_matrix(m) -> str:
    return "\n".join(",".join(format_rational(x) for x in row) for row in m) + "\n"
