"""Chow-Lam, Chow and Hurwitz-Lam forms.

The general route is elimination: a subspace Q in the variety, a subspace
P containing it, saturate away the degenerate Q = 0 locus and eliminate the
coordinates of Q.  Several families also have closed determinantal formulas,
implemented here alongside the elimination so each can check the other.
"""

from __future__ import annotations

from itertools import combinations

from . import linalg
from .grassmann import (
    PluckerVector,
    complement,
    dual_coordinates,
    incidence_equations,
    plucker_relations,
    plucker_table,
    shuffle_sign,
    subsets,
    twistor_map,
    var_name,
    wedge,
)
from .groebner import Budget, Ideal, buchberger, dimension, eliminate, normal_form
from .polyengine import (
    ZERO,
    Polynomial,
    VarTable,
    degrevlex,
    determinant,
    poly_sum,
    substitute,
)
from .varieties import FormResult, VarietySpec


class DimensionMismatch(ValueError):
    """The variety does not have the declared dimension."""


class EmptyVariety(ValueError):
    pass


class DegenerateInput(ValueError):
    """A numeric formula met a non-generic configuration it cannot handle."""


# ------------------------------------------------------------ elimination


def _needs_ambient_relations(k: int, n: int, m: int) -> bool:
    # p ranges over (n-m)-vectors in the (n-k)-dim space orthogonal to Q;
    # the contraction equations force decomposability only when every such
    # vector is decomposable.
    a, b = n - m, n - k
    return 2 <= a <= b - 2


def _split_linear(gens, qnames, table):
    """Use generators that are linear in q alone to solve for pivot variables.

    Returns ``(substitution mapping, remaining q names, other generators)``.
    """
    qidx = [table.index[name] for name in qnames]
    qset = set(qidx)
    linear, other = [], []
    for g in gens:
        if g.terms and all(sum(e) == 1 and any(e[i] for i in qidx) for e in g.terms) and all(
                not x or i in qset for e in g.terms for i, x in enumerate(e)):
            linear.append(g)
        else:
            other.append(g)
    if not linear:
        return {}, list(qnames), other
    rows = []
    for g in linear:
        row = [ZERO] * len(qnames)
        for e, c in g.terms.items():
            j = next(t for t, i in enumerate(qidx) if e[i])
            row[j] = c
        rows.append(row)
    red, pivots = linalg.rref(rows)
    free = [qnames[j] for j in range(len(qnames)) if j not in pivots]
    mapping = {}
    for r, pc in enumerate(pivots):
        parts = [Polynomial.var(table, qnames[j]).scale(-red[r][j])
                 for j in range(len(qnames)) if j != pc and red[r][j]]
        mapping[qnames[pc]] = poly_sum(parts, table) if parts else Polynomial.zero(table)
    return mapping, free, other


def project_out_q(gens, table: VarTable, qnames, target: VarTable, budget: Budget | None = None,
                  strategy: str = "sugar") -> Ideal:
    """Image in the ``target`` variables of the locus cut out by ``gens``,
    with the q-coordinates treated projectively.

    Linear generators in q are solved first.  Saturation by the irrelevant
    ideal of q is done chart by chart: the first affine chart q_i = 1 whose
    elimination ideal is proper gives the closure of the image, which is
    correct when the q-part is irreducible.
    """
    mapping, free, others = _split_linear(gens, qnames, table)
    if mapping:
        sub_table = VarTable([v for v in table.names if v not in mapping])
        others = [substitute(g, mapping, table) for g in others]
        others = [g.to_table(sub_table) for g in others if g.terms]
        table = sub_table
    target_idx = [table.index[v] for v in target.names if v in table]
    # prefer charts on variables that are not forced to vanish
    probe = [g for g in others if not any(e[i] for e in g.terms for i in target_idx)]
    order = list(free)
    if probe and free:
        qtab = VarTable(free)
        gb = buchberger(Ideal([g.to_table(qtab) for g in probe], qtab), degrevlex(len(qtab)), budget)
        if gb.is_unit():
            raise EmptyVariety("the variety is empty")
        order.sort(key=lambda v: 0 if normal_form(Polynomial.var(qtab, v), gb).terms else 1)
    for qv in order:
        chart_table = VarTable([v for v in table.names if v != qv])
        chart = []
        for g in others:
            h = g.subs({qv: 1}) if qv in g.support() else g
            h = h.to_table(chart_table)
            if h.terms:
                chart.append(h)
        if any(h.is_constant() for h in chart):
            continue
        if not chart:
            return Ideal([Polynomial.zero(target)], target)
        res = eliminate(Ideal(chart, chart_table), [v for v in free if v != qv], budget, strategy=strategy)
        out = [g.to_table(target) for g in res.generators if g.terms]
        if any(g.is_constant() for g in out):
            continue
        return Ideal(out or [Polynomial.zero(target)], target)
    raise EmptyVariety("the variety is empty")


def incidence_system(spec: VarietySpec):
    """Generators over ``q[...] + p[...]`` for the pairs Q in V, Q inside P."""
    k, n, r = spec.k, spec.n, spec.r
    m = k + n - r
    qn = [var_name("q", I) for I in subsets(n, k)]
    pn = [var_name("p", J) for J in subsets(n, n - m)]
    table = VarTable(qn + pn)
    V = [g.to_table(table) for g in spec.ideal_generators()]
    gens = V + plucker_relations(k, n, "q", table) + incidence_equations(k, n, m, table)
    if _needs_ambient_relations(k, n, m):
        gens += plucker_relations(n - m, n, "p", table)
    return table, qn, pn, gens


def check_dimension(spec: VarietySpec, budget: Budget | None = None) -> int:
    """Projective dimension of the variety, computed by Groebner basis."""
    T = spec.table
    gens = spec.ideal_generators() + plucker_relations(spec.k, spec.n, "q", T)
    gens = [g for g in gens if g.terms] or [Polynomial.zero(T)]
    gb = buchberger(Ideal(gens, T), degrevlex(len(T)), budget)
    return dimension(gb) - 1


def chow_lam_locus(spec: VarietySpec, budget: Budget | None = None) -> Ideal:
    """Generators in primal ``p`` of the Chow-Lam locus (Pluecker relations not added)."""
    k, n, r = spec.k, spec.n, spec.r
    m = k + n - r
    if m == k:
        return _self_locus(spec)
    table, qn, pn, gens = incidence_system(spec)
    return project_out_q(gens, table, qn, plucker_table("p", n - m, n), budget)


def _self_locus(spec: VarietySpec) -> Ideal:
    # r = n: P = Q, so the locus is the variety itself, rewritten in primal coordinates
    k, n = spec.k, spec.n
    ptable = plucker_table("p", n - k, n)
    mapping = {}
    for I in subsets(n, k):
        Ic = complement(I, n)
        v = Polynomial.var(ptable, var_name("p", Ic))
        mapping[var_name("q", I)] = v if shuffle_sign(Ic, I) > 0 else -v
    out = [substitute(g, mapping, ptable) for g in spec.ideal_generators()]
    return Ideal([g for g in out if g.terms] or [Polynomial.zero(ptable)], ptable)


def plucker_gb(size: int, n: int, letter: str = "p", budget: Budget | None = None):
    """Groebner basis of the Pluecker ideal (None when it is zero)."""
    T = plucker_table(letter, size, n)
    rel = plucker_relations(size, n, letter, T)
    if not rel:
        return None
    return buchberger(Ideal(rel, T), degrevlex(len(T)), budget)


def reduce_mod_plucker(f: Polynomial, gb) -> Polynomial:
    return normal_form(f, gb) if gb is not None else f


def extract_form(locus: Ideal, size: int, n: int, letter: str = "p", budget: Budget | None = None):
    """``(form or None, witness, codim)`` for a locus in Gr(n - size, n) written
    in coordinates ``letter[J]`` with |J| = size.

    The form is the lowest degree element of a Groebner basis of the locus
    plus the Pluecker ideal that is not itself in the Pluecker ideal.
    """
    T = plucker_table(letter, size, n)
    pgb = plucker_gb(size, n, letter, budget)
    rel = list(pgb.generators) if pgb is not None else []
    gens = [g.to_table(T) for g in locus.generators if g.terms] + rel
    if not gens:
        raise DimensionMismatch("the locus is the whole Grassmannian")
    gb = buchberger(Ideal(gens, T), degrevlex(len(T)), budget)
    amb = (n - size) * size + 1
    codim = amb - dimension(gb)
    if codim == 0:
        raise DimensionMismatch("the locus is the whole Grassmannian")
    outside = [g for g in gb.generators if reduce_mod_plucker(g, pgb).terms]
    outside.sort(key=lambda g: (g.degree(), len(g.terms), g.to_text()))
    if codim == 1:
        return outside[0].canonical(), [], 1
    return None, [g.canonical() for g in outside], codim


def chow_lam_eliminate(spec: VarietySpec, budget: Budget | None = None, verify: bool = False,
                       check_dim: bool = True, seed: int = 0, samples: int = 20) -> FormResult:
    """Chow-Lam form of ``spec`` in primal coordinates ``p`` of Gr(k+n-r, n).

    Parametrized presentations are handled by :func:`chow_lam_parametrized`
    and come back in dual coordinates.
    """
    if spec.matrix is not None:
        return chow_lam_parametrized(spec, budget, verify=verify, seed=seed, samples=samples)
    k, n, r = spec.k, spec.n, spec.r
    m = k + n - r
    if check_dim:
        d = check_dimension(spec, budget)
        if d != spec.expected_dim:
            raise DimensionMismatch(f"variety has dimension {d}, expected {spec.expected_dim}")
    locus = chow_lam_locus(spec, budget)
    form, witness, _ = extract_form(locus, n - m, n, "p", budget)
    res = FormResult(form, (m, n), "primal", form.degree() if form is not None else 0,
                     witness, label=spec.label(), method="eliminate")
    if verify and form is not None:
        from .oracle import verify_form

        res.verification = verify_form(res, spec, seed=seed, incident=samples, generic=samples)
    return res


# ------------------------------------------------------- parametrizations


def parameter_table(matrix) -> VarTable:
    """Table of the parameters used by a matrix of polynomials or strings."""
    names = []
    for row in matrix:
        for x in row:
            if isinstance(x, Polynomial):
                for v in sorted(x.support(), key=x.vars.index.get):
                    if v not in names:
                        names.append(v)
    return VarTable(names)


def _load_matrix(matrix, extra_names=()):
    from .polyengine import parse_polynomial

    raw = [[x for x in row] for row in matrix]
    names = []
    for row in raw:
        for x in row:
            if isinstance(x, Polynomial):
                for v in x.vars.names:
                    if v not in names and v in x.support():
                        names.append(v)
            elif isinstance(x, str):
                p = parse_polynomial(x)
                for v in p.vars.names:
                    if v not in names:
                        names.append(v)
    names += [v for v in extra_names if v not in names]
    T = VarTable(names)
    out = []
    for row in raw:
        new = []
        for x in row:
            if isinstance(x, Polynomial):
                new.append(x.to_table(T))
            elif isinstance(x, str):
                new.append(parse_polynomial(x, T))
            else:
                new.append(Polynomial.constant(T, x))
        out.append(new)
    return out, T


def implicitize_minors(matrix, letter: str = "q", budget: Budget | None = None) -> Ideal:
    """Relations among the maximal minors of a matrix of polynomials in parameters."""
    M, P = _load_matrix(matrix)
    rows, n = len(M), len(M[0])
    qt = plucker_table(letter, rows, n)
    T = VarTable(list(P.names) + list(qt.names))
    gens = []
    for I in subsets(n, rows):
        d = determinant([[row[j - 1] for j in I] for row in M]).to_table(T)
        gens.append(Polynomial.var(T, var_name(letter, I)) - d)
    res = eliminate(Ideal(gens, T), list(P.names), budget, strategy="sugar")
    out = [g.to_table(qt) for g in res.generators if g.terms]
    return Ideal(out or [Polynomial.zero(qt)], qt)


def chow_lam_parametrized(spec: VarietySpec, budget: Budget | None = None, verify: bool = False,
                          seed: int = 0, samples: int = 20) -> FormResult:
    """Chow-Lam form for a variety swept out by the row space of ``spec.matrix``.

    The locus is parametrized by appending ``n - r`` rows of fresh
    parameters; the relations among its maximal minors are found by
    elimination.  The form is returned in dual coordinates ``q`` of
    Gr(k+n-r, n).
    """
    k, n, r = spec.k, spec.n, spec.r
    m = k + n - r
    M, P = _load_matrix(spec.matrix)
    extra = [f"_y{i}_{j}" for i in range(1, n - r + 1) for j in range(1, n + 1)]
    T = VarTable(list(P.names) + extra)
    full = [[x.to_table(T) for x in row] for row in M]
    for i in range(1, n - r + 1):
        full.append([Polynomial.var(T, f"_y{i}_{j}") for j in range(1, n + 1)])
    locus = implicitize_minors(full, "q", budget)
    form, witness, _ = extract_form(locus, m, n, "q", budget)
    res = FormResult(form, (m, n), "dual", form.degree() if form is not None else 0,
                     witness, label=spec.label(), method="eliminate")
    if verify and form is not None:
        from .oracle import verify_form

        res.verification = verify_form(res, spec, seed=seed, incident=samples, generic=samples)
    return res


def swept_variety(spec: VarietySpec, letter: str = "x", budget: Budget | None = None) -> Ideal:
    """Ideal in P^{n-1} of the union of the subspaces Q in the variety.

    For a curve in Gr(2,4) this is its ruled surface.  Points lie on Q
    when ``q ^ x = 0``.
    """
    k, n = spec.k, spec.n
    qn = [var_name("q", I) for I in subsets(n, k)]
    xn = [f"{letter}[{i}]" for i in range(1, n + 1)]
    table = VarTable(qn + xn)
    q = PluckerVector(k, n, {I: Polynomial.var(table, var_name("q", I)) for I in subsets(n, k)})
    x = PluckerVector(1, n, {(i,): Polynomial.var(table, f"{letter}[{i}]") for i in range(1, n + 1)})
    on_line = [v for v in wedge(q, x).coords.values() if v.terms]
    V = [g.to_table(table) for g in spec.ideal_generators()]
    gens = V + plucker_relations(k, n, "q", table) + on_line
    return project_out_q(gens, table, qn, VarTable(xn), budget)


# --------------------------------------------------- determinantal formulas


def bezout_chow_rnc5() -> Polynomial:
    """Chow form of the rational normal quartic curve as a Bezout determinant
    in primal coordinates ``p[i,j]`` of Gr(3,5)."""
    T = plucker_table("p", 2, 5)

    def p(i, j):
        return Polynomial.var(T, var_name("p", (i, j)))

    M = [
        [p(1, 2), p(1, 3), p(1, 4), p(1, 5)],
        [p(1, 3), p(1, 4) + p(2, 3), p(1, 5) + p(2, 4), p(2, 5)],
        [p(1, 4), p(1, 5) + p(2, 4), p(2, 5) + p(3, 4), p(3, 5)],
        [p(1, 5), p(2, 5), p(3, 5), p(4, 5)],
    ]
    return determinant(M)


def stiefel_table(n: int = 5) -> VarTable:
    return VarTable([f"a[{i}]" for i in range(1, n + 1)] + [f"b[{i}]" for i in range(1, n + 1)])


def primal_stiefel_expansion(f: Polynomial, n: int = 5) -> Polynomial:
    """Substitute ``p[i,j] = a_i b_j - a_j b_i`` into a form on Gr(n-2, n)."""
    S = stiefel_table(n)
    a = [Polynomial.var(S, f"a[{i}]") for i in range(1, n + 1)]
    b = [Polynomial.var(S, f"b[{i}]") for i in range(1, n + 1)]
    mapping = {var_name("p", (i, j)): a[i - 1] * b[j - 1] - a[j - 1] * b[i - 1]
               for i, j in subsets(n, 2)}
    return substitute(f, mapping, S)


def sylvester_matrix(f, g):
    """Sylvester matrix of two coefficient lists (constant term first)."""
    df, dg = len(f) - 1, len(g) - 1
    size = df + dg
    zero = f[0] * 0
    rows = []
    for i in range(dg):
        row = [zero] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(df):
        row = [zero] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return rows


def sylvester_resultant_rnc5() -> Polynomial:
    """``Res_t(a_1 + ... + a_5 t^4, b_1 + ... + b_5 t^4)`` over the Stiefel table."""
    S = stiefel_table(5)
    a = [Polynomial.var(S, f"a[{i}]") for i in range(1, 6)]
    b = [Polynomial.var(S, f"b[{i}]") for i in range(1, 6)]
    return determinant(sylvester_matrix(a, b))


def positroid_3222_form() -> Polynomial:
    """Cubic Chow-Lam form of the positroid (3,2,2,2) in dual coordinates of Gr(4,9).

    Rows are the points where the lines 45, 67, 89 meet the plane 123,
    written in the basis x_1, x_2, x_3.
    """
    T = plucker_table("q", 4, 9)

    def q(*I):
        return Polynomial.var(T, var_name("q", I))

    rows = []
    for a, b in ((4, 5), (6, 7), (8, 9)):
        rows.append([q(2, 3, a, b), -q(1, 3, a, b), q(1, 2, a, b)])
    return determinant(rows)


def pair_blocks(t: int):
    return [(2 * i + 1, 2 * i + 2) for i in range(t)]


def pairing_matrix(q, blocks):
    """Symmetric matrix with zero diagonal and entries ``q[B_i + B_j]``."""
    t = len(blocks)
    rows = []
    for i in range(t):
        row = []
        for j in range(t):
            if i == j:
                row.append(None)
            else:
                row.append(q[tuple(blocks[i]) + tuple(blocks[j])])
        rows.append(row)
    sample = next(x for row in rows for x in row if x is not None)
    zero = sample * 0
    return [[zero if x is None else x for x in row] for row in rows]


def _as_plucker(q_or_X, size: int, n: int):
    if isinstance(q_or_X, PluckerVector):
        if q_or_X.size != size or q_or_X.n != n:
            raise ValueError(f"expected coordinates of size {size} on [1..{n}]")
        return q_or_X
    X = linalg.as_matrix(q_or_X)
    if len(X) != size or any(len(row) != n for row in X):
        raise ValueError(f"expected a {size} x {n} matrix")
    return dual_coordinates(X)


def five_lines_form(q_or_X=None, letter: str = "q"):
    """Skew pairing determinant for five lines in P^3 admitting a transversal.

    With no argument, the symbolic form in ``q[I]`` on Gr(4,10); with a 4x10
    matrix or a PluckerVector, its exact value.
    """
    if q_or_X is None:
        q = PluckerVector.symbolic(letter, 4, 10)
        return determinant(pairing_matrix(q, pair_blocks(5)))
    q = _as_plucker(q_or_X, 4, 10)
    return linalg.det(pairing_matrix(q, pair_blocks(5)))


def hurwitz_lam_G28(q_or_X=None, letter: str = "q"):
    """Hurwitz-Lam form of the positroid (2,2,2,2) in Gr(2,8), on Gr(4,8).

    The form is invariant under duality, so ``letter="p"`` gives it in
    primal coordinates as well.
    """
    if q_or_X is None:
        q = PluckerVector.symbolic(letter, 4, 8)
        return determinant(pairing_matrix(q, pair_blocks(4)))
    q = _as_plucker(q_or_X, 4, 8)
    return linalg.det(pairing_matrix(q, pair_blocks(4)))


def duality_map(f: Polynomial, letter: str, size: int, n: int) -> Polynomial:
    """Apply ``x_I -> sign(I, I^c) x_{I^c}`` to a form in variables ``letter[I]``."""
    T = plucker_table(letter, n - size, n)
    mapping = {}
    for I in subsets(n, size):
        Ic = complement(I, n)
        v = Polynomial.var(T, var_name(letter, Ic))
        mapping[var_name(letter, I)] = v if shuffle_sign(I, Ic) > 0 else -v
    return substitute(f, mapping, T)


def wedge_columns(X, blocks):
    """Matrix whose columns are the wedges of column blocks of X (rows in lex order)."""
    X = linalg.as_matrix(X)
    s = len(X)
    cols = []
    for blk in blocks:
        sub = [[row[j - 1] for j in blk] for row in X]
        pv = dual_coordinates_of_columns(sub)
        cols.append([pv.get(I, ZERO) for I in combinations(range(1, s + 1), len(blk))])
    return linalg.transpose(cols)


def dual_coordinates_of_columns(C):
    """Minors of the s x b matrix C on each b-subset of rows, keyed by row set."""
    s, b = len(C), len(C[0])
    out = {}
    for R in combinations(range(1, s + 1), b):
        out[R] = linalg.det([C[i - 1] for i in R])
    return out


def hodge_star_rows(Xt, s: int, b: int):
    """Rows of ``(X~)*``: row I is ``sign(I, I^c)`` times row ``I^c``."""
    rows_idx = list(combinations(range(1, s + 1), b))
    pos = {I: i for i, I in enumerate(rows_idx)}
    out = []
    for I in rows_idx:
        Ic = complement(I, s)
        sg = shuffle_sign(I, Ic)
        out.append([x * sg for x in Xt[pos[Ic]]])
    return out


def xtilde_pairing(X, blocks):
    """``(X~)^T (X~)*`` for the wedge columns of X."""
    s = len(X)
    Xt = wedge_columns(X, blocks)
    Xs = hodge_star_rows(Xt, s, len(blocks[0]))
    return linalg.matmul(linalg.transpose(Xt), Xs)


def _plucker_quadric_g24(L):
    """``L12 L34 - L13 L24 + L14 L23`` for L indexed in lex pair order."""
    l12, l13, l14, l23, l24, l34 = L
    return l12 * l34 - l13 * l24 + l14 * l23


def cramer_kernel(Xt):
    """For an (c+1) x c matrix, the left kernel vector with entries (-1)^i det(X~ minus row i)."""
    rows = len(Xt)
    out = []
    for i in range(rows):
        minor = [Xt[j] for j in range(rows) if j != i]
        d = linalg.det(minor)
        out.append(d if i % 2 == 0 else -d)
    return out


def catalan_chow_lam(s: int, X):
    """Chow-Lam form of the positroid (2,...,2) with 2s-3 blocks at an s x 2(2s-3) matrix.

    s = 4 uses the Gr(2,4) quadric on the Cramer kernel; s = 5 uses the
    Chow form of Gr(2,5) from :func:`chow_form_G2s`.
    """
    if s not in (4, 5):
        raise ValueError("only s = 4 and s = 5 are supported")
    t = 2 * s - 3
    X = linalg.as_matrix(X)
    if len(X) != s or any(len(row) != 2 * t for row in X):
        raise ValueError(f"expected an {s} x {2 * t} matrix")
    Xt = wedge_columns(X, pair_blocks(t))
    if s == 4:
        return _plucker_quadric_g24(cramer_kernel(Xt))
    return chow_form_G2s(5, linalg.transpose(Xt))


def _skew(v, s):
    idx = list(combinations(range(1, s + 1), 2))
    M = [[ZERO] * s for _ in range(s)]
    for (i, j), x in zip(idx, v):
        M[i - 1][j - 1] = x
        M[j - 1][i - 1] = -x
    return M


_TERNARY = VarTable(["x", "y", "z"])
_QUAD_MONOMIALS = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


def gr25_pencil_determinant(U, V, W):
    """The 6x6 coefficient determinant for the net ``xU + yV + zW`` of 5x5 skew matrices.

    ``f_1..f_5`` are the Pfaffian quadrics (``f_i`` omits index i) and
    ``f_6`` is the z-derivative of the Jacobian determinant of f_1, f_2, f_3.
    Raises DegenerateInput when ``f_6`` vanishes identically.
    """
    x, y, z = _TERNARY.gens()
    P = [[x.scale(U[i][j]) + y.scale(V[i][j]) + z.scale(W[i][j]) for j in range(5)] for i in range(5)]
    fs = []
    for omit in range(1, 6):
        j, k, l, m = [i for i in range(1, 6) if i != omit]
        e = lambda a, b: P[a - 1][b - 1]
        fs.append(e(j, k) * e(l, m) - e(j, l) * e(k, m) + e(j, m) * e(k, l))
    jac = [[f.diff(v) for v in ("x", "y", "z")] for f in fs[:3]]
    f6 = determinant(jac).diff("z")
    if not f6.terms:
        raise DegenerateInput("the Jacobian derivative vanishes")
    fs.append(f6)
    rows = [[f.coefficient(mono) for mono in _QUAD_MONOMIALS] for f in fs]
    return linalg.det(rows)


def chow_form_G2s(s: int, hyperplanes, seed: int = 0, retries: int = 5):
    """Chow form of Gr(2,s) at 2s-3 hyperplanes of its Pluecker space.

    ``hyperplanes`` is a list of coefficient vectors indexed by pairs in lex
    order.  For s = 4 the value is the Pluecker quadric at the Cramer kernel
    vector; for s = 5 the kernel basis U, V, W (as skew matrices) feeds the
    6x6 determinant, divided by ``w_45``.  The value depends on the chosen
    kernel basis only through a nonzero scalar.
    """
    if s not in (4, 5):
        raise ValueError("only s = 4 and s = 5 are supported")
    H = linalg.as_matrix(hyperplanes)
    npairs = s * (s - 1) // 2
    if len(H) != 2 * s - 3 or any(len(h) != npairs for h in H):
        raise ValueError(f"expected {2 * s - 3} hyperplanes with {npairs} coordinates")
    if s == 4:
        return _plucker_quadric_g24(cramer_kernel(linalg.transpose(H)))
    ker = linalg.nullspace(H)
    if len(ker) != 3:
        raise DegenerateInput(f"hyperplanes have a {len(ker)}-dimensional common kernel")
    return gr25_chow_from_basis(ker, seed=seed, retries=retries)


def gr25_chow_from_basis(basis, seed: int = 0, retries: int = 5):
    """``det / w_45`` for a kernel basis; a degenerate basis is replaced by a
    random invertible recombination, at most ``retries`` times."""
    import random

    rng = random.Random(seed)
    basis = [list(v) for v in basis]
    for attempt in range(retries + 1):
        U, V, W = (_skew(v, 5) for v in basis)
        w45 = W[3][4]
        if w45:
            try:
                return gr25_pencil_determinant(U, V, W) / w45
            except DegenerateInput:
                pass
        G = linalg.random_matrix(3, 3, rng, 100)
        basis = [linalg.combine(row, basis) for row in G]
    raise DegenerateInput("no usable kernel basis after retries")


def hurwitz_form_G24(L):
    """Hurwitz form of Gr(2,4) at a line of P^5 with coordinates ``L[(i,j)]``.

    Coordinates are indexed by positions 1..6 of the row order
    12, 13, 23, 14, 24, 34; the sign is (-1) to the number of entries of
    (i, j) equal to 2 or 5.
    """
    if isinstance(L, PluckerVector):
        get = lambda i, j: L[(i, j)]
    else:
        get = lambda i, j: L[(i, j)] if (i, j) in L else -L[(j, i)]
    total = ZERO
    for i, j in combinations(range(1, 7), 2):
        sg = (-1) ** sum(1 for x in (i, j) if x in (2, 5))
        total += sg * get(i, j) * get(7 - j, 7 - i)
    return total


G24_ROW_ORDER = [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]


def xtilde_g28(X):
    """The 6x4 matrix of wedges x_1^x_2, ..., x_7^x_8 with rows ordered 12,13,23,14,24,34."""
    X = linalg.as_matrix(X)
    lex = list(combinations(range(1, 5), 2))
    Xt = wedge_columns(X, pair_blocks(4))
    return [Xt[lex.index(I)] for I in G24_ROW_ORDER]


def hurwitz_line_from_X(X):
    """Coordinates ``L[(i,j)]`` of the left kernel of X~ (6x4), as signed
    complementary 4x4 minors, i.e. primal coordinates of the row span of X~^T."""
    Xt = xtilde_g28(X)
    pv = PluckerVector(4, 6, {R: linalg.det([Xt[i - 1] for i in R]) for R in combinations(range(1, 7), 4)}, "dual")
    return pv.converted()


def xtilde_star_g28(Xt):
    """Hodge star of the rows of X~ in the 12,13,23,14,24,34 order: row i pairs with row 7-i."""
    out = []
    for i, I in enumerate(G24_ROW_ORDER):
        Ic = complement(I, 4)
        j = G24_ROW_ORDER.index(Ic)
        sg = shuffle_sign(I, Ic)
        out.append([x * sg for x in Xt[j]])
    return out


def higher_cl_222_identity_check(X):
    """Both sides of the degree 12 factorization for a 4x6 matrix X.

    Returns ``(primal, dets, pairing)``: the product p12 p34 p56 of primal
    coordinates of the row space, the product of the three 4x4 determinants,
    and the product of the three off-diagonal entries of X~^T X~*.
    """
    X = linalg.as_matrix(X)
    q = PluckerVector(4, 6, {I: linalg.det([[row[j - 1] for j in I] for row in X])
                             for I in combinations(range(1, 7), 4)})
    p = q.converted()
    primal = p[(1, 2)] * p[(3, 4)] * p[(5, 6)]

    def d(*cols):
        return linalg.det([[row[j - 1] for j in cols] for row in X])

    dets = d(3, 4, 5, 6) * d(1, 2, 5, 6) * d(1, 2, 3, 4)
    M = xtilde_pairing(X, pair_blocks(3))
    pairing = M[0][1] * M[0][2] * M[1][2]
    return primal, dets, pairing


# ------------------------------------------------------------ hypersimplex


def hypersimplex_table() -> VarTable:
    xi = [var_name("xi", I) for I in subsets(6, 2)]
    return VarTable(plucker_names_q3() + xi)


def plucker_names_q3():
    return [var_name("q", I) for I in subsets(6, 3)]


def hypersimplex_form(table: VarTable | None = None) -> Polynomial:
    """Chow-Lam form of the toric variety of a generic point of Gr(2,6),
    in dual coordinates ``q[i,j,k]`` with coefficients in ``xi[i,j]``."""
    T = table or hypersimplex_table()

    def q(*I):
        return Polynomial.var(T, var_name("q", I))

    def xi(i, j):
        return Polynomial.var(T, var_name("xi", (i, j)))

    return (
        (xi(1, 4) * xi(2, 6) * xi(3, 5) + xi(1, 5) * xi(2, 4) * xi(3, 6) - xi(1, 6) * xi(2, 4) * xi(3, 5))
        * q(1, 2, 3) * q(4, 5, 6)
        - xi(1, 3) * xi(2, 5) * xi(4, 6) * q(1, 2, 4) * q(3, 5, 6)
        + xi(1, 2) * xi(3, 5) * xi(4, 6) * q(1, 3, 4) * q(2, 5, 6)
        - xi(1, 2) * xi(3, 4) * xi(5, 6) * q(1, 3, 5) * q(2, 4, 6)
        + xi(1, 3) * xi(2, 4) * xi(5, 6) * q(1, 2, 5) * q(3, 4, 6)
    )


def hypersimplex_identity() -> Polynomial:
    """The form after substituting its parametrization; identically zero."""
    names = [f"a[{i},{j}]" for i in (1, 2) for j in range(1, 7)]
    names += [f"x[{j}]" for j in range(1, 7)] + [f"y[{j}]" for j in range(1, 7)]
    T = VarTable(names)
    a = [[Polynomial.var(T, f"a[{i},{j}]") for j in range(1, 7)] for i in (1, 2)]
    x = [Polynomial.var(T, f"x[{j}]") for j in range(1, 7)]
    y = [Polynomial.var(T, f"y[{j}]") for j in range(1, 7)]
    M = [[a[0][j] * x[j] for j in range(6)], [a[1][j] * x[j] for j in range(6)], y]
    mapping = {}
    for I in subsets(6, 3):
        mapping[var_name("q", I)] = determinant([[row[j - 1] for j in I] for row in M])
    for i, j in subsets(6, 2):
        mapping[var_name("xi", (i, j))] = a[0][i - 1] * a[1][j - 1] - a[0][j - 1] * a[1][i - 1]
    return substitute(hypersimplex_form(), mapping, T)


def hypersimplex_specialization() -> Polynomial:
    """Specialize xi12 = xi34 = xi56 = 0 and all other xi to 1."""
    f = hypersimplex_form()
    vals = {var_name("xi", I): (0 if I in ((1, 2), (3, 4), (5, 6)) else 1) for I in subsets(6, 2)}
    out = f.subs(vals)
    return out.to_table(plucker_table("q", 3, 6))


# ----------------------------------------------------- substitution formulas


def _form_size(form: Polynomial, letter: str = "p") -> int:
    sizes = {len(_index(v)) for v in form.vars.names if v.startswith(letter + "[")}
    if len(sizes) != 1:
        raise ValueError("form must be written in one family of Pluecker variables")
    return sizes.pop()


def _index(name):
    from .grassmann import parse_index

    return parse_index(name)


def _unwrap(form):
    if isinstance(form, FormResult):
        if form.form is None:
            raise ValueError("degenerate locus has no form")
        if form.coordinate_kind != "primal":
            raise ValueError("form must be written in primal coordinates")
        return form.form
    return form


def project_form(form, Z, emission: str = "dual") -> Polynomial:
    """Replace primal coordinates by twistor coordinates of ``[Z | Y]``."""
    f = _unwrap(form)
    size = _form_size(f)
    m = twistor_map(Z, size, emission)
    return m.apply(f.to_table(m.source))


def intersect_form(form, L: PluckerVector) -> Polynomial:
    """Form of the variety cut down to Gr(k, L), in primal coordinates of M.

    Substitutes ``p = l ^ m`` where ``l`` holds primal coordinates of L.
    """
    f = _unwrap(form)
    size = _form_size(f)
    if L.kind != "primal":
        L = L.to_primal()
    n = L.n
    c = L.size
    if c > size:
        raise ValueError("codim(L) exceeds the codimension of the form's subspaces")
    if c == 0:
        return f
    T = plucker_table("p", size - c, n)
    msym = PluckerVector(size - c, n, {I: Polynomial.var(T, var_name("p", I)) for I in subsets(n, size - c)},
                         "primal")
    lsym = PluckerVector(c, n, {I: Polynomial.constant(T, v) for I, v in L.coords.items()}, "primal")
    w = wedge(lsym, msym)
    mapping = {var_name("p", K): w[K] for K in subsets(n, size)}
    return substitute(f.to_table(plucker_table("p", size, n)), mapping, T)


def join_form(form, L: PluckerVector) -> Polynomial:
    """Form of the join with Gr(k, L), in primal coordinates of M.

    Substitutes primal coordinates of L + M, whose dual coordinates are
    ``l ^ m`` on the dual side.
    """
    f = _unwrap(form)
    size = _form_size(f)
    if L.kind != "dual":
        L = L.to_dual()
    n = L.n
    a = L.size
    if a == 0:
        return f
    dim_lm = n - size
    dm = dim_lm - a
    if dm < 0:
        raise ValueError("L is too large for this form")
    T = plucker_table("p", n - dm, n)
    # dual coordinates of M in terms of its primal variables
    mprim = PluckerVector(n - dm, n, {I: Polynomial.var(T, var_name("p", I)) for I in subsets(n, n - dm)},
                          "primal")
    mdual = mprim.converted()
    lsym = PluckerVector(a, n, {I: Polynomial.constant(T, v) for I, v in L.coords.items()}, "dual")
    sumdual = wedge(lsym, mdual)
    sumprim = sumdual.converted()
    mapping = {var_name("p", K): sumprim[K] for K in subsets(n, size)}
    return substitute(f.to_table(plucker_table("p", size, n)), mapping, T)
