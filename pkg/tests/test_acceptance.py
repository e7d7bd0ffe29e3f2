"""End-to-end acceptance checks; each test prints one PASS/FAIL line."""

import random
import time
from fractions import Fraction

import pytest

from chowlam import linalg
from chowlam.cli import _branch_quartic, run_example
from chowlam.forms import (
    bezout_chow_rnc5,
    buchberger,
    catalan_chow_lam,
    chow_lam_eliminate,
    duality_map,
    five_lines_form,
    higher_cl_222_identity_check,
    hurwitz_form_G24,
    hurwitz_lam_G28,
    hurwitz_line_from_X,
    hypersimplex_identity,
    hypersimplex_specialization,
    pair_blocks,
    plucker_gb,
    positroid_3222_form,
    primal_stiefel_expansion,
    reduce_mod_plucker,
    swept_variety,
    sylvester_resultant_rnc5,
    xtilde_g28,
    xtilde_pairing,
    xtilde_star_g28,
)
from chowlam.grassmann import (
    dual_coordinates,
    incidence_equations,
    incidence_table,
    is_standard,
    parse_index,
    plucker_table,
    primal_coordinates,
    primal_dual_convert,
    subsets,
)
from chowlam.groebner import Ideal, is_groebner
from chowlam.oracle import (
    sample_generic,
    sample_tangent_lines,
    sample_transversal_lines,
    transversal_discriminant,
)
from chowlam.polyengine import Polynomial, VarTable, equal_up_to_scalar, parse_polynomial
from chowlam.schubert import (
    catalan,
    chow_lam_degree_rank2,
    disjoint_nonbases_degree,
    grassmannian_degree,
    max_table,
    partitions,
    positroid_class_rank2,
)
from chowlam.varieties import VarietySpec

SEED = 1729


def report(capsys, tag, ok, detail):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] {tag}: {detail}")


def mod_plucker_equal(f, g, size, n, letter="p"):
    gb = plucker_gb(size, n, letter)
    T = plucker_table(letter, size, n)
    return equal_up_to_scalar(reduce_mod_plucker(f.to_table(T), gb), reduce_mod_plucker(g.to_table(T), gb)) is not None


def same_function_on_grassmannian(f, g, k, n, rng, samples=20):
    """f = c*g on Gr(k,n) for one constant c, tested at random points."""
    ratios = set()
    for _ in range(samples):
        q = dual_coordinates(sample_generic(k, n, rng, 1000))
        a, b = q.evaluate(f, "q"), q.evaluate(g, "q")
        if b == 0:
            if a != 0:
                return False
            continue
        ratios.add(a / b)
    return len(ratios) == 1


def test_01_ruled_surface(capsys):
    t = time.time()
    payload, text = run_example("ruled-surface", samples=20)
    T = plucker_table("p", 1, 4)
    form = parse_polynomial(text.splitlines()[0], T)
    pub = parse_polynomial("20*p[1]^2 - 18*p[1]*p[2] - 2*p[2]^2 - 14*p[1]*p[3] + 2*p[3]^2"
                           " + 7*p[2]*p[4] + 9*p[3]*p[4] - 5*p[4]^2", T)
    ok_form = equal_up_to_scalar(form, pub) is not None
    from chowlam.cli import _ruled_surface_spec

    S = [g for g in swept_variety(_ruled_surface_spec()).generators if g.terms]
    X = VarTable([f"x[{i}]" for i in range(1, 5)])
    surf = parse_polynomial("x[1]^2 - 9*x[1]*x[2] - 10*x[2]^2 + 7*x[1]*x[3] + 10*x[3]^2"
                            " - 14*x[2]*x[4] + 18*x[3]*x[4] - 4*x[4]^2", X)
    ok_surf = len(S) == 1 and equal_up_to_scalar(S[0], surf) is not None
    dt = time.time() - t
    ok = ok_form and ok_surf and payload["verification"]["verdict"] == "PASS" and dt < 30
    report(capsys, "01 ruled surface", ok,
           f"quadric match={ok_form}, surface match={ok_surf}, oracle={payload['verification']['verdict']}, {dt:.1f}s")
    assert ok


def test_02_threefold_triple(capsys):
    t = time.time()
    T5 = plucker_table("q", 2, 5)
    gens = [parse_polynomial(g, T5) for g in ["q[1,2] + q[1,3]", "q[2,4] + q[2,5]", "q[2,3] + q[3,5]"]]
    res = chow_lam_eliminate(VarietySpec(2, 5, r=4, generators=gens))
    P = plucker_table("p", 2, 5)
    pub = parse_polynomial("p[1,4]*(p[2,4] - p[2,5] - p[3,4] + p[3,5]) + (p[1,2] - p[1,4] + p[1,5])*p[4,5]", P)
    ok_three = res.degree == 2 and mod_plucker_equal(res.form, pub, 2, 5)
    s24 = chow_lam_eliminate(VarietySpec(2, 5, schubert=(2, 4)))
    ok_24 = s24.form is not None and s24.form == parse_polynomial("p[4,5]", s24.form.vars)
    s15 = chow_lam_eliminate(VarietySpec(2, 5, schubert=(1, 5)))
    rel = list(plucker_gb(2, 5).generators)
    want = [parse_polynomial(f"p[{i},5]", P) for i in range(1, 5)]
    ok_15 = s15.degenerate and (
        [g.to_text() for g in buchberger(Ideal([w.to_table(P) for w in s15.witness] + rel, P))]
        == [g.to_text() for g in buchberger(Ideal(want + rel, P))])
    dt = time.time() - t
    ok = ok_three and ok_24 and ok_15 and dt < 60
    report(capsys, "02 three threefolds", ok,
           f"generic quadric mod Pluecker={ok_three}, S24->p45={ok_24}, S15 degenerate witness={ok_15}, {dt:.1f}s")
    assert ok


DISPLAYED_3222 = ("q[1,2,3,4]*q[1,2,3,7]*q[5,6,8,9] + q[1,2,3,4]*q[1,2,3,6]*q[5,7,8,9]"
                  " - q[1,2,3,5]*q[1,2,3,6]*q[4,7,8,9] - q[1,2,3,5]*q[1,2,3,7]*q[4,6,8,9]")
CORRECTED_3222 = ("-q[1,2,3,4]*q[1,2,3,7]*q[5,6,8,9] + q[1,2,3,4]*q[1,2,3,6]*q[5,7,8,9]"
                  " - q[1,2,3,5]*q[1,2,3,6]*q[4,7,8,9] + q[1,2,3,5]*q[1,2,3,7]*q[4,6,8,9]")


@pytest.mark.xfail(strict=True, reason="displayed cubic has sign errors on both q1237 terms (see ledger)")
def test_03_positroid_3222(capsys):
    rng = random.Random(SEED)
    T = plucker_table("q", 4, 9)
    D = positroid_3222_form()
    shown = parse_polynomial(DISPLAYED_3222, T)
    fixed = parse_polynomial(CORRECTED_3222, T)
    ok_shown = same_function_on_grassmannian(D, shown, 4, 9, rng)
    ok_fixed = same_function_on_grassmannian(D, fixed, 4, 9, rng)
    report(capsys, "03 positroid (3,2,2,2)", ok_shown,
           f"det equals displayed cubic on Gr(4,9)={ok_shown}; equals sign-corrected cubic={ok_fixed};"
           " elimination route not run (budget-gated stretch)")
    assert ok_fixed
    assert ok_shown


TABLE = [(9, 3, "3222"), (10, 5, "22222"), (11, 5, "222221"), (12, 6, "33222"), (13, 9, "322222"),
         (14, 14, "2222222"), (15, 14, "22222221"), (16, 19, "3322222"), (17, 28, "32222222"),
         (18, 42, "222222222"), (19, 43, "33322222"), (20, 62, "332222222"), (21, 90, "3222222222"),
         (22, 132, "22222222222"), (23, 145, "3332222222"), (24, 207, "33222222222"),
         (25, 297, "322222222222"), (26, 429, "2222222222222"), (27, 497, "333222222222"),
         (28, 704, "3322222222222"), (29, 1001, "32222222222222"), (30, 1430, "222222222222222")]


def test_04_degree_table(capsys):
    t = time.time()
    rows = max_table(9, 30)
    got = [(n, lam, "".join(map(str, arg[0].parts))) for n, lam, arg in rows]
    unique = all(len(arg) == 1 for _, _, arg in rows)
    middle = True
    for n in range(3, 17):
        for parts in partitions(n):
            if (n - len(parts)) % 2:
                r = (n + len(parts) + 1) // 2
                middle &= positroid_class_rank2(parts).chow_lam_degree(r) == chow_lam_degree_rank2(parts)
    dt = time.time() - t
    ok = got == TABLE and unique and middle and dt < 60
    report(capsys, "04 degree table", ok,
           f"22 rows match={got == TABLE}, unique maximizers={unique}, middle coefficient n<=16={middle}, {dt:.1f}s")
    assert ok


def test_05_catalan(capsys):
    a = all(chow_lam_degree_rank2((2,) * (2 * s - 3)) == catalan(s - 1) for s in range(3, 10))
    b = all(grassmannian_degree(2, s) == catalan(s - 2) for s in range(2, 13))
    c = disjoint_nonbases_degree(3, 10) == 210
    report(capsys, "05 Catalan cross-check", a and b and c,
           f"positroid 2^(2s-3) = C(s-1)={a}, deg Gr(2,s) = C(s-2)={b}, disjoint nonbases (3,10)=210: {c}")
    assert a and b and c


def test_06_five_lines(capsys):
    rng = random.Random(SEED)
    zero = sum(five_lines_form(sample_transversal_lines(5, rng, 1000)[0]) == 0 for _ in range(100))
    nonzero = sum(five_lines_form(sample_generic(4, 10, rng, 1000)) != 0 for _ in range(100))
    X = sample_generic(4, 10, rng, 1000)
    c = Fraction(7, 3)
    scaled = five_lines_form([[c * x for x in row] for row in X]) == c ** 20 * five_lines_form(X)
    ok = zero == 100 and nonzero == 100 and scaled
    report(capsys, "06 five lines", ok,
           f"vanishes on {zero}/100 transversal instances, nonzero on {nonzero}/100 generic, degree 20 in X={scaled};"
           " 18,268,320-monomial expansion not run (stretch)")
    assert ok


@pytest.mark.xfail(strict=True, reason="exact value is -1/2 det, not +1/2 det (see ledger)")
def test_07_quadric_identity(capsys):
    rng = random.Random(SEED)
    plus = minus = 0
    for _ in range(100):
        X = sample_generic(4, 10, rng, 1000)
        C = catalan_chow_lam(4, X)
        d = linalg.det(xtilde_pairing(X, pair_blocks(5)))
        plus += C == d / 2
        minus += C == -d / 2
    report(capsys, "07 Pluecker quadric vs det(X~^T X~*)", plus == 100,
           f"C = +1/2 det at {plus}/100; C = -1/2 det at {minus}/100")
    assert minus == 100
    assert plus == 100


def test_08_bezout_sylvester(capsys):
    t = time.time()
    E = primal_stiefel_expansion(bezout_chow_rnc5())
    S = sylvester_resultant_rnc5()
    dt = time.time() - t
    ok = E == S and dt < 60
    report(capsys, "08 Bezout vs Sylvester", ok, f"exact equality={E == S} ({len(S.terms)} terms), {dt:.1f}s")
    assert ok


def test_09_hypersimplex(capsys):
    zero = hypersimplex_identity().is_zero()
    spec = hypersimplex_specialization()
    want = parse_polynomial("q[1,2,3]*q[4,5,6] - q[1,2,4]*q[3,5,6]", spec.vars)
    ok = zero and equal_up_to_scalar(spec, want) is not None
    report(capsys, "09 hypersimplex", ok, f"identically zero={zero}, specialization gives the (2,2,2) form={ok}")
    assert ok


def test_10_hurwitz_lam(capsys):
    rng = random.Random(SEED)
    H = hurwitz_lam_G28()
    invariant = duality_map(H, "q", 4, 8) == H
    agree = 0
    samples = [sample_generic(4, 8, rng, 1000) for _ in range(180)]
    samples += [sample_tangent_lines(rng) for _ in range(20)]
    for X in samples:
        agree += (transversal_discriminant(X) == 0) == (hurwitz_lam_G28(X) == 0)
    tangent_zero = all(hurwitz_lam_G28(X) == 0 for X in samples[180:])
    cb = 0
    for _ in range(100):
        X = sample_generic(4, 8, rng, 1000)
        Xt = xtilde_g28(X)
        cb += hurwitz_form_G24(hurwitz_line_from_X(X)) == linalg.det(linalg.matmul(linalg.transpose(Xt),
                                                                                  xtilde_star_g28(Xt)))
    ok = invariant and agree == 200 and tangent_zero and cb == 100
    report(capsys, "10 Hurwitz-Lam", ok,
           f"duality invariant={invariant}, zero sets agree {agree}/200 (20 tangent), Hurwitz form = det at {cb}/100")
    assert ok


BRANCH_COEFFS = [
    (10, "y[1,2]^2*y[3,4]*y[5,6]"), (-4, "y[1,2]^2*y[3,5]^2"), (-4, "y[1,2]^2*y[3,5]*y[3,6]"),
    (-12, "y[1,2]^2*y[3,5]*y[4,5]"), (-14, "y[1,2]^2*y[3,5]*y[4,6]"), (-1, "y[1,2]^2*y[3,6]^2"),
    (-4, "y[1,2]^2*y[3,6]*y[4,6]"), (-9, "y[1,2]^2*y[4,5]^2"), (-12, "y[1,2]^2*y[4,5]*y[4,6]"),
    (-4, "y[1,2]^2*y[4,6]^2"), (16, "y[1,2]*y[1,3]*y[3,4]*y[5,6]"), (-16, "y[1,2]*y[1,3]*y[3,5]*y[4,5]"),
    (-20, "y[1,2]*y[1,3]*y[3,5]*y[4,6]"),
]


def test_11_branch_quartic(capsys):
    t = time.time()
    g = _branch_quartic()
    dt = time.time() - t
    got = [g.coeff_of(parse_polynomial(m, g.vars)) for _, m in BRANCH_COEFFS]
    scale = got[0] / BRANCH_COEFFS[0][0]
    match = sum(c * scale == v for (c, _), v in zip(BRANCH_COEFFS, got))
    ok = len(g.terms) == 126 and is_standard(g, "y") and match == 13 and dt < 120
    report(capsys, "11 branch quartic", ok,
           f"{len(g.terms)} standard monomials, {match}/13 coefficients match (global scalar {scale}), {dt:.1f}s")
    assert ok


def test_12_rank3_matroid(capsys):
    t = time.time()
    payload, text = run_example("matroid-rank3", verify=False)
    T = plucker_table("q", 4, 6)
    form = parse_polynomial(text.splitlines()[0], T)
    pub = parse_polynomial("q[1,2,3,4]*q[1,3,5,6]*q[2,4,5,6] + q[1,2,3,5]*q[1,2,4,6]*q[3,4,5,6]"
                           " - q[1,2,3,5]*q[1,3,4,6]*q[2,4,5,6]", T)
    ok = mod_plucker_equal(form, pub, 4, 6, "q")
    report(capsys, "12 rank 3 matroid", ok, f"cubic matches modulo Pluecker relations={ok}, {time.time() - t:.1f}s")
    assert ok


def test_13_degree12_identity(capsys):
    rng = random.Random(SEED)
    good = 0
    for _ in range(100):
        a, b, c = higher_cl_222_identity_check(sample_generic(4, 6, rng, 1000))
        good += a == b == c
    X = sample_generic(4, 6, rng, 1000)
    for row in X:
        row[1] = row[0]
    equal_cols = higher_cl_222_identity_check(X) == (0, 0, 0)
    low = linalg.matmul(sample_generic(4, 3, rng, 1000), sample_generic(3, 6, rng, 1000))
    low_rank = higher_cl_222_identity_check(low) == (0, 0, 0)
    ok = good == 100 and equal_cols and low_rank
    report(capsys, "13 degree 12 identity", ok,
           f"holds at {good}/100, zero for x1 = x2: {equal_cols}, zero for rank 3: {low_rank}")
    assert ok


def test_14_property_suites(capsys):
    rng = random.Random(SEED)
    T = VarTable(["x", "y", "z"])

    def rpoly():
        return Polynomial(T, {tuple(rng.randint(0, 3) for _ in range(3)): rng.randint(-9, 9) for _ in range(4)})

    ring = True
    for _ in range(200):
        a, b, c = rpoly(), rpoly(), rpoly()
        ring &= a * (b + c) == a * b + a * c and (a * b) * c == a * (b * c) and a + b == b + a
    x, y, z = T.gens()
    gens = [x * x + y * z - 2, x * y - z, y * y + z * z - 1]
    gb = buchberger(gens)
    groebner_ok = is_groebner(gb) and [g.to_text() for g in buchberger(list(reversed(gens)))] == \
        [g.to_text() for g in gb]
    expected = ["345", "-245", "235", "-234", "145", "-135", "134", "125", "-124", "123"]
    table = []
    for I in subsets(5, 2):
        Ic, s = primal_dual_convert(I, 3, 5, "primal")
        table.append(("-" if s < 0 else "") + "".join(map(str, Ic)))
    signs_ok = table == expected
    incidence_ok = True
    for k, n, m in [(1, 4, 2), (2, 5, 3), (2, 6, 4), (3, 7, 5)]:
        X = linalg.random_matrix(m, n, rng, 20)
        p = primal_coordinates(X)
        tab = incidence_table(k, n, m)
        eqs = incidence_equations(k, n, m, tab)
        for inside in (True, False):
            Q = linalg.matmul(linalg.random_matrix(k, m, rng, 20), X) if inside else linalg.random_matrix(k, n, rng, 20)
            q = dual_coordinates(Q)
            pt = [(q if v.startswith("q") else p)[parse_index(v)] for v in tab.names]
            vanish = all(e.evaluate(pt) == 0 for e in eqs)
            incidence_ok &= vanish == inside
    ok = ring and groebner_ok and signs_ok and incidence_ok
    report(capsys, "14 property suites", ok,
           f"ring axioms={ring}, S-polynomial criterion and determinism={groebner_ok},"
           f" sign table={signs_ok}, incidence iff containment={incidence_ok}")
    assert ok
