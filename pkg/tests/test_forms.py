import random
from itertools import combinations

import pytest

from chowlam import linalg
from chowlam.forms import (
    DegenerateInput,
    bezout_chow_rnc5,
    buchberger,
    catalan_chow_lam,
    chow_form_G2s,
    chow_lam_eliminate,
    duality_map,
    extract_form,
    five_lines_form,
    gr25_chow_from_basis,
    higher_cl_222_identity_check,
    hurwitz_form_G24,
    hurwitz_lam_G28,
    hurwitz_line_from_X,
    hypersimplex_identity,
    hypersimplex_specialization,
    intersect_form,
    join_form,
    pair_blocks,
    plucker_gb,
    positroid_3222_form,
    primal_stiefel_expansion,
    project_form,
    reduce_mod_plucker,
    swept_variety,
    sylvester_resultant_rnc5,
    wedge_columns,
    xtilde_g28,
    xtilde_pairing,
    xtilde_star_g28,
)
from chowlam.forms import _skew
from chowlam.grassmann import dual_coordinates, plucker_table, primal_coordinates
from chowlam.groebner import Ideal
from chowlam.oracle import sample_generic, sample_incident, sample_transversal_lines
from chowlam.polyengine import Polynomial, VarTable, equal_up_to_scalar, parse_polynomial
from chowlam.schubert import chow_lam_degree_rank2
from chowlam.varieties import FormResult, VarietySpec

RULED = ["q[1,2] + q[1,4] - 2*q[2,3] + 2*q[3,4]",
         "q[1,3] + 2*q[1,4] + q[2,3] + 2*q[2,4]",
         "5*q[1,2] + 2*q[1,4] - 25*q[2,3] + 10*q[3,4]"]


def ruled_spec():
    T = plucker_table("q", 2, 4)
    return VarietySpec(2, 4, r=3, generators=[parse_polynomial(g, T) for g in RULED], sampler="conic")


def threefold_spec():
    T = plucker_table("q", 2, 5)
    gens = ["q[1,2] + q[1,3]", "q[2,4] + q[2,5]", "q[2,3] + q[3,5]"]
    return VarietySpec(2, 5, r=4, generators=[parse_polynomial(g, T) for g in gens])


def same_mod_plucker(f, g, size, n, letter="p"):
    gb = plucker_gb(size, n, letter)
    T = plucker_table(letter, size, n)
    a = reduce_mod_plucker(f.to_table(T), gb)
    b = reduce_mod_plucker(g.to_table(T), gb)
    return equal_up_to_scalar(a, b) is not None


# ------------------------------------------------------------ elimination


@pytest.fixture(scope="module")
def ruled_result():
    return chow_lam_eliminate(ruled_spec(), verify=True, samples=10)


def test_ruled_surface_form(ruled_result):
    T = plucker_table("p", 1, 4)
    pub = parse_polynomial("20*p[1]^2 - 18*p[1]*p[2] - 2*p[2]^2 - 14*p[1]*p[3] + 2*p[3]^2"
                           " + 7*p[2]*p[4] + 9*p[3]*p[4] - 5*p[4]^2", T)
    assert equal_up_to_scalar(ruled_result.form, pub) is not None
    assert ruled_result.ambient == (3, 4)
    assert ruled_result.verification["verdict"] == "PASS"


def test_ruled_surface_points():
    S = swept_variety(ruled_spec())
    X = VarTable([f"x[{i}]" for i in range(1, 5)])
    pub = parse_polynomial("x[1]^2 - 9*x[1]*x[2] - 10*x[2]^2 + 7*x[1]*x[3] + 10*x[3]^2"
                           " - 14*x[2]*x[4] + 18*x[3]*x[4] - 4*x[4]^2", X)
    gens = [g for g in S.generators if g.terms]
    assert len(gens) == 1
    assert equal_up_to_scalar(gens[0], pub) is not None


def test_threefold_form():
    res = chow_lam_eliminate(threefold_spec())
    T = plucker_table("p", 2, 5)
    pub = parse_polynomial("p[1,4]*(p[2,4] - p[2,5] - p[3,4] + p[3,5]) + (p[1,2] - p[1,4] + p[1,5])*p[4,5]", T)
    assert res.degree == 2
    assert same_mod_plucker(res.form, pub, 2, 5)


def test_schubert_threefolds():
    res = chow_lam_eliminate(VarietySpec(2, 5, schubert=(2, 4)))
    assert res.form == parse_polynomial("p[4,5]", res.form.vars)
    deg = chow_lam_eliminate(VarietySpec(2, 5, schubert=(1, 5)))
    assert deg.degenerate
    T = plucker_table("p", 2, 5)
    want = [parse_polynomial(f"p[{i},5]", T) for i in range(1, 5)]
    rel = list(plucker_gb(2, 5).generators)
    a = buchberger(Ideal([w.to_table(T) for w in deg.witness] + rel, T))
    b = buchberger(Ideal(want + rel, T))
    assert [g.to_text() for g in a] == [g.to_text() for g in b]


def test_positroid_222():
    res = chow_lam_eliminate(VarietySpec(2, 6, positroid=(2, 2, 2)))
    T = plucker_table("p", 3, 6)
    pub = parse_polynomial("p[1,2,3]*p[4,5,6] - p[1,2,4]*p[3,5,6]", T)
    assert equal_up_to_scalar(res.form, pub) is not None
    assert res.degree == chow_lam_degree_rank2((2, 2, 2))


def test_self_locus_when_r_equals_n():
    # r = n: the locus is the variety itself in primal coordinates
    T = plucker_table("q", 2, 4)
    spec = VarietySpec(2, 4, r=4, generators=[parse_polynomial("q[1,2] - q[3,4]", T)])
    res = chow_lam_eliminate(spec)
    assert res.form == parse_polynomial("p[1,2] - p[3,4]", res.form.vars)


def test_dimension_mismatch():
    from chowlam.forms import DimensionMismatch

    T = plucker_table("q", 2, 5)
    spec = VarietySpec(2, 5, r=4, generators=[parse_polynomial("q[1,2]", T)])
    with pytest.raises(DimensionMismatch):
        chow_lam_eliminate(spec)


def test_extract_form_whole_grassmannian():
    from chowlam.forms import DimensionMismatch

    T = plucker_table("p", 2, 4)
    with pytest.raises(DimensionMismatch):
        extract_form(Ideal([Polynomial.zero(T)], T), 2, 4)


def test_matroid_parametrization():
    M = [["x1", "0", "0", "0", "-x5", "x6"],
         ["0", "x2", "0", "x4", "0", "-x6"],
         ["0", "0", "x3", "-x4", "x5", "0"]]
    res = chow_lam_eliminate(VarietySpec(3, 6, r=5, matrix=M))
    T = plucker_table("q", 4, 6)
    pub = parse_polynomial("q[1,2,3,4]*q[1,3,5,6]*q[2,4,5,6] + q[1,2,3,5]*q[1,2,4,6]*q[3,4,5,6]"
                           " - q[1,2,3,5]*q[1,3,4,6]*q[2,4,5,6]", T)
    assert res.coordinate_kind == "dual" and res.degree == 3
    assert same_mod_plucker(res.form, pub, 4, 6, "q")


def test_form_result_json_round_trip(ruled_result):
    back = FormResult.from_json(ruled_result.to_json())
    assert back.form.to_table(ruled_result.form.vars) == ruled_result.form
    assert back.ambient == ruled_result.ambient


# ------------------------------------------------- rational normal curve


def test_bezout_equals_sylvester():
    assert primal_stiefel_expansion(bezout_chow_rnc5()) == sylvester_resultant_rnc5()


def gamma(t):
    return [t ** i for i in range(5)]


def test_bezout_vanishes_on_planes_through_the_curve(rng):
    B = bezout_chow_rnc5()
    for _ in range(5):
        t0 = rng.randint(-30, 30)
        P = [gamma(t0)] + linalg.random_matrix(2, 5, rng, 50)
        assert primal_coordinates(P).evaluate(B, "p") == 0
    for _ in range(5):
        assert primal_coordinates(sample_generic(3, 5, rng, 50)).evaluate(B, "p") != 0


# ---------------------------------------------------- determinantal forms


def test_positroid_3222(rng):
    spec = VarietySpec(2, 9, positroid=(3, 2, 2, 2))
    D = positroid_3222_form()
    assert D.degree() == 3 == chow_lam_degree_rank2((3, 2, 2, 2))
    assert len(D.terms) == 6
    for _ in range(10):
        inst = sample_incident(spec, rng, 100)
        assert dual_coordinates(inst.P_matrix).evaluate(D, "q") == 0
    for _ in range(10):
        assert dual_coordinates(sample_generic(4, 9, rng, 100)).evaluate(D, "q") != 0


def test_five_lines(rng):
    f = five_lines_form()
    assert f.degree() == 5 and f.is_homogeneous()
    for _ in range(5):
        X, _ = sample_transversal_lines(5, rng, 100)
        assert five_lines_form(X) == 0
        assert five_lines_form(sample_generic(4, 10, rng, 100)) != 0
    X = sample_generic(4, 10, rng, 100)
    v = five_lines_form(X)
    assert five_lines_form([[3 * x for x in row] for row in X]) == 3 ** 20 * v
    assert dual_coordinates(X).evaluate(f, "q") == v


def test_five_lines_is_pairing_determinant(rng):
    X = sample_generic(4, 10, rng, 100)
    M = xtilde_pairing(X, pair_blocks(5))
    assert linalg.det(M) == five_lines_form(X)
    assert all(M[i][i] == 0 for i in range(5))


def test_catalan_s4(rng):
    for _ in range(5):
        X = sample_generic(4, 10, rng, 100)
        C = catalan_chow_lam(4, X)
        assert linalg.det(xtilde_pairing(X, pair_blocks(5))) == -2 * C
    X, _ = sample_transversal_lines(5, rng, 100)
    assert catalan_chow_lam(4, X) == 0


def test_catalan_s5(rng):
    for _ in range(3):
        X, _ = sample_transversal_lines(7, rng, 100, s=5)
        assert catalan_chow_lam(5, X) == 0
        assert catalan_chow_lam(5, sample_generic(5, 14, rng, 100)) != 0


def test_gr25_chow_homogeneity(rng):
    X = sample_generic(5, 14, rng, 30)
    ker = linalg.nullspace(linalg.transpose(wedge_columns(X, pair_blocks(7))))
    base = gr25_chow_from_basis(ker)
    for i in range(3):
        scaled = [list(v) for v in ker]
        scaled[i] = [3 * x for x in scaled[i]]
        assert gr25_chow_from_basis(scaled) == 3 ** 5 * base


def test_gr25_chow_gr24_case(rng):
    X = sample_generic(4, 10, rng, 30)
    H = linalg.transpose(wedge_columns(X, pair_blocks(5)))
    assert chow_form_G2s(4, H) == catalan_chow_lam(4, X)
    with pytest.raises(ValueError):
        chow_form_G2s(6, H)


def test_gr25_degenerate_input():
    with pytest.raises(DegenerateInput):
        chow_form_G2s(5, [[1] + [0] * 9] * 7)


def test_skew_matrix():
    M = _skew(list(range(1, 11)), 5)
    assert all(M[i][j] == -M[j][i] for i in range(5) for j in range(5))


# ------------------------------------------------------------ Hurwitz-Lam


def test_hurwitz_lam_duality_invariant():
    H = hurwitz_lam_G28()
    assert duality_map(H, "q", 4, 8) == H
    assert H.degree() == 4


def test_hurwitz_form_is_pairing_determinant(rng):
    for _ in range(10):
        X = sample_generic(4, 8, rng, 100)
        Xt = xtilde_g28(X)
        M = linalg.matmul(linalg.transpose(Xt), xtilde_star_g28(Xt))
        assert hurwitz_form_G24(hurwitz_line_from_X(X)) == linalg.det(M)


def test_hurwitz_lam_symbolic_matches_numeric(rng):
    H = hurwitz_lam_G28()
    X = sample_generic(4, 8, rng, 100)
    assert dual_coordinates(X).evaluate(H, "q") == hurwitz_lam_G28(X)


def test_identity_222(rng):
    for _ in range(10):
        primal, dets, pairing = higher_cl_222_identity_check(sample_generic(4, 6, rng, 100))
        assert primal == dets == pairing != 0


def test_identity_222_degenerate(rng):
    # x_1 = x_2
    X = sample_generic(4, 6, rng, 100)
    for row in X:
        row[1] = row[0]
    assert higher_cl_222_identity_check(X) == (0, 0, 0)
    # rank 3
    X = linalg.matmul(sample_generic(4, 3, rng, 100), sample_generic(3, 6, rng, 100))
    _, dets, pairing = higher_cl_222_identity_check(X)
    assert dets == pairing == 0


# ----------------------------------------------------------- hypersimplex


def test_hypersimplex():
    assert hypersimplex_identity().is_zero()
    T = plucker_table("q", 3, 6)
    assert hypersimplex_specialization() == parse_polynomial("q[1,2,3]*q[4,5,6] - q[1,2,4]*q[3,5,6]", T)


# ---------------------------------------------- project, intersect, join


def test_project_identity_block(ruled_result):
    Z = linalg.identity(4)
    g = project_form(ruled_result, Z, emission="primal")
    renamed = parse_polynomial(ruled_result.form.to_text().replace("p[", "y["), g.vars)
    assert g == renamed


def test_project_ruled_surface_image(ruled_result, rng):
    from chowlam.oracle import _SAMPLERS

    spec = ruled_spec()
    Z = linalg.random_matrix(3, 4, rng, 20)
    g = project_form(ruled_result, Z, emission="primal")
    assert g.degree() == 2
    for _ in range(5):
        Q = _SAMPLERS["conic"](spec, rng, 100)
        img = linalg.transpose(linalg.matmul(Z, linalg.transpose(Q)))
        (y,) = linalg.nullspace(img)
        assert g.evaluate({f"y[{i}]": y[i - 1] for i in range(1, 4)}) == 0


def test_intersect_with_hyperplane(rng):
    spec = VarietySpec(2, 6, positroid=(2, 2, 2))
    res = chow_lam_eliminate(spec)
    for _ in range(4):
        inst = sample_incident(spec, rng, 100)
        P = inst.P_matrix
        # a hyperplane containing P, and M = P + one more vector
        (l,) = linalg.nullspace(P + linalg.random_matrix(2, 6, rng, 50))
        L = primal_coordinates(linalg.nullspace([l]))
        g = intersect_form(res, L)
        assert g.degree() == 2
        M = P + linalg.random_matrix(1, 6, rng, 50)
        assert primal_coordinates(M).evaluate(g, "p") == 0
        assert primal_coordinates(sample_generic(4, 6, rng, 50)).evaluate(g, "p") != 0


def test_join_point_with_curve(rng):
    B = FormResult(bezout_chow_rnc5(), (3, 5), "primal", 4)
    a = linalg.random_matrix(1, 5, rng, 20)
    g = join_form(B, dual_coordinates(a))
    assert g.degree() == 4
    for _ in range(4):
        c, t0 = rng.randint(1, 9), rng.randint(-9, 9)
        x = [c * u + v for u, v in zip(a[0], gamma(t0))]
        M = [x] + linalg.random_matrix(1, 5, rng, 50)
        assert primal_coordinates(M).evaluate(g, "p") == 0
        assert primal_coordinates(sample_generic(2, 5, rng, 50)).evaluate(g, "p") != 0
