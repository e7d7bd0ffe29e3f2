from math import comb

import pytest

from chowlam.grassmann import plucker_table, subsets
from chowlam.polyengine import parse_polynomial
from chowlam.schubert import (
    CohomologyClass,
    ParityError,
    Partition,
    catalan,
    chow_lam_degree_numeric,
    chow_lam_degree_rank2,
    chow_lam_index,
    cohomology_class_numeric,
    disjoint_nonbases_degree,
    dual_index,
    grassmannian_degree,
    max_table,
    max_table_tsv,
    partitions,
    positroid_class_rank2,
    schubert_dim,
)
from chowlam.varieties import VarietySpec

TABLE = """9 3 3222
10 5 22222
11 5 222221
12 6 33222
13 9 322222
14 14 2222222
15 14 22222221
16 19 3322222
17 28 32222222
18 42 222222222
19 43 33322222
20 62 332222222
21 90 3222222222
22 132 22222222222
23 145 3332222222
24 207 33222222222
25 297 322222222222
26 429 2222222222222
27 497 333222222222
28 704 3322222222222
29 1001 32222222222222
30 1430 222222222222222"""


def syt_count(rows, cols):
    # standard Young tableaux of a rectangle by filling cells one at a time
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def count(shape):
        if sum(shape) == rows * cols:
            return 1
        total = 0
        for i in range(rows):
            if shape[i] < cols and (i == 0 or shape[i - 1] > shape[i]):
                total += count(shape[:i] + (shape[i] + 1,) + shape[i + 1:])
        return total

    return count((0,) * rows)


def test_partition_parsing():
    assert Partition.parse("3222").parts == (3, 2, 2, 2)
    assert Partition.parse("(10,2,1)").parts == (10, 2, 1)
    assert str(Partition((3, 2, 2, 2))) == "(3222)"
    with pytest.raises(ValueError):
        Partition((1, 2))


def test_published_degrees():
    assert chow_lam_degree_rank2((3, 2, 2, 2)) == 3
    assert chow_lam_degree_rank2((2, 2, 2, 2, 2)) == 5
    assert chow_lam_degree_rank2((2, 1)) == 1
    assert positroid_class_rank2((2, 2, 2)).chow_lam_degree(5) == 2


def test_parity():
    with pytest.raises(ParityError):
        chow_lam_degree_rank2((2, 2))
    with pytest.raises(ValueError):
        chow_lam_degree_rank2((2,))


def test_max_table_matches_published():
    rows = max_table(9, 30)
    assert len(rows) == 22
    for (n, lam, arg), line in zip(rows, TABLE.splitlines()):
        n0, lam0, beta = line.split()
        assert (n, lam) == (int(n0), int(lam0))
        assert [str(b) for b in arg] == [f"({beta})"]
    assert max_table_tsv(rows).splitlines()[1] == "9\t3\t(3222)"


def test_middle_coefficient_all_small_partitions():
    for n in range(3, 17):
        for parts in partitions(n):
            if (n - len(parts)) % 2 == 0:
                continue
            cls = positroid_class_rank2(parts)
            r = (n + len(parts) + 1) // 2
            assert cls.chow_lam_degree(r) == chow_lam_degree_rank2(parts)
            assert cls.dim in (None, 2 * (r - 2) - 1)


def test_class_dimension_bookkeeping():
    for n in (5, 6, 7):
        for I in subsets(n, 2):
            assert schubert_dim(I) + schubert_dim(dual_index(I, n)) == 2 * (n - 2)
    assert schubert_dim(chow_lam_index(3, 6)) == 3 * 3 - 1
    with pytest.raises(ValueError):
        CohomologyClass(2, 5, {(1, 5): 1, (1, 2): 1})


@pytest.mark.parametrize("s", range(3, 10))
def test_catalan_positroids(s):
    assert chow_lam_degree_rank2((2,) * (2 * s - 3)) == catalan(s - 1)


@pytest.mark.parametrize("s", range(2, 13))
def test_grassmannian_degree_catalan(s):
    assert grassmannian_degree(2, s) == catalan(s - 2) == comb(2 * s - 4, s - 2) // (s - 1)


@pytest.mark.parametrize("k,s", [(2, 5), (3, 6), (3, 7), (4, 8), (1, 6)])
def test_grassmannian_degree_counts_tableaux(k, s):
    assert grassmannian_degree(k, s) == syt_count(k, s - k)


def test_disjoint_nonbases():
    assert disjoint_nonbases_degree(3, 10) == 210
    assert disjoint_nonbases_degree(2, 5) == 5
    assert disjoint_nonbases_degree(2, 7) == 14
    assert grassmannian_degree(3, 6) == 42
    with pytest.raises(ValueError):
        disjoint_nonbases_degree(3, 9)


@pytest.mark.parametrize("beta", [(2, 2, 2), (4, 1, 1), (3, 2, 1), (2, 2, 2, 1), (4, 3)])
def test_numeric_class_matches_formula(beta):
    spec = VarietySpec(2, sum(beta), positroid=beta)
    assert cohomology_class_numeric(spec, seed=1) == positroid_class_rank2(beta)


def test_numeric_threefolds():
    T = plucker_table("q", 2, 5)
    gens = [parse_polynomial(g, T) for g in ["q[1,2] + q[1,3]", "q[2,4] + q[2,5]", "q[2,3] + q[3,5]"]]
    three = VarietySpec(2, 5, r=4, generators=gens)
    assert cohomology_class_numeric(three).coeffs == {(1, 5): 1, (2, 4): 2}
    assert chow_lam_degree_numeric(VarietySpec(2, 5, schubert=(2, 4))) == 1
    assert chow_lam_degree_numeric(VarietySpec(2, 5, schubert=(1, 5))) == 0


def test_numeric_quadric_section():
    # two linear forms and a quadric on Gr(2,5)
    T = plucker_table("q", 2, 5)
    lin = ["q[1,2] - 3*q[1,4] + 2*q[2,5] + q[3,4] - 7*q[4,5]",
           "2*q[1,3] + q[1,5] - q[2,3] + 5*q[2,4] + q[3,5]"]
    quad = "q[1,2]*q[3,5] + 2*q[1,4]^2 - q[2,3]*q[4,5] + 3*q[1,5]*q[2,4] - q[3,4]^2 + q[1,3]*q[2,5]"
    spec = VarietySpec(2, 5, r=4, generators=[parse_polynomial(g, T) for g in lin + [quad]])
    assert chow_lam_degree_numeric(spec, seed=3) == 4
