import pytest

from nichols_a2 import ext, resolution as rsl
from nichols_a2.qalgebra import MODE_GRADED
from tests.conftest import build_algebra


def test_sigma_tau_values():
    # sigma alternates 1, N-1; tau accumulates the partial exponent sums
    for N in (3, 5):
        assert [rsl.sigma(a, N) for a in range(1, 6)] == \
            [1, N - 1, 1, N - 1, 1]
        assert rsl.tau(0, N) == 0
        for a in range(1, 8):
            assert rsl.tau(a, N) == rsl.tau(a - 1, N) + rsl.sigma(a, N)


def test_generator_labels_shape():
    for n in range(6):
        labels = rsl.generator_labels(n)
        assert len(labels) == (n + 1) * (n + 2) // 2
        assert all(sum(t) == n and min(t) >= 0 for t in labels)
        assert len(set(labels)) == len(labels)


def test_complex_property(res_n3_cyc, res_n3_fp, res_n2):
    for res in (res_n3_cyc, res_n3_fp, res_n2):
        rep = rsl.verify_complex(res)
        assert rep["ok"], rep


def test_graded_mode_complex():
    A = build_algebra(3, "cyclotomic:9", mode=MODE_GRADED)
    res = rsl.build_resolution(A, 6)
    assert rsl.verify_complex(res)["ok"]
    assert rsl.verify_exactness(res, 5)["ok"]


def test_exactness_and_degree_zero(res_n3_fp):
    rep = rsl.verify_exactness(res_n3_fp, 8)
    assert rep["ok"], rep
    assert rep["unchecked_boundary"] == 8


def test_n2_kernel_dimensions(res_n2):
    rep = rsl.verify_exactness(res_n2, 10)
    assert rep["ok"]
    for n in range(1, 10):
        want = 4 * n + 5 if n % 2 == 1 else 4 * n + 7
        assert rep["kernel_dims"][n] == want


def test_correction_term_closed_forms(algebra_n3_cyc, algebra_n5_fp):
    for A in (algebra_n3_cyc, algebra_n5_fp):
        rep = rsl.verify_dtilde_cases(A, a_max=5)
        assert rep["ok"], [c for c in rep["checks"] if not c[1]]


def test_correction_term_restores_exactness(algebra_n3_cyc):
    # dropping the correction term must break the complex property
    A = algebra_n3_cyc
    res = rsl.build_resolution(A, 3)
    d3, d2 = res.differential(3), res.differential(2)
    broken = [row[:] for row in d3]
    labels3 = rsl.generator_labels(3)
    labels2 = rsl.generator_labels(2)
    i = labels3.index((1, 0, 2))
    j = labels2.index((0, 1, 1))
    assert not broken[i][j].is_zero()
    corr = rsl.correction_term(A, 1, 0, 2)
    broken[i][j] = broken[i][j] - corr
    prod = rsl.element_matmul(broken, d2, A)
    assert any(not e.is_zero() for row in prod for e in row)


def test_dbar_identities(algebra_n3_cyc, algebra_n5_fp):
    for A in (algebra_n3_cyc, algebra_n5_fp):
        N = A.N
        Db = rsl.dbar(A)
        assert Db * A.y == A.braided_commutator(N - 1, N - 1)
        assert Db * A.x1 == A.monomial((N - 1, 0, N - 2))
        lhs = A.gen_power("x2", N - 1) * A.gen_power("x1", N - 2)
        assert lhs == (Db * A.x2).scale(A.q12 ** (-N * N + 2 * N))


def test_minimal_segment(segment_n3_cyc):
    seg = segment_n3_cyc
    assert [seg.rank(n) for n in range(5)] == [1, 2, 5, 7, 12]
    assert rsl.verify_complex(seg)["ok"]
    rep = rsl.verify_exactness(seg, 4)
    assert rep["ok"]
    mins = rsl.minimality_report(seg)
    assert all(mins.values())


def test_minimal_segment_n5():
    A = build_algebra(5, "fp:31:15")
    seg = rsl.build_minimal_segment(A)
    assert rsl.verify_complex(seg)["ok"]
    assert rsl.verify_exactness(seg, 4)["ok"]
    assert all(rsl.minimality_report(seg).values())


def test_minimal_segment_matches_big_resolution(cochain_n3_fp):
    assert ext.ext_dimensions(cochain_n3_fp, 4) == [1, 2, 5, 7, 12]


def test_flatten_differential_shapes(res_n3_fp):
    A = res_n3_fp.algebra
    rows, ncols = rsl.flatten_differential(res_n3_fp, 2)
    assert len(rows) == res_n3_fp.rank(2) * A.dim
    assert ncols == res_n3_fp.rank(1) * A.dim


def test_wrong_mode_errors():
    G = build_algebra(3, "cyclotomic:9", mode=MODE_GRADED)
    with pytest.raises(rsl.WrongMode):
        rsl.build_minimal_segment(G)
    with pytest.raises(rsl.WrongMode):
        rsl.verify_dtilde_cases(G)
