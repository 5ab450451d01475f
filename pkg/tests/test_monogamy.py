import numpy as np
import pytest

from negmono.errors import NotNormalizedError
from negmono.matcore import complex_gaussian, negativity, schatten
from negmono.monogamy import (
    build_Z1,
    build_Z2,
    ineq2_report,
    ineq3_report,
    ineq4_report,
    monotonicity_report,
    single_term_bound,
)
from negmono.qstate import (
    TripartiteState,
    coeff_matrices,
    density,
    diagonalize_gram,
    gram_matrix,
    partial_trace_B,
    partial_trace_C,
    partial_transpose_A,
    random_state,
)

DIMS = [(2, 2, 2), (2, 3, 4), (3, 2, 2), (4, 2, 3)]


def random_mats(rng, n, db, dc):
    return [complex_gaussian(rng, (db, dc)) for _ in range(n)]


@pytest.mark.parametrize("dims", DIMS)
def test_block_matrices_against_loops(dims):
    s = random_state(dims, np.random.default_rng(0))
    mats = coeff_matrices(s)
    n, (db, dc) = len(mats), mats[0].shape
    z1 = np.zeros((n * db, n * db), dtype=complex)
    z2 = np.zeros((n * dc, n * dc), dtype=complex)
    for i in range(n):
        for j in range(n):
            z1[i * db:(i + 1) * db, j * db:(j + 1) * db] = mats[j] @ mats[i].conj().T
            z2[i * dc:(i + 1) * dc, j * dc:(j + 1) * dc] = mats[j].conj().T @ mats[i]
    np.testing.assert_allclose(build_Z1(mats), z1, atol=1e-13)
    np.testing.assert_allclose(build_Z2(mats), z2, atol=1e-13)


@pytest.mark.parametrize("dims", DIMS)
def test_block_matrices_are_partial_traces(dims):
    s = random_state(dims, np.random.default_rng(1))
    mats = coeff_matrices(s)
    pt = partial_transpose_A(density(s), dims)
    np.testing.assert_allclose(partial_trace_C(pt, dims), build_Z1(mats), atol=1e-12)
    np.testing.assert_allclose(
        partial_trace_B(pt, dims), build_Z2(mats).conj(), atol=1e-12
    )


def test_block_matrices_hermitian_unit_trace():
    s = random_state((3, 3, 2), np.random.default_rng(2))
    mats = coeff_matrices(s)
    for z in (build_Z1(mats), build_Z2(mats)):
        np.testing.assert_allclose(z, z.conj().T, atol=1e-13)
        assert np.trace(z).real == pytest.approx(1.0, abs=1e-12)


def test_two_block_identity_display():
    # with A_1 = identity, A_2 = B the first block matrix is [[I, B], [B*, BB*]]
    rng = np.random.default_rng(3)
    b = complex_gaussian(rng, (3, 3))
    z = build_Z1([np.eye(3, dtype=complex), b])
    expected = np.block([[np.eye(3), b], [b.conj().T, b @ b.conj().T]])
    np.testing.assert_allclose(z, expected, atol=1e-14)


@pytest.mark.parametrize("dims", DIMS)
def test_inequality_chain_holds_on_random_states(dims):
    rng = np.random.default_rng(4)
    for _ in range(20):
        s = random_state(dims, rng)
        mats = coeff_matrices(s)
        r2 = ineq2_report(s)
        r3 = ineq3_report(mats)
        r4 = ineq4_report(mats)
        assert r2.holds and r3.holds and r4.holds
        # the overlap-matrix bound is the sharpest of the three
        assert r2.rhs <= r3.rhs + 1e-10
        # for unit-weight states the cross-term form equals the sum form
        assert r4.rhs == pytest.approx(r3.rhs, rel=1e-10, abs=1e-12)
        assert r4.lhs == pytest.approx(r2.lhs, rel=1e-10, abs=1e-12)


def test_ineq2_requires_normalized_state():
    s = random_state((2, 2, 2), np.random.default_rng(5))
    s.coeffs *= 2.0  # break the invariant behind the constructor's back
    with pytest.raises(NotNormalizedError):
        ineq2_report(s)


def test_ineq4_scale_free():
    # scaling all matrices by t scales both sides by t^4
    rng = np.random.default_rng(6)
    mats = random_mats(rng, 3, 2, 2)
    base = ineq4_report(mats)
    for t in (0.5, 2.0, 7.0):
        scaled = ineq4_report([t * m for m in mats])
        assert scaled.lhs == pytest.approx(t**4 * base.lhs, rel=1e-9)
        assert scaled.rhs == pytest.approx(t**4 * base.rhs, rel=1e-12)
        assert scaled.slack == pytest.approx(t**4 * base.slack, rel=1e-8)


def test_ineq4_single_matrix_degenerates():
    # one coefficient matrix: both block matrices are psd, rhs has no cross terms
    rng = np.random.default_rng(7)
    rep = ineq4_report([complex_gaussian(rng, (3, 3))])
    assert rep.lhs == pytest.approx(0.0, abs=1e-10)
    assert rep.rhs == 0.0


def test_diagonal_gram_aligns_bounds():
    # after diagonalizing the overlap matrix the two right-hand sides agree
    s = random_state((3, 2, 3), np.random.default_rng(8))
    rot = diagonalize_gram(s)
    r2 = ineq2_report(rot)
    r3 = ineq3_report(coeff_matrices(rot))
    assert r2.rhs == pytest.approx(r3.rhs, abs=1e-10)


def test_monotonicity_reports():
    s = random_state((2, 3, 4), np.random.default_rng(9))
    rep_ab, rep_ac = monotonicity_report(s)
    assert rep_ab.name == "monotonicity_AB" and rep_ac.name == "monotonicity_AC"
    assert rep_ab.holds and rep_ac.holds
    assert rep_ab.rhs == pytest.approx(rep_ac.rhs, abs=1e-12)


def test_monotonicity_equality_for_trivial_C():
    # dC = 1 means BC is just B, so the A|B negativity equals the A|BC one
    s = random_state((2, 3, 1), np.random.default_rng(10))
    rep_ab, _ = monotonicity_report(s)
    assert rep_ab.slack == pytest.approx(0.0, abs=1e-10)


def test_single_term_bound_chain():
    rng = np.random.default_rng(11)
    mats = random_mats(rng, 3, 2, 2)
    tri, cs = single_term_bound(mats)
    assert tri.name == "single_term_triangle"
    assert cs.name == "single_term_cauchy_schwarz"
    assert tri.holds and cs.holds
    # chain: ||Z1||_1 <= sum of block trace norms <= (sum of frobenius norms)^2
    assert tri.lhs <= tri.rhs + 1e-10
    assert tri.rhs == pytest.approx(cs.lhs, abs=1e-12)
    assert cs.lhs <= cs.rhs + 1e-10


def test_single_term_bound_equality_cases():
    # a single unitary coefficient matrix saturates both bounds at d
    u = np.linalg.qr(complex_gaussian(np.random.default_rng(12), (3, 3)))[0]
    tri, cs = single_term_bound([u])
    assert tri.slack == pytest.approx(0.0, abs=1e-10)
    assert cs.slack == pytest.approx(0.0, abs=1e-10)
    assert tri.lhs == pytest.approx(3.0, abs=1e-10)
