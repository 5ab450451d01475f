import numpy as np
import pytest

from negmono.errors import NotNormalizedError
from negmono.matcore import negativity, schatten
from negmono.qstate import (
    TripartiteState,
    amat,
    coeff_matrices,
    density,
    diagonalize_gram,
    gram_matrix,
    load_state,
    negativity_ABC,
    partial_trace_B,
    partial_trace_C,
    partial_transpose_A,
    random_state,
    save_state,
    state_from_dict,
    state_to_dict,
)

DIMS = [(2, 2, 2), (2, 3, 4), (3, 2, 2), (1, 3, 2)]


def test_state_requires_normalization():
    c = np.ones((2, 2, 2), dtype=complex)
    with pytest.raises(NotNormalizedError):
        TripartiteState(c)
    s = TripartiteState(c, normalize=True)
    assert np.sum(np.abs(s.coeffs) ** 2) == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(NotNormalizedError):
        TripartiteState(np.zeros((2, 2, 2)), normalize=True)


def test_state_dims():
    s = random_state((2, 3, 4), np.random.default_rng(0))
    assert (s.dA, s.dB, s.dC) == (2, 3, 4)
    assert s.dims == (2, 3, 4)


def test_density_is_rank_one_projector():
    s = random_state((2, 2, 3), np.random.default_rng(1))
    rho = density(s)
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-14)
    np.testing.assert_allclose(rho @ rho, rho, atol=1e-13)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-13)


@pytest.mark.parametrize("dims", DIMS)
def test_partial_transpose_is_involution(dims):
    s = random_state(dims, np.random.default_rng(2))
    rho = density(s)
    pt = partial_transpose_A(rho, dims)
    np.testing.assert_allclose(pt, pt.conj().T, atol=1e-14)
    np.testing.assert_array_equal(partial_transpose_A(pt, dims), rho)
    assert np.trace(pt).real == pytest.approx(1.0, abs=1e-13)


def test_partial_transpose_transposes_A_factor():
    # on product operators the A factor transposes and the rest is untouched
    rng = np.random.default_rng(3)
    dims = (2, 3, 2)
    xa = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    xbc = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    op = np.kron(xa, xbc)
    np.testing.assert_allclose(
        partial_transpose_A(op, dims), np.kron(xa.T, xbc), atol=1e-13
    )


def test_partial_traces_on_product_operators():
    rng = np.random.default_rng(4)
    dims = (2, 3, 2)
    xa = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    xb = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    xc = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    op = np.kron(np.kron(xa, xb), xc)
    np.testing.assert_allclose(
        partial_trace_C(op, dims), np.trace(xc) * np.kron(xa, xb), atol=1e-12
    )
    np.testing.assert_allclose(
        partial_trace_B(op, dims), np.trace(xb) * np.kron(xa, xc), atol=1e-12
    )


def test_partial_traces_preserve_trace():
    dims = (2, 3, 4)
    s = random_state(dims, np.random.default_rng(5))
    rho = density(s)
    for red in (partial_trace_B(rho, dims), partial_trace_C(rho, dims)):
        assert np.trace(red).real == pytest.approx(1.0, abs=1e-13)
        np.testing.assert_allclose(red, red.conj().T, atol=1e-14)


def test_coeff_matrices_and_amat_shapes():
    dims = (3, 2, 4)
    s = random_state(dims, np.random.default_rng(6))
    mats = coeff_matrices(s)
    assert len(mats) == 3 and mats[0].shape == (2, 4)
    a = amat(mats)
    assert a.shape == (8, 3)
    # column i of amat is vec(A_i) in the same layout reshape uses
    np.testing.assert_array_equal(a[:, 1], mats[1].reshape(-1))


def test_gram_matrix_entries():
    dims = (2, 3, 3)
    s = random_state(dims, np.random.default_rng(7))
    mats = coeff_matrices(s)
    g = gram_matrix(mats)
    assert g.shape == (2, 2)
    for i in range(2):
        for j in range(2):
            expected = np.trace(mats[i].conj().T @ mats[j])
            assert g[i, j] == pytest.approx(expected, abs=1e-13)
    assert np.trace(g).real == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("dims", DIMS)
def test_negativity_ABC_matches_partial_transpose(dims):
    s = random_state(dims, np.random.default_rng(8))
    direct = negativity(partial_transpose_A(density(s), dims))
    assert negativity_ABC(s) == pytest.approx(direct, rel=1e-9, abs=1e-11)


def test_negativity_ABC_product_state_is_zero():
    # A decoupled from BC: all coefficient matrices proportional
    rng = np.random.default_rng(9)
    b = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    coeffs = np.stack([0.5 * b, 1.0j * b])
    s = TripartiteState(coeffs, normalize=True)
    assert negativity_ABC(s) == pytest.approx(0.0, abs=1e-10)


def test_diagonalize_gram():
    s = random_state((3, 3, 3), np.random.default_rng(10))
    rotated = diagonalize_gram(s)
    g = gram_matrix(coeff_matrices(rotated))
    off = g - np.diag(np.diag(g))
    assert np.abs(off).max() < 1e-12
    # the rotation is local on A, so the A|BC negativity is unchanged
    assert negativity_ABC(rotated) == pytest.approx(negativity_ABC(s), abs=1e-10)
    # and the gram spectrum is preserved
    g0 = gram_matrix(coeff_matrices(s))
    np.testing.assert_allclose(
        np.sort(np.diag(g).real), np.linalg.eigvalsh(g0), atol=1e-12
    )


def test_state_json_roundtrip(tmp_path):
    s = random_state((2, 3, 2), np.random.default_rng(11))
    path = tmp_path / "state.json"
    save_state(path, s)
    loaded = load_state(path)
    np.testing.assert_array_equal(loaded.coeffs, s.coeffs)
    d = state_to_dict(s)
    assert (d["dA"], d["dB"], d["dC"]) == (2, 3, 2)
    np.testing.assert_array_equal(state_from_dict(d).coeffs, s.coeffs)


def test_random_state_deterministic_per_seed():
    a = random_state((2, 2, 2), np.random.default_rng(42))
    b = random_state((2, 2, 2), np.random.default_rng(42))
    np.testing.assert_array_equal(a.coeffs, b.coeffs)
