"""Tripartite pure states as rank-3 coefficient tensors, their coefficient
matrices, partial transpose/trace operations and the induced negativity.

The composite basis index is always ((i * dB) + j) * dC + k, i.e. the first
tensor axis is the slowest. Coefficient matrix i is the dB x dC slice c[i].
"""

from __future__ import annotations

import json

import numpy as np

from .errors import DimensionMismatchError, NotNormalizedError, ShapeMismatchError
from .matcore import as_complex_matrix, complex_gaussian, schatten

# Accepted deviation of the total squared weight from one.
TAU_NORM = 1e-10


class TripartiteState:
    """Normalised coefficient tensor c[i, j, k] of a three-party pure state.

    Construction rejects tensors whose squared weight differs from one by
    more than TAU_NORM unless normalize=True is passed explicitly.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, normalize: bool = False):
        c = np.asarray(coeffs, dtype=complex)
        if c.ndim != 3 or min(c.shape) < 1:
            raise DimensionMismatchError(
                f"expected a non-empty rank-3 tensor, got shape {c.shape}"
            )
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        weight = float(np.sum(np.abs(c) ** 2))
        if normalize:
            if weight == 0.0:
                raise NotNormalizedError("cannot normalise the zero tensor")
            c = c / np.sqrt(weight)
        elif abs(weight - 1.0) > TAU_NORM:
            raise NotNormalizedError(
                f"squared weight {weight!r} differs from 1 by more than {TAU_NORM:g}"
            )
        self.coeffs = c

    @property
    def dA(self) -> int:
        return self.coeffs.shape[0]

    @property
    def dB(self) -> int:
        return self.coeffs.shape[1]

    @property
    def dC(self) -> int:
        return self.coeffs.shape[2]

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.coeffs.shape

    def __repr__(self) -> str:
        return f"TripartiteState(dims={self.dims})"


def random_state(dims, rng: np.random.Generator) -> TripartiteState:
    """State with i.i.d. standard complex Gaussian coefficients, normalised."""
    dA, dB, dC = (int(d) for d in dims)
    return TripartiteState(complex_gaussian(rng, (dA, dB, dC)), normalize=True)


def coeff_matrices(state: TripartiteState) -> list[np.ndarray]:
    """The dA coefficient matrices A_i = c[i, :, :]."""
    return [np.array(state.coeffs[i]) for i in range(state.dA)]


def _stacked(mats) -> np.ndarray:
    mats = [as_complex_matrix(m) for m in mats]
    if not mats:
        raise ShapeMismatchError("need at least one coefficient matrix")
    shape = mats[0].shape
    if any(m.shape != shape for m in mats):
        raise ShapeMismatchError(
            f"coefficient matrices must share one shape, got {[m.shape for m in mats]}"
        )
    return np.stack(mats)


def amat(mats) -> np.ndarray:
    """Stack the vectorised coefficient matrices column-wise.

    Column i is A_i flattened row-major, so the result has shape
    (dB * dC) x dA and its Gram matrix holds the overlaps tr(A_i* A_j).
    """
    m = _stacked(mats)
    return m.reshape(m.shape[0], -1).T.copy()


def gram_matrix(mats) -> np.ndarray:
    """Overlap matrix G[i, j] = tr(A_i* A_j)."""
    a = amat(mats)
    return a.conj().T @ a


def density(state: TripartiteState) -> np.ndarray:
    """Rank-one density matrix in the composite basis."""
    psi = state.coeffs.reshape(-1)
    return np.outer(psi, psi.conj())


def _check_op_dims(x: np.ndarray, dims) -> tuple[int, int, int]:
    dA, dB, dC = (int(d) for d in dims)
    n = dA * dB * dC
    if x.shape != (n, n):
        raise DimensionMismatchError(
            f"operator shape {x.shape} does not match dims {dims} (need {n} x {n})"
        )
    return dA, dB, dC


def partial_transpose_A(x, dims) -> np.ndarray:
    """Transpose the first tensor factor: <ijk|R|i'j'k'> = <i'jk|X|ij'k'>.

    Pure index relabelling, so applying it twice returns the input exactly.
    """
    m = as_complex_matrix(x)
    dA, dB, dC = _check_op_dims(m, dims)
    t = m.reshape(dA, dB, dC, dA, dB, dC)
    return t.transpose(3, 1, 2, 0, 4, 5).reshape(m.shape)


def partial_trace_B(x, dims) -> np.ndarray:
    """Trace out the middle factor, leaving a (dA*dC) x (dA*dC) operator."""
    m = as_complex_matrix(x)
    dA, dB, dC = _check_op_dims(m, dims)
    t = m.reshape(dA, dB, dC, dA, dB, dC)
    return np.einsum("ajbcjd->abcd", t).reshape(dA * dC, dA * dC)


def partial_trace_C(x, dims) -> np.ndarray:
    """Trace out the last factor, leaving a (dA*dB) x (dA*dB) operator."""
    m = as_complex_matrix(x)
    dA, dB, dC = _check_op_dims(m, dims)
    t = m.reshape(dA, dB, dC, dA, dB, dC)
    return np.einsum("abkcdk->abcd", t).reshape(dA * dB, dA * dB)


def negativity_ABC(state: TripartiteState) -> float:
    """Negativity across the A | BC cut: trace norm of the stacked
    coefficient matrix squared, minus one."""
    a = amat(coeff_matrices(state))
    return float(schatten(a, 1.0) ** 2 - 1.0)


def diagonalize_gram(state: TripartiteState) -> TripartiteState:
    """Rotate the first tensor index so the overlap matrix becomes diagonal.

    Uses the left singular basis of the conjugate-transposed stack; the
    rotation is a local unitary on the first factor, so every negativity
    is unchanged.
    """
    a = amat(coeff_matrices(state))
    u, _, _ = np.linalg.svd(a.conj().T, full_matrices=True)
    rotated = np.einsum("im,ijk->mjk", u, state.coeffs)
    return TripartiteState(rotated, normalize=True)


def state_to_dict(state: TripartiteState) -> dict:
    """JSON form {"dA", "dB", "dC", "coeffs": [[re, im], ...]} in the fixed
    composite index order."""
    flat = state.coeffs.reshape(-1)
    return {
        "dA": state.dA,
        "dB": state.dB,
        "dC": state.dC,
        "coeffs": [[float(z.real), float(z.imag)] for z in flat],
    }


def state_from_dict(obj: dict, normalize: bool = False) -> TripartiteState:
    dA, dB, dC = int(obj["dA"]), int(obj["dB"]), int(obj["dC"])
    coeffs = obj["coeffs"]
    if len(coeffs) != dA * dB * dC:
        raise DimensionMismatchError(
            f"expected {dA * dB * dC} coefficients, got {len(coeffs)}"
        )
    flat = np.array([complex(re, im) for re, im in coeffs])
    return TripartiteState(flat.reshape(dA, dB, dC), normalize=normalize)


def save_state(path, state: TripartiteState) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_dict(state), fh)


def load_state(path, normalize: bool = False) -> TripartiteState:
    with open(path) as fh:
        return state_from_dict(json.load(fh), normalize=normalize)
