"""Dense complex matrix core: Hermitian spectra, Schatten (quasi-)norms,
Jordan decomposition, matrix modulus, psd square roots and the shared
inequality-report record.

All tolerances are relative to the largest entry magnitude of the input,
except the global slack tolerance TAU_CHECK which is absolute.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    NoConvergenceError,
    NonPositiveQError,
    NotHermitianError,
    NotPSDError,
    NotSquareError,
)

# Absolute slack tolerance used everywhere a report decides holds/violated.
TAU_CHECK = 1e-9
# Accepted relative asymmetry before an input is rejected as non-Hermitian.
HERM_TOL_FACTOR = 1e-10
# Relative clamp for negative eigenvalues inside psd_sqrt.
PSD_TOL_FACTOR = 1e-9


def as_complex_matrix(x) -> np.ndarray:
    """Validate and return a finite, non-empty 2-d complex array."""
    m = np.asarray(x, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """I.i.d. standard complex Gaussian entries (unit complex variance)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def require_hermitian(x) -> np.ndarray:
    """Return the symmetrised copy (H + H*)/2, rejecting real asymmetry.

    Asymmetry up to HERM_TOL_FACTOR times the largest entry magnitude is
    treated as roundoff and silently symmetrised away.
    """
    m = as_complex_matrix(x)
    if m.shape[0] != m.shape[1]:
        raise NotSquareError(f"expected a square matrix, got shape {m.shape}")
    scale = float(np.abs(m).max())
    asym = float(np.abs(m - m.conj().T).max())
    if asym > HERM_TOL_FACTOR * scale:
        raise NotHermitianError(
            f"asymmetry {asym:.3e} exceeds {HERM_TOL_FACTOR:g} * max|entry| = "
            f"{HERM_TOL_FACTOR * scale:.3e}"
        )
    return (m + m.conj().T) / 2.0


@dataclass(frozen=True)
class HermitianEigen:
    """Eigenvalues in ascending order with a matching unitary eigenbasis."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eig(h) -> HermitianEigen:
    """Full eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    hs = require_hermitian(h)
    try:
        w, v = np.linalg.eigh(hs)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergenceError(str(exc)) from exc
    return HermitianEigen(w, v)


def hermitian_eigenvalues(h) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix."""
    hs = require_hermitian(h)
    try:
        return np.linalg.eigvalsh(hs)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergenceError(str(exc)) from exc


def schatten(x, q: float) -> float:
    """Schatten q-(quasi-)norm (sum of sigma^q)^(1/q), computed from
    singular values; q in (0, 1) gives the quasi-norm used for q = 1/2."""
    if not q > 0:
        raise NonPositiveQError(f"Schatten exponent must be positive, got {q}")
    m = as_complex_matrix(x)
    try:
        s = np.linalg.svd(m, compute_uv=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergenceError(str(exc)) from exc
    return float(np.sum(s**q) ** (1.0 / q))


def jordan_parts(h) -> tuple[np.ndarray, np.ndarray]:
    """Positive and negative parts (P, N) with H = P - N, both psd."""
    e = hermitian_eig(h)
    v = e.eigenvectors
    pos = (v * np.clip(e.eigenvalues, 0.0, None)) @ v.conj().T
    neg = (v * np.clip(-e.eigenvalues, 0.0, None)) @ v.conj().T
    return pos, neg


def negativity(h) -> float:
    """Trace norm minus trace; equals twice the trace of the negative part."""
    w = hermitian_eigenvalues(h)
    return float(2.0 * np.sum(np.clip(-w, 0.0, None)))


def psd_sqrt(p) -> np.ndarray:
    """Hermitian square root of a psd matrix.

    Eigenvalues in [-PSD_TOL_FACTOR * max|entry|, 0) are clamped to zero;
    anything lower raises NotPSDError.
    """
    m = as_complex_matrix(p)
    e = hermitian_eig(m)
    tol = PSD_TOL_FACTOR * float(np.abs(m).max())
    if e.eigenvalues[0] < -tol:
        raise NotPSDError(
            f"smallest eigenvalue {e.eigenvalues[0]:.3e} below clamp -{tol:.3e}"
        )
    v = e.eigenvectors
    return (v * np.sqrt(np.clip(e.eigenvalues, 0.0, None))) @ v.conj().T


def modulus(x) -> np.ndarray:
    """Matrix modulus |X| = (X* X)^(1/2)."""
    m = as_complex_matrix(x)
    return psd_sqrt(m.conj().T @ m)


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of one numerical inequality check: lhs <= rhs up to tolerance."""

    name: str
    lhs: float
    rhs: float
    slack: float  # rhs - lhs
    holds: bool
    inputs_digest: dict = field(default_factory=dict)

    def with_meta(self, **meta) -> "InequalityReport":
        return replace(self, inputs_digest={**self.inputs_digest, **meta})

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "holds": self.holds,
            **self.inputs_digest,
        }


def make_report(name: str, lhs: float, rhs: float, tol: float = TAU_CHECK, **digest) -> InequalityReport:
    """Build a report; holds means slack >= -tol."""
    lhs = float(lhs)
    rhs = float(rhs)
    slack = rhs - lhs
    return InequalityReport(name, lhs, rhs, slack, bool(slack >= -tol), digest)


def matrix_to_dict(x) -> dict:
    """Row-major JSON form {"rows", "cols", "data": [[re, im], ...]}."""
    m = as_complex_matrix(x)
    data = [[float(z.real), float(z.imag)] for z in m.reshape(-1)]
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]), "data": data}


def matrix_from_dict(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be at least 1")
    data = obj["data"]
    if len(data) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
    flat = np.array([complex(re, im) for re, im in data])
    return as_complex_matrix(flat.reshape(rows, cols))


def save_matrix(path, x) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_dict(x), fh)


def load_matrix(path) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_dict(json.load(fh))
