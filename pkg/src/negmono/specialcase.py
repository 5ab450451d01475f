"""Two coefficient matrices with the first equal to the identity: the block
matrix Z = [[1, B], [B*, BB*]], the commutator-gap bounds on tr Z_-, the
connecting unitary between the two stacked factorisations, and a certified
chain of interlacing/Weyl steps bounding the negative spectrum of Z.

Throughout, Delta = BB* - B*B and Delta_plus/Delta_minus are its Jordan
parts; mu denotes the eigenvalues of Delta_minus.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NoConvergenceError, NotSquareError, StepFailedError
from .matcore import (
    InequalityReport,
    TAU_CHECK,
    as_complex_matrix,
    hermitian_eig,
    hermitian_eigenvalues,
    make_report,
    matrix_to_dict,
    psd_sqrt,
)


def _square(b) -> np.ndarray:
    m = as_complex_matrix(b)
    if m.shape[0] != m.shape[1]:
        raise NotSquareError(f"expected a square matrix, got shape {m.shape}")
    return m


def pad_square(b) -> np.ndarray:
    """Zero-pad a rectangular matrix to the enclosing square size."""
    m = as_complex_matrix(b)
    n = max(m.shape)
    out = np.zeros((n, n), dtype=complex)
    out[: m.shape[0], : m.shape[1]] = m
    return out


def commutator_gap(b) -> np.ndarray:
    """Delta = B B* - B* B (traceless Hermitian).

    Symmetrized explicitly: the products carry roundoff asymmetry on the
    scale of ||B||^2, which dwarfs Delta itself when B is close to normal.
    """
    m = _square(b)
    delta = m @ m.conj().T - m.conj().T @ m
    return (delta + delta.conj().T) / 2.0


def build_special_Z(b) -> np.ndarray:
    """The 2d x 2d block matrix [[1, B], [B*, B B*]]."""
    m = _square(b)
    d = m.shape[0]
    return np.block([[np.eye(d), m], [m.conj().T, m @ m.conj().T]])


def _tr_neg_part(z: np.ndarray) -> float:
    w = hermitian_eigenvalues(z)
    return float(np.sum(np.clip(-w, 0.0, None)))


def _tr_sqrt_clipped(eigs: np.ndarray) -> float:
    return float(np.sum(np.sqrt(np.clip(eigs, 0.0, None))))


def check_ineqid(b, tol: float = TAU_CHECK) -> InequalityReport:
    """tr Z_- <= sqrt(d/2) ||B||_2."""
    m = _square(b)
    d = m.shape[0]
    lhs = _tr_neg_part(build_special_Z(m))
    rhs = np.sqrt(d / 2.0) * float(np.linalg.norm(m))
    return make_report("ineqid", lhs, rhs, tol, d=d)


def check_ineqid1(b, tol: float = TAU_CHECK) -> InequalityReport:
    """tr Z_- <= tr sqrt(Delta_minus)."""
    m = _square(b)
    lhs = _tr_neg_part(build_special_Z(m))
    rhs = _tr_sqrt_clipped(-hermitian_eigenvalues(commutator_gap(m)))
    return make_report("ineqid1", lhs, rhs, tol, d=m.shape[0])


def check_ineqid2(b, sign: str = "minus", tol: float = TAU_CHECK) -> InequalityReport:
    """tr sqrt(Delta_-+) <= sqrt(d/2) ||B||_2 for either Jordan part.

    sign="minus" bounds tr sqrt(Delta_minus); sign="plus" is the swapped
    version obtained from B <-> B*.
    """
    if sign not in ("minus", "plus"):
        raise ValueError(f"sign must be 'minus' or 'plus', got {sign!r}")
    m = _square(b)
    d = m.shape[0]
    eigs = hermitian_eigenvalues(commutator_gap(m))
    lhs = _tr_sqrt_clipped(-eigs if sign == "minus" else eigs)
    rhs = np.sqrt(d / 2.0) * float(np.linalg.norm(m))
    return make_report(f"ineqid2_{sign}", lhs, rhs, tol, d=d)


def _gap_parts(m: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Jordan split of the commutator gap with a noise-floor clamp.

    Eigenvalues of Delta below 64 eps ||B||_F^2 in magnitude are numerical
    zeros (the products carry that much roundoff); keeping them would feed
    sqrt(noise) ~ 1e-8 entries into the stacks and the E blocks, wrecking
    otherwise exact cases such as normal or zero-padded B.
    """
    delta = commutator_gap(m)
    dec = hermitian_eig(delta)
    clamp = 64.0 * float(np.finfo(float).eps) * float(np.linalg.norm(m)) ** 2
    w = np.where(np.abs(dec.eigenvalues) <= clamp, 0.0, dec.eigenvalues)
    v = dec.eigenvectors
    dplus = (v * np.clip(w, 0.0, None)) @ v.conj().T
    dminus = (v * np.clip(-w, 0.0, None)) @ v.conj().T
    return delta, dplus, dminus


def _stacks(b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    _, dp, dm = _gap_parts(b)
    s1 = np.vstack([b, psd_sqrt(dp)])
    s2 = np.vstack([b.conj().T, psd_sqrt(dm)])
    return s1, s2


def connecting_unitary(b) -> np.ndarray:
    """Unitary U with U . stack(B, sqrt(Delta_plus)) = stack(B*, sqrt(Delta_minus)).

    Both stacks share the Gram matrix B*B + Delta_plus = BB* + Delta_minus,
    so an exact U exists; it is computed as the unitary polar factor of
    S2 S1* (full SVD, U = W Vh), which maps the column space of S1 onto that
    of S2 and pairs the orthogonal complements deterministically.
    """
    m = _square(b)
    s1, s2 = _stacks(m)
    try:
        w, _, vh = np.linalg.svd(s2 @ s1.conj().T)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergenceError(str(exc)) from exc
    return w @ vh


@dataclass
class SpecialCaseTrace:
    """All matrices and step reports of one special-case verification run."""

    B: np.ndarray
    Z: np.ndarray
    delta: np.ndarray
    delta_plus: np.ndarray
    delta_minus: np.ndarray
    U: np.ndarray
    E1: np.ndarray
    E2: np.ndarray
    E3: np.ndarray
    E4: np.ndarray
    reports: list[InequalityReport] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "d": int(self.B.shape[0]),
            "B": matrix_to_dict(self.B),
            "Z": matrix_to_dict(self.Z),
            "delta": matrix_to_dict(self.delta),
            "delta_plus": matrix_to_dict(self.delta_plus),
            "delta_minus": matrix_to_dict(self.delta_minus),
            "U": matrix_to_dict(self.U),
            "E1": matrix_to_dict(self.E1),
            "E2": matrix_to_dict(self.E2),
            "E3": matrix_to_dict(self.E3),
            "E4": matrix_to_dict(self.E4),
            "reports": [r.to_dict() for r in self.reports],
        }


def interlacing_trace(b, tol: float = TAU_CHECK) -> SpecialCaseTrace:
    """Verify the proof chain bounding the negative spectrum of Z.

    Steps, each recorded as a report and enforced (StepFailedError on
    violation, scaled by the spectral magnitude):

      (a) Cauchy interlacing: the 2d eigenvalues of Z dominate the lowest
          2d eigenvalues of the 3d x 3d extension E1.
      (b) E1 and E2 share their spectrum (conjugation by diag(U, 1)).
      (c) Weyl monotonicity: E2 = E3 + E4 with E3 psd, so the spectrum of
          E2 dominates that of E4.
      (d) The d smallest eigenvalues of E4 are -sqrt(mu_j).
      (e) Z has at most d negative eigenvalues.
      (f) E3 is psd.

    The connecting-unitary residual and the three inequality checks are
    appended as reports; a failing residual also raises StepFailedError.
    """
    m = _square(b)
    d = m.shape[0]
    eye = np.eye(d)
    zero = np.zeros((d, d))

    delta, dplus, dminus = _gap_parts(m)
    sp = psd_sqrt(dplus)
    sm = psd_sqrt(dminus)
    bbs = m @ m.conj().T

    z = build_special_Z(m)
    e1 = np.block([[eye, zero, m], [zero, eye, sp], [m.conj().T, sp, bbs]])
    e2 = np.block([[eye, zero, m.conj().T], [zero, eye, sm], [m, sm, bbs]])
    e3 = np.block([[eye, zero, m.conj().T], [zero, eye, zero], [m, zero, bbs]])
    e4 = np.block([[zero, zero, zero], [zero, zero, sm], [zero, sm, zero]])
    u = connecting_unitary(m)

    eig_z = hermitian_eigenvalues(z)
    eig_e1 = hermitian_eigenvalues(e1)
    eig_e2 = hermitian_eigenvalues(e2)
    eig_e3 = hermitian_eigenvalues(e3)
    eig_e4 = hermitian_eigenvalues(e4)

    scale = 1.0 + float(np.abs(eig_e1).max())
    atol = tol * scale

    # (a) lowest 2d eigenvalues of E1 sit below the eigenvalues of Z
    gap_a = float(np.max(eig_e1[: 2 * d] - eig_z))
    # (b) equal spectra as sorted multisets
    gap_b = float(np.max(np.abs(eig_e1 - eig_e2)))
    # (c) E2 dominates E4 eigenvalue by eigenvalue
    gap_c = float(np.max(eig_e4 - eig_e2))
    # (d) d smallest eigenvalues of E4 are -sqrt(mu), mu descending.
    # Compare squares: near mu = 0 the square root amplifies eigenvalue
    # roundoff from eps to sqrt(eps), so the direct gap is ill-posed.
    mu_desc = np.clip(hermitian_eigenvalues(dminus), 0.0, None)[::-1]
    gap_d = max(
        float(np.max(np.abs(eig_e4[:d] ** 2 - mu_desc))),
        float(np.max(eig_e4[:d], initial=0.0)),
    )
    # (e) negative eigenvalue count of Z
    n_neg = int(np.sum(eig_z < -atol))
    # (f) E3 psd
    min_e3 = float(eig_e3[0])

    s1, s2 = _stacks(m)
    residual = float(np.abs(u @ s1 - s2).max())
    # Square roots of the gap parts move by sqrt(||E||) under an eps-sized
    # perturbation E, so when the gap is singular (rank-deficient B, e.g.
    # zero padding) no unitary maps the computed stacks better than about
    # sqrt(eps * ||Delta||). Widen the residual budget accordingly; a wrong
    # unitary still overshoots this by many orders of magnitude.
    eps = float(np.finfo(float).eps)
    resid_tol = max(tol, 8.0 * np.sqrt(eps * max(1.0, float(np.abs(delta).max()))))

    steps = [
        make_report("step_a_interlacing", gap_a, 0.0, atol, d=d),
        make_report("step_b_equal_spectra", gap_b, 0.0, atol, d=d),
        make_report("step_c_weyl", gap_c, 0.0, atol, d=d),
        make_report("step_d_lowest_eigs", gap_d, 0.0, atol, d=d),
        make_report("step_e_neg_count", float(n_neg), float(d), 0.0, d=d),
        make_report("step_f_E3_psd", -min_e3, 0.0, atol, d=d),
        make_report("unitary_residual", residual, 0.0, resid_tol, d=d),
    ]
    for rep in steps:
        if not rep.holds:
            raise StepFailedError(rep.name, f"lhs={rep.lhs!r} rhs={rep.rhs!r}")

    reports = steps + [
        check_ineqid(m, tol),
        check_ineqid1(m, tol),
        check_ineqid2(m, "minus", tol),
        check_ineqid2(m, "plus", tol),
    ]
    return SpecialCaseTrace(m, z, delta, dplus, dminus, u, e1, e2, e3, e4, reports)
