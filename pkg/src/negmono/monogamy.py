"""Block-matrix forms of the two-party negativities and the squared-negativity
monogamy inequality in its normalised (ineq2, ineq3) and scale-free (ineq4)
variants, plus the partial-trace monotonicity and single-term bounds.

For coefficient matrices A_1..A_n, block (i, j) of Z1 holds A_j A_i* and
block (i, j) of Z2 holds A_j* A_i; for a normalised state these equal the
partial traces of the partially transposed density matrix (Z1 directly,
Z2 up to complex conjugation), which is what the tests pin down.
"""

from __future__ import annotations

import numpy as np

from .errors import NotNormalizedError
from .matcore import InequalityReport, TAU_CHECK, make_report, negativity, schatten
from .qstate import (
    TAU_NORM,
    TripartiteState,
    _stacked,
    coeff_matrices,
    density,
    gram_matrix,
    partial_trace_B,
    partial_trace_C,
    partial_transpose_A,
)


def build_Z1(mats) -> np.ndarray:
    """Hermitian block matrix with A_j A_i* at block row i, block column j."""
    m = _stacked(mats)
    n, dB, _ = m.shape
    return np.einsum("jpq,irq->ipjr", m, m.conj()).reshape(n * dB, n * dB)


def build_Z2(mats) -> np.ndarray:
    """Hermitian block matrix with A_j* A_i at block row i, block column j."""
    m = _stacked(mats)
    n, _, dC = m.shape
    return np.einsum("jqp,iqr->ipjr", m.conj(), m).reshape(n * dC, n * dC)


def _norms(m: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.abs(m) ** 2, axis=(1, 2)))


def _pair_lhs(mats) -> tuple[float, float]:
    n1 = negativity(build_Z1(mats))
    n2 = negativity(build_Z2(mats))
    return n1, n2


def _digest(m: np.ndarray, rhs: float, lhs: float) -> dict:
    d = {"dims": [int(m.shape[0]), int(m.shape[1]), int(m.shape[2])]}
    if rhs > 0:
        d["slack_rel"] = float((rhs - lhs) / rhs)
    return d


def _require_unit_weight(m: np.ndarray) -> None:
    weight = float(np.sum(np.abs(m) ** 2))
    if abs(weight - 1.0) > TAU_NORM:
        raise NotNormalizedError(
            f"total squared weight {weight!r} differs from 1 by more than {TAU_NORM:g}"
        )


def ineq2_report(state: TripartiteState, tol: float = TAU_CHECK) -> InequalityReport:
    """Monogamy for a normalised state with the tight right-hand side:
    (||Z1||_1 - 1)^2 + (||Z2||_1 - 1)^2 <= (||G||_{1/2} - 1)^2 where G is
    the overlap matrix of the coefficient matrices."""
    mats = coeff_matrices(state)
    m = _stacked(mats)
    _require_unit_weight(m)
    n1, n2 = _pair_lhs(mats)
    lhs = n1**2 + n2**2
    rhs = (schatten(gram_matrix(mats), 0.5) - 1.0) ** 2
    return make_report("ineq2", lhs, rhs, tol, **_digest(m, rhs, lhs))


def ineq3_report(mats, tol: float = TAU_CHECK) -> InequalityReport:
    """Monogamy for normalised coefficient matrices with the weaker
    right-hand side ((sum_i ||A_i||_2)^2 - 1)^2."""
    m = _stacked(mats)
    _require_unit_weight(m)
    n1, n2 = _pair_lhs(mats)
    lhs = n1**2 + n2**2
    rhs = (float(np.sum(_norms(m))) ** 2 - 1.0) ** 2
    return make_report("ineq3", lhs, rhs, tol, **_digest(m, rhs, lhs))


def ineq4_report(mats, tol: float = TAU_CHECK) -> InequalityReport:
    """Scale-free monogamy for arbitrary coefficient matrices:
    (||Z1||_1 - tr Z1)^2 + (||Z2||_1 - tr Z2)^2
        <= (sum_{i != j} ||A_i||_2 ||A_j||_2)^2."""
    m = _stacked(mats)
    n1, n2 = _pair_lhs(mats)
    lhs = n1**2 + n2**2
    norms = _norms(m)
    cross = float(np.sum(norms) ** 2 - np.sum(norms**2))
    rhs = cross**2
    return make_report("ineq4", lhs, rhs, tol, **_digest(m, rhs, lhs))


def monotonicity_report(
    state: TripartiteState, tol: float = TAU_CHECK
) -> tuple[InequalityReport, InequalityReport]:
    """Negativity cannot grow when one party is traced out: reports for
    N(A|B) <= N(A|BC) and N(A|C) <= N(A|BC), computed through the density
    matrix, its partial transpose and partial traces."""
    dims = state.dims
    pt = partial_transpose_A(density(state), dims)
    n_abc = negativity(pt)
    n_ab = negativity(partial_trace_C(pt, dims))
    n_ac = negativity(partial_trace_B(pt, dims))
    digest = {"dims": [int(d) for d in dims]}
    return (
        make_report("monotonicity_AB", n_ab, n_abc, tol, **digest),
        make_report("monotonicity_AC", n_ac, n_abc, tol, **digest),
    )


def single_term_bound(
    mats, tol: float = TAU_CHECK
) -> tuple[InequalityReport, InequalityReport]:
    """Two-step bound on the trace norm of Z1: the block triangle inequality
    ||Z1||_1 <= sum_{ij} ||A_j A_i*||_1 followed by Cauchy-Schwarz
    sum_{ij} ||A_j A_i*||_1 <= (sum_i ||A_i||_2)^2."""
    m = _stacked(mats)
    t1 = schatten(build_Z1(mats), 1.0)
    mid = float(
        sum(
            schatten(m[j] @ m[i].conj().T, 1.0)
            for i in range(m.shape[0])
            for j in range(m.shape[0])
        )
    )
    r = float(np.sum(_norms(m))) ** 2
    digest = {"dims": [int(s) for s in m.shape]}
    return (
        make_report("single_term_triangle", t1, mid, tol, **digest),
        make_report("single_term_cauchy_schwarz", mid, r, tol, **digest),
    )
