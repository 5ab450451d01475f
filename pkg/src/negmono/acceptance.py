"""End-to-end acceptance checks with pinned tolerances.

Each criterion function returns an AcceptanceResult and is deterministic in
its seed; the CLI selftest and the acceptance test module both run these.
A genuine violation of the conjectured inequality found by the scan in
criterion 10 is reported as a finding, not as a failure of the scan.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .imfunc import IMParams, beta_sign_report, h, im_pair_check, sup_error
from .matcore import complex_gaussian, negativity, schatten
from .monogamy import build_Z1, build_Z2, ineq4_report, monotonicity_report
from .permlemma import (
    _perm_array,
    chain_split_sum,
    check_commutative,
    commutative_lhs,
    drury_numeric_check,
    ma_chains,
)
from .qstate import (
    amat,
    coeff_matrices,
    density,
    gram_matrix,
    partial_trace_B,
    partial_trace_C,
    partial_transpose_A,
    random_state,
)
from .search import SearchConfig, evaluate_slack, deserialize_instance, run_search
from .specialcase import check_ineqid, check_ineqid1, check_ineqid2, interlacing_trace

STATE_DIMS = ((2, 2, 2), (2, 3, 3), (3, 2, 4))


@dataclass
class AcceptanceResult:
    index: int
    name: str
    passed: bool
    elapsed_s: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.index:2d} {self.name} ({self.elapsed_s:.1f} s)"


def _rng(seed: int, criterion: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=(seed, criterion)))


def _result(index, name, passed, t0, **details) -> AcceptanceResult:
    return AcceptanceResult(index, name, bool(passed), time.perf_counter() - t0, details)


def representation_equivalence(seed: int = 0) -> AcceptanceResult:
    """Criterion 1: partial traces of the partially transposed density equal
    the block matrices, entrywise within 1e-12; both carry unit trace."""
    t0 = time.perf_counter()
    rng = _rng(seed, 1)
    worst_block = 0.0
    worst_trace = 0.0
    for dims in STATE_DIMS:
        for _ in range(200):
            s = random_state(dims, rng)
            mats = coeff_matrices(s)
            pt = partial_transpose_A(density(s), dims)
            z1 = build_Z1(mats)
            z2 = build_Z2(mats)
            worst_block = max(
                worst_block,
                float(np.abs(partial_trace_C(pt, dims) - z1).max()),
                float(np.abs(partial_trace_B(pt, dims) - z2.conj()).max()),
            )
            worst_trace = max(
                worst_trace,
                abs(float(np.trace(z1).real) - 1.0),
                abs(float(np.trace(z2).real) - 1.0),
            )
    elapsed = time.perf_counter() - t0
    passed = worst_block <= 1e-12 and worst_trace <= 1e-10 and elapsed < 10.0
    return _result(
        1, "representation-equivalence", passed, t0,
        max_block_diff=worst_block, max_trace_diff=worst_trace,
        budget_s=10.0,
    )


def negativity_identity(seed: int = 0) -> AcceptanceResult:
    """Criterion 2: negativity of the partial transpose matches the 1/2
    quasi-norm of the overlap matrix minus one (relative 1e-9), and the
    squared partial transpose is the Kronecker product of the two Gram
    forms (entrywise 1e-10)."""
    t0 = time.perf_counter()
    rng = _rng(seed, 2)
    worst_rel = 0.0
    worst_kron = 0.0
    for dims in STATE_DIMS:
        for _ in range(200):
            s = random_state(dims, rng)
            mats = coeff_matrices(s)
            pt = partial_transpose_A(density(s), dims)
            a = negativity(pt)
            b = schatten(gram_matrix(mats), 0.5) - 1.0
            worst_rel = max(worst_rel, abs(a - b) / max(abs(a), abs(b), 1e-30))
            am = amat(mats)
            kron = np.kron(am.conj().T @ am, am @ am.conj().T)
            worst_kron = max(worst_kron, float(np.abs(pt @ pt - kron).max()))
    passed = worst_rel <= 1e-9 and worst_kron <= 1e-10
    return _result(
        2, "negativity-identity", passed, t0,
        max_rel_diff=worst_rel, max_kron_diff=worst_kron,
    )


def partial_trace_monotonicity(seed: int = 0) -> AcceptanceResult:
    """Criterion 3: over 500 random states, tracing out one party never
    increases the negativity (tolerance 1e-10)."""
    t0 = time.perf_counter()
    rng = _rng(seed, 3)
    worst = math.inf
    for i in range(500):
        s = random_state(STATE_DIMS[i % len(STATE_DIMS)], rng)
        for rep in monotonicity_report(s, tol=1e-10):
            worst = min(worst, rep.slack)
            if not rep.holds:
                return _result(3, "partial-trace-monotonicity", False, t0,
                               min_slack=worst, failed=rep.to_dict())
    return _result(3, "partial-trace-monotonicity", worst >= -1e-10, t0, min_slack=worst)


def special_case_chain(seed: int = 0) -> AcceptanceResult:
    """Criterion 4: for 1000 random B per size d in 2..8, the commutator-gap
    bounds hold (slack >= -1e-9, both signs), the certified interlacing
    chain passes all steps and the connecting-unitary residual stays
    within 1e-9."""
    t0 = time.perf_counter()
    rng = _rng(seed, 4)
    worst_slack = math.inf
    worst_residual = 0.0
    for d in range(2, 9):
        for _ in range(1000):
            b = complex_gaussian(rng, (d, d))
            for rep in (
                check_ineqid(b, tol=1e-9),
                check_ineqid1(b, tol=1e-9),
                check_ineqid2(b, "minus", tol=1e-9),
                check_ineqid2(b, "plus", tol=1e-9),
            ):
                worst_slack = min(worst_slack, rep.slack)
                if not rep.holds:
                    return _result(4, "special-case-chain", False, t0,
                                   failed=rep.to_dict())
            trace = interlacing_trace(b, tol=1e-9)  # raises StepFailedError on violation
            residual = next(
                r.lhs for r in trace.reports if r.name == "unitary_residual"
            )
            worst_residual = max(worst_residual, residual)
    elapsed = time.perf_counter() - t0
    passed = worst_slack >= -1e-9 and worst_residual <= 1e-9 and elapsed < 60.0
    return _result(
        4, "special-case-chain", passed, t0,
        min_slack=worst_slack, max_unitary_residual=worst_residual, budget_s=60.0,
    )


def tightness_witness(seed: int = 0) -> AcceptanceResult:
    """Criterion 5: the 2x2 nilpotent shift saturates the commutator-gap
    bound (|slack| <= 1e-12) and tr Z_- equals (sqrt(5) - 1)/2 to 1e-10."""
    t0 = time.perf_counter()
    b = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    rep = check_ineqid2(b, "minus")
    z = np.block([[np.eye(2), b], [b.conj().T, b @ b.conj().T]])
    w = np.linalg.eigvalsh(z)
    tr_neg = float(np.sum(np.clip(-w, 0.0, None)))
    golden = (math.sqrt(5.0) - 1.0) / 2.0
    passed = abs(rep.slack) <= 1e-12 and abs(tr_neg - golden) <= 1e-10
    return _result(
        5, "tightness-witness", passed, t0,
        ineqid2_slack=rep.slack, tr_neg=tr_neg, expected=golden,
    )


def commutative_lemma_exhaustive(seed: int = 0) -> AcceptanceResult:
    """Criterion 6: exhaustive over all permutations for d <= 7 with 100
    random sorted spectra each; the lemma holds, the chain-split identity
    agrees within 1e-12, chain completeness is exact, and the two-point
    swap witness has zero slack."""
    t0 = time.perf_counter()
    rng = _rng(seed, 6)
    worst_slack = math.inf
    worst_split = 0.0
    for d in range(1, 8):
        perms = [tuple(int(i) + 1 for i in row) for row in _perm_array(d)]
        chains_by_perm = []
        for pi in perms:
            chains = ma_chains(pi)
            ascending = {i for i in range(1, d + 1) if pi[i - 1] > i}
            nonterminal = set()
            for c in chains:
                nonterminal.update(c[:-1])
            if nonterminal != ascending:
                return _result(6, "commutative-lemma-exhaustive", False, t0,
                               completeness_failed_for=list(pi))
            chains_by_perm.append(chains)
        for _ in range(100):
            mu = np.sort(rng.random(d))[::-1]
            total = float(np.sum(mu))
            for pi, chains in zip(perms, chains_by_perm):
                direct = commutative_lhs(mu, pi)
                split = sum(
                    math.sqrt(mu[a - 1] - mu[b - 1])
                    for c in chains
                    for a, b in zip(c[:-1], c[1:])
                )
                worst_split = max(worst_split, abs(direct - split))
                slack = (d / 2.0) * total - direct**2
                worst_slack = min(worst_slack, slack)
    swap = check_commutative(np.array([1.0, 0.0]), (2, 1))
    elapsed = time.perf_counter() - t0
    passed = (
        worst_slack >= -1e-9
        and worst_split <= 1e-12
        and abs(swap.slack) <= 1e-12
        and elapsed < 120.0
    )
    return _result(
        6, "commutative-lemma-exhaustive", passed, t0,
        min_slack=worst_slack, max_split_diff=worst_split,
        swap_slack=swap.slack, budget_s=120.0,
    )


def drury_reduction(seed: int = 0) -> AcceptanceResult:
    """Criterion 7: for 200 random B per size d in 2..5, the commutator-gap
    half-power trace is bounded by the brute-force rearrangement maximum
    (slack >= -1e-9)."""
    t0 = time.perf_counter()
    rng = _rng(seed, 7)
    worst = math.inf
    for d in range(2, 6):
        for _ in range(200):
            rep = drury_numeric_check(complex_gaussian(rng, (d, d)), tol=1e-9)
            worst = min(worst, rep.slack)
            if not rep.holds:
                return _result(7, "drury-reduction", False, t0, failed=rep.to_dict())
    return _result(7, "drury-reduction", worst >= -1e-9, t0, min_slack=worst)


def approximation_suite(seed: int = 0) -> AcceptanceResult:
    """Criterion 8: h(0) < sqrt(pi/2) at theta=1; the paired-derivative
    check passes at 100 levels; the beta sign pattern holds on a 1000-point
    grid; and the sup error at s=100 is at most 1/8 of the s=1 value on the
    standard grid."""
    t0 = time.perf_counter()
    h0 = h(0.0)
    pair = im_pair_check(theta=1.0, sample_count=100)
    signs = beta_sign_report(theta=1.0, n=1000)
    err1 = sup_error(IMParams(s=1.0))
    err100 = sup_error(IMParams(s=100.0))
    passed = (
        h0 < math.sqrt(math.pi / 2.0)
        and pair.slack > 0
        and signs.slack > 0
        and err100 <= err1 / 8.0
    )
    return _result(
        8, "approximation-suite", passed, t0,
        h0=h0, h0_bound=math.sqrt(math.pi / 2.0),
        min_pair_sum=pair.rhs, min_beta_margin=signs.rhs,
        sup_err_s1=err1, sup_err_s100=err100,
    )


def diagonal_quasinorm_monotonicity(seed: int = 0) -> AcceptanceResult:
    """Criterion 9: for 500 random psd matrices (sizes up to 6), replacing
    the matrix by its diagonal cannot decrease the 1/2 quasi-norm
    (slack >= -1e-9)."""
    t0 = time.perf_counter()
    rng = _rng(seed, 9)
    worst = math.inf
    for i in range(500):
        d = 1 + i % 6
        gmat = complex_gaussian(rng, (d, d))
        p = gmat @ gmat.conj().T
        diag_q = float(np.sum(np.sqrt(np.clip(np.diag(p).real, 0.0, None)))) ** 2
        worst = min(worst, diag_q - schatten(p, 0.5))
    return _result(
        9, "diagonal-quasinorm-monotonicity", worst >= -1e-9, t0, min_slack=worst
    )


def conjecture_scan(seed: int = 0) -> AcceptanceResult:
    """Criterion 10: scale-free monogamy scans over 10^4 seeded trials for
    dims (2,2,2) and (2,3,3) find no violation at tolerance 1e-8; the
    minimum slack and its instance are deterministic and replayable.

    A genuine violation would be surfaced as a finding in the details and
    would not by itself fail this criterion.
    """
    t0 = time.perf_counter()
    details = {}
    passed = True
    findings = []
    for dims in ((2, 2, 2), (2, 3, 3)):
        cfg = SearchConfig(target="ineq4", dims=dims, trials=10_000, seed=seed, tol=1e-8)
        res = run_search(cfg)
        replayed = evaluate_slack("ineq4", deserialize_instance(res.argmin))
        check_cfg = SearchConfig(target="ineq4", dims=dims, trials=300, seed=seed, tol=1e-8)
        if run_search(check_cfg) != run_search(check_cfg):
            passed = False
        if res.violations:
            findings.append({"dims": list(dims), "result": res.to_dict()})
        key = "x".join(str(d) for d in dims)
        details[f"min_slack_{key}"] = res.min_slack
        details[f"argmin_trial_{key}"] = res.trial_index
        details[f"violations_{key}"] = res.violations
        if abs(replayed - res.min_slack) > 1e-12:
            passed = False
            details[f"replay_mismatch_{key}"] = replayed
    if findings:
        details["findings"] = findings
    return _result(10, "conjecture-scan", passed, t0, **details)


CRITERIA = (
    representation_equivalence,
    negativity_identity,
    partial_trace_monotonicity,
    special_case_chain,
    tightness_witness,
    commutative_lemma_exhaustive,
    drury_reduction,
    approximation_suite,
    diagonal_quasinorm_monotonicity,
    conjecture_scan,
)


def run_all(seed: int = 0) -> list[AcceptanceResult]:
    return [fn(seed) for fn in CRITERIA]
