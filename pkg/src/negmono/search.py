"""Seeded random scans and derivative-free local descent on the slack of the
monogamy and special-case inequalities.

Every trial is a pure function of (seed, trial_index) through splittable
seed sequences, so results are reproducible and independent of worker
scheduling; the final minimum is merged by (slack, trial_index).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .matcore import TAU_CHECK, complex_gaussian, matrix_from_dict, matrix_to_dict
from .monogamy import ineq4_report
from .permlemma import check_commutative
from .qstate import TripartiteState, random_state, state_from_dict, state_to_dict
from .specialcase import check_ineqid, check_ineqid1, check_ineqid2

TARGETS = ("ineq4", "ineqid", "ineqid1", "ineqid2", "commutative")

# Spread of the exponentially spaced spectra sampled for the commutative
# target; larger means sparser spectra, which is where equality lives.
MU_GAMMA = 5.0

# Consecutive rejected proposals before the step scale is halved.
STALL_LIMIT = 20


@dataclass(frozen=True)
class SearchConfig:
    """Scan parameters; dims is used by the state target ineq4, d by the
    matrix and spectrum targets."""

    target: str
    dims: tuple[int, int, int] | None = None
    d: int | None = None
    trials: int = 1000
    local_steps: int = 20
    step_scale: float = 0.25
    seed: int = 0
    tol: float = TAU_CHECK

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ValueError(f"unknown target {self.target!r}, expected one of {TARGETS}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.local_steps < 0:
            raise ValueError("local_steps must be non-negative")
        if not self.step_scale > 0:
            raise ValueError("step_scale must be positive")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
        if self.target == "ineq4":
            if self.dims is None or len(self.dims) != 3 or min(self.dims) < 1:
                raise ValueError("target ineq4 needs dims = (dA, dB, dC)")
        elif self.d is None or self.d < 1:
            raise ValueError(f"target {self.target} needs a matrix size d >= 1")


@dataclass(frozen=True)
class SearchResult:
    min_slack: float
    argmin: dict
    trial_index: int
    violations: int

    def to_dict(self) -> dict:
        return {
            "min_slack": self.min_slack,
            "argmin": self.argmin,
            "trial_index": self.trial_index,
            "violations": self.violations,
        }


def random_instance(cfg: SearchConfig, trial_index: int):
    """Deterministic random instance for one trial: a normalised Gaussian
    state for ineq4, a complex Gaussian matrix for the ineqid targets, or a
    sorted exponentially spaced spectrum plus uniform permutation."""
    child = np.random.SeedSequence(entropy=(cfg.seed, int(trial_index))).spawn(2)[0]
    rng = np.random.default_rng(child)
    if cfg.target == "ineq4":
        return random_state(cfg.dims, rng)
    if cfg.target == "commutative":
        mu = np.exp(-MU_GAMMA * rng.random(cfg.d))
        mu[::-1].sort()
        mu /= mu.sum()
        pi = tuple(int(i) + 1 for i in rng.permutation(cfg.d))
        return mu, pi
    return complex_gaussian(rng, (cfg.d, cfg.d))


def evaluate_slack(target: str, instance) -> float:
    """Slack of the targeted inequality on one instance; negative means a
    violation candidate."""
    if target == "ineq4":
        return ineq4_report(list(instance.coeffs)).slack
    if target == "ineqid":
        return check_ineqid(instance).slack
    if target == "ineqid1":
        return check_ineqid1(instance).slack
    if target == "ineqid2":
        return check_ineqid2(instance).slack
    if target == "commutative":
        mu, pi = instance
        return check_commutative(mu, pi).slack
    raise ValueError(f"unknown target {target!r}")


def _perturb(target: str, instance, scale: float, rng: np.random.Generator):
    if target == "ineq4":
        c = instance.coeffs + scale * complex_gaussian(rng, instance.dims)
        if not np.any(c):
            return instance
        return TripartiteState(c, normalize=True)
    if target == "commutative":
        mu, pi = instance
        cand = np.clip(mu + scale * rng.standard_normal(mu.size), 0.0, None)
        total = cand.sum()
        if total == 0.0:
            return instance
        cand[::-1].sort()
        return cand / total, pi
    return instance + scale * complex_gaussian(rng, instance.shape)


def local_descend(instance, target: str, steps: int, scale: float, seed):
    """Greedy descent on the slack: accept a Gaussian perturbation only when
    it strictly decreases the slack; halve the scale after STALL_LIMIT
    consecutive rejections. Returns (best_instance, best_slack).

    seed may be an int or a numpy SeedSequence."""
    rng = np.random.default_rng(seed)
    best = instance
    best_slack = evaluate_slack(target, instance)
    stalled = 0
    for _ in range(steps):
        cand = _perturb(target, best, scale, rng)
        cand_slack = evaluate_slack(target, cand)
        if cand_slack < best_slack:
            best, best_slack = cand, cand_slack
            stalled = 0
        else:
            stalled += 1
            if stalled >= STALL_LIMIT:
                scale *= 0.5
                stalled = 0
    return best, best_slack


def serialize_instance(target: str, instance) -> dict:
    if target == "ineq4":
        return {"kind": "state", **state_to_dict(instance)}
    if target == "commutative":
        mu, pi = instance
        return {"kind": "mu_pi", "mu": [float(x) for x in mu], "pi": list(pi)}
    return {"kind": "matrix", **matrix_to_dict(instance)}


def deserialize_instance(obj: dict):
    kind = obj.get("kind")
    if kind == "state":
        return state_from_dict(obj)
    if kind == "mu_pi":
        return np.asarray(obj["mu"], dtype=float), tuple(obj["pi"])
    if kind == "matrix":
        return matrix_from_dict(obj)
    raise ValueError(f"unknown instance kind {kind!r}")


def run_trial(cfg: SearchConfig, trial_index: int) -> tuple[int, float, dict]:
    """One full trial: sample, descend, serialize the survivor."""
    instance = random_instance(cfg, trial_index)
    descent_seed = np.random.SeedSequence(entropy=(cfg.seed, int(trial_index))).spawn(2)[1]
    best, slack = local_descend(
        instance, cfg.target, cfg.local_steps, cfg.step_scale, descent_seed
    )
    return int(trial_index), float(slack), serialize_instance(cfg.target, best)


def _run_trial_star(args) -> tuple[int, float, dict]:
    return run_trial(*args)


def iter_trials(cfg: SearchConfig, jobs: int = 1):
    """Yield (trial_index, slack, argbest) in trial order."""
    if jobs <= 1:
        for t in range(cfg.trials):
            yield run_trial(cfg, t)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunk = max(1, cfg.trials // (jobs * 8))
        work = ((cfg, t) for t in range(cfg.trials))
        yield from pool.map(_run_trial_star, work, chunksize=chunk)


def run_search(cfg: SearchConfig, jobs: int = 1) -> SearchResult:
    """Scan all trials and merge by (slack, trial_index), so the result is
    independent of worker count and scheduling."""
    best = None
    violations = 0
    for t, slack, inst in iter_trials(cfg, jobs):
        if slack < -cfg.tol:
            violations += 1
        if best is None or (slack, t) < (best[0], best[1]):
            best = (slack, t, inst)
    return SearchResult(
        min_slack=best[0], argmin=best[2], trial_index=best[1], violations=violations
    )
