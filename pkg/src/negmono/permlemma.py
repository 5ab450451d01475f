"""Commutative reduction of the special-case bound: ascending chains of a
permutation, the chain-wise square-root sum bounds, the weighted l_{1/2}
inequality used to assemble them, and a brute-force check of the
trace-function rearrangement bound that justifies the reduction.

Permutations are 1-based image lists: pi maps i to image[i - 1].
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from .errors import (
    InvalidChainError,
    InvalidPermutationError,
    NegativeEntryError,
    NotProbabilityError,
    NotSortedError,
    NotSquareError,
    SizeMismatchError,
    TooLargeError,
)
from .matcore import (
    InequalityReport,
    TAU_CHECK,
    as_complex_matrix,
    hermitian_eigenvalues,
    make_report,
)
from .specialcase import commutator_gap

# Largest size for which all d! permutations are enumerated.
D_MAX = 8


def _validate_permutation(image) -> tuple[int, ...]:
    img = tuple(int(i) for i in image)
    if sorted(img) != list(range(1, len(img) + 1)):
        raise InvalidPermutationError(f"not a bijection on 1..{len(img)}: {img}")
    return img


def _validate_spectrum(mu, sorted_required: bool = True) -> np.ndarray:
    v = np.asarray(mu, dtype=float)
    if v.ndim != 1 or v.size < 1:
        raise ValueError(f"expected a non-empty vector, got shape {v.shape}")
    if np.any(v < 0):
        raise NegativeEntryError("spectrum entries must be non-negative")
    if sorted_required and np.any(np.diff(v) > 0):
        raise NotSortedError("spectrum must be sorted non-increasing")
    return v


def ma_chains(image) -> list[tuple[int, ...]]:
    """Maximal ascending chains of a permutation.

    An ascending edge is i -> pi(i) with pi(i) > i; since pi is a bijection
    the ascending edges form disjoint paths, returned as maximal paths with
    the terminal element included, ordered by their first element. Every i
    with pi(i) > i appears as a non-terminal element of exactly one chain.
    """
    img = _validate_permutation(image)
    d = len(img)
    asc = {i: img[i - 1] for i in range(1, d + 1) if img[i - 1] > i}
    inv = {img[i - 1]: i for i in range(1, d + 1)}
    chains = []
    for start in sorted(asc):
        if inv[start] in asc:  # start has an ascending predecessor
            continue
        chain = [start]
        while chain[-1] in asc:
            chain.append(asc[chain[-1]])
        chains.append(tuple(chain))
    return chains


def commutative_lhs(mu, image) -> float:
    """sum_i sqrt((mu_i - mu_{pi(i)})_+)."""
    img = _validate_permutation(image)
    v = _validate_spectrum(mu, sorted_required=False)
    if v.size != len(img):
        raise SizeMismatchError(f"len(mu)={v.size} but len(pi)={len(img)}")
    diffs = v - v[np.array(img) - 1]
    return float(np.sum(np.sqrt(np.clip(diffs, 0.0, None))))


def chain_component_sum(mu, chain) -> float:
    """sum over consecutive chain pairs of sqrt(mu_a - mu_b)."""
    v = np.asarray(mu, dtype=float)
    total = 0.0
    for a, b in zip(chain[:-1], chain[1:]):
        total += math.sqrt(max(v[a - 1] - v[b - 1], 0.0))
    return total


def chain_split_sum(mu, image) -> float:
    """commutative_lhs re-evaluated chain by chain; for sorted mu the two
    agree because every non-ascending term is clipped to zero."""
    v = _validate_spectrum(mu)
    return float(sum(chain_component_sum(v, c) for c in ma_chains(image)))


def check_commutative(mu, image, tol: float = TAU_CHECK) -> InequalityReport:
    """(sum_i sqrt((mu_i - mu_{pi(i)})_+))^2 <= (d/2) sum_i mu_i for sorted
    non-negative mu."""
    v = _validate_spectrum(mu)
    lhs = commutative_lhs(v, image) ** 2
    rhs = (v.size / 2.0) * float(np.sum(v))
    return make_report("commutative", lhs, rhs, tol, d=int(v.size))


def chain_bound(mu, chain, tol: float = TAU_CHECK) -> InequalityReport:
    """Per-chain bound: the component sum of a length-r chain is at most
    sqrt((r/2) * sum of the chain's mu values)."""
    v = _validate_spectrum(mu)
    idx = tuple(int(i) for i in chain)
    if (
        len(idx) < 1
        or len(set(idx)) != len(idx)
        or any(not 1 <= i <= v.size for i in idx)
        or any(a >= b for a, b in zip(idx[:-1], idx[1:]))
    ):
        raise InvalidChainError(f"not a strictly ascending index chain: {chain}")
    lhs = chain_component_sum(v, idx)
    rhs = math.sqrt((len(idx) / 2.0) * float(np.sum(v[np.array(idx) - 1])))
    return make_report("chain_bound", lhs, rhs, tol, r=len(idx))


def holder_half(x, p, tol: float = TAU_CHECK) -> InequalityReport:
    """Weighted l_{1/2} bound: (sum sqrt(x_j))^2 <= sum x_j / p_j for
    positive weights p summing to one."""
    xv = np.asarray(x, dtype=float)
    pv = np.asarray(p, dtype=float)
    if xv.shape != pv.shape or xv.ndim != 1 or xv.size < 1:
        raise SizeMismatchError(f"shapes {xv.shape} and {pv.shape} must match")
    if np.any(xv < 0):
        raise NegativeEntryError("x entries must be non-negative")
    if np.any(pv <= 0) or abs(float(np.sum(pv)) - 1.0) > 1e-12:
        raise NotProbabilityError("weights must be positive and sum to one")
    lhs = float(np.sum(np.sqrt(xv)) ** 2)
    rhs = float(np.sum(xv / pv))
    return make_report("holder_half", lhs, rhs, tol, n=int(xv.size))


@lru_cache(maxsize=None)
def _perm_array(d: int) -> np.ndarray:
    # Lexicographic 0-based images of all of S_d; cached (d <= D_MAX).
    return np.array(list(itertools.permutations(range(d))), dtype=np.intp)


def max_rearranged_sum(mu) -> tuple[float, tuple[int, ...]]:
    """max over permutations of sum_i sqrt((mu_i - mu_{pi(i)})_+) by brute
    force, returning the maximum and a 1-based argmax image."""
    v = np.asarray(mu, dtype=float)
    if v.size > D_MAX:
        raise TooLargeError(f"exhaustive enumeration limited to d <= {D_MAX}")
    perms = _perm_array(v.size)
    vals = np.sqrt(np.clip(v[None, :] - v[perms], 0.0, None)).sum(axis=1)
    best = int(np.argmax(vals))
    return float(vals[best]), tuple(int(i) + 1 for i in perms[best])


def drury_numeric_check(b, tol: float = TAU_CHECK) -> InequalityReport:
    """Rearrangement bound for the commutator gap: with mu the spectrum of
    B B*, tr sqrt((B B* - B* B)_+) is at most the brute-force maximum of
    sum_i sqrt((mu_i - mu_{pi(i)})_+) over all permutations."""
    m = as_complex_matrix(b)
    if m.shape[0] != m.shape[1]:
        raise NotSquareError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > D_MAX:
        raise TooLargeError(f"exhaustive enumeration limited to d <= {D_MAX}")
    gap_eigs = hermitian_eigenvalues(commutator_gap(m))
    lhs = float(np.sum(np.sqrt(np.clip(gap_eigs, 0.0, None))))
    mu = hermitian_eigenvalues(m @ m.conj().T)[::-1]
    rhs, _ = max_rearranged_sum(np.clip(mu, 0.0, None))
    return make_report("drury", lhs, rhs, tol, d=int(m.shape[0]))
