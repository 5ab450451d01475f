"""Smooth increasing approximants of sqrt(x_+) built from the bump
g(x) = w(alpha(x) x) with w(x) = (1/2)(x^2 + 1)^(-1/4) and
alpha(x) = 1 + exp(-theta x): the antiderivative h, its scaled family
h_s(x) = h(s x)/sqrt(s), and the paired-derivative check that certifies g
as the derivative of an increasing matrix-compatible approximant.

h is computed by adaptive Simpson quadrature on [L, x] where the left
cutoff L makes the analytic tail bound on the dropped integral smaller
than half the requested tolerance; quad_tol is therefore a total error
budget, not a per-panel one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import QuadratureFailureError, RootNotBracketedError
from .matcore import InequalityReport, make_report

DEFAULT_THETA = 1.0
DEFAULT_QUAD_TOL = 1e-10

# exp() overflow guard; g underflows to zero long before this matters.
_EXP_CLIP = 700.0


def w(x):
    """w(x) = (1/2) (x^2 + 1)^(-1/4); even, decreasing in |x|, maximum 1/2."""
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore"):  # x*x may overflow to inf; w then underflows to 0
        out = 0.5 * (x * x + 1.0) ** -0.25
    return float(out) if out.ndim == 0 else out


def w_prime(x):
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.where(np.abs(x) > 1e100, 0.0, -x / (4.0 * (x * x + 1.0) ** 1.25))
    return float(out) if out.ndim == 0 else out


def alpha(x, theta: float = DEFAULT_THETA):
    """alpha(x) = 1 + exp(-theta x)."""
    x = np.asarray(x, dtype=float)
    out = 1.0 + np.exp(np.minimum(-theta * x, _EXP_CLIP))
    return float(out) if out.ndim == 0 else out


def beta(x, theta: float = DEFAULT_THETA):
    """d/dx of alpha(x) x: beta = -theta x exp(-theta x) + 1 + exp(-theta x).

    Strictly above 2 for x < 0, exactly 2 at 0, strictly below 2 for x > 0;
    this sign pattern is what makes the paired-derivative sums positive.
    """
    x = np.asarray(x, dtype=float)
    e = np.exp(np.minimum(-theta * x, _EXP_CLIP))
    out = -theta * x * e + 1.0 + e
    return float(out) if out.ndim == 0 else out


def g(x, theta: float = DEFAULT_THETA):
    """g(x) = w(alpha(x) x); positive, unimodal with g(0) = 1/2."""
    x = np.asarray(x, dtype=float)
    return w(alpha(x, theta) * x)


def g_prime(x, theta: float = DEFAULT_THETA):
    """Closed-form derivative w'(alpha(x) x) * beta(x)."""
    x = np.asarray(x, dtype=float)
    out = w_prime(alpha(x, theta) * x) * beta(x, theta)
    return float(out) if np.ndim(out) == 0 else out


def _g_scalar(y: float, theta: float) -> float:
    # pure-math fast path for the quadrature inner loop
    e = math.exp(min(-theta * y, _EXP_CLIP))
    u = (1.0 + e) * y
    a = abs(u)
    if a > 1e150:  # (u^2 + 1)^(1/4) ~ sqrt(a); avoids overflow in u*u
        return 0.5 / math.sqrt(a)
    return 0.5 * (u * u + 1.0) ** -0.25


def _simpson(fa, fm, fb, a, b) -> float:
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adapt(f, a, fa, m, fm, b, fb, whole, tol, depth) -> float:
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = _simpson(fa, flm, fm, a, m)
    right = _simpson(fm, frm, fb, m, b)
    err = left + right - whole
    if abs(err) <= 15.0 * tol:
        return left + right + err / 15.0
    if depth <= 0:
        raise QuadratureFailureError(
            f"max subdivision depth reached on [{a!r}, {b!r}]"
        )
    half = 0.5 * tol
    return _adapt(f, a, fa, lm, flm, m, fm, left, half, depth - 1) + _adapt(
        f, m, fm, rm, frm, b, fb, right, half, depth - 1
    )


def adaptive_simpson(f, a: float, b: float, tol: float, max_depth: int = 60) -> float:
    """Adaptive Simpson quadrature with Richardson correction."""
    if b <= a:
        return 0.0
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = _simpson(fa, fm, fb, a, b)
    return _adapt(f, a, fa, m, fm, b, fb, whole, tol, max_depth)


def tail_bound(x: float, theta: float = DEFAULT_THETA) -> float:
    """Closed-form bound on the integral of g over (-inf, x] for x < 0,
    from g(y) <= exp(theta y / 2) / (2 sqrt(-y))."""
    if x >= 0:
        raise ValueError("tail bound only valid for x < 0")
    return math.exp(theta * x / 2.0) / (theta * math.sqrt(-x))


def tail_cutoff(theta: float = DEFAULT_THETA, quad_tol: float = DEFAULT_QUAD_TOL) -> float:
    """Left endpoint L < 0 with tail_bound(L) < quad_tol / 2."""
    t = 8.0 / theta
    while tail_bound(-t, theta) > 0.5 * quad_tol:
        t *= 2.0
    return -t


def h(x: float, theta: float = DEFAULT_THETA, quad_tol: float = DEFAULT_QUAD_TOL) -> float:
    """Antiderivative h(x) = integral of g over (-inf, x]."""
    lo = tail_cutoff(theta, quad_tol)
    if x <= lo:
        return 0.0
    return adaptive_simpson(lambda y: _g_scalar(y, theta), lo, float(x), 0.5 * quad_tol)


def h_grid(xs, theta: float = DEFAULT_THETA, quad_tol: float = DEFAULT_QUAD_TOL) -> np.ndarray:
    """h evaluated on an ascending grid by cumulative segment quadrature.

    The total budget quad_tol is split across the tail cutoff and the
    segments, so errors cannot accumulate past it.
    """
    v = np.asarray(xs, dtype=float)
    if v.ndim != 1 or v.size < 1:
        raise ValueError(f"expected a non-empty 1-d grid, got shape {v.shape}")
    if np.any(np.diff(v) < 0):
        raise ValueError("grid must be ascending")
    lo = tail_cutoff(theta, quad_tol)
    seg_tol = 0.5 * quad_tol / (v.size + 1)
    fn = lambda y: _g_scalar(y, theta)
    out = np.zeros(v.size)
    acc = 0.0
    prev = lo
    for i, x in enumerate(v):
        if x <= lo:
            continue
        acc += adaptive_simpson(fn, prev, float(x), seg_tol)
        prev = float(x)
        out[i] = acc
    return out


def h_s(x: float, s: float, theta: float = DEFAULT_THETA, quad_tol: float = DEFAULT_QUAD_TOL) -> float:
    """Scaled approximant h_s(x) = h(s x) / sqrt(s); converges uniformly to
    sqrt(x_+) at rate 1/sqrt(s)."""
    if not s > 0:
        raise ValueError(f"scale must be positive, got {s}")
    return h(s * x, theta, quad_tol) / math.sqrt(s)


def sqrt_plus(x):
    """Target function sqrt(x_+)."""
    x = np.asarray(x, dtype=float)
    out = np.sqrt(np.clip(x, 0.0, None))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class IMParams:
    """Evaluation parameters: bump steepness, scale, quadrature budget and
    the grid on which approximation error is reported."""

    theta: float = DEFAULT_THETA
    s: float = 1.0
    quad_tol: float = DEFAULT_QUAD_TOL
    grid_lo: float = -10.0
    grid_hi: float = 10.0
    grid_n: int = 2001

    def __post_init__(self):
        if not (self.theta > 0 and self.s > 0 and self.quad_tol > 0):
            raise ValueError("theta, s and quad_tol must be positive")
        if not (self.grid_hi > self.grid_lo and self.grid_n >= 2):
            raise ValueError("grid must have grid_hi > grid_lo and at least 2 points")

    def grid(self) -> np.ndarray:
        return np.linspace(self.grid_lo, self.grid_hi, self.grid_n)


def sup_error(params: IMParams) -> float:
    """max over the grid of |h_s(x) - sqrt(x_+)|."""
    xs = params.grid()
    hs = h_grid(params.s * xs, params.theta, params.quad_tol) / math.sqrt(params.s)
    return float(np.max(np.abs(hs - sqrt_plus(xs))))


def sup_error_table(s_values, params: IMParams) -> list[tuple[float, float]]:
    """Rows (s, sup |h_s - sqrt(x_+)|) over the parameter grid."""
    rows = []
    for s in s_values:
        if not s > 0:
            raise ValueError(f"scale must be positive, got {s}")
        p = IMParams(params.theta, float(s), params.quad_tol,
                     params.grid_lo, params.grid_hi, params.grid_n)
        rows.append((float(s), sup_error(p)))
    return rows


def _bisect_level(c: float, theta: float, positive: bool, tol: float) -> float:
    """Solve g(t) = c on the requested monotone branch by bisection."""
    if not 0.0 < c < 0.5:
        raise RootNotBracketedError(f"level must lie in (0, 1/2), got {c}")
    if positive:
        lo, hi = 0.0, 1.0
        while g(hi, theta) > c:
            hi *= 2.0
            if hi > 1e12:
                raise RootNotBracketedError(f"no positive root for level {c}")
        # g decreasing on [lo, hi]
        while hi - lo > tol * max(1.0, abs(hi)):
            mid = 0.5 * (lo + hi)
            if g(mid, theta) > c:
                lo = mid
            else:
                hi = mid
    else:
        lo, hi = -1.0, 0.0
        while g(lo, theta) > c:
            lo *= 2.0
            if lo < -1e12:
                raise RootNotBracketedError(f"no negative root for level {c}")
        # g increasing on [lo, hi]
        while hi - lo > tol * max(1.0, abs(lo)):
            mid = 0.5 * (lo + hi)
            if g(mid, theta) < c:
                lo = mid
            else:
                hi = mid
    return 0.5 * (lo + hi)


def im_pair_check(
    theta: float = DEFAULT_THETA, sample_count: int = 100, tol: float = 1e-12
) -> InequalityReport:
    """For sampled levels c in (0, 1/2), locate the two preimages
    t1 < 0 < t2 of c under g and check g'(t1) + g'(t2) > 0.

    This is the increasing-rearrangement criterion for g being the
    derivative of a matrix-compatible increasing approximant; the report
    carries the smallest derivative sum over all sampled levels.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be at least 1")
    levels = np.linspace(0.01, 0.49, sample_count)
    worst = math.inf
    worst_level = None
    for c in levels:
        t1 = _bisect_level(float(c), theta, positive=False, tol=tol)
        t2 = _bisect_level(float(c), theta, positive=True, tol=tol)
        total = g_prime(t1, theta) + g_prime(t2, theta)
        if total < worst:
            worst = total
            worst_level = float(c)
    return make_report(
        "im_pair_derivative_sum", 0.0, worst,
        theta=theta, samples=int(sample_count), worst_level=worst_level,
    )


def beta_sign_report(
    theta: float = DEFAULT_THETA, lo: float = -10.0, hi: float = 10.0, n: int = 1000
) -> InequalityReport:
    """Worst margin of the sign pattern beta > 2 for x < 0 and beta < 2 for
    x > 0 over an n-point grid (x = 0, where beta = 2, is skipped)."""
    xs = np.linspace(lo, hi, n)
    bs = beta(xs, theta)
    margins = np.where(xs < 0, bs - 2.0, 2.0 - bs)[xs != 0]
    return make_report(
        "beta_sign_pattern", 0.0, float(np.min(margins)), theta=theta, n=int(n)
    )
