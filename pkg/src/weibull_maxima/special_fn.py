"""Real Lambert W branches, log-gamma, and the regularized upper incomplete gamma.

All functions are pure. ``lambert_w`` is vectorized over numpy arrays; the
incomplete gamma routines are scalar.
"""

from __future__ import annotations

import enum
import math
from statistics import NormalDist

import numpy as np

from ._roots import expand_bracket, newton_bisect
from .exceptions import ConvergenceError, DomainError

__all__ = [
    "Branch",
    "lambert_w",
    "log_gamma",
    "reg_gamma_q",
    "reg_gamma_p",
    "reg_gamma_q_inv",
]

EPS = np.finfo(float).eps
INV_E = math.exp(-1.0)
# |x + 1/e| below this uses the branch-point series as starting value.
BRANCH_POINT_RADIUS = 1e-2
MAX_HALLEY_ITER = 50


class Branch(enum.IntEnum):
    """Real branch of the Lambert W function.

    ``PRINCIPAL`` (W0) is defined on ``x >= -1/e`` and takes values ``>= -1``;
    ``SECONDARY`` (W-1) is defined on ``-1/e <= x < 0`` with values ``<= -1``.
    """

    PRINCIPAL = 0
    SECONDARY = -1


def _branch_point_guess(x: np.ndarray, sign: float) -> np.ndarray:
    # Series in p = +-sqrt(2(1 + e x)) around w = -1.
    p = sign * np.sqrt(np.maximum(2.0 * (1.0 + math.e * x), 0.0))
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))))


def _initial_guess(x: np.ndarray, branch: Branch) -> np.ndarray:
    near = np.abs(x + INV_E) < BRANCH_POINT_RADIUS
    w = np.empty_like(x)
    if branch is Branch.SECONDARY:
        with np.errstate(divide="ignore", invalid="ignore"):
            l1 = np.log(-x)
            l2 = np.log(-l1)
            asym = l1 - l2 + l2 / l1
        # The asymptotic form is poor in the middle of the domain; the
        # branch-point series is still below -1 there and Halley recovers.
        mid = (~near) & (x < -0.25)
        w[:] = asym
        w[mid] = np.minimum(_branch_point_guess(x[mid], -1.0), -1.0 - 1e-3)
    else:
        lp = np.log1p(np.maximum(x, -INV_E + 1e-300))
        with np.errstate(divide="ignore", invalid="ignore"):
            # Winitzki's uniform approximation for x > -1/e.
            w[:] = lp * (1.0 - np.log1p(lp) / (2.0 + lp))
        big = x > 3.0
        l1 = np.log(x[big])
        l2 = np.log(l1)
        w[big] = l1 - l2 + l2 / l1
        mid = (~near) & (x < -0.25)
        w[mid] = _branch_point_guess(x[mid], 1.0)
    w[near] = _branch_point_guess(x[near], -1.0 if branch is Branch.SECONDARY else 1.0)
    return w


def _halley(x: np.ndarray, w: np.ndarray) -> np.ndarray:
    active = np.ones(x.shape, dtype=bool)
    for _ in range(MAX_HALLEY_ITER):
        if not active.any():
            return w
        xa, wa = x[active], w[active]
        ew = np.exp(wa)
        f = wa * ew - xa
        wp1 = wa + 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            denom = ew * wp1 - (wa + 2.0) * f / (2.0 * wp1)
            step = np.where((f == 0.0) | (wp1 == 0.0), 0.0, f / denom)
        step = np.where(np.isfinite(step), step, 0.0)
        w[active] = wa - step
        # Near the branch point the derivative vanishes and the step is
        # dominated by rounding in f, so a residual at rounding level also stops.
        done = (np.abs(step) <= 2.0 * EPS * np.maximum(1.0, np.abs(wa))) | (
            np.abs(f) <= 2.0 * EPS * np.abs(xa)
        )
        idx = np.flatnonzero(active)
        active[idx[done]] = False
    if active.any():
        raise ConvergenceError(
            f"Lambert W: {int(active.sum())} value(s) did not converge in {MAX_HALLEY_ITER} iterations"
        )
    return w


def lambert_w(x, branch: Branch | int = Branch.PRINCIPAL):
    """Real Lambert W function, the solution ``w`` of ``w * exp(w) = x``.

    Parameters
    ----------
    x : float or array_like
        Argument. ``x >= -1/e`` for the principal branch and
        ``-1/e <= x < 0`` for the secondary one.
    branch : Branch or int
        ``0`` (principal) or ``-1`` (secondary).

    Returns
    -------
    float or ndarray
        Same shape as ``x``.

    Raises
    ------
    DomainError
        If any ``x`` is outside the domain of the branch.
    ConvergenceError
        If Halley's iteration fails to settle within 50 steps.
    """
    branch = Branch(branch)
    scalar = np.ndim(x) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=float)).copy()
    # Tiny round-off below -1/e is snapped onto the branch point.
    low = xa < -INV_E
    snap = low & (xa >= -INV_E * (1.0 + 4.0 * EPS))
    xa[snap] = -INV_E
    if np.any(np.isnan(xa)) or np.any(xa < -INV_E):
        raise DomainError("Lambert W is real only for x >= -1/e")
    if branch is Branch.SECONDARY and np.any(xa >= 0.0):
        raise DomainError("the secondary branch is defined for -1/e <= x < 0")

    w = np.empty_like(xa)
    at_bp = xa == -INV_E
    w[at_bp] = -1.0
    zero = xa == 0.0
    w[zero] = 0.0
    rest = ~(at_bp | zero)
    if rest.any():
        xr = xa[rest]
        w[rest] = _halley(xr, _initial_guess(xr, branch))
        # Clamp tiny excursions across -1 near the branch point.
        if branch is Branch.SECONDARY:
            w[rest] = np.minimum(w[rest], -1.0)
        else:
            w[rest] = np.maximum(w[rest], -1.0)
    return float(w[0]) if scalar else w.reshape(np.shape(x))


def log_gamma(a: float) -> float:
    """Natural log of the gamma function for ``a > 0``."""
    if not a > 0:
        raise DomainError(f"log_gamma requires a > 0, got {a!r}")
    return math.lgamma(a)


def _check_gamma_args(a: float, y: float) -> None:
    if not a > 0:
        raise DomainError(f"shape a must be positive, got {a!r}")
    if not y >= 0:
        raise DomainError(f"argument y must be nonnegative, got {y!r}")


def _log_prefactor(a: float, y: float) -> float:
    # log(y^a e^-y / Gamma(a))
    return a * math.log(y) - y - math.lgamma(a)


def _series_p(a: float, y: float, tol: float, max_iter: int) -> float:
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(max_iter):
        ap += 1.0
        term *= y / ap
        total += term
        if abs(term) < abs(total) * tol:
            return total * math.exp(_log_prefactor(a, y))
    raise ConvergenceError(f"incomplete gamma series failed for a={a}, y={y}")


def _continued_fraction_q(a: float, y: float, tol: float, max_iter: int) -> float:
    # Modified Lentz evaluation of the Legendre continued fraction.
    tiny = 1e-300
    b = y + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, max_iter + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < tol:
            return h * math.exp(_log_prefactor(a, y))
    raise ConvergenceError(f"incomplete gamma continued fraction failed for a={a}, y={y}")


def reg_gamma_q(a: float, y: float, *, tol: float = EPS, max_iter: int = 10_000) -> float:
    """Regularized upper incomplete gamma ``Q(a, y) = Gamma(a, y) / Gamma(a)``.

    Uses the power series of ``P`` for ``y < a + 1`` and a continued fraction
    for ``Q`` otherwise.
    """
    _check_gamma_args(a, y)
    if y == 0.0:
        return 1.0
    if math.isinf(y):
        return 0.0
    if y < a + 1.0:
        return max(0.0, 1.0 - _series_p(a, y, tol, max_iter))
    return min(1.0, _continued_fraction_q(a, y, tol, max_iter))


def reg_gamma_p(a: float, y: float, *, tol: float = EPS, max_iter: int = 10_000) -> float:
    """Regularized lower incomplete gamma ``P(a, y) = 1 - Q(a, y)``."""
    _check_gamma_args(a, y)
    if y == 0.0:
        return 0.0
    if math.isinf(y):
        return 1.0
    if y < a + 1.0:
        return min(1.0, _series_p(a, y, tol, max_iter))
    return max(0.0, 1.0 - _continued_fraction_q(a, y, tol, max_iter))


def _log_density(a: float, y: float) -> float:
    if not y > 0:
        return -math.inf
    return min((a - 1.0) * math.log(y) - y - math.lgamma(a), 700.0)


def _log_q_and_slope(a: float, y: float) -> tuple[float, float]:
    q = reg_gamma_q(a, y)
    if q <= 0.0:
        return -math.inf, -math.inf
    # d/dy log Q = -y^(a-1) e^-y / (Gamma(a) Q)
    return math.log(q), -math.exp(_log_density(a, y)) / q


def _log_p_and_slope(a: float, y: float) -> tuple[float, float]:
    p = reg_gamma_p(a, y)
    if p <= 0.0:
        return -math.inf, math.inf
    return math.log(p), math.exp(_log_density(a, y)) / p


_FAST_NEWTON_STEPS = 8
_LOG_TINY = math.log(2.2250738585072014e-308)


def reg_gamma_q_inv(a: float, q: float, *, k: float = 3.0, rtol: float = 1e-15) -> float:
    """Solve ``Q(a, y) = q`` for ``y``.

    Newton iteration on ``log Q(a, y) - log q`` (on ``log P`` when
    ``q > 1/2``) started from the
    Wilson-Hilferty approximation; if that stalls, a bracketed Newton
    iteration takes over. The bracket
    ``[max(a - 1, eps), a + k sqrt(a) log(1/q)]`` is widened geometrically
    until it straddles the target.
    """
    if not a > 0:
        raise DomainError(f"shape a must be positive, got {a!r}")
    if not 0.0 < q < 1.0:
        raise DomainError(f"q must lie in (0, 1), got {q!r}")
    if a == 1.0:
        return -math.log(q)
    log_q = math.log(q)

    if q > 0.5:
        # Near q = 1 work with P = 1 - Q so the target keeps its digits.
        log_p = math.log1p(-q)

        def g(y: float) -> tuple[float, float]:
            lp, slope = _log_p_and_slope(a, y)
            return lp - log_p, slope

    else:

        def g(y: float) -> tuple[float, float]:
            # Negated so the function is increasing in y.
            lq, slope = _log_q_and_slope(a, y)
            return log_q - lq, -slope

    z = NormalDist().inv_cdf(1.0 - q) if q > 1e-16 else math.sqrt(2.0 * math.log(1.0 / q))
    c = 1.0 / (9.0 * a)
    guess = a * max(1.0 - c + z * math.sqrt(c), 0.0) ** 3
    if q > 0.9 or guess <= 0.0:
        # lower tail: P(a, y) ~ y**a / Gamma(a + 1)
        log_guess = (math.log1p(-q) + math.lgamma(a + 1.0)) / a
        if log_guess < _LOG_TINY:
            # the root underflows double precision
            return 0.0
        guess = math.exp(log_guess)

    # Plain Newton from the guess usually lands in a few steps.
    y = guess
    for _ in range(_FAST_NEWTON_STEPS):
        if not y > 0.0:
            break
        val, slope = g(y)
        if not (math.isfinite(val) and slope > 0.0):
            break
        step = val / slope
        if not y - step > 0.0:
            break
        y -= step
        if abs(step) <= rtol * y:
            return y

    lo = max(a - 1.0, 1e-300)
    hi = a + k * math.sqrt(a) * math.log(1.0 / q) + 1.0
    lo, hi = expand_bracket(lambda y: g(y)[0], lo, hi, lower_limit=0.0)
    return newton_bisect(g, lo, hi, rtol=rtol, x0=guess)
