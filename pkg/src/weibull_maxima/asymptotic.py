"""Log-log asymptotic expansions and root-found inverses.

Notation: ``L1(x) = log x`` and ``L2(x) = log|log x|``.

* The secondary Lambert branch, ``x -> 0-``::

      W_{-1}(x) ~ L1(-x) - L2(-x) + sum_{n>=1} P_n(L2(-x)) / L1(-x)**n

* The unbounded solution ``t = U_{gamma,D}(x)`` of
  ``t**gamma e**t D(1/t) = x``, ``x -> inf``::

      U_{gamma,D}(x) ~ L1(x) + sum_{n>=0} Q_n(L2(x)) / L1(x)**n

* The secondary branch ``W_{-1,D}`` of the inverse of ``t e**t D(1/t)``::

      W_{-1,D}(x) ~ L1(-x) + sum_{n>=0} (-1)**(n+1) R_n(L2(-x)) / L1(-x)**n

The truncation ``order`` N counts the correction terms kept beyond the two
leading logarithms.
"""

from __future__ import annotations

import math
import warnings
from typing import Callable

import numpy as np

from ._roots import expand_bracket, newton_bisect
from .exceptions import DomainError, IllConditionedWarning
from .series import MAX_ORDER, PowerSeries, comtet_P, robin_Q_all, salvi_R_all

__all__ = [
    "DEFAULT_ORDER",
    "w_secondary_expansion",
    "u_gamma_d_expansion",
    "u_gamma_expansion",
    "w_secondary_d_expansion",
    "u_gamma_d_numeric",
    "solve_power_exp",
    "t_lambert",
    "t_comtet",
]

DEFAULT_ORDER = 1
# |L2/L1| at or above this triggers IllConditionedWarning. On the admissible
# domains |L2/L1| = log(u)/u with u > 1, which never exceeds 1/e.
ILL_CONDITIONED_RATIO = 0.3


def _check_order(order: int) -> int:
    if int(order) != order or not 0 <= order <= MAX_ORDER - 2:
        raise DomainError(f"expansion order must be an integer in [0, {MAX_ORDER - 2}], got {order!r}")
    return int(order)


def _small_logs(x: float) -> tuple[float, float]:
    """``L1(-x), L2(-x)`` for ``-1/e < x < 0``."""
    if not -math.exp(-1.0) < x < 0.0:
        raise DomainError(f"expansion needs -1/e < x < 0, got {x!r}")
    l1 = math.log(-x)
    l2 = math.log(-l1)
    if abs(l2 / l1) >= ILL_CONDITIONED_RATIO:
        warnings.warn(
            f"|L2/L1| = {abs(l2 / l1):.3f} at x={x!r}; the expansion is ill-conditioned",
            IllConditionedWarning,
            stacklevel=3,
        )
    return l1, l2


def _large_logs(x: float) -> tuple[float, float]:
    if not x > math.e:
        raise DomainError(f"expansion needs x > e, got {x!r}")
    l1 = math.log(x)
    l2 = math.log(l1)
    if l2 / l1 >= ILL_CONDITIONED_RATIO:
        warnings.warn(
            f"L2/L1 = {l2 / l1:.3f} at x={x!r}; the expansion is ill-conditioned",
            IllConditionedWarning,
            stacklevel=3,
        )
    return l1, l2


def w_secondary_expansion(x: float, order: int = DEFAULT_ORDER) -> float:
    """Truncated log-log expansion of ``W_{-1}(x)`` keeping ``order`` terms of the sum."""
    order = _check_order(order)
    l1, l2 = _small_logs(x)
    total = l1 - l2
    for n in range(1, order + 1):
        total += comtet_P(n)(l2) / l1**n
    return total


def u_gamma_d_expansion(gamma: float, D, x: float, order: int = DEFAULT_ORDER) -> float:
    """``L1(x) + sum_{n=0}^{order} Q_n(L2(x)) / L1(x)**n``.

    ``D`` is a :class:`PowerSeries`, a coefficient list or a scalar ``d0``.
    """
    order = _check_order(order)
    l1, l2 = _large_logs(x)
    qs = robin_Q_all(gamma, D, order)
    return l1 + sum(q(l2) / l1**n for n, q in enumerate(qs))


def u_gamma_expansion(gamma: float, x: float, order: int = DEFAULT_ORDER) -> float:
    """Classical case ``D = 1`` written through ``P_n``:
    ``L1 - gamma L2 + sum_{n=1}^{order} gamma**(n+1) P_n(L2) / L1**n``."""
    order = _check_order(order)
    l1, l2 = _large_logs(x)
    total = l1 - gamma * l2
    for n in range(1, order + 1):
        total += gamma ** (n + 1) * comtet_P(n)(l2) / l1**n
    return total


def w_secondary_d_expansion(D, x: float, order: int = DEFAULT_ORDER) -> float:
    """``L1(-x) + sum_{n=0}^{order} (-1)**(n+1) R_n(L2(-x)) / L1(-x)**n``."""
    order = _check_order(order)
    l1, l2 = _small_logs(x)
    rs = salvi_R_all(D, order)
    return l1 + sum((-1) ** (n + 1) * r(l2) / l1**n for n, r in enumerate(rs))


def _log_d(D) -> tuple[Callable[[float], float], Callable[[float], float]]:
    """``log D(u)`` and its derivative in ``u``, for a series or a callable."""
    if callable(D) and not isinstance(D, PowerSeries):
        h = 1e-6

        def log_d(u: float) -> float:
            v = D(u)
            if not v > 0:
                raise DomainError(f"D(1/t) must be positive, got {v!r} at 1/t={u!r}")
            return math.log(v)

        def dlog_d(u: float) -> float:
            # Central difference on the log; only steers Newton, the bracket decides.
            return (log_d(u + h) - log_d(max(u - h, 0.0))) / (u + h - max(u - h, 0.0))

        return log_d, dlog_d

    d = D if isinstance(D, PowerSeries) else PowerSeries(np.atleast_1d(np.asarray(D, dtype=float)))
    dprime = np.polynomial.Polynomial(d.coef).deriv()

    def log_d(u: float) -> float:
        v = d(u)
        if not v > 0:
            raise DomainError(f"D(1/t) must be positive, got {v!r} at 1/t={u!r}")
        return math.log(v)

    def dlog_d(u: float) -> float:
        return float(dprime(u)) / d(u)

    return log_d, dlog_d


def u_gamma_d_numeric(gamma: float, D, x: float, *, rtol: float = 1e-15) -> float:
    """Unbounded root ``t`` of ``t**gamma e**t D(1/t) = x``.

    Works on ``g(t) = gamma log t + t + log D(1/t) - log x``, increasing on
    the branch that escapes to infinity. The starting bracket
    ``[L1(x)/2, 2 L1(x) + 20]`` is widened until ``g`` changes sign.

    ``D`` is a :class:`PowerSeries` (evaluated as its truncated polynomial),
    a coefficient list, a scalar, or any positive callable ``u -> D(u)``.
    """
    if not x > 0:
        raise DomainError(f"x must be positive, got {x!r}")
    log_d, dlog_d = _log_d(D)
    log_x = math.log(x)

    def g(t: float) -> tuple[float, float]:
        u = 1.0 / t
        val = gamma * math.log(t) + t + log_d(u) - log_x
        slope = gamma / t + 1.0 - dlog_d(u) * u * u
        return val, slope

    # g is increasing past max(-gamma, 0) when D is constant; stay at or above it.
    floor = max(-gamma, 0.0)
    l1 = log_x
    lo = max(l1 / 2.0, floor, 1e-8)
    hi = max(2.0 * l1 + 20.0, lo + 1.0)
    lo, hi = expand_bracket(lambda t: g(t)[0], lo, hi, lower_limit=floor)
    return newton_bisect(g, lo, hi, rtol=rtol)


def solve_power_exp(beta: float, x: float) -> float:
    """Root ``t -> inf`` (as ``x -> 0+``) of ``t**beta e**-t = x``."""
    if not 0.0 < x < 1.0:
        raise DomainError(f"need 0 < x < 1, got {x!r}")
    return u_gamma_d_numeric(-beta, 1.0, 1.0 / x)


def t_lambert(beta: float, x: float, order: int = DEFAULT_ORDER) -> float:
    """Approximation of that root from the Lambert route,
    ``-beta W_{-1}(-x**(1/beta) / beta)`` expanded to ``order`` terms."""
    return -beta * w_secondary_expansion(-(x ** (1.0 / beta)) / beta, order)


def t_comtet(beta: float, x: float, order: int = DEFAULT_ORDER) -> float:
    """Same root through ``U_{-beta}(1/x)`` expanded to ``order`` terms."""
    return u_gamma_expansion(-beta, 1.0 / x, order)
