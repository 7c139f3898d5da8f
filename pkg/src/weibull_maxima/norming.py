"""Norming constants ``(a_n, b_n)`` for maxima of generalized Weibull and Gamma samples.

Three tiers are available:

``exact``
    ``b_n = F^{-1}(1 - 1/n)`` solved numerically and ``a_n = A(b_n)``. For a
    Gamma law ``b_n`` comes from the true Gamma quantile and ``a_n`` from the
    auxiliary function of the ``F1`` tail, ``x / (x/theta - nu + 1)``.
``standard``
    The two-term textbook constants.
``improved``
    One more term of a log-log expansion. Generalized Weibull laws use the
    Lambert route when ``alpha > tau`` and the Comtet route otherwise;
    Gamma laws use ``U_{1-nu,D}`` with ``D(t) = 1/(1 + (nu-1) t)`` for
    ``nu <= 2`` and ``W_{-1,E}`` with ``E(t) = (1 - t)**(1/(nu-1))`` above.

:func:`constants_via_expansion` generalizes the improved tier to any order.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

from .asymptotic import DEFAULT_ORDER, u_gamma_d_expansion, u_gamma_expansion, w_secondary_d_expansion, w_secondary_expansion
from .distributions import GammaParams, GammaTail, GeneralizedWeibullParams, TailForm
from .exceptions import DomainError, ValidityError
from .series import PowerSeries

__all__ = [
    "Method",
    "NormingConstants",
    "exact_constants",
    "standard_constants",
    "improved_constants",
    "improved_constants_gw",
    "improved_constants_gamma",
    "constants_via_expansion",
    "norming_constants",
]

Distribution = Union[GeneralizedWeibullParams, GammaParams]


class Method(str, enum.Enum):
    EXACT = "exact"
    STANDARD = "standard"
    IMPROVED = "improved"


@dataclass(frozen=True)
class NormingConstants:
    """Scale ``a > 0`` and location ``b`` for a sample size ``n``."""

    a: float
    b: float
    method: Method
    n: float
    order: int | None = None

    def __post_init__(self):
        if not self.a > 0:
            raise ValidityError(f"scale constant must be positive, got a={self.a!r}")

    def normalize(self, maxima):
        return (maxima - self.b) / self.a


def _check_n(n: float, low: float) -> float:
    if not n >= low:
        raise ValidityError(f"sample size must be at least {low}, got n={n!r}")
    return float(n)


def _a_from_b(dist: Distribution, b: float) -> float:
    try:
        return float(dist.auxiliary(b))
    except DomainError as exc:
        raise ValidityError(f"b={b:.6g} lies at or before the pole of the auxiliary function") from exc


def exact_constants(dist: Distribution, n: float) -> NormingConstants:
    """``b = F^{-1}(1 - 1/n)`` and ``a = A(b)``."""
    n = _check_n(n, 2)
    if isinstance(dist, GeneralizedWeibullParams):
        if 1.0 / n > dist.sf(dist.x0):
            raise ValidityError(f"1 - 1/n lies below the atom at x0 (F(x0) = {dist.cdf(dist.x0):.6g})")
        b = float(dist.isf(1.0 / n))
    elif isinstance(dist, GammaParams):
        b = float(dist.isf(1.0 / n))
    else:
        raise TypeError(f"unsupported distribution {type(dist).__name__}")
    return NormingConstants(a=_a_from_b(dist, b), b=b, method=Method.EXACT, n=n)


def standard_constants(dist: Distribution, n: float) -> NormingConstants:
    """Two-term constants.

    Generalized Weibull, with ``c = log(n) / C``::

        b' = c**(1/tau) + c**(1/tau - 1) / tau * (alpha/(C tau) log c + log(K) / C)
        a' = c**(1/tau - 1) / (C tau)

    Gamma: ``b' = theta (log n + (nu-1) log log n - log Gamma(nu))``, ``a' = theta``.
    """
    n = _check_n(n, 3)
    if isinstance(dist, GammaParams):
        nu, theta = dist.nu, dist.theta
        ln = math.log(n)
        b = theta * (ln + (nu - 1.0) * math.log(ln) - dist.log_gamma_nu)
        return NormingConstants(a=theta, b=b, method=Method.STANDARD, n=n)
    if not isinstance(dist, GeneralizedWeibullParams):
        raise TypeError(f"unsupported distribution {type(dist).__name__}")
    K, C, tau, alpha = dist.K, dist.C, dist.tau, dist.alpha
    c = math.log(n) / C
    lead = c ** (1.0 / tau)
    slope = c ** (1.0 / tau - 1.0)
    b = lead + slope / tau * (alpha / (C * tau) * math.log(c) + math.log(K) / C)
    a = slope / (C * tau)
    return NormingConstants(a=a, b=b, method=Method.STANDARD, n=n)


def _gw_lambert_argument(dist: GeneralizedWeibullParams, n: float) -> float:
    # b = (-(alpha/(C tau)) W_{-1}(x))**(1/tau) with x = -C tau / (alpha (K n)**(tau/alpha))
    K, C, tau, alpha = dist.K, dist.C, dist.tau, dist.alpha
    m1 = math.log(C * tau / alpha) - (tau / alpha) * math.log(K * n)
    if not m1 < -1.0:
        raise ValidityError(f"Lambert-route expansion needs M1 < -1, got M1={m1:.6g} (n too small)")
    return -math.exp(m1)


def _gw_comtet_argument(dist: GeneralizedWeibullParams, n: float) -> float:
    # b = ((1/C) U_{-alpha/tau}(K n / C**(alpha/tau)))**(1/tau)
    K, C, tau, alpha = dist.K, dist.C, dist.tau, dist.alpha
    n1 = math.log(K * n) - (alpha / tau) * math.log(C)
    if not n1 > 1.0:
        raise ValidityError(f"Comtet-route expansion needs N1 > 1, got N1={n1:.6g} (n too small)")
    return math.exp(n1)


def _gw_expansion_b(dist: GeneralizedWeibullParams, n: float, order: int) -> float:
    C, tau, alpha = dist.C, dist.tau, dist.alpha
    if alpha > tau:
        w = w_secondary_expansion(_gw_lambert_argument(dist, n), order)
        inner = -(alpha / (C * tau)) * w
    else:
        inner = u_gamma_expansion(-alpha / tau, _gw_comtet_argument(dist, n), order) / C
    if not inner > 0:
        raise ValidityError("truncated expansion produced a nonpositive value")
    return inner ** (1.0 / tau)


def improved_constants_gw(dist: GeneralizedWeibullParams, n: float) -> NormingConstants:
    """One-term-beyond-standard constants for a generalized Weibull law.

    ``alpha > tau``::

        b'' = (alpha/(C tau))**(1/tau) (-M1 + M2 - M2/M1)**(1/tau)
        M1 = log(C tau / (alpha (K n)**(tau/alpha))),  M2 = log(-M1)

    ``alpha <= tau``::

        b'' = C**(-1/tau) (N1 + (alpha/tau) N2 + (alpha/tau)**2 N2/N1)**(1/tau)
        N1 = log(K n / C**(alpha/tau)),  N2 = log(N1)

    and ``a'' = 1 / (C tau b''**(tau-1) - alpha / b'')``.
    """
    n = _check_n(n, 2)
    K, C, tau, alpha = dist.K, dist.C, dist.tau, dist.alpha
    if alpha > tau:
        m1 = math.log(_gw_lambert_argument(dist, n) * -1.0)
        m2 = math.log(-m1)
        b = (alpha / (C * tau)) ** (1.0 / tau) * (-m1 + m2 - m2 / m1) ** (1.0 / tau)
    else:
        n1 = math.log(_gw_comtet_argument(dist, n))
        n2 = math.log(n1)
        r = alpha / tau
        b = C ** (-1.0 / tau) * (n1 + r * n2 + r * r * n2 / n1) ** (1.0 / tau)
    return NormingConstants(a=_a_from_b(dist, b), b=b, method=Method.IMPROVED, n=n)


def _gamma_log_n_terms(g: GammaParams, n: float) -> tuple[float, float]:
    ln = math.log(n)
    lg = g.log_gamma_nu
    if g.nu <= 2.0:
        big = ln - lg
    else:
        big = ln + (g.nu - 1.0) * math.log(g.nu - 1.0) - lg
    if not big > 1.0:
        raise ValidityError(f"expansion variable must exceed 1, got {big:.6g} (n too small)")
    return ln, big


def improved_constants_gamma(g: GammaParams, n: float) -> NormingConstants:
    """Improved constants for Gamma(nu, theta).

    ``nu <= 2``, with ``L = log(n / Gamma(nu))``::

        b'' = theta (L + (nu-1) log L + ((nu-1)**2 log L + nu - 1) / L)

    ``nu > 2``, with ``B = log n + (nu-1) log(nu-1) - log Gamma(nu)``::

        b'' = theta (log n + (nu-1) log B - log Gamma(nu)
                     + ((nu-1)**2 (log B - log(nu-1)) + nu - 1) / B)

    and ``a'' = b'' / (b''/theta - nu + 1)``. The two formulas coincide at
    ``nu = 2``.
    """
    n = _check_n(n, 3)
    nu, theta = g.nu, g.theta
    k = nu - 1.0
    ln, big = _gamma_log_n_terms(g, n)
    lb = math.log(big)
    if nu <= 2.0:
        y = big + k * lb + (k * k * lb + k) / big
    else:
        y = ln + k * lb - g.log_gamma_nu + (k * k * (lb - math.log(k)) + k) / big
    b = theta * y
    return NormingConstants(a=_a_from_b(g, b), b=b, method=Method.IMPROVED, n=n)


def improved_constants(dist: Distribution, n: float) -> NormingConstants:
    if isinstance(dist, GammaParams):
        return improved_constants_gamma(dist, n)
    if isinstance(dist, GeneralizedWeibullParams):
        return improved_constants_gw(dist, n)
    raise TypeError(f"unsupported distribution {type(dist).__name__}")


def _gamma_expansion_b(g: GammaParams, n: float, order: int) -> float:
    nu, theta = g.nu, g.theta
    k = nu - 1.0
    _check_n(n, 3)
    _gamma_log_n_terms(g, n)
    if nu <= 2.0:
        # D(t) = 1 / (1 + (nu-1) t)
        d = PowerSeries([1.0, k], order).reciprocal()
        y = u_gamma_d_expansion(1.0 - nu, d, n / math.exp(g.log_gamma_nu), order)
    else:
        # E(t) = (1 - t)**(1/(nu-1))
        e = PowerSeries([1.0, -1.0], order).pow(1.0 / k)
        x = -math.exp(-math.log(k) + (g.log_gamma_nu - math.log(n)) / k)
        y = -k * w_secondary_d_expansion(e, x, order)
    return theta * y


def constants_via_expansion(dist: Distribution, n: float, order: int = DEFAULT_ORDER) -> NormingConstants:
    """Constants from the log-log expansion truncated after ``order`` correction terms.

    ``order=1`` reproduces :func:`improved_constants`; ``order=0`` keeps the
    two leading logarithms only.
    """
    if isinstance(dist, GammaParams):
        b = _gamma_expansion_b(dist, n, order)
    elif isinstance(dist, GeneralizedWeibullParams):
        _check_n(n, 2)
        b = _gw_expansion_b(dist, n, order)
    else:
        raise TypeError(f"unsupported distribution {type(dist).__name__}")
    return NormingConstants(a=_a_from_b(dist, b), b=b, method=Method.IMPROVED, n=float(n), order=order)


def norming_constants(dist: Distribution, n: float, method: Method | str = Method.EXACT, order: int | None = None) -> NormingConstants:
    """Dispatch on ``method``; an explicit ``order`` routes ``improved`` through the expansion."""
    method = Method(method)
    if method is Method.EXACT:
        return exact_constants(dist, n)
    if method is Method.STANDARD:
        return standard_constants(dist, n)
    if order is not None and order != DEFAULT_ORDER:
        return constants_via_expansion(dist, n, order)
    return improved_constants(dist, n)
