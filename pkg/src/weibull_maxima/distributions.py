"""Generalized Weibull, Gamma and chi-square laws, their tail-equivalent forms, and Gumbel.

A generalized Weibull law has, above a left edge ``x0``,

    1 - F(x) = K x**alpha exp(-C x**tau),   K, C > 0, alpha > 0, tau >= 1,

and ``F(x) = 0`` below ``x0``. When ``F(x0) > 0`` the law has an atom at
``x0``. A Gamma(nu, theta) law is right tail equivalent to the member with
``K = 1 / (theta**(nu-1) Gamma(nu))``, ``alpha = nu - 1``, ``C = 1/theta``,
``tau = 1`` (form ``F1``); ``F2`` multiplies that tail by
``1 + theta (nu - 1) / x``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from ._roots import expand_bracket, newton_bisect
from .exceptions import DomainError
from .special_fn import Branch, lambert_w, reg_gamma_q, reg_gamma_q_inv

__all__ = [
    "GeneralizedWeibullParams",
    "GammaParams",
    "TailForm",
    "GammaTail",
    "chi2",
    "simple_case",
    "auxiliary_A",
    "gumbel_cdf",
    "gumbel_pdf",
    "gumbel_quantile",
    "GUMBEL_MEAN",
]

GUMBEL_MEAN = 0.5772156649015329  # Euler-Mascheroni constant
# Arguments of W_{-1} below this (in absolute value) fall back to a log-space solve.
_TINY_LAMBERT_ARG = 1e-290


@dataclass(frozen=True)
class GeneralizedWeibullParams:
    """Tail family ``1 - F(x) = K x**alpha exp(-C x**tau)`` for ``x >= x0``."""

    K: float
    C: float
    tau: float
    alpha: float
    x0: float

    def __post_init__(self):
        if not (self.K > 0 and self.C > 0):
            raise DomainError("K and C must be positive")
        if not self.alpha > 0:
            raise DomainError("alpha must be positive")
        if not self.tau >= 1:
            raise DomainError("tau must be at least 1")
        if not self.x0 > 0:
            raise DomainError("x0 must be positive")
        mode = self.mode
        if self.x0 < mode * (1.0 - 1e-12):
            raise DomainError(
                f"the tail increases on [x0, {mode:.6g}); x0 must be at least "
                "(alpha/(C tau))**(1/tau) for F to be a distribution function"
            )
        if self.log_sf(self.x0) > 1e-12:
            raise DomainError("K x0**alpha exp(-C x0**tau) must not exceed 1")

    @property
    def mode(self) -> float:
        """Point where the tail expression peaks, ``(alpha / (C tau))**(1/tau)``."""
        return (self.alpha / (self.C * self.tau)) ** (1.0 / self.tau)

    # Vectorized closed forms. Below x0 the survival is 1.
    def log_sf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = math.log(self.K) + self.alpha * np.log(x) - self.C * x**self.tau
        out = np.where(x >= self.x0, val, 0.0)
        return float(out) if out.ndim == 0 else out

    def sf(self, x):
        return np.exp(self.log_sf(x)) if np.ndim(x) else math.exp(self.log_sf(x))

    def cdf(self, x):
        """``F(x)``: zero below ``x0``, ``1 - K x**alpha exp(-C x**tau)`` above."""
        x = np.asarray(x, dtype=float)
        out = np.where(x >= self.x0, -np.expm1(self.log_sf(np.maximum(x, self.x0))), 0.0)
        return float(out) if out.ndim == 0 else out

    def log_cdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            val = np.log(-np.expm1(self.log_sf(np.maximum(x, self.x0))))
        out = np.where(x >= self.x0, val, -np.inf)
        return float(out) if out.ndim == 0 else out

    def hazard(self, x):
        """``f / (1 - F) = C tau x**(tau-1) - alpha / x`` above ``x0``."""
        x = np.asarray(x, dtype=float)
        return self.C * self.tau * x ** (self.tau - 1.0) - self.alpha / x

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        xs = np.maximum(x, self.x0)
        out = np.where(x >= self.x0, np.exp(self.log_sf(xs)) * self.hazard(xs), 0.0)
        return float(out) if out.ndim == 0 else out

    def auxiliary(self, x):
        """``A(x) = (1 - F(x)) / f(x) = 1 / (C tau x**(tau-1) - alpha / x)``."""
        h = self.hazard(x)
        if np.any(h <= 0):
            raise DomainError("auxiliary function has a pole: C tau x**tau <= alpha")
        return float(1.0 / h) if np.ndim(h) == 0 else 1.0 / h

    def isf(self, s):
        """Inverse survival: ``x >= x0`` with ``1 - F(x) = s``.

        Closed form through the secondary Lambert branch::

            x = (-(alpha / (C tau)) W_{-1}(-(C tau / alpha) (s / K)**(tau / alpha)))**(1/tau)
        """
        s = np.asarray(s, dtype=float)
        scalar = s.ndim == 0
        s = np.atleast_1d(s)
        if np.any((s <= 0) | (s > 1)):
            raise DomainError("survival probability must lie in (0, 1]")
        top = self.sf(self.x0)
        if np.any(s > top * (1.0 + 1e-12)):
            raise DomainError(f"level below the atom at x0: survival must not exceed {top:.12g}")
        r = self.C * self.tau / self.alpha
        log_arg = math.log(r) + (self.tau / self.alpha) * (np.log(s) - math.log(self.K))
        out = np.empty_like(s)
        ok = log_arg > math.log(_TINY_LAMBERT_ARG)
        arg = -np.exp(np.minimum(log_arg[ok], -1.0))
        w = lambert_w(arg, Branch.SECONDARY)
        out[ok] = (-w / r) ** (1.0 / self.tau)
        for i in np.flatnonzero(~ok):
            out[i] = self._isf_log_solve(float(s[i]))
        out = np.maximum(out, self.x0)
        out[s >= top] = self.x0
        return float(out[0]) if scalar else out

    def _isf_log_solve(self, s: float) -> float:
        target = math.log(s)

        def g(x: float) -> tuple[float, float]:
            # increasing in x: target - log_sf(x)
            return target - self.log_sf(x), float(self.hazard(x))

        lo = max(self.x0, self.mode)
        hi = max(2.0 * lo, (-target / self.C) ** (1.0 / self.tau) + 1.0)
        lo, hi = expand_bracket(lambda x: g(x)[0], lo, hi, lower_limit=lo)
        return newton_bisect(g, lo, hi)

    def ppf(self, u):
        """Quantile ``F^{-1}(u)`` for ``F(x0) <= u < 1``."""
        u = np.asarray(u, dtype=float)
        if np.any((u < 0) | (u >= 1)):
            raise DomainError("u must lie in [F(x0), 1)")
        return self.isf(1.0 - u)


def simple_case() -> GeneralizedWeibullParams:
    """``F(x) = 1 - e x e**-x`` for ``x >= 1``."""
    return GeneralizedWeibullParams(K=math.e, C=1.0, tau=1.0, alpha=1.0, x0=1.0)


@dataclass(frozen=True)
class GammaParams:
    """Gamma law with shape ``nu > 1`` and scale ``theta > 0``."""

    nu: float
    theta: float = 1.0
    _log_gamma_nu: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.nu > 1:
            raise DomainError("the Gamma shape nu must exceed 1")
        if not self.theta > 0:
            raise DomainError("the Gamma scale theta must be positive")
        object.__setattr__(self, "_log_gamma_nu", math.lgamma(self.nu))

    @property
    def log_gamma_nu(self) -> float:
        return self._log_gamma_nu

    def tail_params(self, x0: float | None = None) -> GeneralizedWeibullParams:
        """The generalized Weibull law whose tail is ``F1``."""
        K = math.exp(-(self.nu - 1.0) * math.log(self.theta) - self._log_gamma_nu)
        if x0 is None:
            x0 = GammaTail(self, TailForm.F1).x0
        return GeneralizedWeibullParams(K=K, C=1.0 / self.theta, tau=1.0, alpha=self.nu - 1.0, x0=x0)

    def _map(self, fn, x):
        x = np.asarray(x, dtype=float)
        out = np.array([fn(v) for v in x.ravel()]).reshape(x.shape)
        return float(out) if out.ndim == 0 else out

    def sf(self, x):
        return self._map(lambda v: reg_gamma_q(self.nu, v / self.theta) if v > 0 else 1.0, x)

    def cdf(self, x):
        """``G(x) = 1 - Q(nu, x / theta)``."""
        return self._map(lambda v: 1.0 - reg_gamma_q(self.nu, v / self.theta) if v > 0 else 0.0, x)

    def log_cdf(self, x):
        def one(v: float) -> float:
            if v <= 0:
                return -math.inf
            q = reg_gamma_q(self.nu, v / self.theta)
            return math.log1p(-q) if q < 1.0 else -math.inf

        return self._map(one, x)

    def pdf(self, x):
        def one(v: float) -> float:
            if v <= 0:
                return 0.0
            return math.exp(
                (self.nu - 1.0) * math.log(v) - v / self.theta - self.nu * math.log(self.theta) - self._log_gamma_nu
            )

        return self._map(one, x)

    def isf(self, s):
        def one(v: float) -> float:
            if not 0 < v < 1:
                raise DomainError("survival probability must lie in (0, 1)")
            return self.theta * reg_gamma_q_inv(self.nu, v)

        return self._map(one, s)

    def ppf(self, u):
        u = np.asarray(u, dtype=float)
        return self.isf(1.0 - u)

    def auxiliary(self, x):
        """Auxiliary function of the ``F1`` tail, ``x / (x / theta - nu + 1)``."""
        return GammaTail(self, TailForm.F1).auxiliary(x)


def chi2(m: float) -> GammaParams:
    """Chi-square law with ``m`` degrees of freedom as Gamma(m/2, 2)."""
    return GammaParams(nu=m / 2.0, theta=2.0)


class TailForm(enum.Enum):
    F1 = "F1"
    F2 = "F2"


@dataclass(frozen=True)
class GammaTail:
    """Tail-equivalent approximation ``F1`` or ``F2`` of a Gamma law.

    ``x0`` is the smallest point at or beyond which the tail expression is
    decreasing and at most 1.
    """

    gamma: GammaParams
    form: TailForm = TailForm.F2
    x0: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "form", TailForm(self.form))
        nu, theta = self.gamma.nu, self.gamma.theta
        if self.form is TailForm.F1:
            start = theta * (nu - 1.0)
        else:
            # d/dx log tail = 0  <=>  x**2 = theta**2 (nu - 1)(nu - 2)
            start = theta * math.sqrt((nu - 1.0) * (nu - 2.0)) if nu > 2 else 0.0
        start = max(start, 1e-300)
        if self._log_tail(start) <= 0.0:
            x0 = start
        else:
            lo, hi = expand_bracket(lambda x: -self._log_tail(x), start, start + theta * (nu + 1.0), lower_limit=start)
            x0 = newton_bisect(lambda x: (-self._log_tail(x), float(self._hazard(x))), lo, hi)
        object.__setattr__(self, "x0", x0)

    def _log_tail(self, x):
        nu, theta = self.gamma.nu, self.gamma.theta
        x = np.asarray(x, dtype=float)
        val = (nu - 1.0) * np.log(x / theta) - x / theta - self.gamma.log_gamma_nu
        if self.form is TailForm.F2:
            val = val + np.log1p(theta * (nu - 1.0) / x)
        return val

    def _hazard(self, x):
        nu, theta = self.gamma.nu, self.gamma.theta
        x = np.asarray(x, dtype=float)
        h = 1.0 / theta - (nu - 1.0) / x
        if self.form is TailForm.F2:
            c = theta * (nu - 1.0)
            h = h + c / (x * (x + c))
        return h

    def _check(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if np.any(x < self.x0 * (1.0 - 1e-12)):
            raise DomainError(f"tail form {self.form.value} is valid for x >= {self.x0:.6g}")
        return x

    def sf(self, x):
        x = self._check(x)
        out = np.exp(self._log_tail(x))
        return float(out) if out.ndim == 0 else out

    def cdf(self, x):
        x = self._check(x)
        out = -np.expm1(self._log_tail(x))
        return float(out) if out.ndim == 0 else out

    def pdf(self, x):
        x = self._check(x)
        out = np.exp(self._log_tail(x)) * self._hazard(x)
        return float(out) if out.ndim == 0 else out

    def auxiliary(self, x):
        """``(1 - F) / f``. For ``F1`` this is ``x / (x / theta - nu + 1)``."""
        x = np.asarray(x, dtype=float)
        h = self._hazard(x)
        if np.any(h <= 0):
            raise DomainError("auxiliary function has a pole at x = theta (nu - 1)")
        if self.form is TailForm.F1:
            out = x / (x / self.gamma.theta - self.gamma.nu + 1.0)
        else:
            out = 1.0 / h
        return float(out) if out.ndim == 0 else out


def auxiliary_A(dist, x):
    """Auxiliary function ``(1 - F)/f`` of a generalized Weibull law or a Gamma tail form.

    For a bare :class:`GammaParams` the ``F1`` form is used.
    """
    return dist.auxiliary(x)


def gumbel_cdf(x):
    """``exp(-exp(-x))``."""
    return np.exp(-np.exp(-np.asarray(x, dtype=float))) if np.ndim(x) else math.exp(-math.exp(-x))


def gumbel_pdf(x):
    x = np.asarray(x, dtype=float)
    out = np.exp(-x - np.exp(-x))
    return float(out) if out.ndim == 0 else out


def gumbel_quantile(u):
    u = np.asarray(u, dtype=float)
    if np.any((u <= 0) | (u >= 1)):
        raise DomainError("u must lie in (0, 1)")
    out = -np.log(-np.log(u))
    return float(out) if out.ndim == 0 else out
