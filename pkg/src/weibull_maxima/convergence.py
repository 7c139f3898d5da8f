"""Numerical diagnostics for the rate at which normalized maxima approach the Gumbel law.

All powers ``F(x)**n`` are evaluated as ``exp(n log F(x))`` with ``log F``
taken from ``log1p`` of the tail, so ``n`` up to ``1e9`` and beyond stays
accurate.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from .distributions import GammaParams, GeneralizedWeibullParams, gumbel_cdf
from .exceptions import DomainError
from .norming import Method, NormingConstants, exact_constants, norming_constants

__all__ = [
    "XGrid",
    "DEFAULT_X_GRID",
    "power_cdf",
    "sup_distance",
    "RateReport",
    "rate_check",
    "perturbation_check",
    "OptimalityScan",
    "a_optimality_scan",
    "ks_statistic",
    "power_limit_residual",
    "max_workers",
]

Distribution = Union[GeneralizedWeibullParams, GammaParams]
ConstantsRule = Union[str, Method, Callable[[float], NormingConstants]]


@dataclass(frozen=True)
class XGrid:
    """``num`` equally spaced points on ``[start, stop]``."""

    start: float = -3.0
    stop: float = 6.0
    num: int = 201

    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.num)


DEFAULT_X_GRID = XGrid()


def max_workers() -> int:
    """Thread cap from ``EVT_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("EVT_THREADS", "1")))
    except ValueError:
        return 1


def _ordered_map(fn, items):
    items = list(items)
    workers = min(max_workers(), len(items)) or 1
    if workers == 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _tail_shape(dist: Distribution) -> tuple[float, float, float]:
    """``(C, tau, alpha)`` of the generalized Weibull tail."""
    if isinstance(dist, GammaParams):
        return 1.0 / dist.theta, 1.0, dist.nu - 1.0
    return dist.C, dist.tau, dist.alpha


def power_cdf(dist: Distribution, n: float, x) -> np.ndarray:
    """``F(x)**n`` computed as ``exp(n log F(x))``."""
    with np.errstate(over="ignore", under="ignore"):
        return np.exp(n * np.asarray(dist.log_cdf(x), dtype=float))


def sup_distance(dist: Distribution, a: float | NormingConstants, b: float | None = None, n: float | None = None,
                 x_grid: XGrid = DEFAULT_X_GRID) -> float:
    """``max_x |F**n(a x + b) - Lambda(x)|`` over the grid.

    Accepts either a :class:`NormingConstants` (which carries ``n``) or the
    explicit ``a, b, n``.
    """
    if isinstance(a, NormingConstants):
        c = a
        a, b, n = c.a, c.b, c.n
    if b is None or n is None:
        raise TypeError("pass NormingConstants or all of a, b, n")
    if not a > 0:
        raise DomainError("scale must be positive")
    x = x_grid.points()
    diff = np.abs(power_cdf(dist, n, a * x + b) - gumbel_cdf(x))
    if not np.all(np.isfinite(diff)):
        raise FloatingPointError("non-finite value in F**n evaluation")
    return float(diff.max())


@dataclass
class RateReport:
    """Sup-distance along a grid of sample sizes.

    ``scaled_err = sup_err * log n`` and ``scaled_err_b = sup_err * b**tau``
    are the observables whose boundedness expresses an ``O(1/log n)`` rate.
    """

    n_grid: list[float]
    a: list[float]
    b: list[float]
    sup_err: list[float]
    scaled_err: list[float]
    scaled_err_b: list[float]
    method: str
    x_grid: XGrid = field(default_factory=XGrid)

    @property
    def band_ratio(self) -> float:
        """``max / min`` of ``scaled_err`` across the grid."""
        return max(self.scaled_err) / min(self.scaled_err)

    def rows(self) -> list[dict]:
        return [
            {"n": n, "a": a, "b": b, "sup_err": e, "scaled_err": s, "scaled_err_b": sb}
            for n, a, b, e, s, sb in zip(self.n_grid, self.a, self.b, self.sup_err, self.scaled_err, self.scaled_err_b)
        ]


def _rule(rule: ConstantsRule, dist: Distribution) -> Callable[[float], NormingConstants]:
    if callable(rule) and not isinstance(rule, (str, Method)):
        return rule
    method = Method(rule)
    return lambda n: norming_constants(dist, n, method)


def rate_check(dist: Distribution, method: ConstantsRule, n_grid: Sequence[float],
               x_grid: XGrid = DEFAULT_X_GRID) -> RateReport:
    rule = _rule(method, dist)
    _, tau, _ = _tail_shape(dist)

    def one(n: float):
        c = rule(n)
        return c, sup_distance(dist, c, x_grid=x_grid)

    results = _ordered_map(one, n_grid)
    consts = [c for c, _ in results]
    errs = [e for _, e in results]
    return RateReport(
        n_grid=[float(n) for n in n_grid],
        a=[c.a for c in consts],
        b=[c.b for c in consts],
        sup_err=errs,
        scaled_err=[e * math.log(n) for e, n in zip(errs, n_grid)],
        scaled_err_b=[e * c.b**tau for e, c in zip(errs, consts)],
        method=method.value if isinstance(method, Method) else str(getattr(method, "__name__", method)),
        x_grid=x_grid,
    )


def perturbation_check(dist: Distribution, b_rule: ConstantsRule, a_rule: ConstantsRule | None,
                       n_grid: Sequence[float], x_grid: XGrid = DEFAULT_X_GRID) -> list[dict]:
    """Side-by-side terms of the perturbed-constants error decomposition.

    For each ``n`` reports ``(b - b~)/a``, ``b**tau - b~**tau``,
    ``(b~/b)**alpha - 1``, ``1/b**tau`` and the realized sup-distance with
    ``(a~, b~)``. ``a_rule=None`` reuses the ``a`` of ``b_rule``.
    """
    b_of = _rule(b_rule, dist)
    a_of = b_of if a_rule is None else _rule(a_rule, dist)
    _, tau, alpha = _tail_shape(dist)

    def one(n: float) -> dict:
        exact = exact_constants(dist, n)
        bt = b_of(n).b
        at = a_of(n).a
        return {
            "n": float(n),
            "a": exact.a,
            "b": exact.b,
            "a_tilde": at,
            "b_tilde": bt,
            "bias": (exact.b - bt) / exact.a,
            "term_tau": exact.b**tau - bt**tau,
            "term_alpha": (bt / exact.b) ** alpha - 1.0,
            "term_rate": exact.b ** (-tau),
            "sup_err": sup_distance(dist, at, bt, n, x_grid),
        }

    return _ordered_map(one, n_grid)


@dataclass
class OptimalityScan:
    n: float
    b: float
    deltas: list[float]
    a_hat: list[float]
    sup_err: list[float]

    @property
    def best_delta(self) -> float:
        return self.deltas[int(np.argmin(self.sup_err))]

    @property
    def resolution(self) -> float:
        d = np.diff(sorted(self.deltas))
        return float(d.min()) if d.size else 0.0

    def rows(self) -> list[dict]:
        return [{"delta": d, "a_hat": a, "sup_err": e} for d, a, e in zip(self.deltas, self.a_hat, self.sup_err)]


def a_optimality_scan(dist: Distribution, deltas: Sequence[float], n: float,
                      x_grid: XGrid = DEFAULT_X_GRID) -> OptimalityScan:
    """Sup-distance with ``a^ = 1/C + delta / b`` and the exact ``b``, per ``delta``.

    Only ``tau = 1`` is supported.
    """
    C, tau, _ = _tail_shape(dist)
    if tau != 1.0:
        raise DomainError(f"the scale scan needs tau = 1, got tau={tau}")
    b = exact_constants(dist, n).b
    a_hat = [1.0 / C + d / b for d in deltas]
    errs = _ordered_map(lambda a: sup_distance(dist, a, b, n, x_grid), a_hat)
    return OptimalityScan(n=float(n), b=b, deltas=[float(d) for d in deltas], a_hat=a_hat, sup_err=errs)


def ks_statistic(sample, cdf: Callable = gumbel_cdf) -> float:
    """One-sample Kolmogorov-Smirnov distance ``sup |F_emp - cdf|``.

    ``sample`` is sorted internally. ``cdf`` is taken to be continuous; a
    reference law with atoms needs its left limits, which this does not use.
    """
    x = np.sort(np.asarray(sample, dtype=float))
    m = x.size
    if m == 0:
        raise DomainError("empty sample")
    f = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, m + 1)
    return float(max(np.max(i / m - f), np.max(f - (i - 1) / m)))


def power_limit_residual(A: float, c_n: float, d_n: float, n: float) -> float:
    """``(1 + A d_n (1 + c_n)/n)**n - e**A (1 + A c_n + A (d_n - 1))``."""
    lhs = math.exp(n * math.log1p(A * d_n * (1.0 + c_n) / n))
    return lhs - math.exp(A) * (1.0 + A * c_n + A * (d_n - 1.0))
