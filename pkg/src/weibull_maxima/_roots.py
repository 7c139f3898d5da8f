"""Safeguarded Newton iteration on a sign-changing bracket."""

from __future__ import annotations

import math
from typing import Callable

from .exceptions import BracketError, ConvergenceError


def expand_bracket(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    lower_limit: float = -math.inf,
    upper_limit: float = math.inf,
    factor: float = 2.0,
    max_steps: int = 200,
) -> tuple[float, float]:
    """Widen ``[lo, hi]`` geometrically until ``f`` changes sign across it.

    ``f`` is assumed increasing. The lower end moves toward ``lower_limit``
    (halving the gap) and the upper end grows by ``factor``.
    """
    flo, fhi = f(lo), f(hi)
    for _ in range(max_steps):
        if flo <= 0.0 <= fhi:
            return lo, hi
        if flo > 0.0:
            hi, fhi = lo, flo
            if math.isfinite(lower_limit):
                lo = lower_limit + (lo - lower_limit) / factor
            else:
                lo = lo - factor * (abs(lo) + 1.0)
            flo = f(lo)
        else:
            lo, flo = hi, fhi
            hi = min(hi * factor + 1.0, upper_limit) if hi >= 0 else hi / factor
            fhi = f(hi)
    raise BracketError(f"no sign change found after {max_steps} expansions")


def newton_bisect(
    f: Callable[[float], tuple[float, float]],
    lo: float,
    hi: float,
    *,
    xtol: float = 0.0,
    rtol: float = 4.0 * 2.0**-52,
    ftol: float = 0.0,
    max_iter: int = 200,
    x0: float | None = None,
) -> float:
    """Root of an increasing function on ``[lo, hi]``.

    ``f`` returns ``(value, derivative)``. A Newton step is taken when it
    stays inside the current bracket and shrinks the residual fast enough,
    otherwise the bracket is bisected. ``x0`` is an optional starting point
    inside the bracket (the midpoint otherwise).
    """
    flo, _ = f(lo)
    fhi, _ = f(hi)
    if flo > 0.0 or fhi < 0.0:
        raise BracketError(f"f does not change sign on [{lo!r}, {hi!r}]")
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi

    x = x0 if x0 is not None and lo < x0 < hi else 0.5 * (lo + hi)
    dx_old = hi - lo
    dx = dx_old
    fx, dfx = f(x)
    for _ in range(max_iter):
        if fx == 0.0 or abs(fx) <= ftol:
            return x
        if fx < 0.0:
            lo = x
        else:
            hi = x
        newton_ok = (
            dfx > 0.0
            and lo < x - fx / dfx < hi
            and abs(2.0 * fx) <= abs(dx_old * dfx)
        )
        dx_old = dx
        if newton_ok:
            dx = fx / dfx
            x_new = x - dx
        else:
            x_new = 0.5 * (lo + hi)
            dx = x - x_new
        tol = max(xtol, rtol * abs(x_new))
        if abs(dx) <= tol or hi - lo <= tol:
            return x_new
        x = x_new
        fx, dfx = f(x)
    raise ConvergenceError(f"no convergence in {max_iter} iterations (bracket [{lo}, {hi}])")
