"""Truncated power series and the polynomial families of the log-log expansions.

A :class:`PowerSeries` carries the coefficients ``d_0 .. d_N`` of a formal
series truncated at order ``N``; every operation returns a series truncated
at the smaller order of its operands.

Three polynomial families appear in the expansions of the inverse of
``t**gamma * exp(t) * D(1/t)``:

* ``comtet_P(n)``: the universal polynomials of the classical case, with
  exact rational coefficients built from unsigned Stirling numbers of the
  first kind.
* ``robin_Q(gamma, D, n)``: derivative recurrence
  ``Q'_{n+1} = -gamma (Q'_n - n Q_n)`` with ``Q'_0 = -gamma``; constant
  terms from the fixed point
  ``G(s) = -gamma log(1 + s G) - log D(s / (1 + s G))``.
* ``salvi_R(D, n)``: ``R'_{n+1} = R'_n - n R_n`` with ``R'_0 = 1``; constant
  terms from ``H(s) = log(1 + s H) + log D(-s / (1 + s H))``.

Polynomials are :class:`numpy.polynomial.Polynomial` instances.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import Polynomial

from .exceptions import DomainError

__all__ = [
    "PowerSeries",
    "as_series",
    "stirling1_unsigned",
    "comtet_P",
    "comtet_P_exact",
    "robin_Q",
    "robin_Q_all",
    "robin_generating_function",
    "salvi_R",
    "salvi_R_all",
    "salvi_generating_function",
    "MAX_ORDER",
]

MAX_ORDER = 8


class PowerSeries:
    """Real formal power series ``sum_k c[k] t**k`` truncated at order ``N``."""

    __slots__ = ("coef",)

    def __init__(self, coef: Iterable[float], order: int | None = None):
        c = np.asarray(list(coef), dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("a power series needs at least one coefficient")
        if order is not None:
            if order < 0:
                raise ValueError("order must be nonnegative")
            if c.size <= order:
                c = np.concatenate([c, np.zeros(order + 1 - c.size)])
            c = c[: order + 1]
        self.coef = c

    @property
    def order(self) -> int:
        return self.coef.size - 1

    @classmethod
    def constant(cls, value: float, order: int) -> "PowerSeries":
        return cls([value], order)

    @classmethod
    def variable(cls, order: int) -> "PowerSeries":
        """The series ``t``."""
        return cls([0.0, 1.0], order) if order >= 1 else cls([0.0], 0)

    def __repr__(self) -> str:
        return f"PowerSeries({self.coef.tolist()!r})"

    def __getitem__(self, k: int) -> float:
        return float(self.coef[k])

    def __len__(self) -> int:
        return self.coef.size

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coef, order)

    def _pair(self, other: "PowerSeries | float"):
        if isinstance(other, PowerSeries):
            n = min(self.order, other.order)
            return self.coef[: n + 1], other.coef[: n + 1], n
        return self.coef, None, self.order

    def __add__(self, other):
        a, b, n = self._pair(other)
        if b is None:
            out = a.copy()
            out[0] += float(other)
            return PowerSeries(out)
        return PowerSeries(a + b)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self.coef)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b, n = self._pair(other)
        if b is None:
            return PowerSeries(a * float(other))
        return PowerSeries(np.convolve(a, b)[: n + 1])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return self * other.reciprocal()
        return PowerSeries(self.coef / float(other))

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, r):
        return self.pow(r)

    def __call__(self, t):
        """Evaluate the truncated polynomial at ``t`` (Horner)."""
        t = np.asarray(t, dtype=float)
        acc = np.zeros_like(t) + self.coef[-1]
        for c in self.coef[-2::-1]:
            acc = acc * t + c
        return float(acc) if acc.ndim == 0 else acc

    def allclose(self, other: "PowerSeries", atol: float = 1e-12) -> bool:
        a, b, _ = self._pair(other)
        return bool(np.all(np.abs(a - b) <= atol))

    def reciprocal(self) -> "PowerSeries":
        a = self.coef
        if a[0] == 0.0:
            raise DomainError("reciprocal of a series with zero constant term")
        out = np.zeros_like(a)
        out[0] = 1.0 / a[0]
        for n in range(1, a.size):
            out[n] = -np.dot(a[1 : n + 1], out[n - 1 :: -1][:n]) / a[0]
        return PowerSeries(out)

    def log(self) -> "PowerSeries":
        a = self.coef
        if not a[0] > 0.0:
            raise DomainError("log of a series needs a positive constant term")
        out = np.zeros_like(a)
        out[0] = math.log(a[0])
        for n in range(1, a.size):
            k = np.arange(1, n)
            acc = np.dot(k * out[1:n], a[n - 1 : 0 : -1]) if n > 1 else 0.0
            out[n] = (a[n] - acc / n) / a[0]
        return PowerSeries(out)

    def exp(self) -> "PowerSeries":
        a = self.coef
        out = np.zeros_like(a)
        out[0] = math.exp(a[0])
        for n in range(1, a.size):
            k = np.arange(1, n + 1)
            out[n] = np.dot(k * a[1 : n + 1], out[n - 1 :: -1][:n]) / n
        return PowerSeries(out)

    def pow(self, r: float) -> "PowerSeries":
        """``self ** r`` for real ``r``; needs a positive constant term
        unless ``r`` is a nonnegative integer."""
        a = self.coef
        if float(r).is_integer() and r >= 0:
            out = PowerSeries.constant(1.0, self.order)
            base = self
            e = int(r)
            while e:
                if e & 1:
                    out = out * base
                base = base * base
                e >>= 1
            return out
        if not a[0] > 0.0:
            raise DomainError("real power of a series needs a positive constant term")
        out = np.zeros_like(a)
        out[0] = a[0] ** r
        for n in range(1, a.size):
            k = np.arange(1, n + 1)
            out[n] = np.dot(((r + 1.0) * k - n) * a[1 : n + 1], out[n - 1 :: -1][:n]) / (n * a[0])
        return PowerSeries(out)

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """``self(inner(t))`` for an inner series with zero constant term."""
        if inner.coef[0] != 0.0:
            raise DomainError("composition needs an inner series with zero constant term")
        n = min(self.order, inner.order)
        acc = PowerSeries.constant(float(self.coef[n]), n)
        inner = inner.truncate(n)
        for c in self.coef[n - 1 :: -1]:
            acc = acc * inner + float(c)
        return acc

    def scale_argument(self, c: float) -> "PowerSeries":
        """The series ``D(c t)``."""
        return PowerSeries(self.coef * c ** np.arange(self.coef.size))


def as_series(d: "PowerSeries | float | Sequence[float]", order: int) -> PowerSeries:
    """Coerce a scalar, a coefficient list or a series to a series of ``order``."""
    if isinstance(d, PowerSeries):
        return d.truncate(order)
    if np.ndim(d) == 0:
        return PowerSeries.constant(float(d), order)
    return PowerSeries(d, order)


@lru_cache(maxsize=None)
def stirling1_unsigned(n: int, k: int) -> int:
    """Unsigned Stirling number of the first kind ``[n, k]``."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return (n - 1) * stirling1_unsigned(n - 1, k) + stirling1_unsigned(n - 1, k - 1)


def _check_index(n: int, low: int) -> None:
    if int(n) != n or not low <= n <= MAX_ORDER:
        raise DomainError(f"polynomial index must be an integer in [{low}, {MAX_ORDER}], got {n!r}")


@lru_cache(maxsize=None)
def comtet_P_exact(n: int) -> tuple[Fraction, ...]:
    """Ascending rational coefficients of ``P_n``.

    ``P_n(x) = sum_{m=1}^{n} (-1)**(n-m) [n, n-m+1] / m! * x**m``.
    """
    _check_index(n, 1)
    coef = [Fraction(0)] * (n + 1)
    for m in range(1, n + 1):
        coef[m] = Fraction((-1) ** (n - m) * stirling1_unsigned(n, n - m + 1), math.factorial(m))
    return tuple(coef)


def comtet_P(n: int) -> Polynomial:
    return Polynomial([float(c) for c in comtet_P_exact(n)])


def _d_series(D, order: int) -> PowerSeries:
    d = as_series(D, order)
    if not d.coef[0] > 0.0:
        raise DomainError("the series D needs a positive constant term d0")
    return d


def robin_generating_function(gamma: float, D, order: int) -> PowerSeries:
    """Series ``G(s) = sum_n Q_n(0) s**n`` up to ``s**order``.

    Solved by order-by-order substitution: coefficient ``k`` of the
    right-hand side only involves ``G_0 .. G_{k-1}``, so ``order + 1``
    passes reach the exact truncated fixed point.
    """
    d = _d_series(D, order)
    s = PowerSeries.variable(order)
    g = PowerSeries.constant(0.0, order)
    for _ in range(order + 1):
        denom = 1.0 + s * g
        g = -gamma * denom.log() - d.compose(s / denom).log()
    return g


def salvi_generating_function(D, order: int) -> PowerSeries:
    """Series ``H(s) = sum_n R_n(0) s**n`` up to ``s**order``."""
    d = _d_series(D, order)
    s = PowerSeries.variable(order)
    h = PowerSeries.constant(0.0, order)
    for _ in range(order + 1):
        denom = 1.0 + s * h
        h = denom.log() + d.compose(-s / denom).log()
    return h


def _integrate_family(first_slope: float, factor: float, constants: PowerSeries, n: int) -> list[Polynomial]:
    # P'_{k+1} = factor * (P'_k - k P_k), P'_0 = first_slope, P_k(0) = constants[k]
    polys = [Polynomial([constants[0], first_slope])]
    for k in range(n):
        p = polys[-1]
        dp = factor * (p.deriv() - k * p)
        polys.append(dp.integ(k=[constants[k + 1]]))
    return polys


def robin_Q_all(gamma: float, D, n: int) -> list[Polynomial]:
    """``[Q_0, ..., Q_n]`` for the equation ``t**gamma e**t D(1/t) = x``."""
    _check_index(n, 0)
    g = robin_generating_function(gamma, D, n)
    return _integrate_family(-gamma, -gamma, g, n)


def robin_Q(gamma: float, D, n: int) -> Polynomial:
    return robin_Q_all(gamma, D, n)[n]


def salvi_R_all(D, n: int) -> list[Polynomial]:
    """``[R_0, ..., R_n]`` for the secondary branch of ``t e**t D(1/t)``."""
    _check_index(n, 0)
    h = salvi_generating_function(D, n)
    return _integrate_family(1.0, 1.0, h, n)


def salvi_R(D, n: int) -> Polynomial:
    return salvi_R_all(D, n)[n]
