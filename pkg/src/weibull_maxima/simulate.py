"""Inversion sampling and block-maxima experiments.

Randomness comes from the Philox counter-based generator keyed by the seed.
Stream ``r`` starts at counter ``[0, 0, 0, r]``, so streams never overlap and
replicate ``r`` sees the same uniforms whatever the thread count.

A uniform ``u`` in the open interval ``(0, 1)`` is mapped to a variate as
``isf(u)``; ``1 - u`` has the same law as ``u``, and the inverse survival
function keeps full relative precision far in the right tail.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .convergence import _ordered_map
from .distributions import GammaParams, GeneralizedWeibullParams
from .exceptions import DomainError
from .norming import Method, NormingConstants, norming_constants

__all__ = [
    "uniform_stream",
    "sample_gw",
    "sample_gamma",
    "sample",
    "ExperimentConfig",
    "ExperimentResult",
    "maxima_experiment",
    "histogram",
]

Distribution = Union[GeneralizedWeibullParams, GammaParams]

_TWO_M53 = 2.0**-53
_CHUNK = 1024


def uniform_stream(seed: int, stream: int, count: int) -> np.ndarray:
    """``count`` open-interval uniforms from stream ``stream`` of ``seed``.

    The top 53 bits ``k`` of each raw word give ``(k + 0.5) 2**-53``, which is
    never 0 or 1.
    """
    if count < 0:
        raise DomainError("count must be nonnegative")
    if not 0 <= seed < 2**64:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    bitgen = np.random.Philox(key=int(seed), counter=[0, 0, 0, int(stream)])
    k = bitgen.random_raw(count) >> np.uint64(11)
    return (k.astype(float) + 0.5) * _TWO_M53


def _variates(dist: Distribution, s: np.ndarray) -> np.ndarray:
    if isinstance(dist, GeneralizedWeibullParams):
        # mass above the tail's reach at x0 is an atom at x0
        top = dist.sf(dist.x0)
        out = np.full(s.shape, dist.x0)
        inside = s < top
        if np.any(inside):
            out[inside] = dist.isf(s[inside])
        return out
    if isinstance(dist, GammaParams):
        return np.asarray(dist.isf(s), dtype=float)
    raise TypeError(f"unsupported distribution {type(dist).__name__}")


def sample_gw(p: GeneralizedWeibullParams, count: int, seed: int) -> np.ndarray:
    """``count`` generalized Weibull draws by inversion (stream 0)."""
    return _variates(p, uniform_stream(seed, 0, count))


def sample_gamma(g: GammaParams, count: int, seed: int) -> np.ndarray:
    """``count`` Gamma draws by inversion of the regularized incomplete gamma (stream 0)."""
    return _variates(g, uniform_stream(seed, 0, count))


def sample(dist: Distribution, count: int, seed: int) -> np.ndarray:
    return _variates(dist, uniform_stream(seed, 0, count))


@dataclass(frozen=True)
class ExperimentConfig:
    """Block-maxima experiment: ``reps`` maxima of ``n`` draws each.

    ``constants`` overrides ``method`` when given (needed for ``n = 1``,
    where the asymptotic constants are undefined).
    """

    dist: Distribution
    n: int
    reps: int
    seed: int = 0
    method: Method | str = Method.IMPROVED
    constants: NormingConstants | None = None
    keep_raw: bool = False

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"block size must be a positive integer, got n={self.n!r}")
        if int(self.reps) != self.reps or self.reps < 1:
            raise DomainError(f"reps must be a positive integer, got {self.reps!r}")
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.constants is None:
            object.__setattr__(self, "method", Method(self.method))


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    constants: NormingConstants
    normalized: np.ndarray
    raw: np.ndarray | None = field(default=None, repr=False)


def _min_survival(seed: int, n: int, reps: range) -> np.ndarray:
    return np.array([uniform_stream(seed, r, n).min() for r in reps])


def maxima_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Normalized maxima ``(M_n - b) / a`` for ``cfg.reps`` independent blocks.

    Each block draws its ``n`` uniforms from its own stream. Because the
    inverse survival function is decreasing, the block maximum is
    ``isf(min u)``, so one inversion per block is exact. Two configs that
    differ only in constants therefore share every underlying uniform.
    """
    if cfg.constants is not None:
        constants = cfg.constants
    else:
        constants = norming_constants(cfg.dist, cfg.n, cfg.method)
    chunks = [range(i, min(i + _CHUNK, cfg.reps)) for i in range(0, cfg.reps, _CHUNK)]
    s_min = np.concatenate(_ordered_map(lambda c: _min_survival(cfg.seed, cfg.n, c), chunks))
    raw = _variates(cfg.dist, s_min)
    return ExperimentResult(
        config=cfg,
        constants=constants,
        normalized=constants.normalize(raw),
        raw=raw if cfg.keep_raw else None,
    )


def histogram(values, bins: int = 50, lo: float = -4.0, hi: float = 8.0) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Counts and density on ``bins`` equal bins of ``[lo, hi]``.

    Returns ``(edges, counts, density)``; density is normalized by the full
    sample size so mass outside the range is not redistributed.
    """
    values = np.asarray(values, dtype=float)
    edges = np.linspace(lo, hi, bins + 1)
    counts, _ = np.histogram(values, bins=edges)
    density = counts / (values.size * np.diff(edges))
    return edges, counts, density
