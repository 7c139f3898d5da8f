"""scikit-learn style wrapper around the norming constants.

Each row of ``X`` is one block of ``n`` raw observations; the block size is
the number of columns seen in :meth:`GumbelNormalizer.fit`.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .convergence import ks_statistic
from .distributions import GammaParams, GeneralizedWeibullParams
from .norming import Method, norming_constants

__all__ = ["GumbelNormalizer"]


class GumbelNormalizer(TransformerMixin, BaseEstimator):
    """Map block maxima onto the Gumbel scale, ``(max(row) - b_n) / a_n``.

    Parameters
    ----------
    dist : GeneralizedWeibullParams or GammaParams
        Parent law of the raw observations.
    method : {"exact", "standard", "improved"}
        Which norming constants to use.
    order : int, optional
        Expansion order for ``method="improved"``; ``None`` uses the
        closed-form improved constants.

    Attributes
    ----------
    a_, b_ : float
        Norming constants for the fitted block size.
    n_features_in_ : int
        Block size ``n``.
    """

    def __init__(self, dist=None, method: str = "improved", order: int | None = None):
        self.dist = dist
        self.method = method
        self.order = order

    def _validate_params_local(self):
        if not isinstance(self.dist, (GeneralizedWeibullParams, GammaParams)):
            raise TypeError("dist must be GeneralizedWeibullParams or GammaParams")
        Method(self.method)

    def fit(self, X, y=None):
        """Record the block size and compute the constants for it.

        Parameters
        ----------
        X : array-like of shape (n_blocks, n)
        y : ignored
        """
        self._validate_params_local()
        X = check_array(X, dtype=float)
        n = X.shape[1]
        self.n_features_in_ = n
        c = norming_constants(self.dist, n, self.method, self.order)
        self.a_, self.b_ = c.a, c.b
        self.constants_ = c
        return self

    def _check_block(self, X) -> np.ndarray:
        check_is_fitted(self, ("a_", "b_"))
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} columns, fitted with block size {self.n_features_in_}")
        return X

    def transform(self, X) -> np.ndarray:
        """Normalized block maxima, shape ``(n_blocks, 1)``."""
        X = self._check_block(X)
        return ((X.max(axis=1) - self.b_) / self.a_)[:, None]

    def inverse_transform(self, Y) -> np.ndarray:
        """Block maxima on the original scale from normalized values."""
        check_is_fitted(self, ("a_", "b_"))
        Y = check_array(Y, dtype=float, ensure_2d=False)
        return np.asarray(Y) * self.a_ + self.b_

    def score(self, X, y=None) -> float:
        """Negative Kolmogorov-Smirnov distance to the Gumbel law (higher is better)."""
        return -ks_statistic(self.transform(X).ravel())
