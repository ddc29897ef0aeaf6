"""Scikit-learn style transformers over the compression pipeline.

Both transformers are stateless in the sklearn sense (like Normalizer): fit
only validates and records the input width, and transform maps each row
independently, so instances compose with pipelines and grid search without
holding data.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array

from .dct import DctPlan
from .encoding import amplitude_encode_vector, decode_to_image
from .mps import mps_svd, reconstruct
from .permutations import apply_permutation, invert_permutation
from .search import search_optimal_permutation

__all__ = ["MpsCompressor", "Dct2"]


class MpsCompressor(TransformerMixin, BaseEstimator):
    """Lossy per-row compression through a truncated matrix-product state.

    Each row is amplitude-encoded, factorized with bonds capped at ``chi`` and
    contracted back, so the output has the input's shape but carries only the
    information a bond-``chi`` state can hold. With ``search=True`` the qubit
    order is optimized per row before factorizing (and undone after), which
    never increases the error relative to the natural order.

    Rows must not be all-zero: a zero vector has no amplitude encoding.
    """

    def __init__(self, chi: int = 2, search: bool = True, recompute: bool = False):
        self.chi = chi
        self.search = search
        self.recompute = recompute

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X) -> np.ndarray:
        X = check_array(X, dtype=np.float64)
        return np.vstack([self._round_trip(row) for row in X])

    def _round_trip(self, row: np.ndarray) -> np.ndarray:
        rec = amplitude_encode_vector(row)
        if self.search:
            perm = search_optimal_permutation(
                rec.state, self.chi, recompute=self.recompute
            ).permutation
        else:
            perm = list(range(rec.n))
        mps, _ = mps_svd(apply_permutation(rec.state, perm), self.chi, perm=perm)
        approx = apply_permutation(reconstruct(mps), invert_permutation(perm))
        return decode_to_image(approx, rec.norm_scale, rec.orig_shape)


class Dct2(TransformerMixin, BaseEstimator):
    """Row-wise orthonormal 2-D DCT-II over flattened height x width images.

    ``inverse=True`` applies the inverse transform instead, so two instances
    back to back reproduce the input to rounding error.
    """

    def __init__(self, height: int, width: int, inverse: bool = False):
        self.height = height
        self.width = width
        self.inverse = inverse

    def fit(self, X, y=None):
        X = self._validate(X)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X) -> np.ndarray:
        X = self._validate(X)
        plan = DctPlan(self.height, self.width)
        apply = plan.inverse if self.inverse else plan.forward
        shape = (self.height, self.width)
        return np.vstack([apply(row.reshape(shape)).ravel() for row in X])

    def _validate(self, X) -> np.ndarray:
        X = check_array(X, dtype=np.float64)
        expected = int(self.height) * int(self.width)
        if X.shape[1] != expected:
            raise ValueError(
                f"rows have {X.shape[1]} features, a {self.height}x{self.width} "
                f"image needs {expected}"
            )
        return X
