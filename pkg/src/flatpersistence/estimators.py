"""scikit-learn compatible transformers wrapping the persistence pipeline."""

from __future__ import annotations

import numbers

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .diagram import FlatPoint, from_flat, to_flat
from .exceptions import InvalidParameterError
from .persistence import PersistenceDiagram, compute_persistence
from .pointcloud import PointCloud, distance_matrix
from .rips import build_rips_filtration

__all__ = ["RipsPersistence", "FlatDiagram", "check_point_cloud"]


def check_point_cloud(X):
    """Validate one point cloud and return it as a :class:`PointCloud`."""
    if isinstance(X, PointCloud):
        return X
    arr = check_array(X, ensure_min_samples=0, ensure_all_finite=True, dtype=np.float64)
    return PointCloud(arr, arr.shape[1])


def _as_collection(X):
    if isinstance(X, PointCloud):
        raise TypeError("expected a collection of point clouds; wrap a single cloud in a list")
    if isinstance(X, np.ndarray) and X.ndim == 2:
        raise TypeError("expected a collection of point clouds, got one 2-D array")
    return [check_point_cloud(x) for x in X]


class RipsPersistence(TransformerMixin, BaseEstimator):
    """Vietoris-Rips persistence diagrams of a collection of point clouds.

    Parameters
    ----------
    max_hom_dim : int, default=1
        Largest homology degree to compute. Simplices up to dimension
        ``max_hom_dim + 1`` are built.
    threshold : float or "auto", default="auto"
        Largest diameter included; "auto" builds the full filtration.
    clearing : bool, default=True
        Use the clearing reduction (same output, faster).

    Examples
    --------
    >>> import numpy as np
    >>> square = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
    >>> dgm, = RipsPersistence(max_hom_dim=1).fit_transform([square])
    >>> [(f.birth, round(f.death, 6)) for f in dgm.in_dimension(1)]
    [(1.0, 1.414214)]
    """

    def __init__(self, max_hom_dim=1, threshold="auto", clearing=True):
        self.max_hom_dim = max_hom_dim
        self.threshold = threshold
        self.clearing = clearing

    def _validate_params(self):
        if not isinstance(self.max_hom_dim, numbers.Integral) or self.max_hom_dim < 0:
            raise InvalidParameterError("max_hom_dim must be a nonnegative integer")
        if isinstance(self.threshold, str):
            if self.threshold != "auto":
                raise InvalidParameterError("threshold must be a positive number or 'auto'")
        elif not (isinstance(self.threshold, numbers.Real) and self.threshold > 0):
            raise InvalidParameterError("threshold must be a positive number or 'auto'")

    def fit(self, X, y=None):
        self._validate_params()
        _as_collection(X)
        self.is_fitted_ = True
        return self

    def transform(self, X):
        check_is_fitted(self, "is_fitted_")
        return [self._diagram(cloud) for cloud in _as_collection(X)]

    def _diagram(self, cloud):
        filt = build_rips_filtration(distance_matrix(cloud), self.max_hom_dim + 1, self.threshold)
        return compute_persistence(filt, self.max_hom_dim, clearing=self.clearing)


class FlatDiagram(TransformerMixin, BaseEstimator):
    """Turn diagrams into arrays of ``(dimension, birth, persistence)`` rows.

    ``keep_essential=False`` drops features that never die.
    """

    def __init__(self, keep_essential=True):
        self.keep_essential = keep_essential

    def fit(self, X, y=None):
        for d in X:
            if not isinstance(d, PersistenceDiagram):
                raise TypeError(f"expected PersistenceDiagram, got {type(d).__name__}")
        self.is_fitted_ = True
        return self

    def transform(self, X):
        check_is_fitted(self, "is_fitted_")
        out = []
        for diag in X:
            pts = [p for p in to_flat(diag) if self.keep_essential or np.isfinite(p.persistence)]
            arr = np.array([(p.dimension, p.birth, p.persistence) for p in pts], dtype=float)
            out.append(arr.reshape(-1, 3))
        return out

    def inverse_transform(self, X):
        check_is_fitted(self, "is_fitted_")
        return [
            from_flat([FlatPoint(int(k), float(b), float(p)) for k, b, p in np.asarray(a).reshape(-1, 3)])
            for a in X
        ]
