"""Point clouds, synthetic samplers, Euclidean distances and CSV I/O."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._rng import Xoshiro256
from .exceptions import InvalidParameterError, ParseError

__all__ = [
    "PointCloud",
    "DistanceMatrix",
    "sample_circle",
    "sample_sphere",
    "distance_matrix",
    "read_cloud_csv",
    "write_cloud_csv",
]


@dataclass(frozen=True, eq=False)
class PointCloud:
    """A finite ordered set of points in ``ambient_dim``-dimensional space.

    ``points`` is stored as a read-only float array of shape
    ``(n, ambient_dim)``.
    """

    points: np.ndarray
    ambient_dim: int

    def __init__(self, points, ambient_dim=None):
        arr = np.array(points, dtype=float)
        if arr.ndim == 1 and arr.size == 0:
            if ambient_dim is None:
                raise InvalidParameterError("ambient_dim is required for an empty cloud")
            arr = arr.reshape(0, ambient_dim)
        if arr.ndim != 2:
            raise InvalidParameterError(f"points must be a 2-D array, got ndim={arr.ndim}")
        if ambient_dim is None:
            ambient_dim = arr.shape[1]
        ambient_dim = int(ambient_dim)
        if ambient_dim < 1:
            raise InvalidParameterError("ambient_dim must be positive")
        if arr.shape[1] != ambient_dim:
            raise InvalidParameterError(
                f"points have {arr.shape[1]} coordinates, expected {ambient_dim}"
            )
        if not np.all(np.isfinite(arr)):
            raise InvalidParameterError("point coordinates must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "points", arr)
        object.__setattr__(self, "ambient_dim", ambient_dim)

    def __len__(self):
        return self.points.shape[0]

    def __eq__(self, other):
        if not isinstance(other, PointCloud):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and np.array_equal(self.points, other.points)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric matrix of pairwise distances with a zero diagonal."""

    d: np.ndarray

    def __post_init__(self):
        d = np.array(self.d, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise InvalidParameterError("distance matrix must be square")
        if not np.all(np.isfinite(d)) or np.any(d < 0):
            raise InvalidParameterError("distances must be finite and nonnegative")
        if np.any(np.diag(d) != 0):
            raise InvalidParameterError("distance matrix must have a zero diagonal")
        if not np.array_equal(d, d.T):
            raise InvalidParameterError("distance matrix must be symmetric")
        d.setflags(write=False)
        object.__setattr__(self, "d", d)

    @property
    def n(self):
        return self.d.shape[0]

    def __getitem__(self, key):
        return self.d[key]


def sample_circle(n, radius=1.0, noise_sd=0.05, seed=0):
    """Sample ``n`` points near a circle of the given radius.

    Each point draws an angle uniform on [0, 2*pi) and then a radius
    ``radius + noise_sd * z`` with ``z`` standard normal, in that order,
    from a seeded xoshiro256** stream.
    """
    if n < 0:
        raise InvalidParameterError("n must be nonnegative")
    if not radius > 0:
        raise InvalidParameterError("radius must be positive")
    if not noise_sd >= 0:
        raise InvalidParameterError("noise_sd must be nonnegative")
    rng = Xoshiro256(seed)
    pts = np.empty((n, 2))
    for i in range(n):
        theta = 2.0 * math.pi * rng.random()
        r = radius + noise_sd * rng.normal()
        pts[i, 0] = r * math.cos(theta)
        pts[i, 1] = r * math.sin(theta)
    return PointCloud(pts, 2)


def sample_sphere(n, radius=1.0, seed=0):
    """Sample ``n`` points uniformly on the 2-sphere of the given radius.

    Three standard normal draws per point are normalised and scaled.
    """
    if n < 0:
        raise InvalidParameterError("n must be nonnegative")
    if not radius > 0:
        raise InvalidParameterError("radius must be positive")
    rng = Xoshiro256(seed)
    pts = np.empty((n, 3))
    for i in range(n):
        while True:
            v = (rng.normal(), rng.normal(), rng.normal())
            norm = math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
            if norm > 0:
                break
        pts[i] = [radius * c / norm for c in v]
    return PointCloud(pts, 3)


def distance_matrix(cloud):
    """Euclidean distance matrix of a point cloud.

    Entries are computed once per unordered pair and mirrored, so the result
    is exactly symmetric.
    """
    pts = cloud.points
    diff = pts[:, None, :] - pts[None, :, :]
    d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    upper = np.triu(d, 1)
    d = upper + upper.T
    return DistanceMatrix(d)


def write_cloud_csv(cloud, path):
    lines = [",".join(repr(float(x)) for x in row) for row in cloud.points]
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def read_cloud_csv(path, skip_header=False):
    """Read a headerless point-cloud CSV.

    With ``skip_header=True`` a first row that does not parse as numbers is
    skipped. Errors carry the 1-based line number.
    """
    text = Path(path).read_text(encoding="utf-8")
    rows = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        tokens = line.split(",")
        try:
            values = [float(tok) for tok in tokens]
        except ValueError:
            if skip_header and lineno == 1:
                continue
            raise ParseError("non-numeric token", path, lineno) from None
        if not all(math.isfinite(v) for v in values):
            raise ParseError("non-finite coordinate", path, lineno)
        if dim is None:
            dim = len(values)
        elif len(values) != dim:
            raise ParseError(
                f"expected {dim} coordinates, found {len(values)}", path, lineno
            )
        rows.append(values)
    if not rows:
        raise ParseError("empty point cloud file", path, 1)
    return PointCloud(np.array(rows, dtype=float), dim)
