"""Flat diagrams, persistence ranking and the whitespace metric."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .exceptions import InvalidParameterError, UndefinedInputError
from .persistence import PersistenceDiagram, PersistenceFeature

__all__ = [
    "FlatPoint",
    "to_flat",
    "from_flat",
    "rank_by_persistence",
    "rank_flat_points",
    "plot_efficiency",
    "flat_to_csv",
    "write_flat_csv",
]


@dataclass(frozen=True)
class FlatPoint:
    """A feature placed by birth and persistence instead of birth and death."""

    dimension: int
    birth: float
    persistence: float
    # birth + persistence can differ from the source death in the last bit;
    # points made by to_flat remember it so the round trip is exact
    source_death: float | None = field(default=None, compare=False, repr=False)

    @property
    def death(self):
        if self.source_death is not None:
            return self.source_death
        return self.birth + self.persistence


def to_flat(diag):
    """Map every feature ``(k, b, d)`` to ``(k, b, d - b)``, preserving order."""
    return [FlatPoint(f.dimension, f.birth, f.death - f.birth, f.death) for f in diag.features]


def from_flat(points, max_scale=None, n_points=None):
    """Inverse of :func:`to_flat`."""
    features = tuple(PersistenceFeature(p.dimension, p.birth, p.death) for p in points)
    return PersistenceDiagram(features, max_scale, n_points)


def _ranking(items, dimension, persistence):
    idx = [
        i
        for i, it in enumerate(items)
        if it.dimension == dimension and math.isfinite(persistence(it))
    ]
    return sorted(idx, key=lambda i: (-persistence(items[i]), items[i].birth, i))


def rank_by_persistence(diag, dimension):
    """Indices of finite degree-``dimension`` features, most persistent first.

    Ties are broken by earlier birth, then by position in the diagram.
    """
    return _ranking(diag.features, dimension, lambda f: f.death - f.birth)


def rank_flat_points(points, dimension):
    """Same ranking read straight off the flat points' vertical coordinate."""
    return _ranking(points, dimension, lambda p: p.persistence)


def plot_efficiency(diag, style):
    """Fraction of the plotting rectangle where a feature could appear.

    A conventional diagram shares the axis range [0, S] on both axes and
    features sit strictly above the diagonal, so half the square is
    feasible. A flat diagram spans [0, max birth] x [0, max persistence] and
    every point of it is feasible.
    """
    if not any(not f.is_essential for f in diag.features):
        raise UndefinedInputError("plot efficiency needs at least one finite feature")
    if style == "conventional":
        return 0.5
    if style == "flat":
        return 1.0
    raise InvalidParameterError(f"unknown plot style {style!r}")


def flat_to_csv(points):
    def fmt(x):
        return "inf" if math.isinf(x) else repr(float(x))

    lines = ["dimension,birth,persistence"]
    lines += [f"{p.dimension},{fmt(p.birth)},{fmt(p.persistence)}" for p in points]
    return "\n".join(lines) + "\n"


def write_flat_csv(points, path):
    Path(path).write_text(flat_to_csv(points), encoding="utf-8")
