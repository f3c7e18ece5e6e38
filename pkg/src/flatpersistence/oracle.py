"""Brute-force Betti numbers, independent of the reduction engine.

The Rips complex at a threshold is enumerated directly from vertex subsets
and ranks of the full boundary matrices are taken by Gaussian elimination
over Z/2. Nothing here imports the rips or persistence modules; it exists to
check them on clouds of a handful of points.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from itertools import combinations

from .exceptions import InvalidParameterError

__all__ = ["BettiCurve", "betti_at", "betti_curve_from_diagram", "gf2_rank"]


def gf2_rank(rows):
    """Rank over Z/2 of a dense matrix given as row bitmasks (Python ints)."""
    rows = [r for r in rows if r]
    rank = 0
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank += 1
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if (r >> top) & 1 else r for r in rows]
        rows = [r for r in rows if r]
    return rank


def _rips_simplices(d, t, k):
    n = len(d)
    return [
        s
        for s in combinations(range(n), k + 1)
        if all(d[a][b] <= t for a, b in combinations(s, 2))
    ]


def _boundary_rank(faces, cofaces):
    if not faces or not cofaces:
        return 0
    index = {f: i for i, f in enumerate(faces)}
    rows = []
    for s in cofaces:
        mask = 0
        for drop in range(len(s)):
            mask |= 1 << index[s[:drop] + s[drop + 1 :]]
        rows.append(mask)
    return gf2_rank(rows)


def betti_at(dm, t, degree, max_dim):
    """Betti number in ``degree`` of the Rips complex with diameter <= ``t``."""
    if degree < 0:
        raise InvalidParameterError("degree must be nonnegative")
    if max_dim < degree + 1:
        raise InvalidParameterError("max_dim must be at least degree + 1")
    if t < 0:
        raise InvalidParameterError("threshold must be nonnegative")
    d = dm.d.tolist() if hasattr(dm, "d") else [list(r) for r in dm]
    below = _rips_simplices(d, t, degree - 1) if degree > 0 else []
    cells = _rips_simplices(d, t, degree)
    above = _rips_simplices(d, t, degree + 1)
    kernel = len(cells) - _boundary_rank(below, cells)
    return kernel - _boundary_rank(cells, above)


@dataclass(frozen=True)
class BettiCurve:
    """Piecewise-constant Betti number as a function of the threshold.

    ``values[i]`` holds on ``[breakpoints[i], breakpoints[i+1])``; the value
    below the first breakpoint is 0 and after the last one it is
    ``values[-1]``.
    """

    degree: int
    breakpoints: tuple
    values: tuple

    def __call__(self, t):
        i = bisect.bisect_right(self.breakpoints, t) - 1
        return 0 if i < 0 else self.values[i]


def betti_curve_from_diagram(diag, degree):
    """Count of degree-k features with ``birth <= t < death`` for every t."""
    feats = [f for f in diag.features if f.dimension == degree]
    points = sorted({f.birth for f in feats} | {f.death for f in feats if f.death != float("inf")})
    values = tuple(sum(1 for f in feats if f.birth <= t < f.death) for t in points)
    return BettiCurve(degree, tuple(points), values)
