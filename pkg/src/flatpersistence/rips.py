"""Vietoris-Rips filtrations.

Simplices are kept as explicit sorted vertex lists. A filtration stores them
column-wise in numpy arrays (one padded vertex row per simplex) so that full
3-skeleta of a few hundred points stay cheap; ``Filtration`` still behaves
as a sequence of :class:`FiltrationEntry`.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb

import numpy as np

from .exceptions import InvalidParameterError

__all__ = [
    "Simplex",
    "FiltrationEntry",
    "Filtration",
    "simplex_diameter",
    "build_rips_filtration",
]


@dataclass(frozen=True, order=True)
class Simplex:
    vertices: tuple

    def __post_init__(self):
        verts = tuple(int(v) for v in self.vertices)
        if not verts:
            raise InvalidParameterError("a simplex needs at least one vertex")
        if any(a >= b for a, b in zip(verts, verts[1:])):
            raise InvalidParameterError(f"simplex vertices must be strictly increasing: {verts}")
        if verts[0] < 0:
            raise InvalidParameterError("vertex indices must be nonnegative")
        object.__setattr__(self, "vertices", verts)

    @property
    def dimension(self):
        return len(self.vertices) - 1

    def facets(self):
        """Codimension-1 faces, in lexicographic order."""
        if self.dimension == 0:
            return []
        k = len(self.vertices) - 1
        return [Simplex(f) for f in combinations(self.vertices, k)]


@dataclass(frozen=True)
class FiltrationEntry:
    simplex: Simplex
    diameter: float


def simplex_diameter(s, dm):
    """Largest pairwise distance among the simplex's vertices (0 for a vertex)."""
    verts = s.vertices if isinstance(s, Simplex) else tuple(s)
    if any(v < 0 or v >= dm.n for v in verts):
        raise IndexError(f"simplex {verts} has a vertex outside 0..{dm.n - 1}")
    best = 0.0
    for a, b in combinations(verts, 2):
        best = max(best, float(dm.d[a, b]))
    return best


class Filtration(Sequence):
    """Simplices in filtration order with their diameters.

    Parameters
    ----------
    vertices : int array, shape (m, max_dim + 1)
        Row ``i`` holds the sorted vertices of simplex ``i`` padded with -1.
    diameters : float array, shape (m,)
    n : int
        Number of points the vertices index into.
    max_dim : int
    validate : bool
        Check ordering invariants (nondecreasing diameters, faces first,
        no duplicates). Reduction checks faces-first on its own.
    """

    def __init__(self, vertices, diameters, n, max_dim, validate=True):
        vertices = np.asarray(vertices, dtype=np.int64)
        diameters = np.asarray(diameters, dtype=float)
        if vertices.ndim != 2 or vertices.shape[1] != max_dim + 1:
            raise InvalidParameterError("vertex array must have max_dim + 1 columns")
        if diameters.shape != (vertices.shape[0],):
            raise InvalidParameterError("one diameter per simplex is required")
        vertices.setflags(write=False)
        diameters.setflags(write=False)
        self.vertices = vertices
        self.diameters = diameters
        self.n = int(n)
        self.max_dim = int(max_dim)
        self.dimensions = (vertices >= 0).sum(axis=1) - 1
        self.dimensions.setflags(write=False)
        if validate:
            self.validate()

    @classmethod
    def from_entries(cls, entries, n, max_dim=None):
        """Build a filtration from FiltrationEntry objects, keeping their order."""
        entries = list(entries)
        if max_dim is None:
            max_dim = max((e.simplex.dimension for e in entries), default=0)
        verts = np.full((len(entries), max_dim + 1), -1, dtype=np.int64)
        for i, e in enumerate(entries):
            if e.simplex.dimension > max_dim:
                raise InvalidParameterError("simplex dimension exceeds max_dim")
            verts[i, : e.simplex.dimension + 1] = e.simplex.vertices
        diams = np.array([e.diameter for e in entries], dtype=float)
        return cls(verts, diams, n, max_dim)

    def __len__(self):
        return self.vertices.shape[0]

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        row = self.vertices[i]
        return FiltrationEntry(Simplex(tuple(row[row >= 0])), float(self.diameters[i]))

    @property
    def entries(self):
        """All entries as a list (materialises one object per simplex)."""
        return list(self)

    @property
    def max_scale(self):
        return float(self.diameters.max()) if len(self) else 0.0

    def validate(self):
        if len(self) == 0:
            return
        if np.any(np.diff(self.diameters) < 0):
            raise InvalidParameterError("filtration diameters must be nondecreasing")
        if np.any(self.diameters < 0) or not np.all(np.isfinite(self.diameters)):
            raise InvalidParameterError("diameters must be finite and nonnegative")
        if np.any(self.vertices >= self.n):
            raise InvalidParameterError("vertex index out of range")
        for k in range(self.max_dim + 1):
            rows = self.vertices[self.dimensions == k, : k + 1]
            if rows.size and np.any(np.diff(rows, axis=1) <= 0):
                raise InvalidParameterError("simplex vertices must be strictly increasing")
        for k in range(self.max_dim + 1):
            r = self._ranks[self.dimensions == k]
            if np.unique(r).size != r.size:
                raise InvalidParameterError("filtration contains duplicate simplices")
        # raises when a face is missing or appears later than its coface
        self.boundary

    @cached_property
    def _ranks(self):
        # colex rank of each vertex set among all sets of its size; unique
        # within a dimension and dense, so it doubles as a lookup-table index
        return _colex_rank(self.vertices, self.dimensions)

    @cached_property
    def boundary(self):
        """Boundary matrix in compressed-column form ``(indptr, indices)``.

        Column ``j`` lists the filtration positions of the facets of simplex
        ``j`` in increasing order; vertices have empty columns.
        """
        m = len(self)
        dims = self.dimensions
        nnz = np.where(dims > 0, dims + 1, 0)
        indptr = np.zeros(m + 1, dtype=np.int64)
        np.cumsum(nnz, out=indptr[1:])
        indices = np.empty(indptr[-1], dtype=np.int64)
        ranks = self._ranks
        positions = np.arange(m)
        lookup = {}
        for k in range(self.max_dim + 1):
            table = np.full(comb(self.n, k + 1), -1, dtype=np.int64)
            cols = positions[dims == k]
            table[ranks[cols]] = cols
            lookup[k] = table
        for k in range(1, self.max_dim + 1):
            cols = positions[dims == k]
            if cols.size == 0:
                continue
            verts = self.vertices[cols, : k + 1]
            facet_pos = np.empty((cols.size, k + 1), dtype=np.int64)
            for drop in range(k + 1):
                facet = np.delete(verts, drop, axis=1)
                facet_pos[:, drop] = lookup[k - 1][_colex_rank_rows(facet)]
            if np.any(facet_pos < 0):
                bad = cols[np.argmax((facet_pos < 0).any(axis=1))]
                raise InvalidParameterError(
                    f"simplex at position {bad} has a facet missing from the filtration"
                )
            if np.any(facet_pos >= cols[:, None]):
                bad = cols[np.argmax((facet_pos >= cols[:, None]).any(axis=1))]
                raise InvalidParameterError(
                    f"simplex at position {bad} precedes one of its facets"
                )
            facet_pos.sort(axis=1)
            indices[indptr[cols][:, None] + np.arange(k + 1)] = facet_pos
        indptr.setflags(write=False)
        indices.setflags(write=False)
        return indptr, indices


def _colex_rank_rows(rows):
    """Colex rank of sorted vertex rows of equal length: sum of C(v_i, i+1)."""
    rank = np.zeros(rows.shape[0], dtype=np.int64)
    for i in range(rows.shape[1]):
        rank += _binom(rows[:, i], i + 1)
    return rank


def _colex_rank(vertices, dims):
    rank = np.zeros(vertices.shape[0], dtype=np.int64)
    for i in range(vertices.shape[1]):
        col = vertices[:, i]
        present = col >= 0
        rank[present] += _binom(col[present], i + 1)
    return rank


def _binom(v, k):
    """C(v, k) elementwise for a nonnegative int array (exact in int64 here)."""
    out = np.ones(v.shape, dtype=np.int64)
    for i in range(k):
        out = out * (v - i) // (i + 1)
    return np.where(v >= k, out, 0)


def _expand_cliques(d, max_dim, threshold):
    """Vertex rows and diameters of all cliques up to ``max_dim`` within threshold."""
    n = d.shape[0]
    simplices = [np.arange(n, dtype=np.int64).reshape(n, 1)]
    diameters = [np.zeros(n)]
    for k in range(1, max_dim + 1):
        prev, prev_diam = simplices[-1], diameters[-1]
        if prev.shape[0] == 0:
            simplices.append(np.empty((0, k + 1), dtype=np.int64))
            diameters.append(np.empty(0))
            continue
        last = prev[:, -1]
        counts = n - 1 - last
        total = int(counts.sum())
        parent = np.repeat(np.arange(prev.shape[0]), counts)
        # new vertex runs from last+1 to n-1 for each parent
        offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        new_v = last[parent] + 1 + offsets
        diam = prev_diam[parent]
        for c in range(k):
            diam = np.maximum(diam, d[prev[parent, c], new_v])
        keep = diam <= threshold
        parent, new_v, diam = parent[keep], new_v[keep], diam[keep]
        simplices.append(np.column_stack([prev[parent], new_v]))
        diameters.append(diam)
    return simplices, diameters


def build_rips_filtration(dm, max_dim, threshold="auto"):
    """Vietoris-Rips filtration of ``dm`` through simplices of dimension ``max_dim``.

    Every simplex of dimension <= ``max_dim`` with diameter <= ``threshold``
    is included, sorted by diameter, then dimension, then vertex list.
    ``threshold="auto"`` uses the largest distance, i.e. the full filtration.
    To compute homology through degree k pass ``max_dim = k + 1``.
    """
    max_dim = int(max_dim)
    if max_dim < 0:
        raise InvalidParameterError("max_dim must be nonnegative")
    d = np.asarray(dm.d, dtype=float)
    if isinstance(threshold, str):
        if threshold != "auto":
            raise InvalidParameterError(f"unknown threshold {threshold!r}")
        threshold = float(d.max()) if d.size else 0.0
    else:
        threshold = float(threshold)
        if not threshold > 0:
            raise InvalidParameterError("threshold must be positive")
    simplices, diameters = _expand_cliques(d, max_dim, threshold)
    m = sum(s.shape[0] for s in simplices)
    verts = np.full((m, max_dim + 1), -1, dtype=np.int64)
    diams = np.empty(m)
    at = 0
    for k, (s, dk) in enumerate(zip(simplices, diameters)):
        verts[at : at + s.shape[0], : k + 1] = s
        diams[at : at + s.shape[0]] = dk
        at += s.shape[0]
    # blocks are already in (dimension, lexicographic) order, so a stable
    # sort on diameter yields the full (diameter, dimension, vertices) order
    order = np.argsort(diams, kind="stable")
    return Filtration(verts[order], diams[order], dm.n, max_dim, validate=False)
