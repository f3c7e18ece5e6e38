"""Persistence pairs and diagrams from a filtration, over Z/2."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from math import comb
from pathlib import Path

import numpy as np

from . import _reduction
from .exceptions import InvalidParameterError, ParseError

__all__ = [
    "PersistenceFeature",
    "PersistenceDiagram",
    "low",
    "reduce",
    "compute_persistence",
    "diagram_to_csv",
    "diagram_from_csv",
    "diagram_to_json",
    "diagram_from_json",
    "write_diagram",
    "read_diagram",
]

INF = math.inf


@dataclass(frozen=True)
class PersistenceFeature:
    dimension: int
    birth: float
    death: float

    @property
    def persistence(self):
        return self.death - self.birth

    @property
    def is_essential(self):
        return math.isinf(self.death)


@dataclass(frozen=True)
class PersistenceDiagram:
    """All features of one computation.

    ``max_scale`` is the largest diameter in the filtration and ``n_points``
    the size of the cloud; both are ``None`` when read back from a CSV file,
    which does not record them.
    """

    features: tuple = field(default_factory=tuple)
    max_scale: float | None = None
    n_points: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(self.features))

    def __len__(self):
        return len(self.features)

    def __iter__(self):
        return iter(self.features)

    def in_dimension(self, dimension):
        return [f for f in self.features if f.dimension == dimension]

    @property
    def dimensions(self):
        return sorted({f.dimension for f in self.features})

    def as_array(self):
        """Features as an ``(n, 3)`` float array of dimension, birth, death."""
        if not self.features:
            return np.empty((0, 3))
        return np.array([(f.dimension, f.birth, f.death) for f in self.features], dtype=float)


def low(col):
    """Largest row index of a column, or None when it is empty."""
    return max(col) if col else None


def _reduce_lows(filtration, clearing):
    indptr, indices = filtration.boundary
    if not clearing:
        return _reduction.reduce_standard(indptr, indices, filtration.dimensions)
    dims = np.ascontiguousarray(filtration.dimensions, dtype=np.int64)
    counts = np.bincount(dims, minlength=filtration.max_dim + 1)
    n = filtration.n
    expected = -np.ones(filtration.max_dim + 1, dtype=np.int64)
    for k in range(1, filtration.max_dim + 1):
        # complete skeleton: the boundary map of the full simplex has known rank
        if counts[k] == comb(n, k + 1) and counts[k - 1] == comb(n, k):
            expected[k] = comb(n - 1, k)
    return _reduction.reduce_twist(indptr, indices, dims, filtration.max_dim, expected)


def _pair_arrays(filtration, clearing):
    """Creator and killer positions; killer is -1 for essential creators."""
    low_of = _reduce_lows(filtration, clearing)
    m = len(filtration)
    killer_of = -np.ones(m, dtype=np.int64)
    cols = np.flatnonzero(low_of >= 0)
    killer_of[low_of[cols]] = cols
    is_creator = np.ones(m, dtype=bool)
    is_creator[cols] = False
    creators = np.flatnonzero(is_creator)
    return creators, killer_of[creators]


def reduce(filtration, clearing=True):
    """Persistence pairing of a filtration.

    Returns ``(creator, killer)`` index pairs sorted by creator; essential
    creators appear as ``(creator, None)``. ``clearing=False`` runs the plain
    left-to-right algorithm, otherwise dimensions are processed high to low
    and columns of known creators are skipped.
    """
    creators, killers = _pair_arrays(filtration, clearing)
    return [(int(c), int(k) if k >= 0 else None) for c, k in zip(creators, killers)]


def compute_persistence(filtration, homology_max_dim, clearing=True):
    """Persistence diagram in degrees ``0..homology_max_dim``.

    The filtration must contain simplices one dimension higher than the
    largest requested degree, otherwise top-degree deaths are unknown.
    Pairs born and killed at the same diameter are dropped.
    """
    homology_max_dim = int(homology_max_dim)
    if homology_max_dim < 0:
        raise InvalidParameterError("homology_max_dim must be nonnegative")
    if filtration.max_dim < homology_max_dim + 1:
        raise InvalidParameterError(
            f"filtration max_dim={filtration.max_dim} cannot resolve degree "
            f"{homology_max_dim}; build it with max_dim={homology_max_dim + 1}"
        )
    creators, killers = _pair_arrays(filtration, clearing)
    dims = filtration.dimensions[creators]
    keep = dims <= homology_max_dim
    creators, killers, dims = creators[keep], killers[keep], dims[keep]
    births = filtration.diameters[creators]
    deaths = np.where(killers >= 0, filtration.diameters[np.maximum(killers, 0)], INF)
    keep = deaths > births
    order = np.lexsort((deaths[keep], births[keep], dims[keep]))
    features = tuple(
        PersistenceFeature(int(k), float(b), float(d))
        for k, b, d in zip(dims[keep][order], births[keep][order], deaths[keep][order])
    )
    return PersistenceDiagram(features, filtration.max_scale, filtration.n)


# serialisation -------------------------------------------------------------


def _fmt(x):
    return "inf" if math.isinf(x) else repr(float(x))


def diagram_to_csv(diag):
    lines = ["dimension,birth,death"]
    lines += [f"{f.dimension},{_fmt(f.birth)},{_fmt(f.death)}" for f in diag.features]
    return "\n".join(lines) + "\n"


def _parse_rows(text, header, path):
    reader = csv.reader(io.StringIO(text))
    rows = []
    seen_header = False
    for lineno, row in enumerate(reader, start=1):
        if not row or all(not c.strip() for c in row):
            continue
        cells = [c.strip() for c in row]
        if not seen_header:
            if cells != list(header):
                raise ParseError(f"expected header {','.join(header)}", path, lineno)
            seen_header = True
            continue
        if len(cells) != 3:
            raise ParseError(f"expected 3 fields, found {len(cells)}", path, lineno)
        try:
            dim = int(cells[0])
            a = float(cells[1])
            b = float(cells[2])
        except ValueError:
            raise ParseError("non-numeric field", path, lineno) from None
        if dim < 0 or math.isnan(a) or math.isnan(b) or math.isinf(a):
            raise ParseError("invalid feature values", path, lineno)
        rows.append((dim, a, b))
    if not seen_header:
        raise ParseError("empty diagram file", path, 1)
    return rows


def diagram_from_csv(text, path=None):
    rows = _parse_rows(text, ("dimension", "birth", "death"), path)
    return PersistenceDiagram(tuple(PersistenceFeature(*r) for r in rows))


def diagram_to_json(diag):
    payload = {
        "n_points": diag.n_points,
        "max_scale": diag.max_scale,
        "features": [
            {
                "dimension": f.dimension,
                "birth": f.birth,
                "death": "inf" if f.is_essential else f.death,
            }
            for f in diag.features
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def diagram_from_json(text, path=None):
    try:
        payload = json.loads(text)
        features = tuple(
            PersistenceFeature(int(f["dimension"]), float(f["birth"]), float(f["death"]))
            for f in payload["features"]
        )
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"malformed diagram JSON ({exc})", path) from None
    return PersistenceDiagram(features, payload.get("max_scale"), payload.get("n_points"))


def write_diagram(diag, path):
    """Write CSV, or JSON when the path ends in ``.json``."""
    path = Path(path)
    text = diagram_to_json(diag) if path.suffix.lower() == ".json" else diagram_to_csv(diag)
    path.write_text(text, encoding="utf-8")


def read_diagram(path):
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        return diagram_from_json(text, path)
    return diagram_from_csv(text, path)
