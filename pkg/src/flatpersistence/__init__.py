"""Vietoris-Rips persistent homology with barcode, conventional and flat
persistence diagram rendering."""

from .diagram import FlatPoint, plot_efficiency, rank_by_persistence, to_flat
from .estimators import FlatDiagram, RipsPersistence
from .exceptions import InvalidParameterError, ParseError, UndefinedInputError
from .persistence import PersistenceDiagram, PersistenceFeature, compute_persistence
from .pointcloud import PointCloud, distance_matrix, sample_circle, sample_sphere
from .render import PlotSpec, render_barcode, render_conventional, render_flat
from .rips import Filtration, build_rips_filtration

__all__ = [
    "FlatDiagram",
    "FlatPoint",
    "Filtration",
    "InvalidParameterError",
    "ParseError",
    "PersistenceDiagram",
    "PersistenceFeature",
    "PlotSpec",
    "PointCloud",
    "RipsPersistence",
    "UndefinedInputError",
    "build_rips_filtration",
    "compute_persistence",
    "distance_matrix",
    "plot_efficiency",
    "rank_by_persistence",
    "render_barcode",
    "render_conventional",
    "render_flat",
    "sample_circle",
    "sample_sphere",
    "to_flat",
]

__version__ = "0.1.0"
