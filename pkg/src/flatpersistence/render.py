"""Standalone SVG figures: barcode, conventional diagram and flat diagram.

Every feature glyph carries ``class`` (``bar`` or ``marker``) and
``data-dimension`` attributes, and markers also carry their pixel centre in
``data-cx``/``data-cy``, so the output can be checked structurally.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .exceptions import InvalidParameterError

__all__ = ["PlotSpec", "render_barcode", "render_conventional", "render_flat", "render", "STYLES"]

STYLES = ("barcode", "diagram", "flat")

# degree 0 red circle, degree 1 green triangle, degree 2 blue square
DEFAULT_COLORS = {
    0: "#d62728",
    1: "#2ca02c",
    2: "#1f77b4",
    3: "#9467bd",
    4: "#ff7f0e",
    5: "#8c564b",
}
DEFAULT_MARKERS = {0: "circle", 1: "triangle", 2: "square", 3: "diamond", 4: "circle", 5: "triangle"}
_SHAPES = ("circle", "triangle", "square", "diamond")


@dataclass(frozen=True)
class PlotSpec:
    """Figure geometry and styling.

    ``include_essential=None`` picks the per-style default: essential bars
    are drawn (capped, with an arrowhead) in barcodes and left out of both
    diagrams. When included in a diagram they sit on the top border as open
    markers.
    """

    width: float = 480.0
    height: float = 480.0
    margin: float = 56.0
    colors: dict = field(default_factory=lambda: dict(DEFAULT_COLORS))
    markers: dict = field(default_factory=lambda: dict(DEFAULT_MARKERS))
    include_essential: bool | None = None
    essential_cap_factor: float = 1.1
    marker_size: float = 4.0
    flat_padding: float = 1.05
    title: str | None = None

    def __post_init__(self):
        if not (self.width > 2 * self.margin and self.height > 2 * self.margin):
            raise InvalidParameterError("width and height must exceed twice the margin")
        if self.margin < 0:
            raise InvalidParameterError("margin must be nonnegative")
        if not self.essential_cap_factor > 1:
            raise InvalidParameterError("essential_cap_factor must be greater than 1")
        if not self.flat_padding >= 1:
            raise InvalidParameterError("flat_padding must be at least 1")
        bad = [s for s in self.markers.values() if s not in _SHAPES]
        if bad:
            raise InvalidParameterError(f"unknown marker shape {bad[0]!r}")

    def check_dimensions(self, dims):
        for k in dims:
            if k not in self.colors or k not in self.markers:
                raise InvalidParameterError(f"no color/marker assigned to degree {k}")


def _num(x):
    return repr(round(float(x), 9))


class _Frame:
    """Maps data coordinates to pixels for a rectangular plot area."""

    def __init__(self, left, top, w, h, xmax, ymax):
        self.left, self.top, self.w, self.h = left, top, w, h
        self.xmax, self.ymax = xmax, ymax

    def px(self, x):
        return self.left + self.w * (x / self.xmax)

    def py(self, y):
        return self.top + self.h * (1.0 - y / self.ymax)

    @property
    def bottom(self):
        return self.top + self.h

    @property
    def right(self):
        return self.left + self.w


def _nice_ticks(vmax, target=5):
    if vmax <= 0:
        return [0.0]
    raw = vmax / target
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    n = int(math.floor(vmax / step + 1e-9))
    return [round(i * step, 12) for i in range(n + 1)]


def _tick_label(v):
    return f"{v:g}"


def _svg_root(spec):
    root = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": _num(spec.width),
            "height": _num(spec.height),
            "viewBox": f"0 0 {_num(spec.width)} {_num(spec.height)}",
            "font-family": "sans-serif",
            "font-size": "11",
        },
    )
    ET.SubElement(
        root,
        "rect",
        {"class": "background", "x": "0", "y": "0", "width": _num(spec.width),
         "height": _num(spec.height), "fill": "white"},
    )
    if spec.title:
        t = ET.SubElement(
            root, "text",
            {"class": "title", "x": _num(spec.width / 2), "y": _num(spec.margin / 2),
             "text-anchor": "middle", "font-size": "13"},
        )
        t.text = spec.title
    return root


def _axes(root, frame, xlabel, ylabel, yticks=True):
    g = ET.SubElement(root, "g", {"class": "axes", "stroke": "black", "stroke-width": "1"})
    ET.SubElement(g, "line", {"class": "axis x-axis", "x1": _num(frame.left), "y1": _num(frame.bottom),
                              "x2": _num(frame.right), "y2": _num(frame.bottom)})
    ET.SubElement(g, "line", {"class": "axis y-axis", "x1": _num(frame.left), "y1": _num(frame.top),
                              "x2": _num(frame.left), "y2": _num(frame.bottom)})
    labels = ET.SubElement(root, "g", {"class": "tick-labels", "fill": "black"})
    for v in _nice_ticks(frame.xmax):
        x = frame.px(v)
        ET.SubElement(g, "line", {"class": "tick", "x1": _num(x), "y1": _num(frame.bottom),
                                  "x2": _num(x), "y2": _num(frame.bottom + 4)})
        t = ET.SubElement(labels, "text", {"x": _num(x), "y": _num(frame.bottom + 16),
                                           "text-anchor": "middle"})
        t.text = _tick_label(v)
    if yticks:
        for v in _nice_ticks(frame.ymax):
            y = frame.py(v)
            ET.SubElement(g, "line", {"class": "tick", "x1": _num(frame.left - 4), "y1": _num(y),
                                      "x2": _num(frame.left), "y2": _num(y)})
            t = ET.SubElement(labels, "text", {"x": _num(frame.left - 7), "y": _num(y + 4),
                                               "text-anchor": "end"})
            t.text = _tick_label(v)
    t = ET.SubElement(labels, "text", {"class": "axis-label", "x": _num((frame.left + frame.right) / 2),
                                       "y": _num(frame.bottom + 34), "text-anchor": "middle"})
    t.text = xlabel
    ly = (frame.top + frame.bottom) / 2
    t = ET.SubElement(labels, "text", {"class": "axis-label", "x": _num(frame.left - 40), "y": _num(ly),
                                       "text-anchor": "middle",
                                       "transform": f"rotate(-90 {_num(frame.left - 40)} {_num(ly)})"})
    t.text = ylabel


def _legend(root, spec, dims, frame):
    g = ET.SubElement(root, "g", {"class": "legend"})
    for i, k in enumerate(dims):
        # right margin, clear of the data area
        x = frame.right + 12
        y = frame.top + 6 + 16 * i
        _glyph(g, spec, k, x, y, "legend-key", open_=False)
        t = ET.SubElement(g, "text", {"x": _num(x + 10), "y": _num(y + 4)})
        t.text = f"H{k}"


def _glyph(parent, spec, dim, cx, cy, cls, open_=False, extra=None):
    color = spec.colors[dim]
    shape = spec.markers[dim]
    s = spec.marker_size
    attrs = {"class": cls, "data-dimension": str(dim), "data-cx": _num(cx), "data-cy": _num(cy)}
    if extra:
        attrs.update(extra)
    if open_:
        attrs.update({"fill": "none", "stroke": color, "stroke-width": "1.5"})
    else:
        attrs.update({"fill": color, "fill-opacity": "0.8", "stroke": color})
    if shape == "circle":
        attrs.update({"cx": _num(cx), "cy": _num(cy), "r": _num(s)})
        return ET.SubElement(parent, "circle", attrs)
    if shape == "square":
        attrs.update({"x": _num(cx - s), "y": _num(cy - s), "width": _num(2 * s), "height": _num(2 * s)})
        return ET.SubElement(parent, "rect", attrs)
    if shape == "triangle":
        pts = [(cx, cy - 1.2 * s), (cx - 1.1 * s, cy + 0.8 * s), (cx + 1.1 * s, cy + 0.8 * s)]
    else:
        pts = [(cx, cy - 1.3 * s), (cx + 1.3 * s, cy), (cx, cy + 1.3 * s), (cx - 1.3 * s, cy)]
    attrs["points"] = " ".join(f"{_num(x)},{_num(y)}" for x, y in pts)
    return ET.SubElement(parent, "polygon", attrs)


def _serialize(root):
    ET.indent(root, space="  ")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def _finite_extent(diag):
    vals = [v for f in diag.features for v in (f.birth, f.death) if math.isfinite(v)]
    top = max(vals, default=0.0)
    return top if top > 0 else 1.0


def _feature_attrs(f):
    return {"data-birth": "inf" if math.isinf(f.birth) else repr(f.birth),
            "data-death": "inf" if math.isinf(f.death) else repr(f.death)}


def _included(diag, include):
    return [f for f in diag.features if include or not f.is_essential]


def render_barcode(diag, spec=None):
    """One horizontal bar per feature, degree blocks stacked from the bottom."""
    spec = spec or PlotSpec(width=560, height=420)
    include = True if spec.include_essential is None else spec.include_essential
    feats = sorted(_included(diag, include), key=lambda f: (f.dimension, f.birth, f.death))
    dims = sorted({f.dimension for f in feats})
    spec.check_dimensions(dims)
    cap = spec.essential_cap_factor * _finite_extent(diag)
    m = spec.margin
    frame = _Frame(m, m, spec.width - 2 * m, spec.height - 2 * m, cap, 1.0)
    root = _svg_root(spec)
    defs = ET.SubElement(root, "defs")
    arrow = ET.SubElement(defs, "marker", {"id": "arrow", "viewBox": "0 0 10 10", "refX": "1", "refY": "5",
                                           "markerWidth": "5", "markerHeight": "5", "orient": "auto"})
    ET.SubElement(arrow, "path", {"d": "M 0 0 L 10 5 L 0 10 z", "fill": "context-stroke"})
    _axes(root, frame, "diameter", "features", yticks=False)
    bars = ET.SubElement(root, "g", {"class": "bars"})
    if feats:
        row_h = frame.h / len(feats)
        width = max(0.5, min(3.0, 0.6 * row_h))
        # row 0 is the bottom row
        for row, f in enumerate(feats):
            y = frame.bottom - (row + 0.5) * row_h
            x2 = frame.px(cap if f.is_essential else f.death)
            attrs = {"class": "bar", "data-dimension": str(f.dimension), **_feature_attrs(f),
                     "x1": _num(frame.px(f.birth)), "y1": _num(y), "x2": _num(x2), "y2": _num(y),
                     "stroke": spec.colors[f.dimension], "stroke-width": _num(width)}
            if f.is_essential:
                attrs["data-essential"] = "true"
                attrs["marker-end"] = "url(#arrow)"
            ET.SubElement(bars, "line", attrs)
        _legend(root, spec, dims, frame)
    return _serialize(root)


def _square_frame(spec):
    side = min(spec.width, spec.height) - 2 * spec.margin
    left = (spec.width - side) / 2
    top = (spec.height - side) / 2
    return left, top, side


def render_conventional(diag, spec=None):
    """Birth against death on a square plot with a shared axis range and y = x."""
    spec = spec or PlotSpec()
    include = bool(spec.include_essential)
    feats = _included(diag, include)
    dims = sorted({f.dimension for f in feats})
    spec.check_dimensions(dims)
    s_max = spec.essential_cap_factor * _finite_extent(diag)
    left, top, side = _square_frame(spec)
    frame = _Frame(left, top, side, side, s_max, s_max)
    root = _svg_root(spec)
    _axes(root, frame, "birth", "death")
    ET.SubElement(root, "line", {"class": "reference-line", "x1": _num(frame.px(0)), "y1": _num(frame.py(0)),
                                 "x2": _num(frame.px(s_max)), "y2": _num(frame.py(s_max)),
                                 "stroke": "gray", "stroke-dasharray": "4 3"})
    g = ET.SubElement(root, "g", {"class": "markers"})
    for f in feats:
        y = s_max if f.is_essential else f.death
        extra = _feature_attrs(f)
        if f.is_essential:
            extra["data-essential"] = "true"
        _glyph(g, spec, f.dimension, frame.px(f.birth), frame.py(y), "marker", f.is_essential, extra)
    if feats:
        _legend(root, spec, dims, frame)
    return _serialize(root)


def render_flat(diag, spec=None):
    """Birth against persistence; the horizontal axis is the zero line."""
    spec = spec or PlotSpec()
    include = bool(spec.include_essential)
    feats = _included(diag, include)
    dims = sorted({f.dimension for f in feats})
    spec.check_dimensions(dims)
    finite = [f for f in feats if not f.is_essential]
    max_birth = max((f.birth for f in feats), default=0.0)
    max_pers = max((f.death - f.birth for f in finite), default=0.0)
    ymax = spec.flat_padding * max_pers if max_pers > 0 else 1.0
    if max_birth > 0:
        xmax = spec.flat_padding * max_birth
    else:
        xmax = ymax
    m = spec.margin
    frame = _Frame(m, m, spec.width - 2 * m, spec.height - 2 * m, xmax, ymax)
    root = _svg_root(spec)
    _axes(root, frame, "birth", "persistence")
    g = ET.SubElement(root, "g", {"class": "markers"})
    for f in feats:
        y = ymax if f.is_essential else f.death - f.birth
        extra = _feature_attrs(f)
        if f.is_essential:
            extra["data-essential"] = "true"
        _glyph(g, spec, f.dimension, frame.px(f.birth), frame.py(y), "marker", f.is_essential, extra)
    if feats:
        _legend(root, spec, dims, frame)
    return _serialize(root)


def render(diag, style, spec=None):
    """Dispatch on ``style``: ``barcode``, ``diagram`` (conventional) or ``flat``."""
    if style == "barcode":
        return render_barcode(diag, spec)
    if style in ("diagram", "conventional"):
        return render_conventional(diag, spec)
    if style == "flat":
        return render_flat(diag, spec)
    raise InvalidParameterError(f"unknown plot style {style!r}")
