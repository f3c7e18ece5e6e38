"""Command line interface: ``flatpersistence sample|compute|plot|pipeline|reproduce-figures``.

Exit status is 0 on success, 1 on usage errors and 2 on I/O or parse errors.
Diagnostics go to stderr; data goes to files, or stdout when ``-o`` is
omitted.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .diagram import to_flat, write_flat_csv
from .exceptions import InvalidParameterError, ParseError
from .persistence import (
    compute_persistence,
    diagram_to_csv,
    diagram_to_json,
    read_diagram,
    write_diagram,
)
from .pointcloud import (
    distance_matrix,
    read_cloud_csv,
    sample_circle,
    sample_sphere,
    write_cloud_csv,
)
from .render import PlotSpec, render
from .rips import build_rips_filtration

EXIT_USAGE = 1
EXIT_IO = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _threshold(text):
    if text == "auto":
        return text
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid threshold {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError("threshold must be positive")
    return value


def _nonneg_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _add_sample_args(p):
    p.add_argument("--shape", choices=("circle", "sphere"), required=True)
    p.add_argument("--n", type=_nonneg_int, default=100)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--noise-sd", type=float, default=0.05, help="circle only")
    p.add_argument("--seed", type=int, default=0)


def _add_compute_args(p):
    p.add_argument("--max-hom-dim", type=_nonneg_int, default=None,
                   help="largest homology degree (default: 2 for 3-D clouds, else 1)")
    p.add_argument("--threshold", type=_threshold, default="auto")


def _add_plot_args(p):
    p.add_argument("--style", choices=("barcode", "diagram", "flat"), required=True)
    p.add_argument("--include-essential", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--width", type=float, default=None)
    p.add_argument("--height", type=float, default=None)
    p.add_argument("--title", default=None)


def build_parser():
    parser = _Parser(prog="flatpersistence", description="Rips persistence and flat persistence diagrams")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sample", help="write a synthetic point cloud CSV")
    _add_sample_args(p)
    p.add_argument("-o", "--output")

    p = sub.add_parser("compute", help="point cloud CSV -> diagram CSV/JSON")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--json", action="store_true", help="write JSON to stdout")
    p.add_argument("--skip-header", action="store_true")
    p.add_argument("--flat-output", help="also write flat points CSV here")
    _add_compute_args(p)

    p = sub.add_parser("plot", help="diagram CSV/JSON -> SVG")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    _add_plot_args(p)

    p = sub.add_parser("pipeline", help="sample, compute and plot in one go")
    _add_sample_args(p)
    _add_compute_args(p)
    _add_plot_args(p)
    p.add_argument("-o", "--output")
    p.add_argument("--points-output")
    p.add_argument("--diagram-output")

    p = sub.add_parser("reproduce-figures", help="write figure panels for a noisy circle and a sphere")
    p.add_argument("-d", "--outdir", required=True)
    p.add_argument("--n", type=_nonneg_int, default=100)
    p.add_argument("--circle-seed", type=int, default=42)
    p.add_argument("--sphere-seed", type=int, default=7)
    p.add_argument("--noise-sd", type=float, default=0.05)
    return parser


def _emit(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _sample(args):
    if args.shape == "circle":
        return sample_circle(args.n, args.radius, args.noise_sd, args.seed)
    return sample_sphere(args.n, args.radius, args.seed)


def _diagram(cloud, max_hom_dim, threshold):
    if max_hom_dim is None:
        max_hom_dim = 2 if cloud.ambient_dim >= 3 else 1
    filt = build_rips_filtration(distance_matrix(cloud), max_hom_dim + 1, threshold)
    return compute_persistence(filt, max_hom_dim)


def _spec(args):
    kw = {"include_essential": args.include_essential, "title": args.title}
    if args.width is not None:
        kw["width"] = args.width
    if args.height is not None:
        kw["height"] = args.height
    if args.style == "barcode":
        kw.setdefault("width", 560)
        kw.setdefault("height", 420)
    return PlotSpec(**kw)


def _cmd_sample(args):
    cloud = _sample(args)
    if args.output:
        write_cloud_csv(cloud, args.output)
    else:
        for row in cloud.points:
            sys.stdout.write(",".join(repr(float(x)) for x in row) + "\n")


def _cmd_compute(args):
    cloud = read_cloud_csv(args.input, skip_header=args.skip_header)
    diag = _diagram(cloud, args.max_hom_dim, args.threshold)
    if args.output:
        write_diagram(diag, args.output)
    elif args.json:
        sys.stdout.write(diagram_to_json(diag))
    else:
        sys.stdout.write(diagram_to_csv(diag))
    if args.flat_output:
        write_flat_csv(to_flat(diag), args.flat_output)


def _cmd_plot(args):
    diag = read_diagram(args.input)
    _emit(render(diag, args.style, _spec(args)), args.output)


def _cmd_pipeline(args):
    cloud = _sample(args)
    if args.points_output:
        write_cloud_csv(cloud, args.points_output)
    diag = _diagram(cloud, args.max_hom_dim, args.threshold)
    if args.diagram_output:
        write_diagram(diag, args.diagram_output)
    _emit(render(diag, args.style, _spec(args)), args.output)


def _cmd_reproduce(args):
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    print(
        "note: point samples are drawn from this package's own seeded generator; "
        "they are not the samples behind any published figure",
        file=sys.stderr,
    )
    circle = sample_circle(args.n, 1.0, args.noise_sd, args.circle_seed)
    sphere = sample_sphere(args.n, 1.0, args.sphere_seed)
    write_cloud_csv(circle, out / "circle_points.csv")
    write_cloud_csv(sphere, out / "sphere_points.csv")
    d_circle = _diagram(circle, 1, "auto")
    d_sphere = _diagram(sphere, 2, "auto")
    write_diagram(d_circle, out / "circle_diagram.csv")
    write_diagram(d_sphere, out / "sphere_diagram.csv")
    panels = [
        ("fig1c_circle_diagram.svg", d_circle, "diagram", "Noisy circle: persistence diagram"),
        ("fig1d_circle_barcode.svg", d_circle, "barcode", "Noisy circle: barcode"),
        ("fig1e_circle_flat.svg", d_circle, "flat", "Noisy circle: flat persistence diagram"),
        ("fig2a_sphere_barcode.svg", d_sphere, "barcode", "Sphere: barcode"),
        ("fig2b_sphere_diagram.svg", d_sphere, "diagram", "Sphere: persistence diagram"),
        ("fig2c_sphere_flat.svg", d_sphere, "flat", "Sphere: flat persistence diagram"),
    ]
    for name, diag, style, title in panels:
        spec = PlotSpec(width=560, height=420, title=title) if style == "barcode" else PlotSpec(title=title)
        (out / name).write_text(render(diag, style, spec), encoding="utf-8")


_COMMANDS = {
    "sample": _cmd_sample,
    "compute": _cmd_compute,
    "plot": _cmd_plot,
    "pipeline": _cmd_pipeline,
    "reproduce-figures": _cmd_reproduce,
}


def run(argv=None):
    """Run the CLI and return its exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _COMMANDS[args.command](args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except InvalidParameterError as exc:
        print(f"flatpersistence: invalid parameter: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"flatpersistence: parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        name = exc.filename if exc.filename is not None else ""
        print(f"flatpersistence: cannot access {name}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return 0


def main():
    sys.exit(run())
