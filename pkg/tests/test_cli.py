import json
import subprocess
import sys

import pytest

from flatpersistence.cli import run
from flatpersistence.persistence import read_diagram

import svgcheck


def test_sample_compute_plot(tmp_path):
    pts, diag, fig = tmp_path / "pts.csv", tmp_path / "diag.csv", tmp_path / "fig.svg"
    assert run(["sample", "--shape", "circle", "--n", "100", "--noise-sd", "0.05", "--seed", "42", "-o", str(pts)]) == 0
    assert run(["compute", "--max-hom-dim", "1", "-i", str(pts), "-o", str(diag)]) == 0
    assert run(["plot", "--style", "flat", "-i", str(diag), "-o", str(fig)]) == 0
    assert len(pts.read_text().splitlines()) == 100
    d = read_diagram(diag)
    root = svgcheck.parse(fig.read_text())
    assert len(svgcheck.markers(root)) == sum(not f.is_essential for f in d.features)


def test_missing_input_exit_2(tmp_path, capsys):
    missing = tmp_path / "missing.csv"
    assert run(["compute", "-i", str(missing), "-o", str(tmp_path / "d.csv")]) == 2
    err = capsys.readouterr().err
    assert "missing.csv" in err and len(err.strip().splitlines()) == 1


def test_malformed_csv_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("0,0\n1,0,0\n")
    assert run(["compute", "-i", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "bad.csv" in err and "line 2" in err


@pytest.mark.parametrize("argv", [
    ["compute", "-i", "x.csv", "--bogus"],
    ["frobnicate"],
    [],
    ["sample", "--shape", "torus"],
    ["sample", "--shape", "circle", "--radius", "-1"],
    ["compute", "-i", "x.csv", "--threshold", "-2"],
])
def test_usage_errors_exit_1(argv, capsys):
    assert run(argv) == 1
    assert capsys.readouterr().out == ""


def test_sample_to_stdout(capsys):
    assert run(["sample", "--shape", "sphere", "--n", "3", "--seed", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3 and all(len(l.split(",")) == 3 for l in lines)


def test_compute_json_and_flat_output(tmp_path, capsys):
    pts = tmp_path / "p.csv"
    pts.write_text("0,0\n1,0\n1,1\n0,1\n")
    assert run(["compute", "-i", str(pts), "--json", "--flat-output", str(tmp_path / "f.csv")]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["n_points"] == 4 and len(payload["features"]) == 5
    assert (tmp_path / "f.csv").read_text().startswith("dimension,birth,persistence\n")
    assert run(["compute", "-i", str(pts), "-o", str(tmp_path / "d.json")]) == 0
    assert json.loads((tmp_path / "d.json").read_text())["max_scale"] > 1.41


def test_pipeline_equals_composition(tmp_path):
    common = ["--shape", "circle", "--n", "40", "--noise-sd", "0.1", "--seed", "5"]
    pts, diag = tmp_path / "p.csv", tmp_path / "d.csv"
    for style in ("barcode", "diagram", "flat"):
        a, b = tmp_path / f"a_{style}.svg", tmp_path / f"b_{style}.svg"
        assert run(["sample", *common, "-o", str(pts)]) == 0
        assert run(["compute", "--max-hom-dim", "1", "-i", str(pts), "-o", str(diag)]) == 0
        assert run(["plot", "--style", style, "-i", str(diag), "-o", str(a)]) == 0
        assert run(["pipeline", *common, "--max-hom-dim", "1", "--style", style, "-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()


def test_determinism(tmp_path):
    argv = ["pipeline", "--shape", "sphere", "--n", "25", "--seed", "7", "--style", "diagram"]
    assert run([*argv, "-o", str(tmp_path / "1.svg"), "--diagram-output", str(tmp_path / "1.csv")]) == 0
    assert run([*argv, "-o", str(tmp_path / "2.svg"), "--diagram-output", str(tmp_path / "2.csv")]) == 0
    assert (tmp_path / "1.svg").read_bytes() == (tmp_path / "2.svg").read_bytes()
    assert (tmp_path / "1.csv").read_bytes() == (tmp_path / "2.csv").read_bytes()
    # 3-D input defaults to degree 2
    assert any(l.startswith("2,") for l in (tmp_path / "1.csv").read_text().splitlines())


@pytest.mark.slow
def test_sphere_pipeline_flat_figure(tmp_path):
    out = tmp_path / "fig2c.svg"
    argv = ["pipeline", "--shape", "sphere", "--n", "100", "--seed", "7", "--max-hom-dim", "2",
            "--style", "flat", "-o", str(out)]
    assert run(argv) == 0
    root = svgcheck.parse(out.read_text())
    h2 = [m for m in svgcheck.markers(root) if m.get("data-dimension") == "2"]
    assert h2
    # the dominant 2-cycle is the highest marker of the figure
    top = min(svgcheck.markers(root), key=lambda m: float(m.get("data-cy")))
    assert top.get("data-dimension") == "2"


def test_reproduce_figures_small(tmp_path, capsys):
    assert run(["reproduce-figures", "-d", str(tmp_path), "--n", "20"]) == 0
    svgs = sorted(p.name for p in tmp_path.glob("*.svg"))
    assert len(svgs) == 6
    assert "not the samples" in capsys.readouterr().err
    for name in svgs:
        svgcheck.parse((tmp_path / name).read_text())


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "flatpersistence", "sample", "--shape", "circle", "--n", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and len(proc.stdout.splitlines()) == 2
