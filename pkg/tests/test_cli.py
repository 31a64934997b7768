import json
from pathlib import Path

import pandas as pd
import pytest
from typer.testing import CliRunner

from spheroid_centroid.cli import app, run_cli

runner = CliRunner()

QUAD = {
    "type": "Feature",
    "properties": {"name": "quad"},
    "geometry": {
        "type": "Polygon",
        "coordinates": [[[0, 30], [90, 30], [90, 60], [0, 60], [0, 30]]],
    },
}


@pytest.fixture
def quad_file(tmp_path: Path) -> Path:
    f = tmp_path / "quad.geojson"
    f.write_text(json.dumps(QUAD), encoding="utf-8")
    return f


def _json(args: list[str]) -> dict[str, object]:
    result = runner.invoke(app, ["--quiet", "compute", *args, "--format", "json"])
    assert result.exit_code == 0, result.output
    doc: dict[str, object] = json.loads(result.stdout)
    return doc


def test_compute_unit_sphere_quadrilateral(quad_file: Path) -> None:
    doc = _json([str(quad_file), "--ellipsoid", "unit-sphere"])
    centre = doc["centre"]
    assert isinstance(centre, dict)
    assert centre["lon_deg"] == pytest.approx(45.0, abs=1e-6)
    assert doc["area_m2"] == pytest.approx(0.574917, abs=1e-6)
    assert doc["oracle"] is None


def test_compute_text_report(quad_file: Path) -> None:
    result = runner.invoke(app, ["--quiet", "compute", str(quad_file), "--ellipsoid", "unit-sphere"])
    assert result.exit_code == 0
    assert "CENTRE OF GRAVITY" in result.stdout
    assert "45°00'00.00\" E" in result.stdout


def test_compute_with_oracle(quad_file: Path) -> None:
    doc = _json([str(quad_file), "--ellipsoid", "unit-sphere", "--oracle", "--grid-step", "0.1"])
    oracle = doc["oracle"]
    assert isinstance(oracle, dict)
    assert abs(oracle["area_rel_delta"]) < 1e-4
    assert oracle["separation_m"] < 1e-4


def test_compute_custom_ellipsoid_and_lambda0(quad_file: Path) -> None:
    doc = _json([str(quad_file), "--a", "6378137", "--inv-f", "298.257223563", "--lambda0", "25"])
    ellipsoid = doc["ellipsoid"]
    diagnostics = doc["diagnostics"]
    assert isinstance(ellipsoid, dict)
    assert isinstance(diagnostics, dict)
    assert ellipsoid["name"].startswith("custom(")
    assert ellipsoid["a"] == 6378137.0
    assert diagnostics["lambda0_deg"] == pytest.approx(25.0)
    assert diagnostics["lambda0_auto"] is False


def test_compute_from_stdin_wkt() -> None:
    result = runner.invoke(
        app,
        ["--quiet", "compute", "-", "--ellipsoid", "unit-sphere", "--format", "json"],
        input="POLYGON ((0 30, 90 30, 90 60, 0 60, 0 30))",
    )
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["area_m2"] == pytest.approx(0.574917, abs=1e-6)


def test_compute_writes_geojson_and_strips(quad_file: Path, tmp_path: Path) -> None:
    centre = tmp_path / "centre.geojson"
    strips = tmp_path / "strips.csv"
    _json([str(quad_file), "--emit-geojson", str(centre), "--export-strips", str(strips), "--max-dphi", "1"])
    fc = json.loads(centre.read_text(encoding="utf-8"))
    assert [f["properties"]["role"] for f in fc["features"]] == ["polygon", "centre"]
    assert len(pd.read_csv(strips)) > 4


def test_missing_file_exits_2(tmp_path: Path) -> None:
    result = runner.invoke(app, ["--quiet", "compute", str(tmp_path / "missing.geojson")])
    assert result.exit_code == 2
    assert "Error:" in result.output


def test_malformed_input_exits_2(tmp_path: Path) -> None:
    f = tmp_path / "bad.geojson"
    f.write_text('{"type": "Polygon", "coordinates": [[[0, 0], [1, 0]]', encoding="utf-8")
    result = runner.invoke(app, ["--quiet", "compute", str(f)])
    assert result.exit_code == 2
    assert "line 1" in result.output


def test_degenerate_polygon_exits_1(tmp_path: Path) -> None:
    f = tmp_path / "tiny.wkt"
    f.write_text("POLYGON ((10 10, 10.00000001 10, 10 10.00000001, 10 10))", encoding="utf-8")
    result = runner.invoke(app, ["--quiet", "compute", str(f), "--ellipsoid", "unit-sphere"])
    assert result.exit_code == 1
    assert "Error:" in result.output


@pytest.mark.parametrize(
    "args",
    [
        ["--ellipsoid", "clarke"],
        ["--inv-f", "0.5"],
        ["--lambda0", "east"],
        ["--max-dphi", "0"],
        ["--format", "xml"],
        ["--oracle", "--grid-step", "10"],
    ],
)
def test_bad_options_exit_2(quad_file: Path, args: list[str]) -> None:
    result = runner.invoke(app, ["--quiet", "compute", str(quad_file), *args])
    assert result.exit_code == 2, result.output
    assert "Error" in result.output


def test_batch_table(tmp_path: Path) -> None:
    second = json.loads(json.dumps(QUAD))
    second["properties"]["name"] = "east"
    second["geometry"]["coordinates"][0] = [[100, 0], [110, 0], [110, 10], [100, 10], [100, 0]]
    f = tmp_path / "areas.geojson"
    f.write_text(json.dumps({"type": "FeatureCollection", "features": [QUAD, second]}), encoding="utf-8")

    result = runner.invoke(app, ["--quiet", "batch", str(f)])
    assert result.exit_code == 0, result.output
    assert "quad" in result.stdout
    assert "east" in result.stdout

    out = tmp_path / "centres.xlsx"
    result = runner.invoke(app, ["--quiet", "batch", str(f), "--output", str(out)])
    assert result.exit_code == 0, result.output
    df = pd.read_excel(out)
    assert list(df["name"]) == ["quad", "east"]
    assert df.loc[1, "lon_deg"] == pytest.approx(105.0, abs=0.01)


def test_ellipsoids_lists_presets() -> None:
    result = runner.invoke(app, ["--quiet", "ellipsoids"])
    assert result.exit_code == 0
    for name in ("hayford", "wgs84", "grs80", "unit-sphere"):
        assert name in result.stdout
    assert "6378388.0" in result.stdout


def test_log_file_is_json_lines(quad_file: Path, tmp_path: Path) -> None:
    log_file = tmp_path / "logs" / "run.jsonl"
    result = runner.invoke(app, ["--quiet", "--log-file", str(log_file), "compute", str(quad_file)])
    assert result.exit_code == 0
    events = [json.loads(line)["event"] for line in log_file.read_text(encoding="utf-8").splitlines()]
    assert "polygon_centroid_completed" in events


def test_run_cli_returns_exit_codes(quad_file: Path, tmp_path: Path) -> None:
    assert run_cli(["--quiet", "compute", str(quad_file), "--format", "json"]) == 0
    assert run_cli(["--quiet", "compute", str(tmp_path / "missing.wkt")]) == 2
    assert run_cli(["--quiet", "compute"]) == 2
