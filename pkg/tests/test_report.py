import json
import math

import pytest

from spheroid_centroid.core.geodesy import Ellipsoid
from spheroid_centroid.core.models import CentroidConfig, EllipsoidalPolygon
from spheroid_centroid.engine.centroid import polygon_centroid
from spheroid_centroid.io_.report import (
    build_report,
    format_dms,
    format_lat,
    format_lon,
    parse_dms,
    render_json,
    render_text,
)
from spheroid_centroid.oracle.grid import compare_results, make_grid, oracle_centroid


def test_format_dms() -> None:
    assert format_lat(54 + 50 / 60 + 45 / 3600) == "54°50'45.00\" N"
    assert format_lon(-(25 + 18 / 60 + 23 / 3600)) == "25°18'23.00\" W"
    assert format_lat(0.0) == "0°00'00.00\" N"
    assert format_dms(12.5, "E", "W") == "12°30'00.00\" E"


def test_format_dms_carries_rounding() -> None:
    assert format_lat(59.9999999999) == "60°00'00.00\" N"
    assert format_lon(10 + 59 / 60 + 59.999 / 3600) == "11°00'00.00\" E"


def test_format_dms_tiny_negative_rounds_to_positive_hemisphere() -> None:
    assert format_lat(-1e-9) == "0°00'00.00\" N"
    assert format_lon(-1e-9) == "0°00'00.00\" E"
    assert format_lat(-0.0) == "0°00'00.00\" N"
    assert format_lat(-0.01 / 3600) == "0°00'00.01\" S"


def test_parse_dms_inverts_format() -> None:
    for value in (54.845833, -25.306389, 0.5, 179.999):
        assert parse_dms(format_lon(value)) == pytest.approx(value, abs=0.005 / 3600)
    assert parse_dms("54°50′45″ N") == pytest.approx(54 + 50 / 60 + 45 / 3600)
    with pytest.raises(ValueError, match="not a D"):
        parse_dms("54.8 N")


def test_report_json_and_text(sphere: Ellipsoid, quadrilateral: EllipsoidalPolygon) -> None:
    cfg = CentroidConfig()
    result = polygon_centroid(sphere, quadrilateral, cfg)
    report = build_report(sphere, result, cfg)
    doc = json.loads(render_json(report))

    assert doc["centre"]["lon_deg"] == pytest.approx(45.0, abs=1e-9)
    assert doc["centre"]["lon_dms"] == "45°00'00.00\" E"
    assert doc["area_m2"] == result.area
    assert doc["area_km2"] == result.area / 1e6
    assert doc["ellipsoid"]["name"] == "unit-sphere"
    assert doc["ellipsoid"]["inv_f"] is None
    assert doc["diagnostics"]["max_dphi_deg"] == pytest.approx(math.degrees(1e-3))
    assert doc["oracle"] is None
    assert list(doc) == sorted(doc)

    text = render_text(report)
    assert "CENTRE OF GRAVITY" in text
    assert repr(result.area) in text
    assert repr(doc["centre"]["lat_deg"]) in text
    assert "Oracle" not in text


def test_report_with_oracle_block(sphere: Ellipsoid, quadrilateral: EllipsoidalPolygon) -> None:
    cfg = CentroidConfig()
    result = polygon_centroid(sphere, quadrilateral, cfg)
    oracle = oracle_centroid(sphere, quadrilateral, make_grid(quadrilateral, 2e-3))
    report = build_report(sphere, result, cfg, oracle, compare_results(sphere, result, oracle))

    assert report.oracle is not None
    assert report.oracle.area_m2 == oracle.area
    assert report.oracle.interior_cells > 100
    assert "Oracle (grid quadrature)" in render_text(report)
    with pytest.raises(TypeError):
        build_report(sphere, oracle, cfg)
