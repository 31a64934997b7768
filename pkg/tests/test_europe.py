"""Continental check against a user-supplied physical-Europe boundary.

Drop the boundary (GeoJSON, decimal degrees) at tests/data/europe.geojson to run it.
"""

import math
from pathlib import Path

import pytest

from spheroid_centroid.core.geodesy import geodetic_to_cartesian, get_ellipsoid
from spheroid_centroid.core.models import GeodeticCoord
from spheroid_centroid.engine.centroid import polygon_centroid
from spheroid_centroid.io_.load import load_polygon
from spheroid_centroid.io_.report import parse_dms
from spheroid_centroid.oracle.grid import compare_results, make_grid, oracle_centroid

EUROPE = Path(__file__).parent / "data" / "europe.geojson"

pytestmark = [
    pytest.mark.integration,
    pytest.mark.skipif(not EUROPE.exists(), reason="tests/data/europe.geojson not supplied"),
]

VILNIUS_CENTRE = GeodeticCoord(
    lon=math.radians(parse_dms("25°18'23\" E")),
    lat=math.radians(parse_dms("54°50'45\" N")),
)


def test_centre_of_europe_near_vilnius() -> None:
    ell = get_ellipsoid("hayford")
    poly = load_polygon(EUROPE)
    result = polygon_centroid(ell, poly)

    target = geodetic_to_cartesian(ell, VILNIUS_CENTRE)
    assert geodetic_to_cartesian(ell, result.centre).distance_to(target) < 10_000.0

    oracle = oracle_centroid(ell, poly, make_grid(poly, 5e-4))
    cmp = compare_results(ell, result, oracle)
    assert abs(cmp.area_rel_delta) < 1e-3
    assert cmp.separation_m < 5_000.0
