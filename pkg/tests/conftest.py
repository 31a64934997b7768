import math
from collections.abc import Callable, Sequence

import numpy as np
import pytest

from spheroid_centroid.core.geodesy import Ellipsoid, get_ellipsoid
from spheroid_centroid.core.models import EllipsoidalPolygon, GeodeticCoord, Ring, RingRole

DegreeRing = Sequence[tuple[float, float]]
PolygonFactory = Callable[..., EllipsoidalPolygon]


def _ring(coords: DegreeRing, role: RingRole = RingRole.OUTER) -> Ring:
    return Ring(
        tuple(GeodeticCoord(lon=math.radians(lon), lat=math.radians(lat)) for lon, lat in coords),
        role,
    )


@pytest.fixture
def sphere() -> Ellipsoid:
    return get_ellipsoid("unit-sphere")


@pytest.fixture
def hayford() -> Ellipsoid:
    return get_ellipsoid("hayford")


@pytest.fixture
def polygon_from_degrees() -> PolygonFactory:
    """Build a polygon from an outer ring and optional holes given in degrees."""

    def build(outer: DegreeRing, *holes: DegreeRing) -> EllipsoidalPolygon:
        return EllipsoidalPolygon(
            (_ring(outer), *(_ring(h, RingRole.HOLE) for h in holes))
        )

    return build


@pytest.fixture
def quadrilateral(polygon_from_degrees: PolygonFactory) -> EllipsoidalPolygon:
    """lon 0..90, lat 30..60, counter-clockwise."""
    return polygon_from_degrees([(0, 30), (90, 30), (90, 60), (0, 60)])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20040701)


@pytest.fixture
def star_polygon() -> Callable[[np.random.Generator], EllipsoidalPolygon]:
    """Random star-shaped polygon: 8-64 vertices spanning at most 30 degrees."""

    def build(rng: np.random.Generator) -> EllipsoidalPolygon:
        n = int(rng.integers(8, 65))
        extent = float(rng.uniform(20.0, 30.0))
        c_lon = float(rng.uniform(-20.0, 40.0))
        c_lat = float(rng.uniform(-50.0, 50.0))
        angles = np.sort(rng.uniform(0.0, 2 * np.pi, n))
        radii = rng.uniform(0.35, 0.5, n) * extent
        coords = [
            (c_lon + r * math.cos(t), c_lat + r * math.sin(t))
            for r, t in zip(radii, angles, strict=True)
        ]
        return EllipsoidalPolygon((_ring(coords),))

    return build
