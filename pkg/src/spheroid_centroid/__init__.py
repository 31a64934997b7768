"""Area and conventional centre of gravity of polygons on an oblate spheroid."""

from .core.geodesy import Ellipsoid, get_ellipsoid, make_ellipsoid
from .core.models import (
    CentroidConfig,
    CentroidResult,
    EllipsoidalPolygon,
    GeodeticCoord,
    Ring,
    RingRole,
)
from .engine.centroid import polygon_centroid
from .io_.load import load_polygon, parse_polygon_file
from .oracle.grid import make_grid, oracle_centroid

__version__ = "0.1.0"

__all__ = [
    "CentroidConfig",
    "CentroidResult",
    "Ellipsoid",
    "EllipsoidalPolygon",
    "GeodeticCoord",
    "Ring",
    "RingRole",
    "get_ellipsoid",
    "load_polygon",
    "make_ellipsoid",
    "make_grid",
    "oracle_centroid",
    "parse_polygon_file",
    "polygon_centroid",
]
