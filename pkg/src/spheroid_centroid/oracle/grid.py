"""Brute-force area and centroid by latitude-longitude grid quadrature.

Independent of the strip formulae: every cell centre inside the polygon (even-odd
ray casting in the unwrapped lon/lat plane) contributes the exact ellipsoidal
area element N rho cos(phi) dlambda dphi at its surface position.
"""

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel

from ..core.errors import ResolutionError
from ..core.geodesy import (
    Ellipsoid,
    geodetic_to_cartesian,
    meridional_radius,
    project_to_ellipsoid,
)
from ..core.models import (
    Cartesian3,
    CentroidResult,
    EllipsoidalPolygon,
    GeodeticCoord,
    OracleDiagnostics,
)
from ..core.summation import CompensatedSum
from ..utils.log import get_logger

log = get_logger(__name__)

MIN_INTERIOR_CELLS = 100
_SPLIT_SLACK = 1e-9

FloatArray = npt.NDArray[np.float64]
BoolArray = npt.NDArray[np.bool_]


@dataclass(frozen=True, slots=True)
class GridSpec:
    """Regular cell grid over the polygon's bounding box, padded by one cell.

    Steps are the requested ones shrunk so that a whole number of cells spans
    the unpadded box exactly.
    """

    d_lambda: float
    d_phi: float
    lon_min: float
    lon_max: float
    lat_min: float
    lat_max: float
    cols: int
    rows: int

    def lon_centres(self) -> FloatArray:
        return self.lon_min + (np.arange(self.cols, dtype=np.float64) + 0.5) * self.d_lambda

    def lat_centres(self) -> FloatArray:
        return self.lat_min + (np.arange(self.rows, dtype=np.float64) + 0.5) * self.d_phi


def _fit_step(span: float, step: float) -> tuple[float, int]:
    n = max(1, math.ceil(span / step - _SPLIT_SLACK))
    return span / n, n


def make_grid(poly: EllipsoidalPolygon, d_lambda: float, d_phi: float | None = None) -> GridSpec:
    """Grid whose cells tile the polygon bounding box, with one padding cell per side."""
    if d_phi is None:
        d_phi = d_lambda
    if not (d_lambda > 0 and d_phi > 0):
        raise ResolutionError(f"grid steps must be positive, got {d_lambda!r}, {d_phi!r}")
    lon_lo, lon_hi, lat_lo, lat_hi = poly.bounds()
    step_lon, n_lon = _fit_step(lon_hi - lon_lo, d_lambda)
    step_lat, n_lat = _fit_step(lat_hi - lat_lo, d_phi)
    grid = GridSpec(
        d_lambda=step_lon,
        d_phi=step_lat,
        lon_min=lon_lo - step_lon,
        lon_max=lon_hi + step_lon,
        lat_min=lat_lo - step_lat,
        lat_max=lat_hi + step_lat,
        cols=n_lon + 2,
        rows=n_lat + 2,
    )
    log.debug("oracle_grid_built", rows=grid.rows, cols=grid.cols, d_lambda=step_lon, d_phi=step_lat)
    return grid


def point_in_polygon(poly: EllipsoidalPolygon, q: GeodeticCoord) -> bool:
    """Even-odd ray cast eastwards from ``q`` across every ring.

    Points within ~1e-12 rad of an edge may land on either side.
    """
    inside = False
    for ring in poly.rings:
        for p_i, p_j in ring.segments():
            xi, yi = p_i.lon, p_i.lat
            xj, yj = p_j.lon, p_j.lat
            if ((yi > q.lat) != (yj > q.lat)) and (
                q.lon < (xj - xi) * (q.lat - yi) / (yj - yi) + xi
            ):
                inside = not inside
    return inside


def grid_mask(poly: EllipsoidalPolygon, grid: GridSpec) -> BoolArray:
    """point_in_polygon evaluated at every cell centre, shape (rows, cols).

    Each edge toggles, in the rows it spans, the cells west of its crossing.
    """
    lat = grid.lat_centres()
    lon = grid.lon_centres()
    mask = np.zeros((grid.rows, grid.cols), dtype=np.bool_)
    for ring in poly.rings:
        for p_i, p_j in ring.segments():
            yi, yj = p_i.lat, p_j.lat
            if yi == yj:
                continue
            # rows with min(yi, yj) <= lat < max(yi, yj)
            r0 = int(np.searchsorted(lat, min(yi, yj), side="left"))
            r1 = int(np.searchsorted(lat, max(yi, yj), side="left"))
            if r0 == r1:
                continue
            xi, xj = p_i.lon, p_j.lon
            x_cross = (xj - xi) * (lat[r0:r1] - yi) / (yj - yi) + xi
            mask[r0:r1] ^= lon[np.newaxis, :] < x_cross[:, np.newaxis]
    return mask


def oracle_centroid(ell: Ellipsoid, poly: EllipsoidalPolygon, grid: GridSpec) -> CentroidResult:
    """Midpoint-rule area and centre of gravity over the grid cells inside ``poly``.

    Raises:
        ResolutionError: fewer than 100 cell centres fall inside the polygon.
    """
    mask = grid_mask(poly, grid)
    interior = int(mask.sum())
    if interior < MIN_INTERIOR_CELLS:
        log.error("oracle_grid_too_coarse", interior_cells=interior, rows=grid.rows, cols=grid.cols)
        raise ResolutionError(
            f"only {interior} grid cells fall inside the polygon (need {MIN_INTERIOR_CELLS}); "
            "use a smaller grid step"
        )

    lon = grid.lon_centres()
    weights = mask.astype(np.float64)
    counts = weights.sum(axis=1)
    cos_sums = weights @ np.cos(lon)
    sin_sums = weights @ np.sin(lon)
    lat = grid.lat_centres()

    cell = grid.d_lambda * grid.d_phi
    area = CompensatedSum()
    mx = CompensatedSum()
    my = CompensatedSum()
    mz = CompensatedSum()
    for r in range(grid.rows):
        if counts[r] == 0:
            continue
        phi = float(lat[r])
        # meridian point of the row: x is the parallel radius N cos(phi), z the height
        surface = geodetic_to_cartesian(ell, GeodeticCoord(lon=0.0, lat=phi))
        d_area = surface.x * meridional_radius(ell, phi) * cell
        area.add(d_area * float(counts[r]))
        mx.add(d_area * surface.x * float(cos_sums[r]))
        my.add(d_area * surface.x * float(sin_sums[r]))
        mz.add(d_area * surface.z * float(counts[r]))

    total = area.value
    g = Cartesian3(x=mx.value / total, y=my.value / total, z=mz.value / total)
    centre = project_to_ellipsoid(ell, g)
    log.info(
        "oracle_centroid_completed",
        area=total,
        interior_cells=interior,
        lon_deg=math.degrees(centre.lon),
        lat_deg=math.degrees(centre.lat),
    )
    return CentroidResult(
        area=total,
        signed_area=total,
        g_xyz=g,
        centre=centre,
        diagnostics=OracleDiagnostics(
            d_lambda=grid.d_lambda,
            d_phi=grid.d_phi,
            rows=grid.rows,
            cols=grid.cols,
            interior_cells=interior,
        ),
    )


class OracleComparison(BaseModel):
    """Engine versus oracle: where the centres land and how the areas differ."""

    oracle_centre: GeodeticCoord
    separation_m: float
    area_delta: float
    area_rel_delta: float


def compare_results(ell: Ellipsoid, engine: CentroidResult, oracle: CentroidResult) -> OracleComparison:
    """Straight-line distance between the two surface centres and the area gap."""
    separation = geodetic_to_cartesian(ell, engine.centre).distance_to(
        geodetic_to_cartesian(ell, oracle.centre)
    )
    delta = oracle.area - engine.area
    return OracleComparison(
        oracle_centre=oracle.centre,
        separation_m=separation,
        area_delta=delta,
        area_rel_delta=delta / engine.area,
    )
