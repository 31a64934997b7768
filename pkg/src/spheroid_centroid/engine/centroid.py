"""Strip-decomposition centroid of an ellipsoidal polygon.

Pipeline: orient rings (outer positive, holes negative), densify, sum the strip
contributions of every ring into one weighted mean, back-project the 3-D centre
of gravity onto the spheroid.
"""

import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

from ..core.errors import DegeneratePolygonError
from ..core.geodesy import Ellipsoid, project_to_ellipsoid
from ..core.models import (
    Cartesian3,
    CentroidConfig,
    CentroidResult,
    EllipsoidalPolygon,
    EngineDiagnostics,
    GeodeticCoord,
    Ring,
    RingRole,
    StripContribution,
)
from ..core.summation import CompensatedSum
from ..utils.log import get_logger
from .rings import densify_ring
from .strips import strip_contribution

log = get_logger(__name__)

DEFAULT_CONFIG = CentroidConfig()


def iter_ring_strips(
    ell: Ellipsoid, vertices: Sequence[GeodeticCoord], lambda0: float
) -> Iterator[StripContribution]:
    """Strip contributions of a closed ring, in segment order."""
    n = len(vertices)
    for i in range(n):
        yield strip_contribution(ell, vertices[i], vertices[(i + 1) % n], lambda0)


def ring_signed_area(ell: Ellipsoid, vertices: Sequence[GeodeticCoord], lambda0: float) -> float:
    """Sum of S_i over the ring's own segments; positive for counter-clockwise
    traversal in the (lon, lat) plane."""
    acc = CompensatedSum()
    for strip in iter_ring_strips(ell, vertices, lambda0):
        acc.add(strip.s_i)
    return acc.value


def auto_lambda0(poly: EllipsoidalPolygon) -> float:
    """Mean longitude of the outer-ring vertices."""
    acc = CompensatedSum()
    count = 0
    for ring in poly.outer_rings:
        for v in ring.vertices:
            acc.add(v.lon)
            count += 1
    return acc.value / count


@dataclass(frozen=True, slots=True)
class PreparedPolygon:
    """Oriented, densified rings ready for strip evaluation."""

    lambda0: float
    lambda0_auto: bool
    rings: tuple[tuple[GeodeticCoord, ...], ...]
    signed_areas: tuple[float, ...]
    reversed_rings: int


def prepare_polygon(
    ell: Ellipsoid, poly: EllipsoidalPolygon, cfg: CentroidConfig = DEFAULT_CONFIG
) -> PreparedPolygon:
    """Resolve lambda0, normalise ring orientation and densify every ring.

    Raises:
        DegeneratePolygonError: a ring has zero signed area.
    """
    lambda0 = auto_lambda0(poly) if cfg.lambda0 is None else cfg.lambda0

    oriented: list[Ring] = []
    signed: list[float] = []
    reversed_count = 0
    for index, ring in enumerate(poly.rings):
        area = ring_signed_area(ell, ring.vertices, lambda0)
        if area == 0.0:
            log.error("ring_zero_area", ring_index=index, role=str(ring.role))
            raise DegeneratePolygonError(f"{ring.role} ring #{index} has zero signed area")
        wanted = 1.0 if ring.role is RingRole.OUTER else -1.0
        if math.copysign(1.0, area) != wanted:
            ring = ring.reversed()
            area = -area
            reversed_count += 1
            log.debug("ring_reoriented", ring_index=index, role=str(ring.role))
        oriented.append(ring)
        signed.append(area)

    densified = tuple(tuple(densify_ring(r.vertices, cfg)) for r in oriented)
    return PreparedPolygon(
        lambda0=lambda0,
        lambda0_auto=cfg.lambda0 is None,
        rings=densified,
        signed_areas=tuple(signed),
        reversed_rings=reversed_count,
    )


def iter_prepared_strips(ell: Ellipsoid, prepared: PreparedPolygon) -> Iterator[StripContribution]:
    for ring in prepared.rings:
        yield from iter_ring_strips(ell, ring, prepared.lambda0)


def iter_strips(
    ell: Ellipsoid, poly: EllipsoidalPolygon, cfg: CentroidConfig = DEFAULT_CONFIG
) -> Iterator[StripContribution]:
    """Every strip contribution of the polygon, ring by ring, in segment order."""
    yield from iter_prepared_strips(ell, prepare_polygon(ell, poly, cfg))


def accumulate(
    strips: Iterable[StripContribution], min_area: float = DEFAULT_CONFIG.min_area
) -> tuple[float, Cartesian3]:
    """Total signed area and area-weighted mean of the strip centroids.

    Sums are compensated and taken in input order, so results are bit-reproducible.

    Raises:
        DegeneratePolygonError: |sum S_i| is below ``min_area`` (or zero).
    """
    s = CompensatedSum()
    sx = CompensatedSum()
    sy = CompensatedSum()
    sz = CompensatedSum()
    for strip in strips:
        s.add(strip.s_i)
        sx.add(strip.s_i * strip.x_i)
        sy.add(strip.s_i * strip.y_i)
        sz.add(strip.s_i * strip.z_i)

    total = s.value
    if total == 0.0 or abs(total) < min_area:
        log.error("degenerate_polygon", signed_area=total, min_area=min_area)
        raise DegeneratePolygonError(
            f"signed area {total!r} m² is below the degeneracy floor {min_area!r} m²"
        )
    return total, Cartesian3(x=sx.value / total, y=sy.value / total, z=sz.value / total)


def polygon_centroid(
    ell: Ellipsoid, poly: EllipsoidalPolygon, cfg: CentroidConfig = DEFAULT_CONFIG
) -> CentroidResult:
    """Area and conventional centre of gravity of ``poly`` on ``ell``."""
    log.info(
        "polygon_centroid_started",
        ellipsoid=ell.label(),
        rings=len(poly.rings),
        vertices=poly.vertex_count,
        max_dphi=cfg.max_dphi,
        max_dlambda=cfg.max_dlambda,
    )
    prepared = prepare_polygon(ell, poly, cfg)

    strip_count = 0

    def counted() -> Iterator[StripContribution]:
        nonlocal strip_count
        for strip in iter_prepared_strips(ell, prepared):
            strip_count += 1
            yield strip

    signed_area, g = accumulate(counted(), min_area=cfg.min_area)
    centre = project_to_ellipsoid(ell, g)

    diagnostics = EngineDiagnostics(
        strip_count=strip_count,
        vertex_count=poly.vertex_count,
        densified_vertex_count=sum(len(r) for r in prepared.rings),
        lambda0=prepared.lambda0,
        lambda0_auto=prepared.lambda0_auto,
        sum_sign=1 if signed_area > 0 else -1,
        ring_signed_areas=list(prepared.signed_areas),
        reversed_rings=prepared.reversed_rings,
    )
    log.info(
        "polygon_centroid_completed",
        area=abs(signed_area),
        lon_deg=math.degrees(centre.lon),
        lat_deg=math.degrees(centre.lat),
        strips=strip_count,
    )
    return CentroidResult(
        area=abs(signed_area),
        signed_area=signed_area,
        g_xyz=g,
        centre=centre,
        diagnostics=diagnostics,
    )
