"""Ring preparation: antimeridian unwrapping and densification."""

import math
from collections.abc import Sequence

from ..core.errors import PoleCrossingError
from ..core.models import CentroidConfig, GeodeticCoord, is_pole
from ..utils.log import get_logger

log = get_logger(__name__)

# Relative slack so that e.g. 0.1 / 0.01 never rounds up to 11 subsegments
_SPLIT_SLACK = 1e-9


def _wrap_step(d: float) -> float:
    """Longitude difference folded into (-pi, pi]."""
    r = math.remainder(d, 2 * math.pi)
    return math.pi if r <= -math.pi else r


def _step(prev: tuple[float, float], cur: tuple[float, float]) -> float:
    # Longitude is conventional at a pole: keep the file's own step there
    if is_pole(prev[1]) or is_pole(cur[1]):
        return cur[0] - prev[0]
    return _wrap_step(cur[0] - prev[0])


def unwrap_ring(
    raw: Sequence[tuple[float, float]], reference_lon: float | None = None
) -> list[GeodeticCoord]:
    """Unwrap raw (lon, lat) radian pairs so consecutive longitudes stay within pi.

    The first vertex is moved by whole turns to lie within pi of
    ``reference_lon`` (used to keep every ring of a polygon on one chart).

    Raises:
        PoleCrossingError: the ring winds around a pole.
    """
    if not raw:
        return []
    lon0, lat0 = raw[0]
    if reference_lon is not None:
        lon0 = reference_lon + _wrap_step(lon0 - reference_lon)
    out = [GeodeticCoord(lon=lon0, lat=lat0)]
    for prev, cur in zip(raw, raw[1:], strict=False):
        out.append(GeodeticCoord(lon=out[-1].lon + _step(prev, cur), lat=cur[1]))

    closing = out[-1].lon + _step(raw[-1], raw[0]) - out[0].lon
    if abs(closing) > math.pi:
        log.error("ring_encircles_pole", vertex_count=len(raw), winding_deg=math.degrees(closing))
        raise PoleCrossingError(
            "ring encircles a pole without passing through it; add the pole as explicit "
            "vertices (e.g. (180, 90), (-180, 90)) so the ring closes along the pole"
        )
    return out


def split_count(p: GeodeticCoord, q: GeodeticCoord, cfg: CentroidConfig) -> int:
    """Minimal number of equal subsegments meeting both densification bounds."""
    if is_pole(p.lat) and is_pole(q.lat):
        # Runs along the pole itself; contributes nothing at any resolution
        return 1
    by_phi = math.ceil(abs(q.lat - p.lat) / cfg.max_dphi - _SPLIT_SLACK)
    by_lambda = math.ceil(abs(q.lon - p.lon) / cfg.max_dlambda - _SPLIT_SLACK)
    return max(1, by_phi, by_lambda)


def densify_ring(ring: Sequence[GeodeticCoord], cfg: CentroidConfig) -> list[GeodeticCoord]:
    """Insert linearly interpolated (lon, lat) points so that every segment,
    the closing one included, satisfies ``max_dphi`` and ``max_dlambda``.

    Original vertices are kept bit-for-bit and in order.
    """
    out: list[GeodeticCoord] = []
    n_verts = len(ring)
    for i, p in enumerate(ring):
        q = ring[(i + 1) % n_verts]
        out.append(p)
        n = split_count(p, q, cfg)
        d_lon = q.lon - p.lon
        d_lat = q.lat - p.lat
        for k in range(1, n):
            t = k / n
            out.append(GeodeticCoord(lon=p.lon + d_lon * t, lat=p.lat + d_lat * t))
    return out
