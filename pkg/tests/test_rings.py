import math

import pytest

from spheroid_centroid.core.errors import PoleCrossingError, PolygonError
from spheroid_centroid.core.models import CentroidConfig, GeodeticCoord, Ring, RingRole
from spheroid_centroid.engine.rings import densify_ring, split_count, unwrap_ring


def _cfg(max_dphi: float, max_dlambda: float = 1.0) -> CentroidConfig:
    return CentroidConfig(max_dphi=max_dphi, max_dlambda=max_dlambda)


def test_split_count_by_latitude() -> None:
    p, q = GeodeticCoord(0.0, 0.0), GeodeticCoord(0.0, 0.1)
    assert split_count(p, q, _cfg(0.01)) == 10


def test_split_count_takes_the_larger_bound() -> None:
    p, q = GeodeticCoord(0.0, 0.0), GeodeticCoord(0.2, 0.05)
    assert split_count(p, q, _cfg(0.01, 0.02)) == 10


def test_split_count_along_the_pole_is_one() -> None:
    p, q = GeodeticCoord(-math.pi, math.pi / 2), GeodeticCoord(math.pi, math.pi / 2)
    assert split_count(p, q, _cfg(1e-3, 1e-3)) == 1


def test_densify_inserts_interior_points_and_keeps_vertices() -> None:
    ring = [GeodeticCoord(0.0, 0.0), GeodeticCoord(0.0, 0.1), GeodeticCoord(0.05, 0.05)]
    out = densify_ring(ring, _cfg(0.01, 0.01))
    assert out[0] is ring[0]
    assert out[10] is ring[1]
    assert out[1:10] == [GeodeticCoord(0.0, 0.1 * (k / 10)) for k in range(1, 10)]
    assert ring[2] in out
    for p, q in zip(out, [*out[1:], out[0]], strict=True):
        assert abs(q.lat - p.lat) <= 0.01 + 1e-15
        assert abs(q.lon - p.lon) <= 0.01 + 1e-15


def test_densify_leaves_short_segments_alone() -> None:
    ring = [GeodeticCoord(0.0, 0.0), GeodeticCoord(1e-4, 0.0), GeodeticCoord(0.0, 1e-4)]
    assert densify_ring(ring, _cfg(1e-3, 1e-3)) == ring


def test_unwrap_across_antimeridian() -> None:
    raw = [(math.radians(170), 0.1), (math.radians(-170), 0.1), (math.radians(-170), 0.2), (math.radians(170), 0.2)]
    out = unwrap_ring(raw)
    assert [round(math.degrees(v.lon), 9) for v in out] == [170.0, 190.0, 190.0, 170.0]


def test_unwrap_aligns_to_reference_longitude() -> None:
    raw = [(math.radians(-175), 0.0), (math.radians(-174), 0.0), (math.radians(-174), 0.1)]
    out = unwrap_ring(raw, reference_lon=math.radians(179))
    assert math.degrees(out[0].lon) == pytest.approx(185.0)


def test_unwrap_keeps_step_at_pole() -> None:
    half = math.pi / 2
    raw = [(-math.pi, 1.0), (0.0, 1.0), (math.pi, 1.0), (math.pi, half), (-math.pi, half)]
    out = unwrap_ring(raw)
    assert out[3].lon == pytest.approx(math.pi)
    assert out[4].lon == pytest.approx(-math.pi)


def test_unwrap_rejects_ring_around_pole() -> None:
    raw = [(math.radians(lon), 1.2) for lon in (0, 90, 180, -90)]
    with pytest.raises(PoleCrossingError, match="pole"):
        unwrap_ring(raw)


def test_ring_needs_three_distinct_vertices() -> None:
    with pytest.raises(PolygonError, match="3 distinct"):
        Ring((GeodeticCoord(0.0, 0.0), GeodeticCoord(0.1, 0.0)))
    with pytest.raises(PolygonError, match="3 distinct"):
        Ring((GeodeticCoord(0.0, 0.0), GeodeticCoord(0.1, 0.0), GeodeticCoord(0.0, 0.0)))


def test_ring_rejects_out_of_range_latitude() -> None:
    with pytest.raises(PolygonError, match="outside"):
        Ring((GeodeticCoord(0.0, 0.0), GeodeticCoord(0.1, 0.0), GeodeticCoord(0.0, 1.6)))


def test_ring_rejects_wrapped_vertices() -> None:
    verts = (GeodeticCoord(3.0, 0.0), GeodeticCoord(-3.0, 0.0), GeodeticCoord(-3.0, 0.1), GeodeticCoord(3.0, 0.1))
    with pytest.raises(PolygonError, match="unwrap"):
        Ring(verts)


def test_ring_reversed_keeps_role() -> None:
    ring = Ring((GeodeticCoord(0.0, 0.0), GeodeticCoord(0.1, 0.0), GeodeticCoord(0.0, 0.1)), RingRole.HOLE)
    rev = ring.reversed()
    assert rev.role is RingRole.HOLE
    assert rev.vertices == tuple(reversed(ring.vertices))
