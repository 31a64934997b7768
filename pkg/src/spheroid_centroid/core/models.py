import math
from collections.abc import Iterator
from dataclasses import dataclass
from enum import StrEnum
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat

from .errors import PoleCrossingError, PolygonError

HALF_PI = math.pi / 2
TWO_PI = 2 * math.pi
# Angular slack for comparisons against pi, pi/2 and 2*pi
ANGLE_EPS = 1e-12


@dataclass(frozen=True, slots=True)
class GeodeticCoord:
    """Surface position; longitude and latitude in radians."""

    lon: float
    lat: float


@dataclass(frozen=True, slots=True)
class Cartesian3:
    """Earth-centred Cartesian position in metres, z along the rotation axis."""

    x: float
    y: float
    z: float

    def norm(self) -> float:
        return math.hypot(self.x, self.y, self.z)

    def distance_to(self, other: "Cartesian3") -> float:
        return math.hypot(self.x - other.x, self.y - other.y, self.z - other.z)


@dataclass(frozen=True, slots=True)
class StripContribution:
    """Signed area (m²) and centre of gravity (m) of one elementary strip."""

    s_i: float
    x_i: float
    y_i: float
    z_i: float


def is_pole(lat: float) -> bool:
    return abs(abs(lat) - HALF_PI) <= ANGLE_EPS


class RingRole(StrEnum):
    OUTER = "outer"
    HOLE = "hole"


@dataclass(frozen=True, slots=True)
class Ring:
    """Implicitly closed sequence of unwrapped vertices.

    Consecutive longitudes differ by at most pi, except along segments touching a
    pole vertex where longitude is conventional.
    """

    vertices: tuple[GeodeticCoord, ...]
    role: RingRole = RingRole.OUTER

    def __post_init__(self) -> None:
        distinct = len({(v.lon, v.lat) for v in self.vertices})
        if distinct < 3:
            raise PolygonError(f"{self.role} ring needs at least 3 distinct vertices, got {distinct}")
        for v in self.vertices:
            if not (math.isfinite(v.lon) and math.isfinite(v.lat)):
                raise PolygonError("ring vertices must be finite")
            if abs(v.lat) > HALF_PI + ANGLE_EPS:
                raise PolygonError(f"latitude {math.degrees(v.lat):.9f}° is outside [-90°, 90°]")

        lons = [v.lon for v in self.vertices]
        if max(lons) - min(lons) > TWO_PI + ANGLE_EPS:
            raise PolygonError("ring spans more than a full turn of longitude")

        n = len(self.vertices)
        for i, (p, q) in enumerate(self.segments()):
            if is_pole(p.lat) or is_pole(q.lat):
                continue
            if abs(q.lon - p.lon) > math.pi + ANGLE_EPS:
                if i == n - 1:
                    raise PoleCrossingError(
                        "ring encircles a pole; add the pole as explicit vertices "
                        "(e.g. (180, -90), (-180, -90)) to close it along the pole"
                    )
                raise PolygonError(
                    f"vertices {i} and {i + 1} differ by more than 180° of longitude; "
                    "unwrap the ring before building the polygon"
                )

    def __len__(self) -> int:
        return len(self.vertices)

    def segments(self) -> Iterator[tuple[GeodeticCoord, GeodeticCoord]]:
        """Consecutive vertex pairs, including the closing one."""
        verts = self.vertices
        for i in range(len(verts)):
            yield verts[i], verts[(i + 1) % len(verts)]

    def reversed(self) -> "Ring":
        return Ring(tuple(reversed(self.vertices)), self.role)


@dataclass(frozen=True, slots=True)
class EllipsoidalPolygon:
    """One or more outer rings, each optionally followed by holes."""

    rings: tuple[Ring, ...]

    def __post_init__(self) -> None:
        if not any(r.role is RingRole.OUTER for r in self.rings):
            raise PolygonError("polygon needs at least one outer ring")

    @property
    def outer_rings(self) -> tuple[Ring, ...]:
        return tuple(r for r in self.rings if r.role is RingRole.OUTER)

    @property
    def holes(self) -> tuple[Ring, ...]:
        return tuple(r for r in self.rings if r.role is RingRole.HOLE)

    @property
    def vertex_count(self) -> int:
        return sum(len(r) for r in self.rings)

    def bounds(self) -> tuple[float, float, float, float]:
        """(lon_min, lon_max, lat_min, lat_max) over every vertex."""
        lons = [v.lon for r in self.rings for v in r.vertices]
        lats = [v.lat for r in self.rings for v in r.vertices]
        return min(lons), max(lons), min(lats), max(lats)


class CentroidConfig(BaseModel):
    """Engine settings, radians throughout. ``lambda0=None`` selects auto mode."""

    model_config = ConfigDict(frozen=True)

    lambda0: float | None = None
    max_dphi: PositiveFloat = 1e-3
    max_dlambda: PositiveFloat = 1e-3
    # Degeneracy floor on |sum S_i|, m²
    min_area: float = Field(default=1e-6, ge=0.0)


class EngineDiagnostics(BaseModel):
    method: Literal["strips"] = "strips"
    strip_count: int
    vertex_count: int
    densified_vertex_count: int
    lambda0: float
    lambda0_auto: bool
    sum_sign: int
    ring_signed_areas: list[float]
    reversed_rings: int


class OracleDiagnostics(BaseModel):
    method: Literal["grid"] = "grid"
    d_lambda: float
    d_phi: float
    rows: int
    cols: int
    interior_cells: int


class CentroidResult(BaseModel):
    """Area, 3-D centre of gravity and its back-projection onto the spheroid."""

    model_config = ConfigDict(frozen=True)

    area: float
    signed_area: float
    g_xyz: Cartesian3
    centre: GeodeticCoord
    diagnostics: Annotated[EngineDiagnostics | OracleDiagnostics, Field(discriminator="method")]
