"""Reference spheroid, radii of curvature and geodetic/Cartesian conversions.

Angles are radians throughout; degrees only exist at the I/O boundary.
"""

import math

from pydantic import BaseModel, ConfigDict, model_validator

from ..utils.log import get_logger
from .errors import EllipsoidError, ProjectionError
from .models import Cartesian3, GeodeticCoord

log = get_logger(__name__)

# name -> (equatorial semi-axis in metres, inverse flattening); inf means a sphere
ELLIPSOID_PRESETS: dict[str, tuple[float, float]] = {
    # International ellipsoid of 1924 (Hayford)
    "hayford": (6378388.0, 297.0),
    "wgs84": (6378137.0, 298.257223563),
    "grs80": (6378137.0, 298.257222101),
    "unit-sphere": (1.0, math.inf),
}

PROJECTION_TOLERANCE = 1e-13
PROJECTION_MAX_ITERATIONS = 20
# Points closer than this fraction of a to the z-axis have no defined longitude
AXIS_GUARD = 1e-9


class Ellipsoid(BaseModel):
    """Oblate spheroid of semi-axes a >= b > 0 (metres)."""

    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    f: float
    e2: float
    name: str | None = None

    @model_validator(mode="after")
    def _check_axes(self) -> "Ellipsoid":
        if not (math.isfinite(self.a) and self.a > 0):
            raise EllipsoidError(f"equatorial semi-axis must be positive, got {self.a}")
        if not 0 <= self.b <= self.a:
            raise EllipsoidError(f"polar semi-axis must lie in [0, a], got b={self.b}")
        if not math.isclose(self.f, (self.a - self.b) / self.a, rel_tol=1e-12, abs_tol=1e-15):
            raise EllipsoidError("flattening is inconsistent with a and b")
        e2_axes = (self.a - self.b) * (self.a + self.b) / (self.a * self.a)
        if not math.isclose(self.e2, e2_axes, rel_tol=1e-12, abs_tol=1e-15):
            raise EllipsoidError("e2 is inconsistent with a and b")
        return self

    @property
    def inv_f(self) -> float:
        return math.inf if self.f == 0 else 1.0 / self.f

    @property
    def is_sphere(self) -> bool:
        return self.e2 == 0.0

    def label(self) -> str:
        return self.name or f"custom(a={self.a!r}, 1/f={self.inv_f!r})"


def make_ellipsoid(a: float, inv_f: float, name: str | None = None) -> Ellipsoid:
    """Build an ellipsoid from its equatorial semi-axis and inverse flattening.

    ``inv_f = math.inf`` is the sphere sentinel (zero flattening).
    """
    if not (math.isfinite(a) and a > 0):
        log.error("ellipsoid_rejected", a=a, inv_f=inv_f, reason="non_positive_a")
        raise EllipsoidError(f"equatorial semi-axis must be a positive finite number, got {a}")
    if math.isnan(inv_f) or inv_f <= 1:
        log.error("ellipsoid_rejected", a=a, inv_f=inv_f, reason="inv_f_too_small")
        raise EllipsoidError(f"inverse flattening must exceed 1 (or be inf for a sphere), got {inv_f}")
    f = 0.0 if math.isinf(inv_f) else 1.0 / inv_f
    return Ellipsoid(a=a, b=a * (1.0 - f), f=f, e2=f * (2.0 - f), name=name)


def get_ellipsoid(name: str) -> Ellipsoid:
    """Return a built-in preset by (case-insensitive) name."""
    key = name.strip().lower()
    if key not in ELLIPSOID_PRESETS:
        known = ", ".join(sorted(ELLIPSOID_PRESETS))
        raise EllipsoidError(f"unknown ellipsoid preset {name!r}; choose one of: {known}")
    a, inv_f = ELLIPSOID_PRESETS[key]
    return make_ellipsoid(a, inv_f, name=key)


def prime_vertical_radius(ell: Ellipsoid, phi: float) -> float:
    """N(phi) = a / sqrt(1 - e² sin² phi); never below a."""
    s = math.sin(phi)
    return ell.a / math.sqrt(1.0 - ell.e2 * s * s)


def meridional_radius(ell: Ellipsoid, phi: float) -> float:
    """rho(phi) = a (1 - e²) / (1 - e² sin² phi)^(3/2)."""
    s = math.sin(phi)
    w = 1.0 - ell.e2 * s * s
    return ell.a * (1.0 - ell.e2) / (w * math.sqrt(w))


def geodetic_to_cartesian(ell: Ellipsoid, p: GeodeticCoord) -> Cartesian3:
    """Surface point of geodetic coordinates ``p`` (zero ellipsoidal height)."""
    n = prime_vertical_radius(ell, p.lat)
    cos_lat = math.cos(p.lat)
    return Cartesian3(
        x=n * cos_lat * math.cos(p.lon),
        y=n * cos_lat * math.sin(p.lon),
        z=n * (1.0 - ell.e2) * math.sin(p.lat),
    )


def normalize_lon(lon: float) -> float:
    """Map a longitude into (-pi, pi]."""
    out = math.remainder(lon, 2 * math.pi)
    return math.pi if out <= -math.pi else out


def project_to_ellipsoid(ell: Ellipsoid, g: Cartesian3) -> GeodeticCoord:
    """Foot of the surface normal through ``g``, as geodetic coordinates.

    Equivalently the geodetic longitude/latitude of ``g`` with its ellipsoidal
    height discarded. Latitude is refined by fixed-point iteration on
    tan(phi) = (z + e² N sin phi) / p, starting from Bowring's closed form.

    Raises:
        ProjectionError: ``g`` lies within 1e-9 a of the rotation axis, or the
            iteration fails to settle within 20 steps.
    """
    p = math.hypot(g.x, g.y)
    if not math.isfinite(p) or not math.isfinite(g.z):
        raise ProjectionError(f"cannot project non-finite point {g}")
    if p < AXIS_GUARD * ell.a:
        log.error("projection_near_axis", x=g.x, y=g.y, z=g.z, axis_distance=p)
        raise ProjectionError(
            f"point lies {p:.3e} m from the rotation axis; its longitude is undefined"
        )
    lon = normalize_lon(math.atan2(g.y, g.x))
    if ell.is_sphere:
        return GeodeticCoord(lon=lon, lat=math.atan2(g.z, p))

    a, b, e2 = ell.a, ell.b, ell.e2
    ep2 = e2 / (1.0 - e2)
    theta = math.atan2(g.z * a, p * b)
    phi = math.atan2(
        g.z + ep2 * b * math.sin(theta) ** 3,
        p - e2 * a * math.cos(theta) ** 3,
    )
    for _ in range(PROJECTION_MAX_ITERATIONS):
        s = math.sin(phi)
        n = a / math.sqrt(1.0 - e2 * s * s)
        nxt = math.atan2(g.z + e2 * n * s, p)
        if abs(nxt - phi) < PROJECTION_TOLERANCE:
            return GeodeticCoord(lon=lon, lat=nxt)
        phi = nxt

    log.error("projection_not_converged", x=g.x, y=g.y, z=g.z, last_lat=phi)
    raise ProjectionError(
        f"latitude iteration did not converge in {PROJECTION_MAX_ITERATIONS} steps"
    )
