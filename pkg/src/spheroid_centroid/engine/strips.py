"""Elementary strip formulae.

A boundary segment P_i -> P_{i+1} sweeps a narrow band of the spheroid between
the reference meridian lambda0 and the segment midpoint M. To first order the
band is a circular arc of radius N_M cos(phi_M), so its area and centre of
gravity have closed forms evaluated at M.
"""

import math

from ..core.geodesy import Ellipsoid, meridional_radius, prime_vertical_radius
from ..core.models import GeodeticCoord, StripContribution

# Below this |theta| sin(theta)/theta is replaced by its Taylor series
SINC_SERIES_THRESHOLD = 1e-6


def midpoint(p_i: GeodeticCoord, p_next: GeodeticCoord) -> GeodeticCoord:
    """Component-wise mean of two consecutive unwrapped vertices."""
    return GeodeticCoord(lon=(p_i.lon + p_next.lon) / 2, lat=(p_i.lat + p_next.lat) / 2)


def sinc_like(theta: float) -> float:
    """sin(theta)/theta, with the removable singularity at 0 filled in."""
    if abs(theta) < SINC_SERIES_THRESHOLD:
        t2 = theta * theta
        return 1.0 - t2 / 6.0 + t2 * t2 / 120.0
    return math.sin(theta) / theta


def arc_centroid_distance(r: float, alpha: float) -> float:
    """Distance from the centre of a circle of radius ``r`` to the centre of
    gravity of an arc of half-angle ``alpha`` (Crawford's R sin(alpha)/alpha)."""
    return r * sinc_like(alpha)


def strip_contribution(
    ell: Ellipsoid, p_i: GeodeticCoord, p_next: GeodeticCoord, lambda0: float
) -> StripContribution:
    """Signed area and centroid of the strip between ``lambda0`` and the midpoint
    of segment ``p_i -> p_next``.

    X and Y are evaluated as d cos(mu), d sin(mu) where d is the arc centroid
    distance for half-angle (lambda_M - lambda0)/2 and mu the mean of lambda_M and
    lambda0; this equals N cos(phi) (sin lambda_M - sin lambda0)/(lambda_M - lambda0)
    and its cosine counterpart, and stays finite when lambda_M == lambda0.
    """
    m = midpoint(p_i, p_next)
    n_m = prime_vertical_radius(ell, m.lat)
    rho_m = meridional_radius(ell, m.lat)
    radius = n_m * math.cos(m.lat)

    d_lambda = m.lon - lambda0
    d = arc_centroid_distance(radius, d_lambda / 2)
    mu = (m.lon + lambda0) / 2

    return StripContribution(
        s_i=radius * d_lambda * rho_m * (p_next.lat - p_i.lat),
        x_i=d * math.cos(mu),
        y_i=d * math.sin(mu),
        z_i=n_m * (1.0 - ell.e2) * math.sin(m.lat),
    )
