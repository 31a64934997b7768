"""Strip-decomposition engine."""

from .centroid import accumulate, iter_strips, polygon_centroid, ring_signed_area
from .rings import densify_ring, unwrap_ring
from .strips import arc_centroid_distance, midpoint, sinc_like, strip_contribution

__all__ = [
    "accumulate",
    "arc_centroid_distance",
    "densify_ring",
    "iter_strips",
    "midpoint",
    "polygon_centroid",
    "ring_signed_area",
    "sinc_like",
    "strip_contribution",
    "unwrap_ring",
]
