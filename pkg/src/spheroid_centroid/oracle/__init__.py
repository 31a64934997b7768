"""Grid-quadrature cross-check of the strip engine."""

from .grid import (
    GridSpec,
    OracleComparison,
    compare_results,
    grid_mask,
    make_grid,
    oracle_centroid,
    point_in_polygon,
)

__all__ = [
    "GridSpec",
    "OracleComparison",
    "compare_results",
    "grid_mask",
    "make_grid",
    "oracle_centroid",
    "point_in_polygon",
]
