import json
import math
from collections.abc import Iterable, Sequence
from dataclasses import asdict
from pathlib import Path
from typing import Any

import pandas as pd

from ..core.models import (
    CentroidResult,
    EllipsoidalPolygon,
    EngineDiagnostics,
    RingRole,
    StripContribution,
)
from ..utils.log import get_logger
from .report import format_lat, format_lon

log = get_logger(__name__)

TABLE_FORMATS = {"csv", "xlsx"}


def _table_format(path: Path) -> str:
    fmt = path.suffix.lower().lstrip(".")
    if fmt not in TABLE_FORMATS:
        log.error("unsupported_export_format", format=fmt, path=str(path))
        raise ValueError(f"Unsupported export format: {path.suffix!r}. Use .csv or .xlsx")
    return fmt


def _write_table(df: pd.DataFrame, path: Path) -> None:
    fmt = _table_format(path)
    if fmt == "csv":
        df.to_csv(path, index=False)
    else:
        df.to_excel(path, index=False)


def export_strips(strips: Iterable[StripContribution], path: Path) -> int:
    """Write one row per strip (s_i in m², x_i/y_i/z_i in m) to CSV or XLSX."""
    _table_format(path)
    df = pd.DataFrame([asdict(s) for s in strips], columns=["s_i", "x_i", "y_i", "z_i"])
    df.insert(0, "strip", range(len(df)))
    log.info("exporting_strips", count=len(df), path=str(path))
    _write_table(df, path)
    return len(df)


def batch_rows(results: Sequence[tuple[str, CentroidResult]]) -> pd.DataFrame:
    """Tabulate named results: centre in degrees and DMS, area, strip count."""
    records: list[dict[str, Any]] = []
    for name, res in results:
        lon = math.degrees(res.centre.lon)
        lat = math.degrees(res.centre.lat)
        records.append(
            {
                "name": name,
                "lon_deg": lon,
                "lat_deg": lat,
                "lon_dms": format_lon(lon),
                "lat_dms": format_lat(lat),
                "area_m2": res.area,
                "area_km2": res.area / 1e6,
                "strip_count": (
                    res.diagnostics.strip_count
                    if isinstance(res.diagnostics, EngineDiagnostics)
                    else None
                ),
            }
        )
    return pd.DataFrame(records)


def export_batch(df: pd.DataFrame, path: Path) -> None:
    log.info("exporting_batch", count=len(df), path=str(path))
    _write_table(df, path)
    log.info("export_completed", count=len(df), path=str(path))


def _ring_degrees(vertices: Sequence[Any]) -> list[list[float]]:
    coords = [[math.degrees(v.lon), math.degrees(v.lat)] for v in vertices]
    return [*coords, coords[0]]


def centre_feature_collection(poly: EllipsoidalPolygon, result: CentroidResult) -> dict[str, Any]:
    """GeoJSON FeatureCollection holding the input polygon and its centre point.

    Polygon longitudes stay unwrapped, so parts crossing the antimeridian may
    exceed ±180°.
    """
    parts: list[list[list[list[float]]]] = []
    for ring in poly.rings:
        if ring.role is RingRole.OUTER or not parts:
            parts.append([])
        parts[-1].append(_ring_degrees(ring.vertices))
    geometry: dict[str, Any] = (
        {"type": "Polygon", "coordinates": parts[0]}
        if len(parts) == 1
        else {"type": "MultiPolygon", "coordinates": parts}
    )
    lon = math.degrees(result.centre.lon)
    lat = math.degrees(result.centre.lat)
    return {
        "type": "FeatureCollection",
        "features": [
            {"type": "Feature", "properties": {"role": "polygon"}, "geometry": geometry},
            {
                "type": "Feature",
                "properties": {
                    "role": "centre",
                    "lon_dms": format_lon(lon),
                    "lat_dms": format_lat(lat),
                    "area_m2": result.area,
                },
                "geometry": {"type": "Point", "coordinates": [lon, lat]},
            },
        ],
    }


def write_centre_geojson(path: Path, poly: EllipsoidalPolygon, result: CentroidResult) -> None:
    """Write the polygon and its centre for display in a GIS."""
    log.info("writing_centre_geojson", path=str(path))
    path.write_text(
        json.dumps(centre_feature_collection(poly, result), indent=2), encoding="utf-8"
    )
