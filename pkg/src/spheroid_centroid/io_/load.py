import json
import math
import re
import sys
from pathlib import Path
from typing import Annotated, Any, Literal

from pydantic import BaseModel, Field, TypeAdapter, ValidationError
from shapely import wkt
from shapely.errors import ShapelyError
from shapely.geometry import MultiPolygon, Polygon

from ..core.errors import InputFormatError, NonPolygonGeometryError, PolygonError
from ..core.models import EllipsoidalPolygon, Ring, RingRole
from ..engine.rings import unwrap_ring
from ..utils.log import get_logger

log = get_logger(__name__)

# A polygon part in degrees: first ring outer, the rest holes
DegreeRing = list[tuple[float, float]]
DegreePart = list[DegreeRing]

Position = Annotated[list[float], Field(min_length=2)]


class PolygonGeometry(BaseModel):
    type: Literal["Polygon"]
    coordinates: list[list[Position]]


class MultiPolygonGeometry(BaseModel):
    type: Literal["MultiPolygon"]
    coordinates: list[list[list[Position]]]


_GEOMETRY = TypeAdapter(
    Annotated[PolygonGeometry | MultiPolygonGeometry, Field(discriminator="type")]
)


# --- polygon assembly -------------------------------------------------------


def _clean_ring(ring: DegreeRing, label: str) -> DegreeRing:
    for k, (lon, lat) in enumerate(ring):
        if not (math.isfinite(lon) and math.isfinite(lat)):
            raise InputFormatError(f"{label}, vertex {k}: coordinates must be finite numbers")
        if not -90.0 <= lat <= 90.0:
            raise InputFormatError(
                f"{label}, vertex {k}: latitude {lat!r} is outside [-90, 90] "
                "(coordinates must be longitude first)"
            )
    if len(ring) > 1 and ring[0] == ring[-1]:
        ring = ring[:-1]
    if len(ring) < 3:
        raise PolygonError(f"{label} has {len(ring)} vertices after closing; at least 3 are needed")
    return ring


def build_polygon(parts: list[DegreePart]) -> EllipsoidalPolygon:
    """Turn degree rings (longitude first) into an unwrapped radian polygon.

    Every ring is placed on the longitude branch of the first ring.
    """
    if not parts:
        raise InputFormatError("no polygon found in input")
    rings: list[Ring] = []
    reference: float | None = None
    for part_index, part in enumerate(parts):
        if not part:
            raise InputFormatError(f"polygon {part_index} has no rings")
        for ri, raw in enumerate(part):
            label = f"polygon {part_index}, ring {ri}"
            cleaned = _clean_ring(raw, label)
            radians = [(math.radians(lon), math.radians(lat)) for lon, lat in cleaned]
            vertices = unwrap_ring(radians, reference_lon=reference)
            if reference is None:
                reference = vertices[0].lon
            role = RingRole.OUTER if ri == 0 else RingRole.HOLE
            rings.append(Ring(tuple(vertices), role))
    return EllipsoidalPolygon(tuple(rings))


# --- GeoJSON ----------------------------------------------------------------


def _positions(ring: list[list[float]]) -> DegreeRing:
    return [(float(p[0]), float(p[1])) for p in ring]


def _geometry_parts(geometry: Any, where: str) -> list[DegreePart]:
    if not isinstance(geometry, dict) or "type" not in geometry:
        raise InputFormatError(f"{where}: expected a GeoJSON geometry object")
    gtype = geometry["type"]
    if not isinstance(gtype, str) or gtype not in {"Polygon", "MultiPolygon"}:
        log.error("non_polygon_geometry", where=where, geometry_type=gtype)
        raise NonPolygonGeometryError(
            f"{where}: geometry type {gtype!r} is not supported; use Polygon or MultiPolygon"
        )
    try:
        geom = _GEOMETRY.validate_python(geometry)
    except ValidationError as e:
        first = e.errors()[0]
        loc = ".".join(str(x) for x in first["loc"][1:])
        raise InputFormatError(f"{where}: invalid {gtype} ({loc}: {first['msg']})") from e
    if isinstance(geom, PolygonGeometry):
        return [[_positions(r) for r in geom.coordinates]]
    return [[_positions(r) for r in poly] for poly in geom.coordinates]


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        log.error("geojson_syntax_error", line=e.lineno, column=e.colno, msg=e.msg)
        raise InputFormatError(f"malformed GeoJSON: {e.msg}", line=e.lineno, column=e.colno) from e


def _features(doc: Any) -> list[tuple[str | None, dict[str, Any], Any]]:
    """(id, properties, geometry) triples of a Feature or FeatureCollection."""
    if not isinstance(doc, dict):
        raise InputFormatError("GeoJSON document must be an object")
    if doc.get("type") == "FeatureCollection":
        features = doc.get("features")
        if not isinstance(features, list):
            raise InputFormatError("FeatureCollection has no 'features' array")
    elif doc.get("type") == "Feature":
        features = [doc]
    else:
        return [(None, {}, doc)]
    out = []
    for i, feat in enumerate(features):
        if not isinstance(feat, dict) or feat.get("type") != "Feature":
            raise InputFormatError(f"feature {i} is not a GeoJSON Feature")
        props = feat.get("properties") or {}
        fid = feat.get("id")
        out.append((None if fid is None else str(fid), props, feat.get("geometry")))
    return out


def parse_geojson(text: str) -> EllipsoidalPolygon:
    """Polygon from a GeoJSON geometry, Feature or FeatureCollection.

    All polygonal features of a collection are merged into one polygon.
    """
    parts: list[DegreePart] = []
    for i, (_, _, geometry) in enumerate(_features(_load_json(text))):
        parts.extend(_geometry_parts(geometry, f"feature {i}"))
    return build_polygon(parts)


def parse_feature_collection(
    data: bytes | str, name_field: str = "name"
) -> list[tuple[str, EllipsoidalPolygon]]:
    """One named polygon per feature; names come from ``properties[name_field]``,
    then the feature id, then the feature index."""
    text = _decode(data)
    named = []
    for i, (fid, props, geometry) in enumerate(_features(_load_json(text))):
        name = props.get(name_field) if isinstance(props, dict) else None
        label = str(name) if name is not None else fid or f"feature-{i}"
        named.append((label, build_polygon(_geometry_parts(geometry, f"feature {label!r}"))))
    log.info("feature_collection_parsed", features=len(named))
    return named


# --- WKT --------------------------------------------------------------------

# EWKT prefix as written by PostGIS; GEOS itself does not read it
_SRID_PREFIX = re.compile(r"^\s*SRID\s*=\s*\d+\s*;", re.IGNORECASE)
# GEOS parse messages end with the offending token: "... encountered word: 'x'"
_GEOS_TOKEN = re.compile(r"'([^']+)'\s*$")


def _error_position(text: str, message: str) -> tuple[int | None, int | None]:
    """1-based line and column of the token a GEOS parse error names, if any."""
    offset: int | None = None
    if (m := _GEOS_TOKEN.search(message)) is not None:
        token = re.compile(rf"(?<![\w.+-]){re.escape(m.group(1))}(?![\w.])")
        if (hit := token.search(text)) is not None:
            offset = hit.start()
    elif "end of stream" in message or "EOF" in message:
        offset = len(text.rstrip())
    if offset is None:
        return None, None
    line = text.count("\n", 0, offset) + 1
    return line, offset - (text.rfind("\n", 0, offset) + 1) + 1


def _polygon_part(polygon: Polygon) -> DegreePart:
    rings = [polygon.exterior, *polygon.interiors]
    return [[(float(c[0]), float(c[1])) for c in ring.coords] for ring in rings]


def parse_wkt(text: str) -> EllipsoidalPolygon:
    """Polygon from WKT or EWKT POLYGON / MULTIPOLYGON text (Z and M ordinates ignored)."""
    body = _SRID_PREFIX.sub("", text, count=1)
    try:
        geom = wkt.loads(body)
    except ShapelyError as e:
        message = str(e).removeprefix("ParseException: ")
        line, column = _error_position(text, message)
        log.error("wkt_syntax_error", line=line, column=column, msg=message)
        raise InputFormatError(f"malformed WKT: {message}", line=line, column=column) from e
    if not isinstance(geom, Polygon | MultiPolygon):
        log.error("non_polygon_geometry", geometry_type=geom.geom_type)
        raise NonPolygonGeometryError(
            f"WKT geometry {geom.geom_type} is not supported; use POLYGON or MULTIPOLYGON"
        )
    if geom.is_empty:
        raise InputFormatError("malformed WKT: empty geometry has no area")
    if isinstance(geom, Polygon):
        return build_polygon([_polygon_part(geom)])
    return build_polygon([_polygon_part(p) for p in geom.geoms])


# --- entry points -----------------------------------------------------------


def _decode(data: bytes | str) -> str:
    if isinstance(data, str):
        return data
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise InputFormatError(f"input is not UTF-8 text (byte offset {e.start})") from e


def detect_format(text: str, format_hint: str | None = None) -> str:
    """'geojson' or 'wkt', from the hint or the first non-blank character."""
    hint = (format_hint or "auto").lower()
    if hint in {"geojson", "json"}:
        return "geojson"
    if hint == "wkt":
        return "wkt"
    if hint != "auto":
        raise InputFormatError(f"unknown input format {format_hint!r}; use geojson, wkt or auto")
    return "geojson" if text.lstrip().startswith("{") else "wkt"


def parse_polygon_file(data: bytes | str, format_hint: str | None = None) -> EllipsoidalPolygon:
    """Parse GeoJSON or WKT polygon data (decimal degrees, longitude first)."""
    text = _decode(data)
    fmt = detect_format(text, format_hint)
    poly = parse_geojson(text) if fmt == "geojson" else parse_wkt(text)
    log.info("polygon_parsed", format=fmt, rings=len(poly.rings), vertices=poly.vertex_count)
    return poly


def _hint_from_suffix(path: Path) -> str:
    suffix = path.suffix.lower()
    if suffix in {".geojson", ".json"}:
        return "geojson"
    if suffix == ".wkt":
        return "wkt"
    return "auto"


def read_source(source: Path | str) -> bytes:
    """Bytes of a file, or of standard input when ``source`` is '-'."""
    if str(source) == "-":
        return sys.stdin.buffer.read()
    return Path(source).read_bytes()


def load_polygon(source: Path | str, format_hint: str | None = None) -> EllipsoidalPolygon:
    """Read and parse a polygon file ('-' for standard input)."""
    log.info("loading_polygon", source=str(source), format=format_hint or "auto")
    data = read_source(source)
    if (format_hint is None or format_hint == "auto") and str(source) != "-":
        format_hint = _hint_from_suffix(Path(source))
    return parse_polygon_file(data, format_hint)
