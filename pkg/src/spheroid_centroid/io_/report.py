"""Human- and machine-readable centroid reports."""

import json
import math
import re

from pydantic import BaseModel

from ..core.geodesy import Ellipsoid
from ..core.models import (
    CentroidConfig,
    CentroidResult,
    EngineDiagnostics,
    GeodeticCoord,
    OracleDiagnostics,
)
from ..oracle.grid import OracleComparison

# Hundredths of an arc-second per degree
_HUNDREDTHS_PER_DEGREE = 360_000

_DMS_RE = re.compile(
    r"""^\s*(?P<deg>\d+)\s*°\s*(?P<min>\d+)\s*['′]\s*(?P<sec>\d+(?:\.\d*)?)\s*["″]\s*(?P<hemi>[NSEW])\s*$"""
)


def format_dms(value_deg: float, positive: str, negative: str) -> str:
    """Render decimal degrees as D°MM'SS.ss" H, rounded to 0.01 arc-second."""
    total = round(abs(value_deg) * _HUNDREDTHS_PER_DEGREE)
    # zero after rounding takes the positive hemisphere
    hemi = negative if value_deg < 0 and total > 0 else positive
    degrees, rest = divmod(total, _HUNDREDTHS_PER_DEGREE)
    minutes, hundredths = divmod(rest, 6000)
    seconds, frac = divmod(hundredths, 100)
    return f"{degrees}°{minutes:02d}'{seconds:02d}.{frac:02d}\" {hemi}"


def format_lat(lat_deg: float) -> str:
    return format_dms(lat_deg, "N", "S")


def format_lon(lon_deg: float) -> str:
    return format_dms(lon_deg, "E", "W")


def parse_dms(text: str) -> float:
    """Inverse of format_dms; accepts ASCII or prime marks."""
    m = _DMS_RE.match(text)
    if m is None:
        raise ValueError(f"not a D°M'S\" H angle: {text!r}")
    value = int(m["deg"]) + int(m["min"]) / 60 + float(m["sec"]) / 3600
    return -value if m["hemi"] in "SW" else value


class EllipsoidInfo(BaseModel):
    name: str
    a: float
    b: float
    # None for a sphere (infinite inverse flattening)
    inv_f: float | None
    e2: float


class CentreInfo(BaseModel):
    lon_deg: float
    lat_deg: float
    lon_dms: str
    lat_dms: str

    @classmethod
    def from_coord(cls, p: GeodeticCoord) -> "CentreInfo":
        lon = math.degrees(p.lon)
        lat = math.degrees(p.lat)
        return cls(lon_deg=lon, lat_deg=lat, lon_dms=format_lon(lon), lat_dms=format_lat(lat))


class DiagnosticsInfo(BaseModel):
    strip_count: int
    vertex_count: int
    densified_vertex_count: int
    lambda0_deg: float
    lambda0_auto: bool
    sum_sign: int
    reversed_rings: int
    max_dphi_deg: float
    max_dlambda_deg: float


class OracleInfo(BaseModel):
    centre: CentreInfo
    area_m2: float
    separation_m: float
    area_delta_m2: float
    area_rel_delta: float
    d_lambda_deg: float
    d_phi_deg: float
    interior_cells: int


class CentroidReport(BaseModel):
    ellipsoid: EllipsoidInfo
    centre: CentreInfo
    area_m2: float
    area_km2: float
    g_xyz_m: tuple[float, float, float]
    diagnostics: DiagnosticsInfo
    oracle: OracleInfo | None = None


def build_report(
    ell: Ellipsoid,
    result: CentroidResult,
    cfg: CentroidConfig,
    oracle: CentroidResult | None = None,
    comparison: OracleComparison | None = None,
) -> CentroidReport:
    diag = result.diagnostics
    if not isinstance(diag, EngineDiagnostics):
        raise TypeError("report needs an engine result, got an oracle result")
    oracle_info = None
    if oracle is not None and comparison is not None:
        odiag = oracle.diagnostics
        if not isinstance(odiag, OracleDiagnostics):
            raise TypeError("oracle block needs a grid result")
        oracle_info = OracleInfo(
            centre=CentreInfo.from_coord(oracle.centre),
            area_m2=oracle.area,
            separation_m=comparison.separation_m,
            area_delta_m2=comparison.area_delta,
            area_rel_delta=comparison.area_rel_delta,
            d_lambda_deg=math.degrees(odiag.d_lambda),
            d_phi_deg=math.degrees(odiag.d_phi),
            interior_cells=odiag.interior_cells,
        )
    return CentroidReport(
        ellipsoid=EllipsoidInfo(
            name=ell.label(),
            a=ell.a,
            b=ell.b,
            inv_f=None if math.isinf(ell.inv_f) else ell.inv_f,
            e2=ell.e2,
        ),
        centre=CentreInfo.from_coord(result.centre),
        area_m2=result.area,
        area_km2=result.area / 1e6,
        g_xyz_m=(result.g_xyz.x, result.g_xyz.y, result.g_xyz.z),
        diagnostics=DiagnosticsInfo(
            strip_count=diag.strip_count,
            vertex_count=diag.vertex_count,
            densified_vertex_count=diag.densified_vertex_count,
            lambda0_deg=math.degrees(diag.lambda0),
            lambda0_auto=diag.lambda0_auto,
            sum_sign=diag.sum_sign,
            reversed_rings=diag.reversed_rings,
            max_dphi_deg=math.degrees(cfg.max_dphi),
            max_dlambda_deg=math.degrees(cfg.max_dlambda),
        ),
        oracle=oracle_info,
    )


def render_json(report: CentroidReport) -> str:
    """Stable-keyed JSON document."""
    return json.dumps(report.model_dump(mode="json"), indent=2, sort_keys=True)


def render_text(report: CentroidReport) -> str:
    """Plain-text report; numbers use the same repr as the JSON output."""
    ell = report.ellipsoid
    d = report.diagnostics
    lines = [
        "=" * 60,
        "CENTRE OF GRAVITY",
        "=" * 60,
        f"Ellipsoid:        {ell.name} (a={ell.a!r} m, 1/f={ell.inv_f if ell.inv_f is not None else 'inf'})",
        f"Latitude:         {report.centre.lat_dms}  ({report.centre.lat_deg!r}°)",
        f"Longitude:        {report.centre.lon_dms}  ({report.centre.lon_deg!r}°)",
        f"Area:             {report.area_m2!r} m²  ({report.area_km2!r} km²)",
        f"G (x, y, z):      {report.g_xyz_m[0]!r}, {report.g_xyz_m[1]!r}, {report.g_xyz_m[2]!r} m",
        "",
        "Diagnostics:",
        f"  strips:             {d.strip_count}",
        f"  vertices:           {d.vertex_count} -> {d.densified_vertex_count} after densification",
        f"  lambda0:            {d.lambda0_deg!r}°{' (auto)' if d.lambda0_auto else ''}",
        f"  sum S_i sign:       {'+' if d.sum_sign > 0 else '-'}",
        f"  reversed rings:     {d.reversed_rings}",
        f"  max dphi/dlambda:   {d.max_dphi_deg!r}° / {d.max_dlambda_deg!r}°",
    ]
    if report.oracle is not None:
        o = report.oracle
        lines += [
            "",
            "Oracle (grid quadrature):",
            f"  latitude:           {o.centre.lat_dms}  ({o.centre.lat_deg!r}°)",
            f"  longitude:          {o.centre.lon_dms}  ({o.centre.lon_deg!r}°)",
            f"  area:               {o.area_m2!r} m²",
            f"  separation:         {o.separation_m!r} m",
            f"  area delta:         {o.area_delta_m2!r} m² ({o.area_rel_delta!r} relative)",
            f"  grid step:          {o.d_lambda_deg!r}° x {o.d_phi_deg!r}° ({o.interior_cells} cells inside)",
        ]
    lines.append("=" * 60)
    return "\n".join(lines)
