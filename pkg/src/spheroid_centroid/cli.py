import math
import sys
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from pathlib import Path
from typing import Any

import click
import structlog
import typer
from pydantic import ValidationError

from .core.errors import (
    DegeneratePolygonError,
    EllipsoidError,
    InputFormatError,
    PolygonError,
    ProjectionError,
    ResolutionError,
)
from .core.geodesy import ELLIPSOID_PRESETS, get_ellipsoid
from .core.models import CentroidResult
from .engine.centroid import iter_strips, polygon_centroid
from .io_.config import DEFAULT_GRID_STEP_DEG, DEFAULT_STEP_DEG, RunConfig
from .io_.export import batch_rows, export_batch, export_strips, write_centre_geojson
from .io_.load import load_polygon, parse_feature_collection, read_source
from .io_.report import build_report, render_json, render_text
from .oracle.grid import compare_results, make_grid, oracle_centroid
from .utils.log import get_logger, setup_logging

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_INPUT = 2

# Global state for logging configuration
_log_state: dict[str, Any] = {
    "log_file": None,
    "logger": None,
}

app = typer.Typer(help="Area and centre of gravity of polygons on an oblate spheroid.")


@app.callback()
def callback(
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Suppress console log output"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose (DEBUG) logging"),
    log_file: Path | None = typer.Option(None, "--log-file", help="Also write JSON-lines logs here"),
) -> None:
    """Initialize application with structured logging."""
    log_level = "DEBUG" if verbose else "INFO"
    _log_state["log_file"] = setup_logging(
        log_level=log_level,
        console_output=not quiet,
        log_file=log_file,
    )
    _log_state["logger"] = get_logger(__name__)
    _log_state["logger"].debug(
        "application_started",
        log_file=str(log_file) if log_file else None,
        quiet=quiet,
        verbose=verbose,
    )


def _get_logger() -> structlog.BoundLogger | Any:
    """Get the application logger."""
    if _log_state["logger"] is None:
        setup_logging()
        _log_state["logger"] = get_logger(__name__)
    return _log_state["logger"]


# Module-level logger accessor
log = type("LogProxy", (), {"__getattr__": lambda self, name: getattr(_get_logger(), name)})()


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, (DegeneratePolygonError, ProjectionError)):
        return EXIT_NUMERIC
    return EXIT_INPUT


def _hint(exc: BaseException) -> str:
    if isinstance(exc, DegeneratePolygonError):
        return "check that the polygon has a non-zero extent and is not self-cancelling"
    if isinstance(exc, ResolutionError):
        return "pass a smaller --grid-step"
    if isinstance(exc, EllipsoidError):
        return "check --ellipsoid, --a and --inv-f"
    if isinstance(exc, InputFormatError):
        return "expected a GeoJSON or WKT polygon in decimal degrees, longitude first"
    if isinstance(exc, PolygonError):
        return "fix the ring geometry in the input file"
    return ""


@contextmanager
def _exit_on_error() -> Iterator[None]:
    """Turn domain and file errors into a stderr message and an exit code."""
    try:
        yield
    except (
        DegeneratePolygonError,
        ProjectionError,
        EllipsoidError,
        InputFormatError,
        PolygonError,
        ResolutionError,
        OSError,
        ValueError,
    ) as e:
        code = _exit_code(e)
        log.error("run_failed", error_type=type(e).__name__, error=str(e), exit_code=code)
        message = f"Error: {e}"
        hint = _hint(e)
        if hint:
            message += f"\n  hint: {hint}"
        typer.echo(message, err=True)
        raise typer.Exit(code) from e


def _run_config(**fields: Any) -> RunConfig:
    try:
        return RunConfig(**fields)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'option'}: {err['msg']}" for err in e.errors()
        )
        typer.echo(f"Error: invalid options: {problems}", err=True)
        raise typer.Exit(EXIT_INPUT) from e


@app.command()
def compute(
    input: str = typer.Argument(..., help="Polygon file (GeoJSON or WKT), or '-' for stdin"),
    ellipsoid: str = typer.Option("hayford", "--ellipsoid", help="Preset name (see 'ellipsoids')"),
    a: float | None = typer.Option(None, "--a", help="Equatorial semi-axis in metres"),
    inv_f: float | None = typer.Option(None, "--inv-f", help="Inverse flattening ('inf' for a sphere)"),
    lambda0: str = typer.Option("auto", "--lambda0", help="Reference meridian in degrees, or 'auto'"),
    max_dphi: float = typer.Option(DEFAULT_STEP_DEG, "--max-dphi", help="Max latitude step (degrees)"),
    max_dlambda: float = typer.Option(
        DEFAULT_STEP_DEG, "--max-dlambda", help="Max longitude step (degrees)"
    ),
    min_area: float = typer.Option(1e-6, "--min-area", help="Degeneracy floor on the area (m²)"),
    oracle: bool = typer.Option(False, "--oracle", help="Cross-check with grid quadrature"),
    grid_step: float = typer.Option(
        DEFAULT_GRID_STEP_DEG, "--grid-step", help="Oracle grid step (degrees)"
    ),
    output_format: str = typer.Option("text", "--format", help="text or json"),
    input_format: str = typer.Option("auto", "--input-format", help="auto, geojson or wkt"),
    emit_geojson: Path | None = typer.Option(
        None, "--emit-geojson", help="Write polygon and centre as GeoJSON"
    ),
    export_strips_to: Path | None = typer.Option(
        None, "--export-strips", help="Write per-strip contributions (.csv or .xlsx)"
    ),
) -> None:
    """Compute area and centre of gravity of one polygon."""
    cfg = _run_config(
        ellipsoid=ellipsoid,
        a=a,
        inv_f=inv_f,
        lambda0_deg=lambda0,
        max_dphi_deg=max_dphi,
        max_dlambda_deg=max_dlambda,
        min_area=min_area,
        oracle=oracle,
        grid_step_deg=grid_step,
        output_format=output_format,
        input=input,
        input_format=input_format,
        emit_geojson=emit_geojson,
        export_strips=export_strips_to,
    )
    log.info("compute_started", input=cfg.input, ellipsoid=cfg.ellipsoid, oracle=cfg.oracle)
    with _exit_on_error():
        ell = cfg.resolve_ellipsoid()
        centroid_cfg = cfg.to_centroid_config()
        poly = load_polygon(cfg.input, cfg.input_format)
        result = polygon_centroid(ell, poly, centroid_cfg)

        oracle_result: CentroidResult | None = None
        comparison = None
        if cfg.oracle:
            oracle_result = oracle_centroid(ell, poly, make_grid(poly, cfg.grid_step_rad))
            comparison = compare_results(ell, result, oracle_result)
            log.info(
                "oracle_comparison",
                separation_m=comparison.separation_m,
                area_rel_delta=comparison.area_rel_delta,
            )

        if cfg.export_strips is not None:
            export_strips(iter_strips(ell, poly, centroid_cfg), cfg.export_strips)
        if cfg.emit_geojson is not None:
            write_centre_geojson(cfg.emit_geojson, poly, result)

        report = build_report(ell, result, centroid_cfg, oracle_result, comparison)
    typer.echo(render_json(report) if cfg.output_format == "json" else render_text(report))
    log.info("compute_completed", area=result.area)


@app.command()
def batch(
    input: str = typer.Argument(..., help="GeoJSON FeatureCollection, or '-' for stdin"),
    ellipsoid: str = typer.Option("hayford", "--ellipsoid", help="Preset name (see 'ellipsoids')"),
    a: float | None = typer.Option(None, "--a", help="Equatorial semi-axis in metres"),
    inv_f: float | None = typer.Option(None, "--inv-f", help="Inverse flattening ('inf' for a sphere)"),
    lambda0: str = typer.Option("auto", "--lambda0", help="Reference meridian in degrees, or 'auto'"),
    max_dphi: float = typer.Option(DEFAULT_STEP_DEG, "--max-dphi", help="Max latitude step (degrees)"),
    max_dlambda: float = typer.Option(
        DEFAULT_STEP_DEG, "--max-dlambda", help="Max longitude step (degrees)"
    ),
    name_field: str = typer.Option("name", "--name-field", help="Feature property holding the name"),
    output: Path | None = typer.Option(None, "--output", "-o", help="Write the table (.csv or .xlsx)"),
) -> None:
    """One centre of gravity per feature of a FeatureCollection."""
    cfg = _run_config(
        ellipsoid=ellipsoid,
        a=a,
        inv_f=inv_f,
        lambda0_deg=lambda0,
        max_dphi_deg=max_dphi,
        max_dlambda_deg=max_dlambda,
        input=input,
        input_format="geojson",
    )
    log.info("batch_started", input=cfg.input, ellipsoid=cfg.ellipsoid)
    with _exit_on_error():
        ell = cfg.resolve_ellipsoid()
        centroid_cfg = cfg.to_centroid_config()
        features = parse_feature_collection(read_source(cfg.input), name_field)
        results = [(name, polygon_centroid(ell, poly, centroid_cfg)) for name, poly in features]
        df = batch_rows(results)
        if output is not None:
            export_batch(df, output)
    if output is None:
        typer.echo(df.to_string(index=False))
    else:
        typer.echo(f"Wrote {len(df)} centres to {output}")
    log.info("batch_completed", features=len(df))


@app.command()
def ellipsoids() -> None:
    """List the built-in reference ellipsoids."""
    typer.echo(f"{'name':<12} {'a (m)':>14} {'1/f':>16} {'b (m)':>18} {'e2':>22}")
    for name in ELLIPSOID_PRESETS:
        ell = get_ellipsoid(name)
        inv_f = "inf" if math.isinf(ell.inv_f) else repr(ell.inv_f)
        typer.echo(f"{name:<12} {ell.a!r:>14} {inv_f:>16} {ell.b!r:>18} {ell.e2!r:>22}")


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Run the command line without exiting the interpreter; returns the exit code."""
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        rv = app(args=args, prog_name="spheroid-centroid", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.exceptions.Abort:
        typer.echo("Aborted!", err=True)
        return 1
    return rv if isinstance(rv, int) else EXIT_OK


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
