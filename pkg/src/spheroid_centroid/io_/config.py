"""Command-line run settings, in the degrees users type."""

import math
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, field_validator

from ..core.geodesy import ELLIPSOID_PRESETS, Ellipsoid, get_ellipsoid, make_ellipsoid
from ..core.models import CentroidConfig

# CLI default densification step, the engine's 1e-3 rad expressed in degrees
DEFAULT_STEP_DEG = math.degrees(1e-3)
DEFAULT_GRID_STEP_DEG = 0.03

OutputFormat = Literal["text", "json"]
InputFormat = Literal["auto", "geojson", "wkt"]


class RunConfig(BaseModel):
    """Everything one ``compute`` run needs.

    Angles are degrees here; ``to_centroid_config`` and ``grid_step_rad`` are the
    only places they become radians.
    """

    model_config = ConfigDict(frozen=True)

    ellipsoid: str = "hayford"
    a: PositiveFloat | None = None
    inv_f: float | None = None
    # None means auto (mean outer-ring longitude)
    lambda0_deg: float | None = None
    max_dphi_deg: PositiveFloat = DEFAULT_STEP_DEG
    max_dlambda_deg: PositiveFloat = DEFAULT_STEP_DEG
    min_area: float = Field(default=1e-6, ge=0.0)
    oracle: bool = False
    grid_step_deg: PositiveFloat = DEFAULT_GRID_STEP_DEG
    output_format: OutputFormat = "text"
    input: str = "-"
    input_format: InputFormat = "auto"
    emit_geojson: Path | None = None
    export_strips: Path | None = None

    @field_validator("lambda0_deg", mode="before")
    @classmethod
    def _parse_lambda0(cls, value: object) -> object:
        if isinstance(value, str):
            text = value.strip().lower()
            if text == "auto":
                return None
            try:
                return float(text)
            except ValueError as e:
                raise ValueError(f"lambda0 must be 'auto' or degrees, got {value!r}") from e
        return value

    @field_validator("lambda0_deg")
    @classmethod
    def _finite_lambda0(cls, value: float | None) -> float | None:
        if value is not None and not math.isfinite(value):
            raise ValueError("lambda0 must be finite")
        return value

    @field_validator("ellipsoid")
    @classmethod
    def _known_preset(cls, value: str) -> str:
        name = value.strip().lower()
        if name not in ELLIPSOID_PRESETS:
            raise ValueError(
                f"unknown ellipsoid {value!r}; choose one of {', '.join(sorted(ELLIPSOID_PRESETS))}"
            )
        return name

    def resolve_ellipsoid(self) -> Ellipsoid:
        """The preset, with ``a`` and/or ``inv_f`` overriding its parameters.

        Raises:
            EllipsoidError: the overridden parameters do not describe an oblate spheroid.
        """
        if self.a is None and self.inv_f is None:
            return get_ellipsoid(self.ellipsoid)
        preset_a, preset_inv_f = ELLIPSOID_PRESETS[self.ellipsoid]
        return make_ellipsoid(
            self.a if self.a is not None else preset_a,
            self.inv_f if self.inv_f is not None else preset_inv_f,
        )

    def to_centroid_config(self) -> CentroidConfig:
        return CentroidConfig(
            lambda0=None if self.lambda0_deg is None else math.radians(self.lambda0_deg),
            max_dphi=math.radians(self.max_dphi_deg),
            max_dlambda=math.radians(self.max_dlambda_deg),
            min_area=self.min_area,
        )

    @property
    def grid_step_rad(self) -> float:
        return math.radians(self.grid_step_deg)
