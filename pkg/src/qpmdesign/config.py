"""Run configuration: JSON schema, defaults, loading and validation.

Units at this interface: wavelengths nm, geometry um, temperature degC,
interaction length mm.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .dispersion import (
    DEFAULT_INCREMENTS,
    IndexIncrementTable,
    WaveguideGeometry,
    load_sellmeier_sets,
)
from .errors import ConfigError
from .pipeline import Material
from .qpm import InteractionSpec


@dataclass
class SolverSettings:
    grid_points: int = 16
    alpha_min: float = 0.2
    alpha_max: float = 8.0
    group_index_step_nm: float = 0.1

    def validate(self):
        if self.grid_points < 4:
            raise ConfigError("solver.grid_points must be at least 4")
        if not 0.0 < self.alpha_min < self.alpha_max:
            raise ConfigError("solver alpha range must satisfy 0 < min < max")
        if self.group_index_step_nm <= 0:
            raise ConfigError("solver.group_index_step_nm must be positive")


@dataclass
class DesignConfig:
    """Everything one invocation needs.

    ``width_um``/``depth_um`` are scalars for a single design or equal-length
    lists for a sweep; an invocation must be one or the other.
    """

    lambda_p_nm: float = 519.0
    lambda_s_nm: float = 780.0
    lambda_i_nm: float | None = 1551.0
    temperature_c: float = 25.0
    length_mm: float = 10.0
    width_um: float | list[float] = 10.0
    depth_um: float | list[float] = 10.0
    cover_index: float = 1.0
    sellmeier_file: str | None = None
    index_increments: list[list[float]] = field(
        default_factory=lambda: [list(row) for row in DEFAULT_INCREMENTS]
    )
    solver: SolverSettings = field(default_factory=SolverSettings)

    @property
    def is_sweep(self) -> bool:
        return isinstance(self.width_um, list) or isinstance(self.depth_um, list)

    def interaction(self) -> InteractionSpec:
        try:
            return InteractionSpec(
                lambda_p_nm=self.lambda_p_nm,
                lambda_s_nm=self.lambda_s_nm,
                lambda_i_nm=self.lambda_i_nm,
                temperature_c=self.temperature_c,
                length_mm=self.length_mm,
            )
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def material(self) -> Material:
        sets = load_sellmeier_sets(self.sellmeier_file)
        entries = tuple(tuple(float(v) for v in row) for row in self.index_increments)
        table = IndexIncrementTable(entries, extrapolation="clamp")
        return Material(ordinary=sets["ordinary"],
                        extraordinary=sets["extraordinary"], increments=table)

    def single_geometry(self) -> WaveguideGeometry:
        if self.is_sweep:
            raise ConfigError("this command requires a single geometry, got sweep lists")
        return WaveguideGeometry(width_w=float(self.width_um),
                                 depth_h=float(self.depth_um),
                                 cover_index_nc=self.cover_index)

    def sweep_geometries(self) -> list[WaveguideGeometry]:
        """Depth-major, width-minor ordering; paired lists of equal length
        are zipped, a scalar on one axis is broadcast."""
        widths = self.width_um if isinstance(self.width_um, list) else [self.width_um]
        depths = self.depth_um if isinstance(self.depth_um, list) else [self.depth_um]
        if not widths or not depths:
            raise ConfigError("sweep ranges must be non-empty")
        if len(widths) == len(depths) and len(widths) > 1:
            pairs = list(zip(depths, widths))
        else:
            pairs = [(d, w) for d in depths for w in widths]
        return [WaveguideGeometry(width_w=float(w), depth_h=float(d),
                                  cover_index_nc=self.cover_index)
                for d, w in pairs]

    def validate(self):
        self.interaction()
        self.solver.validate()
        if self.cover_index < 1.0:
            raise ConfigError("cover_index must be >= 1")
        self.material()
        for geom in ([self.single_geometry()] if not self.is_sweep
                     else self.sweep_geometries()):
            if geom.width_w <= 0 or geom.depth_h <= 0:
                raise ConfigError("geometry dimensions must be positive")

    def to_dict(self) -> dict[str, Any]:
        return {
            "lambda_p_nm": self.lambda_p_nm,
            "lambda_s_nm": self.lambda_s_nm,
            "lambda_i_nm": self.lambda_i_nm,
            "temperature_c": self.temperature_c,
            "length_mm": self.length_mm,
            "width_um": self.width_um,
            "depth_um": self.depth_um,
            "cover_index": self.cover_index,
            "sellmeier_file": self.sellmeier_file,
            "index_increments": self.index_increments,
            "solver": {
                "grid_points": self.solver.grid_points,
                "alpha_min": self.solver.alpha_min,
                "alpha_max": self.solver.alpha_max,
                "group_index_step_nm": self.solver.group_index_step_nm,
            },
        }


def config_from_dict(doc: dict[str, Any]) -> DesignConfig:
    known = {
        "lambda_p_nm", "lambda_s_nm", "lambda_i_nm", "temperature_c",
        "length_mm", "width_um", "depth_um", "cover_index", "sellmeier_file",
        "index_increments", "solver",
    }
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    solver_doc = doc.pop("solver", {})
    try:
        solver = SolverSettings(**solver_doc)
    except TypeError as exc:
        raise ConfigError(f"bad solver settings: {exc}") from exc
    cfg = DesignConfig(**doc, solver=solver)
    cfg.validate()
    return cfg


def load_config(path: str | None) -> DesignConfig:
    """Load a config JSON; None yields the default design point."""
    if path is None:
        cfg = DesignConfig()
        cfg.validate()
        return cfg
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    return config_from_dict(doc)
