"""Command-line front end.

Subcommands: design | sweep | spectrum | grating. Exit codes: 0 success,
1 configuration error, 2 physics infeasibility (no guided mode, degenerate
grating). CSV output uses 6 significant digits; JSON carries full precision.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import DesignConfig, load_config
from .errors import (
    ConfigError,
    DegenerateGroupIndices,
    DegenerateModulation,
    NoGuidedMode,
    NonPositiveFrequency,
    QpmDesignError,
)
from .pipeline import design_point
from .qpm import export_pattern_csv, fourier_component, synthesize_pattern

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PHYSICS = 2

PHYSICS_ERRORS = (NoGuidedMode, NonPositiveFrequency, DegenerateModulation,
                  DegenerateGroupIndices)


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpmdesign",
        description="Design dual-period QPM photon-pair sources in "
                    "Ti-indiffused LiNbO3 waveguides.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config file (default: built-in design point)")
        p.add_argument("--out", help="output directory (default: stdout/cwd)")
        p.add_argument("--temperature", type=float, metavar="degC",
                       help="override operating temperature")
        p.add_argument("--length-mm", type=float, metavar="L",
                       help="override interaction length")
        p.add_argument("--dump-config", action="store_true",
                       help="print the effective config JSON and exit")

    p_design = sub.add_parser("design", help="evaluate a single design point")
    common(p_design)

    p_sweep = sub.add_parser("sweep", help="sweep geometries, one CSV row per design")
    common(p_sweep)

    p_spec = sub.add_parser("spectrum", help="sample the two emission spectra")
    common(p_spec)
    p_spec.add_argument("--half-range-nm", type=float, default=10.0,
                        help="scan half-range around the design signal wavelength")
    p_spec.add_argument("--samples", type=int, default=2001,
                        help="number of wavelength samples")

    p_grat = sub.add_parser("grating", help="synthesize the poling pattern")
    common(p_grat)
    return parser


def _apply_overrides(cfg: DesignConfig, args) -> DesignConfig:
    if args.temperature is not None:
        cfg.temperature_c = args.temperature
    if args.length_mm is not None:
        cfg.length_mm = args.length_mm
    cfg.validate()
    return cfg


def _emit(text: str, out_dir: str | None, filename: str) -> None:
    if out_dir is None:
        sys.stdout.write(text)
    else:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        (path / filename).write_text(text)
        print(f"wrote {path / filename}")


def cmd_design(cfg: DesignConfig, args) -> int:
    result = design_point(cfg.interaction(), cfg.single_geometry(),
                          cfg.material(), cfg.solver.group_index_step_nm)
    doc = result.report().to_dict()
    doc["geometry"] = {"width_um": cfg.width_um, "depth_um": cfg.depth_um}
    doc["units"] = {"wavelength": "nm", "geometry": "um", "period": "um",
                    "temperature": "degC", "length": "mm"}
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out, "design.json")
    return EXIT_OK


def cmd_sweep(cfg: DesignConfig, args) -> int:
    spec = cfg.interaction()
    material = cfg.material()
    lines = [
        "# geometry in um, periods in um, temperature "
        f"{cfg.temperature_c} degC, length {cfg.length_mm} mm",
        "depth_um,width_um,gamma,Lambda1_um,Lambda2_um,status",
    ]
    for geom in cfg.sweep_geometries():
        prefix = f"{_fmt(geom.depth_h)},{_fmt(geom.width_w)}"
        try:
            result = design_point(spec, geom, material,
                                  cfg.solver.group_index_step_nm)
        except PHYSICS_ERRORS as exc:
            lines.append(f"{prefix},,,,{type(exc).__name__}")
            continue
        lines.append(
            f"{prefix},{_fmt(result.gamma)},{_fmt(result.design.Lambda1)},"
            f"{_fmt(result.design.Lambda2)},ok"
        )
    _emit("\n".join(lines) + "\n", args.out, "sweep.csv")
    return EXIT_OK


def cmd_spectrum(cfg: DesignConfig, args) -> int:
    result = design_point(cfg.interaction(), cfg.single_geometry(),
                          cfg.material(), cfg.solver.group_index_step_nm)
    grid, i_oe, i_eo, f_oe, f_eo = result.spectra(args.half_range_nm, args.samples)
    lines = [
        "# wavelengths in nm, intensities normalized to peak 1",
        f"# FWHM_oe_nm = {_fmt(f_oe)}",
        f"# FWHM_eo_nm = {_fmt(f_eo)}",
        f"# bandwidth_approx_oe_nm = {_fmt(result.bandwidth_oe_nm)}",
        f"# bandwidth_approx_eo_nm = {_fmt(result.bandwidth_eo_nm)}",
        "lambda_s_nm,intensity_oe,intensity_eo",
    ]
    for lam, a, b in zip(grid, i_oe, i_eo):
        lines.append(f"{_fmt(lam)},{_fmt(a)},{_fmt(b)}")
    _emit("\n".join(lines) + "\n", args.out, "spectrum.csv")
    return EXIT_OK


def cmd_grating(cfg: DesignConfig, args) -> int:
    result = design_point(cfg.interaction(), cfg.single_geometry(),
                          cfg.material(), cfg.solver.group_index_step_nm)
    design = result.design
    pattern = synthesize_pattern(design, cfg.length_mm)
    c1 = fourier_component(pattern, design.K1)
    c2 = fourier_component(pattern, design.K2)
    ideal = 4.0 / 3.141592653589793**2
    check = {
        "Lambda0_um": design.Lambda0,
        "Lambdap_um": design.Lambdap,
        "Lambda1_um": design.Lambda1,
        "Lambda2_um": design.Lambda2,
        "length_mm": cfg.length_mm,
        "abs_c_K1": abs(c1),
        "abs_c_K2": abs(c2),
        "ideal_first_order": ideal,
        "abs_c_K1_rel_dev": abs(c1) / ideal - 1.0,
        "abs_c_K2_rel_dev": abs(c2) / ideal - 1.0,
        "n_domain_boundaries": len(pattern.domain_boundaries),
    }
    if args.out is None:
        sys.stdout.write(json.dumps(check, indent=2, sort_keys=True) + "\n")
    else:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        export_pattern_csv(pattern, design, out / "poling_pattern.csv")
        (out / "fourier_check.json").write_text(
            json.dumps(check, indent=2, sort_keys=True) + "\n")
        print(f"wrote {out / 'poling_pattern.csv'} and {out / 'fourier_check.json'}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        cfg = _apply_overrides(cfg, args)
        if args.dump_config:
            sys.stdout.write(json.dumps(cfg.to_dict(), indent=2, sort_keys=True) + "\n")
            return EXIT_OK
        handler = {
            "design": cmd_design,
            "sweep": cmd_sweep,
            "spectrum": cmd_spectrum,
            "grating": cmd_grating,
        }[args.command]
        return handler(cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PHYSICS_ERRORS as exc:
        print(f"infeasible design: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except QpmDesignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
