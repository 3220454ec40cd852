"""Refractive-index models for Ti-indiffused lithium niobate channel waveguides.

Covers the bulk substrate indices (temperature-dependent Sellmeier-type fit,
ordinary and extraordinary), the titanium in-diffusion surface index
increments, and the transverse index profile of the channel.

Units: wavelengths in nm at the public interfaces, geometry in um,
temperatures in degC.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Literal

import numpy as np

from .errors import ConfigError, OutOfRange

Polarization = Literal["ordinary", "extraordinary"]

_POL_ALIASES = {
    "o": "ordinary",
    "ordinary": "ordinary",
    "e": "extraordinary",
    "extraordinary": "extraordinary",
}


def normalize_polarization(pol: str) -> Polarization:
    try:
        return _POL_ALIASES[pol.lower()]
    except KeyError:
        raise ConfigError(f"unknown polarization {pol!r}") from None


@dataclass(frozen=True)
class SellmeierSet:
    """One polarization's dispersion fit for congruent LiNbO3.

    n^2 = A1 + (A2 + B1*F) / (lam^2 - (A3 + B2*F)^2) + B3*F - A4*lam^2
    with F = (T - t0)*(T + t0 + t_offset), lam in um, T in degC.
    """

    polarization: Polarization
    coefficients: tuple[float, ...]  # (A1, A2, A3, A4, B1, B2, B3)
    t0_c: float = 24.5
    t_offset_c: float = 546.32
    wavelength_range_nm: tuple[float, float] = (400.0, 2000.0)
    temperature_range_c: tuple[float, float] = (20.0, 200.0)

    def index(self, wavelength_nm: float, temperature_c: float = 25.0) -> float:
        lo, hi = self.wavelength_range_nm
        if not lo <= wavelength_nm <= hi:
            raise OutOfRange(
                f"wavelength {wavelength_nm} nm outside validated range [{lo}, {hi}] nm"
            )
        tlo, thi = self.temperature_range_c
        if not tlo <= temperature_c <= thi:
            raise OutOfRange(
                f"temperature {temperature_c} C outside validated range [{tlo}, {thi}] C"
            )
        a1, a2, a3, a4, b1, b2, b3 = self.coefficients
        lam = wavelength_nm * 1e-3  # um
        f = (temperature_c - self.t0_c) * (temperature_c + self.t0_c + self.t_offset_c)
        n2 = a1 + (a2 + b1 * f) / (lam**2 - (a3 + b2 * f) ** 2) + b3 * f - a4 * lam**2
        return math.sqrt(n2)


def load_sellmeier_sets(path: str | None = None) -> dict[Polarization, SellmeierSet]:
    """Load the two polarization sets from a JSON data file.

    With no path, the packaged congruent-LiNbO3 fit is used. The file layout
    is documented by the packaged ``data/linbo3_sellmeier.json``.
    """
    if path is None:
        raw = resources.files("qpmdesign.data").joinpath("linbo3_sellmeier.json").read_text()
    else:
        with open(path) as fh:
            raw = fh.read()
    doc = json.loads(raw)
    out: dict[Polarization, SellmeierSet] = {}
    for pol, entry in doc["sets"].items():
        pol = normalize_polarization(pol)
        out[pol] = SellmeierSet(
            polarization=pol,
            coefficients=tuple(entry["coefficients"]),
            t0_c=doc["t0_c"],
            t_offset_c=doc["t_offset_c"],
            wavelength_range_nm=tuple(doc["wavelength_range_nm"]),
            temperature_range_c=tuple(doc["temperature_range_c"]),
        )
    if set(out) != {"ordinary", "extraordinary"}:
        raise ConfigError("Sellmeier file must define both polarizations")
    return out


def bulk_index(sset: SellmeierSet, wavelength_nm: float, temperature_c: float = 25.0) -> float:
    """Bulk substrate index n_b for one polarization."""
    return sset.index(wavelength_nm, temperature_c)


# Ti in-diffusion surface index increments at the design wavelengths.
# Three-point table; values between entries are linearly interpolated.
DEFAULT_INCREMENTS = (
    (519.0, 0.0038, 0.0037),
    (780.0, 0.0034, 0.0030),
    (1550.0, 0.0025, 0.0025),
)


@dataclass(frozen=True)
class IndexIncrementTable:
    """Surface index increments Delta-n vs wavelength for both polarizations.

    ``extrapolation`` controls behavior outside the tabulated span:
    ``"error"`` raises OutOfRange, ``"clamp"`` holds the end values. The
    clamp mode exists because the design idler (1551 nm) sits 1 nm past the
    last tabulated point and spectra scan tens of nm around it.
    """

    entries: tuple[tuple[float, float, float], ...] = DEFAULT_INCREMENTS
    extrapolation: Literal["error", "clamp"] = "error"

    def __post_init__(self):
        lams = [e[0] for e in self.entries]
        if len(self.entries) < 2:
            raise ConfigError("increment table needs at least two entries")
        if any(b <= a for a, b in zip(lams, lams[1:])):
            raise ConfigError("increment table wavelengths must be strictly increasing")
        for lam, dno, dne in self.entries:
            # zero is tolerated (yields NoGuidedMode downstream), negatives are not
            if not (0.0 <= dno < 0.01 and 0.0 <= dne < 0.01):
                raise ConfigError(
                    f"index increments at {lam} nm must lie in [0, 0.01), got {dno}, {dne}"
                )

    @property
    def span_nm(self) -> tuple[float, float]:
        return self.entries[0][0], self.entries[-1][0]

    def increment(self, polarization: str, wavelength_nm: float) -> float:
        pol = normalize_polarization(polarization)
        lo, hi = self.span_nm
        if not lo <= wavelength_nm <= hi:
            if self.extrapolation == "error":
                raise OutOfRange(
                    f"wavelength {wavelength_nm} nm outside table span [{lo}, {hi}] nm"
                )
            wavelength_nm = min(max(wavelength_nm, lo), hi)
        lams = [e[0] for e in self.entries]
        col = 1 if pol == "ordinary" else 2
        vals = [e[col] for e in self.entries]
        return float(np.interp(wavelength_nm, lams, vals))


def index_increment(table: IndexIncrementTable, polarization: str, wavelength_nm: float) -> float:
    """Delta-n for one polarization; exact at table nodes, linear between."""
    return table.increment(polarization, wavelength_nm)


@dataclass(frozen=True)
class WaveguideGeometry:
    """Channel geometry: Gaussian 1/e half-width w, depth h (um), cover index."""

    width_w: float
    depth_h: float
    cover_index_nc: float = 1.0

    def __post_init__(self):
        if self.width_w <= 0 or self.depth_h <= 0:
            raise ConfigError("waveguide width and depth must be positive")
        if self.cover_index_nc < 1.0:
            raise ConfigError("cover index must be >= 1")


def index_profile(geom: WaveguideGeometry, n_b: float, delta_n: float, y_um, z_um):
    """Squared-index profile n^2(y, z) of the diffused channel.

    Substrate half-space z < 0 carries the double-Gaussian increment
    n_b^2 + 2 n_b dn exp(-y^2/w^2) exp(-z^2/h^2); the cover z >= 0 is uniform
    at nc^2. Accepts scalars or numpy arrays.
    """
    y = np.asarray(y_um, dtype=float)
    z = np.asarray(z_um, dtype=float)
    substrate = n_b**2 + 2.0 * n_b * delta_n * np.exp(-(y**2) / geom.width_w**2) * np.exp(
        -(z**2) / geom.depth_h**2
    )
    out = np.where(z < 0.0, substrate, geom.cover_index_nc**2)
    if out.ndim == 0:
        return float(out)
    return out
