"""Pair-generation observables: overlaps, amplitudes, entanglement degree,
bandwidths and emission spectra for the two simultaneous down-conversion
processes.

Only amplitude *ratios* are physical outputs here: the prefactor shared by
both processes (nonlinear coefficient, pump field, hbar, sqrt(ws wi), pi^2,
interaction time) cancels in the entanglement degree and in normalized
spectra, and absolute pair brightness is out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .errors import (
    DegenerateGroupIndices,
    FilterTooWide,
    QuadratureFailure,
    UndefinedGamma,
)
from .modesolver import ModalSolution, TrialField
from .qpm import GratingDesign, InteractionSpec


def sinc(x):
    """Unnormalized sinc: sin(x)/x with sinc(0) = 1."""
    return np.sinc(np.asarray(x) / np.pi)


def overlap_integral(pump: TrialField, a: TrialField, b: TrialField) -> float:
    """Transverse overlap iint psi_p psi_a psi_b dy dz (1/um), closed form.

    For three members of the trial family on the same (w, h) the integral of
    the triple product (Gaussians times z^3 over the half-line) is
    elementary:

        I = 32 prod_j sqrt(a_yj) a_zj^(3/2)
            / (pi sqrt(w h) sqrt(sum_j a_yj^2) (sum_j a_zj^2)^2).

    Positive for fundamental-mode triples (the three fields share the same
    positive-lobe sign convention).
    """
    fields = (pump, a, b)
    w, h = pump.width_w, pump.depth_h
    for f in fields:
        if f.width_w != w or f.depth_h != h:
            raise ValueError("all three fields must share the same geometry")
    a_sum = sum(f.alpha_y**2 for f in fields)
    b_sum = sum(f.alpha_z**2 for f in fields)
    prod = math.prod(math.sqrt(f.alpha_y) * f.alpha_z**1.5 for f in fields)
    return 32.0 * prod / (math.pi * math.sqrt(w * h) * math.sqrt(a_sum) * b_sum**2)


def overlap_integral_quadrature(pump: TrialField, a: TrialField, b: TrialField,
                                tol: float = 1e-10) -> float:
    """Adaptive-quadrature oracle for ``overlap_integral``."""

    def integrand(z: float, y: float) -> float:
        return pump.amplitude(y, z) * a.amplitude(y, z) * b.amplitude(y, z)

    ymax = 8.0 * pump.width_w / min(f.alpha_y for f in (pump, a, b))
    zmax = 8.0 * pump.depth_h / min(f.alpha_z for f in (pump, a, b))
    val, err = integrate.dblquad(integrand, -ymax, ymax, -zmax, 0.0,
                                 epsabs=tol * 1e-2, epsrel=1e-12)
    if err > tol:
        raise QuadratureFailure(
            f"overlap quadrature error {err:.2e} above tolerance {tol:.2e}"
        )
    return val


@dataclass(frozen=True)
class ProcessAmplitudes:
    """Relative two-photon amplitudes of the two processes.

    C_rel = (I / (n_s n_i)) exp(-i dk L/2) sinc(dk L/2), per process, with the
    prefactor common to both processes omitted (it cancels in every reported
    ratio; absolute scale is undefined by construction).
    """

    I_oe_per_um: float
    I_eo_per_um: float
    C_oe_rel: complex
    C_eo_rel: complex
    delta_k_oe: float  # rad/um
    delta_k_eo: float  # rad/um


def relative_amplitudes(po: ModalSolution, so: ModalSolution, se: ModalSolution,
                        io: ModalSolution, ie: ModalSolution,
                        design: GratingDesign, spec: InteractionSpec,
                        lambda_s_nm: float | None = None) -> ProcessAmplitudes:
    """Amplitudes from five mode solutions and the grating design.

    The solutions must be solved at the evaluation wavelengths: ``so``/``se``
    at ``lambda_s_nm`` (default: the design signal wavelength) and
    ``io``/``ie`` at the idler slaved to it by energy conservation.
    """
    if lambda_s_nm is None:
        lambda_s_nm = spec.lambda_s_nm
    lambda_i_nm = spec.idler_for(lambda_s_nm)
    lp = spec.lambda_p_nm * 1e-3
    ls = lambda_s_nm * 1e-3
    li = lambda_i_nm * 1e-3
    common = 2.0 * math.pi * po.n_eff / lp
    dk_oe = design.K1 - (common - 2.0 * math.pi * (so.n_eff / ls + ie.n_eff / li))
    dk_eo = design.K2 - (common - 2.0 * math.pi * (se.n_eff / ls + io.n_eff / li))
    i_oe = overlap_integral(po.field, so.field, ie.field)
    i_eo = overlap_integral(po.field, se.field, io.field)
    half_l = 0.5 * spec.length_mm * 1e3  # um
    c_oe = (i_oe / (so.n_eff * ie.n_eff)) * np.exp(-1j * dk_oe * half_l) * sinc(dk_oe * half_l)
    c_eo = (i_eo / (se.n_eff * io.n_eff)) * np.exp(-1j * dk_eo * half_l) * sinc(dk_eo * half_l)
    return ProcessAmplitudes(
        I_oe_per_um=i_oe,
        I_eo_per_um=i_eo,
        C_oe_rel=complex(c_oe),
        C_eo_rel=complex(c_eo),
        delta_k_oe=dk_oe,
        delta_k_eo=dk_eo,
    )


def amplitude_ratio_closed_form(po: ModalSolution, so: ModalSolution,
                                se: ModalSolution, io: ModalSolution,
                                ie: ModalSolution) -> float:
    """C_oe/C_eo at zero mismatch directly from the variational parameters.

    Equivalent to the ratio of ``relative_amplitudes`` magnitudes when both
    processes are exactly phase-matched; kept as an independent code path.
    """
    num = (
        math.sqrt(so.field.alpha_y) * so.field.alpha_z**1.5
        * math.sqrt(ie.field.alpha_y) * ie.field.alpha_z**1.5
        * math.sqrt(po.field.alpha_y**2 + se.field.alpha_y**2 + io.field.alpha_y**2)
        * (po.field.alpha_z**2 + se.field.alpha_z**2 + io.field.alpha_z**2) ** 2
        * se.n_eff * io.n_eff
    )
    den = (
        math.sqrt(se.field.alpha_y) * se.field.alpha_z**1.5
        * math.sqrt(io.field.alpha_y) * io.field.alpha_z**1.5
        * math.sqrt(po.field.alpha_y**2 + so.field.alpha_y**2 + ie.field.alpha_y**2)
        * (po.field.alpha_z**2 + so.field.alpha_z**2 + ie.field.alpha_z**2) ** 2
        * so.n_eff * ie.n_eff
    )
    return num / den


def gamma(amplitudes: ProcessAmplitudes) -> float:
    """Entanglement degree: min/max of the two amplitude magnitudes, in [0, 1]."""
    a = abs(amplitudes.C_oe_rel)
    b = abs(amplitudes.C_eo_rel)
    if a == 0.0 and b == 0.0:
        raise UndefinedGamma("both process amplitudes vanish")
    return min(a, b) / max(a, b)


def bandwidth_approx(N_so: float, N_se: float, N_io: float, N_ie: float,
                     lambda_s_nm: float, length_mm: float) -> tuple[float, float]:
    """First-order signal bandwidths (nm) of the two processes.

    dl_oe = ls^2 / (L |N_ie - N_so|) and dl_eo = ls^2 / (L |N_io - N_se|);
    this is the half-width to the first sinc zero (the numeric FWHM of the
    sinc^2 spectrum is 0.886x this value). Absolute values are used since
    the sign of the group-index difference is irrelevant to the width.
    """
    length_nm = length_mm * 1e6
    d_oe = abs(N_ie - N_so)
    d_eo = abs(N_io - N_se)
    if d_oe < 1e-6 or d_eo < 1e-6:
        raise DegenerateGroupIndices(
            f"group-index differences |N_ie-N_so| = {d_oe:.2e}, "
            f"|N_io-N_se| = {d_eo:.2e}: bandwidth formally unbounded"
        )
    return (lambda_s_nm**2 / (length_nm * d_oe),
            lambda_s_nm**2 / (length_nm * d_eo))


def spectrum(mismatch: Callable[[float], float], length_mm: float,
             lambda_grid_nm: Sequence[float]) -> np.ndarray:
    """Normalized sinc^2 emission spectrum over a signal-wavelength grid.

    ``mismatch`` maps lambda_s (nm) to Delta-k (rad/um) for the chosen
    process; the curve is normalized to peak 1.
    """
    half_l = 0.5 * length_mm * 1e3
    vals = np.array([sinc(mismatch(lam) * half_l) ** 2 for lam in lambda_grid_nm],
                    dtype=float)
    peak = vals.max()
    if peak <= 0.0:
        raise UndefinedGamma("spectrum vanishes over the requested range")
    return vals / peak


def fwhm(lambda_grid_nm: Sequence[float], intensity: Sequence[float]) -> float:
    """Full width at half maximum by linear interpolation of the crossings."""
    lam = np.asarray(lambda_grid_nm, dtype=float)
    y = np.asarray(intensity, dtype=float)
    half = 0.5 * y.max()
    ipk = int(np.argmax(y))
    above = y >= half

    def cross(i0: int, step: int) -> float:
        i = i0
        while 0 <= i + step < len(y) and above[i + step]:
            i += step
        j = i + step
        if j < 0 or j >= len(y):
            raise ValueError("half-maximum crossing outside the sampled range")
        frac = (y[i] - half) / (y[i] - y[j])
        return lam[i] + frac * (lam[j] - lam[i])

    return abs(cross(ipk, +1) - cross(ipk, -1))


def filtered_gamma(amplitudes_at: Callable[[float], ProcessAmplitudes],
                   design_lambda_s_nm: float, filter_fwhm_nm: float,
                   bandwidth_oe_nm: float, bandwidth_eo_nm: float,
                   n_samples: int = 33,
                   conjugate_compression: float = 1.0) -> float:
    """Entanglement degree after a rectangular bandpass filter.

    The filter sits on the idler arm (coincidence detection makes it act
    non-locally on the pair). Energy conservation maps its width onto a
    signal-side window of ``filter_fwhm_nm * conjugate_compression`` where
    ``conjugate_compression = (lambda_s / lambda_i)**2``; pass 1.0 for a
    filter placed directly on the signal arm. Each process's amplitude
    magnitude is averaged over that window and gamma is the min/max ratio
    of the averages. The filter must be narrower than the narrower process
    bandwidth, otherwise bandwidth distinguishability is conflated and
    FilterTooWide is raised.
    """
    narrow = min(bandwidth_oe_nm, bandwidth_eo_nm)
    if filter_fwhm_nm >= narrow:
        raise FilterTooWide(
            f"filter width {filter_fwhm_nm} nm not below the narrower process "
            f"bandwidth {narrow} nm"
        )
    if filter_fwhm_nm <= 0.0:
        return gamma(amplitudes_at(design_lambda_s_nm))
    window = filter_fwhm_nm * conjugate_compression
    grid = np.linspace(design_lambda_s_nm - 0.5 * window,
                       design_lambda_s_nm + 0.5 * window, n_samples)
    mags_oe = []
    mags_eo = []
    for lam in grid:
        amps = amplitudes_at(float(lam))
        mags_oe.append(abs(amps.C_oe_rel))
        mags_eo.append(abs(amps.C_eo_rel))
    avg_oe = float(np.trapezoid(mags_oe, grid)) / window
    avg_eo = float(np.trapezoid(mags_eo, grid)) / window
    if avg_oe == 0.0 and avg_eo == 0.0:
        raise UndefinedGamma("both filtered amplitudes vanish")
    return min(avg_oe, avg_eo) / max(avg_oe, avg_eo)


def grating_scheme_efficiency_ratio() -> float:
    """Pair-rate advantage of the compound grating over two separate gratings.

    Compound scheme: each process sees amplitude (4/pi^2) L over the full
    length. Separate gratings on the same substrate: amplitude (2/pi)(L/2)
    per process. The rate ratio ((4/pi^2) L)^2 / ((2/pi) L/2)^2 simplifies to
    16/pi^2 ~ 1.62, independent of L.
    """
    return 16.0 / math.pi**2


@dataclass
class EntanglementReport:
    """Summary of a single design evaluation."""

    gamma: float
    bandwidth_oe_nm: float
    bandwidth_eo_nm: float
    bandwidth_ratio: float
    grating: GratingDesign
    amplitudes: ProcessAmplitudes
    fwhm_oe_nm: float | None = None
    fwhm_eo_nm: float | None = None
    spectrum_lambda_nm: tuple[float, ...] | None = None
    spectrum_oe: tuple[float, ...] | None = None
    spectrum_eo: tuple[float, ...] | None = None

    def to_dict(self) -> dict:
        d = {
            "gamma": self.gamma,
            "bandwidth_oe_nm": self.bandwidth_oe_nm,
            "bandwidth_eo_nm": self.bandwidth_eo_nm,
            "bandwidth_ratio": self.bandwidth_ratio,
            "grating": {
                "K1_rad_per_um": self.grating.K1,
                "K2_rad_per_um": self.grating.K2,
                "Lambda1_um": self.grating.Lambda1,
                "Lambda2_um": self.grating.Lambda2,
                "Lambda0_um": self.grating.Lambda0,
                "Lambdap_um": self.grating.Lambdap,
            },
            "amplitudes": {
                "I_oe_per_um": self.amplitudes.I_oe_per_um,
                "I_eo_per_um": self.amplitudes.I_eo_per_um,
                "C_oe_rel_abs": abs(self.amplitudes.C_oe_rel),
                "C_eo_rel_abs": abs(self.amplitudes.C_eo_rel),
                "delta_k_oe_rad_per_um": self.amplitudes.delta_k_oe,
                "delta_k_eo_rad_per_um": self.amplitudes.delta_k_eo,
                "note": "shared prefactor omitted; absolute scale undefined",
            },
        }
        if self.fwhm_oe_nm is not None:
            d["fwhm_oe_nm"] = self.fwhm_oe_nm
            d["fwhm_eo_nm"] = self.fwhm_eo_nm
        if self.spectrum_lambda_nm is not None:
            d["spectrum"] = {
                "lambda_s_nm": list(self.spectrum_lambda_nm),
                "intensity_oe": list(self.spectrum_oe),
                "intensity_eo": list(self.spectrum_eo),
            }
        return d
