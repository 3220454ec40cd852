import math

import numpy as np
import pytest

from qpmdesign import (
    DegenerateGroupIndices,
    FilterTooWide,
    UndefinedGamma,
    amplitude_ratio_closed_form,
    bandwidth_approx,
    fwhm,
    gamma,
    grating_scheme_efficiency_ratio,
    overlap_integral,
    overlap_integral_quadrature,
    relative_amplitudes,
    spectrum,
)
from qpmdesign.modesolver import TrialField
from qpmdesign.qpm import fourier_component, periods_from_frequencies, synthesize_pattern
from qpmdesign.spdc import ProcessAmplitudes, filtered_gamma, sinc


def amps(c_oe, c_eo, dk_oe=0.0, dk_eo=0.0):
    return ProcessAmplitudes(I_oe_per_um=1.0, I_eo_per_um=1.0,
                             C_oe_rel=c_oe, C_eo_rel=c_eo,
                             delta_k_oe=dk_oe, delta_k_eo=dk_eo)


class TestOverlap:
    def test_closed_form_vs_quadrature_random(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            fields = [TrialField(*rng.uniform(0.4, 3.0, size=2), 9.0, 7.0)
                      for _ in range(3)]
            closed = overlap_integral(*fields)
            quad = overlap_integral_quadrature(*fields)
            assert quad == pytest.approx(closed, rel=1e-8)

    def test_self_overlap_analytic(self):
        ay, az, w, h = 1.4, 0.9, 10.0, 8.0
        f = TrialField(ay, az, w, h)
        expected = (32.0 * (math.sqrt(ay) * az**1.5) ** 3
                    / (math.pi * math.sqrt(w * h) * math.sqrt(3 * ay**2)
                       * (3 * az**2) ** 2))
        val = overlap_integral(f, f, f)
        assert val == pytest.approx(expected, rel=1e-14)
        assert val > 0.0

    def test_symmetric_in_signal_idler(self):
        p = TrialField(2.0, 2.1, 10.0, 10.0)
        a = TrialField(1.4, 1.5, 10.0, 10.0)
        b = TrialField(1.1, 1.2, 10.0, 10.0)
        assert overlap_integral(p, a, b) == overlap_integral(p, b, a)

    def test_mixed_geometry_rejected(self):
        p = TrialField(1.0, 1.0, 10.0, 10.0)
        q = TrialField(1.0, 1.0, 9.0, 10.0)
        with pytest.raises(ValueError):
            overlap_integral(p, p, q)


class TestAmplitudes:
    def test_two_paths_agree_at_design(self, reference_result):
        m = reference_result.modes
        ratio_direct = (abs(reference_result.amplitudes.C_oe_rel)
                        / abs(reference_result.amplitudes.C_eo_rel))
        ratio_closed = amplitude_ratio_closed_form(
            m["po"], m["so"], m["se"], m["io"], m["ie"])
        assert ratio_direct == pytest.approx(ratio_closed, rel=1e-10)

    def test_two_paths_agree_all_table_rows(self, table_results):
        for result in table_results.values():
            m = result.modes
            ratio_direct = (abs(result.amplitudes.C_oe_rel)
                            / abs(result.amplitudes.C_eo_rel))
            ratio_closed = amplitude_ratio_closed_form(
                m["po"], m["so"], m["se"], m["io"], m["ie"])
            assert ratio_direct == pytest.approx(ratio_closed, rel=1e-10)

    def test_closed_form_ratio_unity_under_symmetry(self):
        po = _fake_mode(2.0, 2.1, 2.33)
        s = _fake_mode(1.5, 1.6, 2.25)
        i = _fake_mode(1.1, 1.2, 2.20)
        assert amplitude_ratio_closed_form(po, s, s, i, i) == pytest.approx(1.0, rel=1e-14)

    def test_amplitude_vanishes_at_sinc_null(self, reference_result):
        spec = reference_result.spec
        # first zero of the oe process sits one group-delay bandwidth away
        lam_null = spec.lambda_s_nm + reference_result.bandwidth_oe_nm
        a = reference_result.amplitudes_at(lam_null)
        assert abs(a.C_oe_rel) < 0.05 * abs(a.C_eo_rel)

    def test_phase_tracked(self, reference_result):
        a = reference_result.amplitudes_at(reference_result.spec.lambda_s_nm + 0.05)
        assert abs(a.C_oe_rel.imag) > 0.0


def _fake_mode(ay, az, neff):
    from qpmdesign.modesolver import ModalSolution
    return ModalSolution(wavelength_nm=780.0, polarization="ordinary",
                         n_eff=neff, n_bulk=neff - 0.002, delta_n=0.003,
                         field=TrialField(ay, az, 10.0, 10.0))


class TestGamma:
    def test_equal_amplitudes(self):
        assert gamma(amps(0.3, 0.3)) == 1.0

    def test_one_zero(self):
        assert gamma(amps(0.0, 0.4)) == 0.0

    def test_both_zero(self):
        with pytest.raises(UndefinedGamma):
            gamma(amps(0.0, 0.0))

    def test_scale_invariant(self):
        a = gamma(amps(0.2, 0.25))
        b = gamma(amps(0.2 * 7.3, 0.25 * 7.3))
        assert a == pytest.approx(b, rel=1e-15)


class TestBandwidth:
    def test_inverse_length_scaling(self):
        bw5 = bandwidth_approx(2.37, 2.275, 2.266, 2.185, 780.0, 5.0)
        bw10 = bandwidth_approx(2.37, 2.275, 2.266, 2.185, 780.0, 10.0)
        assert bw5[0] == pytest.approx(2 * bw10[0], rel=1e-12)
        assert bw5[1] == pytest.approx(2 * bw10[1], rel=1e-12)
        assert bw5[1] / bw5[0] == pytest.approx(bw10[1] / bw10[0], rel=1e-12)

    def test_degenerate_group_indices(self):
        with pytest.raises(DegenerateGroupIndices):
            bandwidth_approx(2.3, 2.275, 2.275 + 1e-8, 2.2, 780.0, 10.0)


class TestSpectrum:
    def test_analytic_sinc_curve_fwhm(self):
        # linear mismatch: FWHM of sinc^2 is 2*1.39156 / (slope * L/2)
        slope = 0.5  # rad/um per nm
        length_mm = 10.0
        half_l = 0.5 * length_mm * 1e3
        grid = np.linspace(-0.1, 0.1, 4001)
        curve = spectrum(lambda lam: slope * lam, length_mm, grid)
        expected = 2.0 * 1.3915574 / (slope * half_l)
        assert fwhm(grid, curve) == pytest.approx(expected, rel=1e-3)
        assert curve.max() == 1.0

    def test_peak_at_design(self, reference_result):
        grid = np.linspace(779.0, 781.0, 201)
        curve = spectrum(lambda lam: reference_result.mismatch("oe", lam),
                         reference_result.spec.length_mm, grid)
        assert curve[100] == pytest.approx(1.0, abs=1e-6)

    def test_local_symmetry(self, reference_result):
        d = 0.03  # well inside the 0.29 nm width
        lam0 = reference_result.spec.lambda_s_nm
        grid = [lam0 - d, lam0, lam0 + d]
        curve = spectrum(lambda lam: reference_result.mismatch("oe", lam),
                         reference_result.spec.length_mm, grid)
        assert curve[0] == pytest.approx(curve[2], rel=0.05)


class TestFilteredGamma:
    def test_zero_width_limit(self, reference_result):
        g0 = reference_result.gamma
        assert reference_result.filtered_gamma(0.0) == pytest.approx(g0, rel=1e-12)

    def test_narrow_filter_close_to_unfiltered(self, reference_result):
        g = reference_result.filtered_gamma(0.1)
        assert g == pytest.approx(reference_result.gamma, abs=1e-3)

    def test_filter_as_wide_as_narrow_band_rejected(self, reference_result):
        with pytest.raises(FilterTooWide):
            reference_result.filtered_gamma(reference_result.bandwidth_oe_nm)


class TestEfficiencyRatio:
    def test_analytic_value(self):
        assert grating_scheme_efficiency_ratio() == 16.0 / math.pi**2
        assert grating_scheme_efficiency_ratio() == pytest.approx(1.6211, abs=1e-4)

    def test_length_cancels(self):
        for length in (1.0, 2.0, 10.0):
            compound = (4.0 / math.pi**2) * length
            separate = (2.0 / math.pi) * (length / 2.0)
            assert (compound / separate) ** 2 == pytest.approx(
                grating_scheme_efficiency_ratio(), rel=1e-14)

    def test_consistent_with_fourier_construction(self):
        design = periods_from_frequencies(2 * math.pi / 4.580, 2 * math.pi / 3.653)
        pattern = synthesize_pattern(design, 100 * design.Lambdap * 1e-3)
        c1 = abs(fourier_component(pattern, design.K1))
        length = pattern.length_um
        measured = (c1 * length) ** 2 / ((2.0 / math.pi) * (length / 2.0)) ** 2
        assert measured == pytest.approx(grating_scheme_efficiency_ratio(), rel=1e-3)


def test_sinc_convention():
    assert sinc(0.0) == 1.0
    assert float(sinc(math.pi)) == pytest.approx(0.0, abs=1e-15)
    assert float(sinc(1.0)) == pytest.approx(math.sin(1.0), rel=1e-12)
