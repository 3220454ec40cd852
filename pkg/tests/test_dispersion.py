import math

import numpy as np
import pytest

from qpmdesign import OutOfRange, WaveguideGeometry, bulk_index, index_increment, index_profile
from qpmdesign.dispersion import DEFAULT_INCREMENTS, IndexIncrementTable, load_sellmeier_sets

SETS = load_sellmeier_sets()

# Frozen regression value of the packaged coefficient set.
N_E_1550_25C = 2.1380823495927244


def test_pinned_extraordinary_index():
    n = bulk_index(SETS["extraordinary"], 1550.0, 25.0)
    assert 2.1 < n < 2.2
    assert n == pytest.approx(N_E_1550_25C, abs=0.0)


def test_negative_uniaxial_ordering():
    assert bulk_index(SETS["ordinary"], 780.0, 25.0) > bulk_index(
        SETS["extraordinary"], 780.0, 25.0)


def test_normal_dispersion_locally():
    assert bulk_index(SETS["ordinary"], 780.0, 25.0) > bulk_index(
        SETS["ordinary"], 781.0, 25.0)


@pytest.mark.parametrize("pol", ["ordinary", "extraordinary"])
def test_index_physical_over_domain(pol):
    for lam in np.linspace(400.0, 2000.0, 33):
        for temp in (20.0, 25.0, 110.0, 200.0):
            n = bulk_index(SETS[pol], lam, temp)
            assert n > 1.0
            assert math.isfinite(n)


def test_ordering_and_monotonicity_over_domain():
    lams = np.linspace(500.0, 1600.0, 111)
    for temp in (20.0, 25.0, 200.0):
        for pol in ("ordinary", "extraordinary"):
            ns = [bulk_index(SETS[pol], lam, temp) for lam in lams]
            assert all(a > b for a, b in zip(ns, ns[1:]))
        assert all(
            bulk_index(SETS["ordinary"], lam, temp)
            > bulk_index(SETS["extraordinary"], lam, temp)
            for lam in lams[:: 10]
        )


@pytest.mark.parametrize("lam,temp", [(300.0, 25.0), (2500.0, 25.0),
                                      (780.0, 10.0), (780.0, 300.0)])
def test_out_of_range(lam, temp):
    with pytest.raises(OutOfRange):
        bulk_index(SETS["ordinary"], lam, temp)


TABLE = IndexIncrementTable(DEFAULT_INCREMENTS)


@pytest.mark.parametrize("pol,lam,expected", [
    ("ordinary", 519.0, 0.0038),
    ("extraordinary", 519.0, 0.0037),
    ("ordinary", 780.0, 0.0034),
    ("extraordinary", 780.0, 0.0030),
    ("ordinary", 1550.0, 0.0025),
    ("extraordinary", 1550.0, 0.0025),
])
def test_increment_table_exact_rows(pol, lam, expected):
    assert index_increment(TABLE, pol, lam) == expected


def test_increment_linear_interpolation():
    mid = 0.5 * (519.0 + 780.0)
    assert index_increment(TABLE, "ordinary", mid) == pytest.approx(
        0.5 * (0.0038 + 0.0034), rel=1e-12)


def test_increment_out_of_span_and_clamp():
    with pytest.raises(OutOfRange):
        index_increment(TABLE, "ordinary", 1551.0)
    clamped = IndexIncrementTable(DEFAULT_INCREMENTS, extrapolation="clamp")
    assert index_increment(clamped, "ordinary", 1551.0) == 0.0025
    assert index_increment(clamped, "extraordinary", 400.0) == 0.0037


GEOM = WaveguideGeometry(width_w=8.0, depth_h=6.0, cover_index_nc=1.0)
NB, DN = 2.2, 0.003


def test_profile_peak_and_cover():
    assert index_profile(GEOM, NB, DN, 0.0, -1e-12) == pytest.approx(
        NB**2 + 2 * NB * DN, rel=1e-9)
    assert index_profile(GEOM, NB, DN, 0.0, 1.0) == 1.0


def test_profile_one_efolding_each_axis():
    val = index_profile(GEOM, NB, DN, GEOM.width_w, -GEOM.depth_h)
    assert val == pytest.approx(NB**2 + 2 * NB * DN * math.exp(-2.0), rel=1e-12)


def test_profile_far_field_limit():
    far = index_profile(GEOM, NB, DN, 8.5 * GEOM.width_w, -1.0)
    assert abs(far - NB**2) / NB**2 < 1e-12


def test_profile_even_in_y():
    ys = np.linspace(0.1, 30.0, 17)
    left = index_profile(GEOM, NB, DN, -ys, np.full_like(ys, -2.0))
    right = index_profile(GEOM, NB, DN, ys, np.full_like(ys, -2.0))
    np.testing.assert_allclose(left, right, rtol=0.0, atol=0.0)
