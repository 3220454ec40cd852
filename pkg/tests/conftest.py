import pytest

from qpmdesign import InteractionSpec, WaveguideGeometry
from qpmdesign.pipeline import Material, design_point

# Reference design point: 519/780/1551 nm, 25 C, 1 cm interaction length.
DESIGN_TABLE = [
    # (depth_um, width_um, gamma, Lambda1_um, Lambda2_um)
    (6.5, 6.0, 0.9294, 4.574, 3.650),
    (8.0, 8.0, 0.9884, 4.577, 3.651),
    (10.0, 10.0, 0.9957, 4.580, 3.653),
    (12.0, 12.0, 0.9982, 4.583, 3.655),
]


@pytest.fixture(scope="session")
def spec():
    return InteractionSpec(lambda_p_nm=519.0, lambda_s_nm=780.0,
                           lambda_i_nm=1551.0, temperature_c=25.0,
                           length_mm=10.0)


@pytest.fixture(scope="session")
def material():
    return Material.default()


@pytest.fixture(scope="session")
def table_results(spec, material):
    """Design results for the four reference geometries, keyed by (depth, width)."""
    out = {}
    for depth, width, *_ in DESIGN_TABLE:
        geom = WaveguideGeometry(width_w=width, depth_h=depth)
        out[(depth, width)] = design_point(spec, geom, material)
    return out


@pytest.fixture(scope="session")
def reference_result(table_results):
    """The d = w = 10 um design."""
    return table_results[(10.0, 10.0)]
