"""Frame projection, gauge diagnostic, and coupling profile."""

import math

import numpy as np
import pytest

from curvband import (
    EvaluationError,
    RadialGrid,
    axial_uniform,
    cartesian_constant,
    catalog,
    coupling_profile,
    divergence,
    flat,
    frame_synthetic,
    from_cartesian,
    is_coulomb_gauge,
    paraboloid,
    project_to_frame,
    zero_field,
)

SQRT2 = math.sqrt(2.0)


def axial_gauge(b):
    def field(x, y, z):
        zero = np.zeros_like(np.asarray(z, float))
        return -0.5 * b * np.asarray(y, float), 0.5 * b * np.asarray(x, float), zero
    return field


# ----------------------------------------------------------------------
# projection
# ----------------------------------------------------------------------

def test_axial_gauge_projects_to_pure_azimuthal():
    # (B/2)(-y, x, 0) has frame components (0, B rho/2, 0) on the surface;
    # away from phi = 0 the cancellation leaves rounding dust only
    for prof in catalog(1.0).values():
        a1, a2, a3 = project_to_frame(axial_gauge(2.0), prof, 0.5, 0.9, 0.0)
        assert a1 == pytest.approx(0.0, abs=1e-14)
        assert a3 == pytest.approx(0.0, abs=1e-14)
        assert a2 == pytest.approx(0.5, rel=1e-14)


def test_axial_gauge_azimuthal_at_any_offset():
    for prof in catalog(1.0).values():
        for q in (-0.1, 0.05, 0.2):
            a1, a2, a3 = project_to_frame(axial_gauge(2.0), prof, 0.6, 2.2, q)
            assert a1 == pytest.approx(0.0, abs=1e-14)
            assert a3 == pytest.approx(0.0, abs=1e-14)


def test_constant_axial_field_on_paraboloid():
    # (0, 0, c) at unit slope splits evenly between e1 and e3
    prof = paraboloid(0.5, 2.0)
    c = 0.8

    def field(x, y, z):
        zz = np.asarray(z, float)
        return np.zeros_like(zz), np.zeros_like(zz), np.full_like(zz, c)

    a1, a2, a3 = project_to_frame(field, prof, 1.0, 0.0, 0.0)
    assert a1 == pytest.approx(c / SQRT2, rel=1e-14)
    assert a2 == 0.0
    assert a3 == pytest.approx(c / SQRT2, rel=1e-14)


def test_zero_field_projects_to_zero():
    def field(x, y, z):
        zz = np.zeros_like(np.asarray(z, float))
        return zz, zz, zz

    assert project_to_frame(field, flat(1.0), 0.3, 1.0, 0.1) == (0.0, 0.0, 0.0)


def test_projection_preserves_magnitude():
    rng = np.random.default_rng(11)

    def field(x, y, z):
        return (np.sin(x) + z, np.cos(y) - x, x * y + 0.5)

    for prof in catalog(1.0).values():
        for _ in range(50):
            rho, phi, q = rng.uniform(0.05, 0.95), rng.uniform(0, 2 * np.pi), rng.uniform(-0.1, 0.1)
            a1, a2, a3 = project_to_frame(field, prof, rho, phi, q)
            sr = float(prof.S_rho(rho))
            Z = math.sqrt(1.0 + sr * sr)
            rad = rho - q * sr / Z
            x, y = rad * math.cos(phi), rad * math.sin(phi)
            z = float(prof.S(rho)) + q / Z
            fx, fy, fz = field(x, y, z)
            assert a1 ** 2 + a2 ** 2 + a3 ** 2 == pytest.approx(
                float(fx) ** 2 + float(fy) ** 2 + float(fz) ** 2, rel=1e-12, abs=1e-12
            )


def test_axial_uniform_constructor_matches_projection():
    for prof in catalog(1.0).values():
        A = axial_uniform(2.0, prof)
        assert float(A.A2(0.5, 0.0)) == pytest.approx(0.5, rel=1e-14)
        assert float(A.A1(0.5, 0.0)) == 0.0
        assert float(A.A3(0.5, 0.0)) == 0.0


def test_cartesian_constant_constructor():
    prof = paraboloid(0.5, 2.0)
    A = cartesian_constant(1.0, prof)
    assert float(A.A1(1.0, 0.0)) == pytest.approx(1.0 / SQRT2, rel=1e-14)
    assert float(A.A3(1.0, 0.0)) == pytest.approx(1.0 / SQRT2, rel=1e-14)
    assert A.source == "cartesian-projected"


def test_non_axisymmetric_cartesian_field_rejected():
    def field(x, y, z):
        one = np.ones_like(np.asarray(z, float))
        return one, np.zeros_like(one), np.zeros_like(one)

    with pytest.raises(EvaluationError):
        from_cartesian(field, paraboloid(0.5, 1.0))


def test_gamma_interval_masks_support():
    A = frame_synthetic(a3=1.5, gamma_interval=(0.3, 0.6))
    rho = np.array([0.1, 0.3, 0.45, 0.6, 0.8])
    np.testing.assert_array_equal(A.A3(rho, 0.0), [0.0, 1.5, 1.5, 1.5, 0.0])


# ----------------------------------------------------------------------
# divergence and gauge check
# ----------------------------------------------------------------------

def test_divergence_of_azimuthal_field_is_exactly_zero():
    A = frame_synthetic(a2=lambda r, q: 0.7 * r)
    for prof in catalog(1.0).values():
        for rho in (0.2, 0.5, 0.9):
            assert divergence(A, prof, rho, 0.0) == 0.0


def test_divergence_of_linear_radial_field_is_two():
    # flat chart: div(rho e1) = (1/rho) d/drho (rho^2) = 2, exact for
    # central differences on a quadratic
    A = frame_synthetic(a1=lambda r, q: r)
    prof = flat(1.0)
    for rho in (0.25, 0.5, 0.75):
        assert divergence(A, prof, rho, 0.0) == pytest.approx(2.0, abs=1e-10)


def test_divergence_of_zero_field_is_zero():
    assert divergence(zero_field(), paraboloid(0.5, 1.0), 0.4, 0.0) == 0.0


def test_divergence_of_constant_cartesian_field_is_small():
    # a constant vector field is divergence-free in any chart; numeric
    # differencing leaves only truncation error
    prof = paraboloid(0.5, 1.0)
    A = cartesian_constant(1.0, prof)
    for rho in (0.3, 0.6, 0.9):
        assert abs(divergence(A, prof, rho, 0.0)) < 1e-5


def test_gauge_check_passes_for_axial_uniform_everywhere():
    grid = RadialGrid(64, 1.0)
    for prof in catalog(1.0).values():
        report = is_coulomb_gauge(axial_uniform(1.0, prof), prof, grid, tol=1e-10)
        assert report.passed
        assert report.max_violation == 0.0


def test_gauge_check_flags_non_solenoidal_field():
    grid = RadialGrid(64, 1.0)
    report = is_coulomb_gauge(frame_synthetic(a1=lambda r, q: r), flat(1.0),
                              grid, tol=1e-10)
    assert not report.passed
    assert report.max_violation == pytest.approx(2.0, abs=1e-6)


def test_gauge_check_accepts_zero_field():
    report = is_coulomb_gauge(zero_field(), flat(1.0), RadialGrid(32, 1.0), tol=1e-10)
    assert report.passed
    assert report.max_violation == 0.0


def test_gauge_check_never_raises():
    def explode(r, q):
        raise RuntimeError("boom")

    report = is_coulomb_gauge(frame_synthetic(a1=explode), flat(1.0),
                              RadialGrid(32, 1.0), tol=1e-10)
    assert not report.passed
    assert report.note != ""


# ----------------------------------------------------------------------
# coupling profile
# ----------------------------------------------------------------------

def test_coupling_vanishes_on_flat_surface():
    grid = RadialGrid(32, 1.0)
    values = coupling_profile(frame_synthetic(a3=3.0), flat(1.0), grid)
    np.testing.assert_array_equal(values, np.zeros(32))


def test_coupling_vanishes_without_normal_component():
    grid = RadialGrid(32, 1.0)
    values = coupling_profile(frame_synthetic(a2=1.0), paraboloid(0.5, 1.0), grid)
    np.testing.assert_array_equal(values, np.zeros(32))


def test_coupling_value_on_paraboloid():
    grid = RadialGrid(399, 2.0)       # grid over [0, 2] with a node near rho = 1
    values = coupling_profile(frame_synthetic(a3=1.0), paraboloid(0.5, 2.0), grid)
    j = int(np.argmin(np.abs(grid.nodes - 1.0)))
    assert values[j] == pytest.approx(-3.0 / (4.0 * SQRT2), rel=1e-10)
