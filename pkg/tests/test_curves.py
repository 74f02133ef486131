"""Tests for curve reconstruction, winding diagnostics, and the planar profile.

Oracle strategy
---------------
The reconstructed spherical curve is validated against a closed-form
first integral of the Frenet system: with ``N = gamma x T`` the combination

    A(s) = -(1/12) kappa^{-3/4} gamma
           + (1/16) kappa^{-7/4} kappa_s T
           - (1/4)  kappa^{1/4}  N

is constant along any curve whose geodesic curvature satisfies the profile
law (at unit ambient curvature), and its norm is ``sqrt(d)/3``.  Constancy of
``A`` checks the integrator, the curvature evaluators, and the recovered
rotation axis all at once, with no reference to the implementation's own
least-squares fit.  The planar profile is validated by integrating its slope
field independently with adaptive quadrature.
"""
from __future__ import annotations

import math
from dataclasses import replace

import numpy as np
import pytest
from scipy.integrate import quad

import bisurf
from bisurf import curves


def constant_vector_samples(curve, profile) -> np.ndarray:
    """Evaluate the conserved vector A(s) at every curve sample."""
    s = curve.arclengths
    kap = profile.kappa_at(s)[:, None]
    kps = profile.kappa_s_at(s)[:, None]
    g, t = curve.points, curve.tangents
    nrm = np.cross(g, t)
    return (
        -(1.0 / 12.0) * kap**-0.75 * g
        + (1.0 / 16.0) * kap**-1.75 * kps * t
        - 0.25 * kap**0.25 * nrm
    )


# ---------------------------------------------------------------------------
# constant-latitude control curves
# ---------------------------------------------------------------------------


def test_constant_latitude_geometry():
    cos_polar = 0.6
    curve = bisurf.constant_latitude_curve(cos_polar, n_samples=181)
    assert curve.ambient == "sphere2"
    np.testing.assert_allclose(np.linalg.norm(curve.points, axis=1), 1.0, atol=1e-14)
    np.testing.assert_allclose(np.linalg.norm(curve.tangents, axis=1), 1.0, atol=1e-14)
    # Unit speed and orthogonality of position and tangent.
    dots = np.einsum("ij,ij->i", curve.points, curve.tangents)
    np.testing.assert_allclose(dots, 0.0, atol=1e-14)
    # Geodesic curvature of the circle at polar angle psi is cot(psi).
    np.testing.assert_allclose(curve.kappas, 0.6 / 0.8, atol=1e-15)
    assert curve.arclengths[-1] == pytest.approx(2.0 * math.pi * 0.8, abs=1e-12)


def test_constant_latitude_validation():
    for bad in (0.0, 1.0, -0.5, 1.5):
        with pytest.raises(ValueError):
            bisurf.constant_latitude_curve(bad)


def test_constant_latitude_winding():
    curve = bisurf.constant_latitude_curve(0.6)
    diag = bisurf.closure_diagnostics(curve)
    assert diag.winding == 1
    assert diag.defect < 1e-12
    assert diag.delta_theta == pytest.approx(2.0 * math.pi, abs=1e-10)
    # The pole is oriented toward the hemisphere containing the curve.
    np.testing.assert_allclose(diag.axis, [1.0, 0.0, 0.0], atol=1e-9)


def test_great_circle_has_no_axis():
    """A geodesic carries no usable rotation data; the diagnostics refuse."""
    s = np.linspace(0.0, 2.0 * math.pi, 257)
    points = np.column_stack((np.cos(s), np.sin(s), np.zeros_like(s)))
    tangents = np.column_stack((-np.sin(s), np.cos(s), np.zeros_like(s)))
    equator = curves.SampledCurve(
        ambient="sphere2",
        points=points,
        tangents=tangents,
        arclengths=s,
        kappas=np.zeros_like(s),
        kappa_s=np.zeros_like(s),
    )
    with pytest.raises(bisurf.AxisEstimationError):
        bisurf.closure_diagnostics(equator)
    with pytest.raises(bisurf.AxisEstimationError):
        bisurf.killing_axis(equator)


# ---------------------------------------------------------------------------
# Frenet reconstruction on the sphere
# ---------------------------------------------------------------------------


def test_reconstructed_curve_stays_on_sphere(one_period_curve_32):
    curve = one_period_curve_32
    np.testing.assert_allclose(np.linalg.norm(curve.points, axis=1), 1.0, atol=1e-12)
    np.testing.assert_allclose(np.linalg.norm(curve.tangents, axis=1), 1.0, atol=1e-12)
    dots = np.einsum("ij,ij->i", curve.points, curve.tangents)
    np.testing.assert_allclose(dots, 0.0, atol=1e-12)
    assert curve.max_sphere_drift < 1e-9


def test_reconstructed_curve_carries_profile_curvature(one_period_curve_32, profile_32):
    np.testing.assert_allclose(
        one_period_curve_32.kappas,
        profile_32.kappa_at(one_period_curve_32.arclengths),
        rtol=1e-12,
    )


def test_conserved_vector_is_constant(one_period_curve_32, closure_32, profile_32):
    """The closed-form first integral A(s) of the Frenet system is constant
    along the reconstructed curve and has norm sqrt(d)/3."""
    a = constant_vector_samples(one_period_curve_32, profile_32)
    mean = a.mean(axis=0)
    deviation = np.linalg.norm(a - mean, axis=1).max()
    assert deviation < 1e-8
    assert np.linalg.norm(mean) == pytest.approx(
        math.sqrt(closure_32.d) / 3.0, abs=1e-9
    )


def test_killing_axis_matches_conserved_vector(one_period_curve_32, profile_32):
    axis, residual = bisurf.killing_axis(one_period_curve_32)
    assert residual < 1e-8
    a = constant_vector_samples(one_period_curve_32, profile_32).mean(axis=0)
    a_unit = a / np.linalg.norm(a)
    # The fitted axis agrees with the conserved direction up to overall sign.
    agreement = abs(float(np.dot(axis, a_unit)))
    assert agreement == pytest.approx(1.0, abs=1e-9)


def test_killing_axis_accepts_profile_argument(one_period_curve_32, profile_32):
    bare = replace(one_period_curve_32, kappas=None, kappa_s=None)
    axis_bare, res_bare = bisurf.killing_axis(bare, profile=profile_32)
    axis_full, _ = bisurf.killing_axis(one_period_curve_32)
    np.testing.assert_allclose(axis_bare, axis_full, atol=1e-12)
    assert res_bare < 1e-8


def test_killing_axis_requires_curvature_data(one_period_curve_32):
    bare = replace(one_period_curve_32, kappas=None, kappa_s=None)
    with pytest.raises(bisurf.AxisEstimationError):
        bisurf.killing_axis(bare)


def test_killing_axis_rejects_planar_curves(r3_profile_curve):
    with pytest.raises(bisurf.AxisEstimationError):
        bisurf.killing_axis(r3_profile_curve)


def test_azimuth_advance_equals_progression_angle(one_period_curve_32, closure_32):
    """One curvature period advances the azimuth by exactly I(d) — the
    geometric quantity the closure condition is solved for."""
    diag = bisurf.closure_diagnostics(one_period_curve_32)
    assert diag.delta_theta == pytest.approx(closure_32.i_value, abs=1e-9)


def test_three_periods_close_with_winding_two(profile_32):
    curve = bisurf.integrate_on_sphere(profile_32, n_periods=3, samples_per_period=256)
    diag = bisurf.closure_diagnostics(curve)
    assert diag.defect < 1e-6
    assert diag.winding == 2
    assert diag.delta_theta == pytest.approx(4.0 * math.pi, abs=1e-9)


def test_integrate_on_sphere_validation(profile_32):
    with pytest.raises(ValueError):
        bisurf.integrate_on_sphere(profile_32, n_periods=0)
    with pytest.raises(ValueError):
        bisurf.integrate_on_sphere(profile_32, n_samples=1)


def test_align_to_axis(one_period_curve_32):
    axis, _ = bisurf.killing_axis(one_period_curve_32)
    aligned = bisurf.align_to_axis(one_period_curve_32, axis)
    np.testing.assert_allclose(aligned.axis, [1.0, 0.0, 0.0], atol=1e-15)
    re_axis, _ = bisurf.killing_axis(aligned)
    np.testing.assert_allclose(np.abs(re_axis), [1.0, 0.0, 0.0], atol=1e-9)
    # Rigid motion: norms and pairwise arclengths are untouched.
    np.testing.assert_allclose(
        np.linalg.norm(aligned.points, axis=1), 1.0, atol=1e-12
    )
    np.testing.assert_array_equal(aligned.arclengths, one_period_curve_32.arclengths)


def test_align_to_axis_validation(one_period_curve_32):
    with pytest.raises(ValueError):
        bisurf.align_to_axis(one_period_curve_32, [0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        bisurf.align_to_axis(one_period_curve_32, [1.0, 0.0, 0.0], target="w")


# ---------------------------------------------------------------------------
# the planar Euclidean profile
# ---------------------------------------------------------------------------


def test_euclidean_profile_starts_at_waist(r3_profile_curve):
    curve = r3_profile_curve
    assert curve.ambient == "plane2"
    # Waist radius C^3 = 1, tangent vertical there.
    np.testing.assert_allclose(curve.points[0], [1.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(curve.tangents[0], [0.0, 1.0], atol=1e-15)
    assert curve.points[-1, 0] == pytest.approx(8.0, rel=1e-12)
    # Uniform arclength grid with unit tangents.
    steps = np.diff(curve.arclengths)
    np.testing.assert_allclose(steps, steps[0], rtol=1e-12)
    np.testing.assert_allclose(np.linalg.norm(curve.tangents, axis=1), 1.0, atol=1e-14)


def test_euclidean_profile_slope_field(r3_profile_curve):
    """Away from the waist, dz/dx along the samples equals the slope law."""
    x = r3_profile_curve.points[:, 0]
    t = r3_profile_curve.tangents
    interior = x > 1.0 + 1e-9
    measured = t[interior, 1] / t[interior, 0]
    np.testing.assert_allclose(
        measured, bisurf.profile_slope(x[interior], 1.0), rtol=1e-12
    )


def test_euclidean_profile_height_by_quadrature(r3_profile_curve):
    """z differences between samples match adaptive quadrature of the slope."""
    x = r3_profile_curve.points[:, 0]
    z = r3_profile_curve.points[:, 1]
    for i, j in [(40, 80), (80, 200), (40, 256)]:
        val, err = quad(bisurf.profile_slope, x[i], x[j], args=(1.0,), limit=200)
        assert err < 1e-8 * abs(val)
        assert z[j] - z[i] == pytest.approx(val, rel=1e-9)


def test_euclidean_profile_curvature_law(r3_profile_curve):
    x = r3_profile_curve.points[:, 0]
    np.testing.assert_allclose(
        r3_profile_curve.kappas, (1.0 / 3.0) * x ** (-4.0 / 3.0), rtol=1e-12
    )


def test_profile_slope_frozen_value():
    # At x = 8, C = 1: x^{2/3} = 4, so the slope is 1/sqrt(3).
    assert bisurf.profile_slope(8.0, 1.0) == pytest.approx(
        1.0 / math.sqrt(3.0), abs=1e-15
    )


def test_profile_slope_validation():
    with pytest.raises(ValueError):
        bisurf.profile_slope(1.0, 1.0)  # at the waist itself
    with pytest.raises(ValueError):
        bisurf.profile_slope(0.5, 1.0)  # inside the waist
    with pytest.raises(ValueError):
        bisurf.profile_slope(8.0, -1.0)


def test_euclidean_profile_validation():
    with pytest.raises(ValueError):
        bisurf.euclidean_profile(1.0, 0.9)  # x_max inside the waist
    with pytest.raises(ValueError):
        bisurf.euclidean_profile(-1.0, 8.0)
    with pytest.raises(ValueError):
        bisurf.euclidean_profile(1.0, 8.0, n_samples=1)


def test_euclidean_profile_scales_with_constant():
    """The waist radius is C^3 and the slope at matched x^{2/3}/C^2 ratios is
    scale-free, pinning the role of the constant."""
    for c_param in (0.5, 2.0):
        curve = bisurf.euclidean_profile(c_param, c_param**3 * 8.0, n_samples=65)
        assert curve.points[0, 0] == pytest.approx(c_param**3, rel=1e-12)
        assert bisurf.profile_slope(8.0 * c_param**3, c_param) == pytest.approx(
            1.0 / math.sqrt(3.0), abs=1e-14
        )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_spherical_curve_csv(tmp_path, one_period_curve_32):
    path = one_period_curve_32.write_csv(tmp_path / "curve.csv")
    header, data = bisurf.serialization.read_csv(path)
    assert header == ["s", "x", "y", "z", "Tx", "Ty", "Tz", "kappa"]
    assert data.shape == (one_period_curve_32.n_samples, 8)
    np.testing.assert_allclose(data[:, 1:4], one_period_curve_32.points, atol=1e-8)


def test_planar_curve_csv(tmp_path, r3_profile_curve):
    path = r3_profile_curve.write_csv(tmp_path / "curve.csv")
    header, data = bisurf.serialization.read_csv(path)
    assert header == ["s", "x", "z", "Tx", "Tz", "kappa"]
    assert data.shape == (r3_profile_curve.n_samples, 6)
