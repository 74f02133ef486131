"""Tests for the curvature-identity certifier.

Oracle strategy
---------------
Four control surfaces with closed-form curvature pin down the certifier:

* round sphere (radius 1/sqrt(2)): both principal curvatures sqrt(2),
  Gauss curvature 2, CMC — the full battery must pass in CMC mode;
* right cylinder: principal curvatures {1, 0}, flat, CMC;
* square minimal torus in the 3-sphere: principal curvatures {+1, -1},
  zero mean curvature, flat, CMC;
* flat cone: intrinsically flat but *not* CMC and *not* in the certified
  family — exactly the family identities (Weingarten balance,
  biconservative tangency, stress divergence) must fail while the generic
  identities (Gauss, self-adjointness, Hopf form constancy) still pass.

A smoothly perturbed torus is the blunt negative control: every family
identity must fail loudly.  Fourth-order convergence is verified on the
Euclidean profile surface, whose construction is closed-form.
"""
from __future__ import annotations

import math
from dataclasses import replace

import numpy as np
import pytest

import bisurf
from bisurf import surfaces
from bisurf.certify import DegenerateGridError

FAMILY_CHECKS = {"weingarten", "biconservative", "stress_divergence"}


def check_names(report) -> set[str]:
    return {c.name for c in report.checks}


# ---------------------------------------------------------------------------
# CMC positive controls
# ---------------------------------------------------------------------------


def test_sphere_control_passes(sphere_mesh):
    report = bisurf.certify_surface(sphere_mesh)
    assert report.passed
    assert report.cmc_like
    assert report.unmasked_fraction == 0.0
    assert not report.orientation_flipped
    # CMC mode: gradient-direction checks are skipped with a note instead.
    assert "weingarten" not in check_names(report)
    assert "eigen_alignment" not in check_names(report)
    assert any("skipped" in note for note in report.notes)
    assert "hopf_holomorphic" in check_names(report)
    with pytest.raises(KeyError):
        report.check("weingarten")


def test_sphere_control_curvatures(sphere_mesh):
    geom = bisurf.fundamental_forms(sphere_mesh)
    np.testing.assert_allclose(geom.lam_plus, math.sqrt(2.0), atol=1e-3)
    np.testing.assert_allclose(geom.lam_minus, math.sqrt(2.0), atol=1e-3)
    np.testing.assert_allclose(geom.f, math.sqrt(2.0), atol=1e-3)
    np.testing.assert_allclose(geom.K_intrinsic, 2.0, atol=2e-3)
    assert geom.lambda_max == pytest.approx(math.sqrt(2.0), rel=1e-3)


def test_cylinder_control_passes(cylinder_mesh):
    report = bisurf.certify_surface(cylinder_mesh)
    assert report.passed
    assert report.cmc_like
    geom = bisurf.fundamental_forms(cylinder_mesh)
    np.testing.assert_allclose(geom.lam_plus, 1.0, atol=1e-6)
    np.testing.assert_allclose(geom.lam_minus, 0.0, atol=1e-6)
    np.testing.assert_allclose(geom.f, 0.5, atol=1e-6)
    np.testing.assert_allclose(geom.K_intrinsic, 0.0, atol=1e-6)


def test_minimal_torus_control_passes(clifford_mesh):
    report = bisurf.certify_surface(clifford_mesh)
    assert report.passed
    assert report.cmc_like
    assert report.unmasked_fraction == 0.0
    geom = bisurf.fundamental_forms(clifford_mesh)
    np.testing.assert_allclose(geom.lam_plus, 1.0, atol=1e-6)
    np.testing.assert_allclose(geom.lam_minus, -1.0, atol=1e-6)
    assert np.abs(geom.f).max() < 1e-6
    np.testing.assert_allclose(geom.K_intrinsic, 0.0, atol=1e-5)
    # Minimal: the stress-trace target 4 f^2 vanishes; the check must still
    # be meaningful (scaled by the curvature, not by the vanishing target).
    assert report.check("stress_trace").value < 1e-12


# ---------------------------------------------------------------------------
# negative controls
# ---------------------------------------------------------------------------


def test_cone_fails_family_checks_only(cone_mesh):
    """The flat cone satisfies every generic identity but none of the
    family identities — the sharpest negative control."""
    report = bisurf.certify_surface(cone_mesh)
    assert not report.passed
    assert not report.cmc_like
    assert report.unmasked_fraction == 1.0  # gradient nowhere masked
    failed = {c.name for c in report.checks if not c.passed}
    assert failed == FAMILY_CHECKS
    # Generic identities hold: flat metric, symmetric mixed derivatives,
    # constant Hopf form (its derivative identity degenerates to 0 = 0).
    assert report.check("gauss").passed
    assert report.check("self_adjoint").passed
    assert report.check("hopf_identity").passed
    assert report.check("hopf_identity").value == 0.0


def test_cone_hopf_form_is_constant(cone_mesh):
    geom = bisurf.fundamental_forms(cone_mesh)
    hopf = bisurf.hopf_q_residual(geom)
    assert hopf.below_noise_floor
    assert hopf.mismatch == 0.0
    # Not because the surface is trivial: the mean-curvature gradient is
    # nowhere zero and the form itself is far from zero.
    assert hopf.grad_norm_max > 1e-3
    assert max(abs(hopf.q_min), abs(hopf.q_max)) > 1e-3
    assert np.abs(geom.K_intrinsic).max() < 1e-6


def test_perturbed_torus_fails_loudly(clifford_mesh):
    bumped = surfaces.perturb_mesh(clifford_mesh)
    report = bisurf.certify_surface(bumped)
    assert not report.passed
    failed = {c.name for c in report.checks if not c.passed}
    assert FAMILY_CHECKS <= failed
    assert report.check("stress_divergence").value > 0.1  # orders over tol
    # The perturbation destroys grid orthogonality; those checks say so.
    assert any("gauss check skipped" in note for note in report.notes)
    assert any("hopf check skipped" in note for note in report.notes)


# ---------------------------------------------------------------------------
# the constructed surface
# ---------------------------------------------------------------------------


def test_constructed_surface_structure(result_32):
    """Structural identities hold on the constructed surface even at coarse
    resolution; it is genuinely non-CMC with an almost fully usable grid."""
    report = bisurf.certify_surface(result_32.mesh)
    assert not report.cmc_like
    assert report.unmasked_fraction > 0.9
    assert report.check("self_adjoint").passed
    assert report.check("orientation").passed
    assert report.check("eigen_alignment").passed
    assert report.check("biconservative").passed
    assert report.check("stress_trace").passed
    assert "hopf_identity" in check_names(report)


def test_constructed_surface_hopf_form(result_32):
    """The Hopf-type form is visibly nonzero (non-CMC signature) and its
    derivative identity holds with both sides populated."""
    geom = bisurf.fundamental_forms(result_32.mesh)
    hopf = bisurf.hopf_q_residual(geom)
    assert not hopf.below_noise_floor
    assert hopf.q_max < 0.0  # bounded away from zero: never CMC anywhere
    assert abs(hopf.q_min) > 0.01
    assert hopf.q.shape == geom.f.shape
    assert np.abs(hopf.lhs).max() > 0.0
    assert np.abs(hopf.rhs).max() > 0.0
    assert hopf.mismatch < 0.2  # coarse grid; acceptance tightens this
    assert hopf.imag_part < 1e-10  # rotational symmetry: no theta dependence


def test_constructed_surface_weingarten_law(result_32):
    """3 lambda_1 + lambda_2 vanishes pointwise (up to FD error) with the
    eigenvalue labeled by the gradient direction, not by size."""
    geom = bisurf.fundamental_forms(result_32.mesh)
    usable = geom.usable
    resid = np.abs(3.0 * geom.lam1 + geom.lam2)[usable]
    assert resid.max() < 1e-2 * geom.lambda_max
    # Trace consistency is algebraic, hence machine-exact.
    np.testing.assert_allclose(
        geom.lam1 + geom.lam2, 2.0 * geom.f, atol=1e-12 * geom.lambda_max
    )


def test_stress_tensor_reports(result_32):
    geom = bisurf.fundamental_forms(result_32.mesh)
    stress = bisurf.stress_bienergy(geom)
    assert stress.trace_residual < 1e-12
    assert stress.divergence_max >= 0.0
    assert stress.divergence_residual == pytest.approx(
        stress.divergence_max / geom.lambda_max**3
    )


# ---------------------------------------------------------------------------
# convergence
# ---------------------------------------------------------------------------


def test_fourth_order_convergence_on_euclidean_profile():
    """Doubling the grid shrinks every finite-difference-limited residual by
    at least 4x (fourth-order stencils give ~16x)."""
    values = {}
    for n in (129, 257):
        curve = bisurf.euclidean_profile(1.0, 8.0, n_samples=n)
        mesh = bisurf.revolve_in_r3(curve, n_theta=n - 1)
        report = bisurf.certify_surface(mesh)
        assert report.passed
        values[n] = {c.name: c.value for c in report.checks}
    for name in ("weingarten", "gauss", "stress_divergence", "hopf_identity"):
        coarse, fine = values[129][name], values[257][name]
        assert coarse / fine > 4.0, f"{name}: {coarse:.3e} -> {fine:.3e}"


# ---------------------------------------------------------------------------
# input validation and configuration
# ---------------------------------------------------------------------------


def test_fundamental_forms_ambient_must_match(sphere_mesh):
    with pytest.raises(ValueError, match="ambient"):
        bisurf.fundamental_forms(sphere_mesh, ambient="s3")
    geom = bisurf.fundamental_forms(sphere_mesh, ambient="r3")
    assert geom.c_ambient == 0.0


def test_degenerate_grid_is_rejected():
    vertices = np.zeros((16, 16, 3))
    vertices[:, :, 2] = np.linspace(0.0, 1.0, 16)[:, None]  # collapsed circles
    mesh = surfaces.SurfaceMesh(
        vertices=vertices,
        s_values=np.linspace(0.0, 1.0, 16),
        theta_values=np.linspace(0.0, 2.0 * math.pi, 16, endpoint=False),
        closed_s=False,
        closed_theta=True,
        ambient="r3",
    )
    with pytest.raises(DegenerateGridError):
        bisurf.fundamental_forms(mesh)


def test_custom_tolerances_are_recorded(cone_mesh):
    tol = bisurf.CertTolerances(stress_divergence=10.0, weingarten=10.0,
                                biconservative=10.0)
    report = bisurf.certify_surface(cone_mesh, tolerances=tol)
    assert report.check("stress_divergence").tolerance == 10.0
    assert report.passed  # absurdly loose tolerances admit the cone


def test_report_serialization(tmp_path, sphere_mesh):
    report = bisurf.certify_surface(sphere_mesh)
    jpath = report.write_json(tmp_path / "report.json")
    data = bisurf.serialization.read_json(jpath)
    assert data["passed"] is True
    assert data["ambient"] == "r3"
    assert {c["name"] for c in data["checks"]} == check_names(report)
    cpath = report.write_csv(tmp_path / "report.csv")
    text = cpath.read_text(encoding="utf-8")
    assert text.splitlines()[0] == "check,value,tolerance,passed"
    assert len(text.splitlines()) == len(report.checks) + 1
