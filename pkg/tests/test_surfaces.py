"""Tests for revolution meshes, stereographic maps, and mesh export.

The revolution formulas are validated against exact invariants: membership
in the unit 3-sphere, orbit radii, equivariance under the rotation family
(shifting the angular grid by one column equals rotating the whole vertex set
by one grid angle), and bit-exact JSON round trips.
"""
from __future__ import annotations

import math
from dataclasses import replace

import numpy as np
import pytest

import bisurf
from bisurf import surfaces


@pytest.fixture(scope="module")
def s3_mesh(result_32):
    return result_32.mesh


# ---------------------------------------------------------------------------
# revolution in the 3-sphere
# ---------------------------------------------------------------------------


def test_revolved_mesh_on_unit_sphere(s3_mesh):
    norms = np.linalg.norm(s3_mesh.vertices, axis=-1)
    np.testing.assert_allclose(norms, 1.0, atol=1e-12)
    assert s3_mesh.ambient == "s3"
    assert s3_mesh.ambient_dim == 4
    assert s3_mesh.closed_theta
    assert s3_mesh.closed_s


def test_revolved_mesh_orbit_radii(result_32):
    """Each grid row is a circle of radius equal to the profile's first
    coordinate, traced in the first two ambient coordinates."""
    mesh = result_32.mesh
    rows = min(mesh.n_s, result_32.curve.points.shape[0])
    r_mesh = np.linalg.norm(mesh.vertices[:rows, :, :2], axis=-1)
    r_curve = np.broadcast_to(
        result_32.curve.points[:rows, 0][:, None], r_mesh.shape
    )
    np.testing.assert_allclose(r_mesh, r_curve, atol=1e-12)
    # The remaining two coordinates are constant along each circle.
    np.testing.assert_allclose(
        mesh.vertices[:rows, :, 2],
        np.broadcast_to(result_32.curve.points[:rows, 1][:, None], r_mesh.shape),
        atol=1e-12,
    )


def test_rotation_equivariance(s3_mesh):
    """Shifting the theta grid by one column equals applying the ambient
    rotation by one grid angle in the (x1, x2) plane."""
    dtheta = s3_mesh.theta_values[1] - s3_mesh.theta_values[0]
    c, s = math.cos(dtheta), math.sin(dtheta)
    rot = np.array(
        [[c, -s, 0.0, 0.0], [s, c, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]]
    )
    rotated = s3_mesh.vertices @ rot.T
    shifted = np.roll(s3_mesh.vertices, -1, axis=1)
    np.testing.assert_allclose(rotated, shifted, atol=1e-12)


def test_theta_grid_convention(s3_mesh):
    assert s3_mesh.theta_values[0] == 0.0
    np.testing.assert_allclose(
        np.diff(s3_mesh.theta_values),
        2.0 * math.pi / s3_mesh.n_theta,
        atol=1e-15,
    )


def test_revolve_requires_axis_alignment(one_period_curve_32):
    # The reconstructed curve has not been aligned: no axis recorded.
    with pytest.raises(bisurf.AxisAlignmentError):
        bisurf.revolve_in_s3(one_period_curve_32)
    axis, _ = bisurf.killing_axis(one_period_curve_32)
    aligned_z = bisurf.align_to_axis(one_period_curve_32, axis, target="z")
    with pytest.raises(bisurf.AxisAlignmentError):
        bisurf.revolve_in_s3(aligned_z)


def test_revolve_rejects_zero_orbit_radius():
    curve = bisurf.constant_latitude_curve(0.6, n_samples=33)
    flipped = replace(curve, points=curve.points * np.array([-1.0, 1.0, 1.0]))
    with pytest.raises(ValueError, match="radius"):
        bisurf.revolve_in_s3(flipped)


def test_revolve_close_flag(one_period_curve_32):
    """close=True must be refused when the endpoints visibly differ."""
    diag = bisurf.closure_diagnostics(one_period_curve_32)
    aligned = bisurf.align_to_axis(one_period_curve_32, diag.axis)
    with pytest.raises(ValueError, match="close=True"):
        bisurf.revolve_in_s3(aligned, close=True)


def test_revolve_detects_closed_profile():
    curve = bisurf.constant_latitude_curve(0.6, n_samples=33)
    mesh = bisurf.revolve_in_s3(curve, n_theta=16)
    assert mesh.closed_s  # endpoints coincide exactly
    assert mesh.n_s == 32  # duplicate end row dropped
    open_mesh = bisurf.revolve_in_s3(curve, n_theta=16, close=False)
    assert not open_mesh.closed_s
    assert open_mesh.n_s == 33


def test_revolve_validates_n_theta():
    curve = bisurf.constant_latitude_curve(0.6, n_samples=33)
    with pytest.raises(ValueError):
        bisurf.revolve_in_s3(curve, n_theta=4)


def test_revolve_rejects_planar_curve(r3_profile_curve):
    with pytest.raises(ValueError):
        bisurf.revolve_in_s3(r3_profile_curve)


# ---------------------------------------------------------------------------
# revolution in R^3
# ---------------------------------------------------------------------------


def test_r3_revolution_geometry(r3_mesh, r3_profile_curve):
    assert r3_mesh.ambient == "r3"
    assert r3_mesh.ambient_dim == 3
    assert r3_mesh.closed_theta and not r3_mesh.closed_s
    r = np.linalg.norm(r3_mesh.vertices[:, :, :2], axis=-1)
    np.testing.assert_allclose(
        r, np.broadcast_to(r3_profile_curve.points[:, 0][:, None], r.shape),
        rtol=1e-14,
    )
    np.testing.assert_allclose(
        r3_mesh.vertices[:, :, 2],
        np.broadcast_to(r3_profile_curve.points[:, 1][:, None], r.shape),
        atol=1e-14,
    )


def test_r3_revolution_rejects_spherical_curve(one_period_curve_32):
    with pytest.raises(ValueError):
        bisurf.revolve_in_r3(one_period_curve_32)


# ---------------------------------------------------------------------------
# stereographic projection
# ---------------------------------------------------------------------------


def test_stereographic_round_trip(s3_mesh):
    projected = bisurf.stereographic_project(s3_mesh)
    assert projected.ambient == "r3"
    assert projected.ambient_dim == 3
    lifted = bisurf.stereographic_lift(projected)
    assert lifted.ambient == "s3"
    np.testing.assert_allclose(lifted.vertices, s3_mesh.vertices, atol=1e-12)
    # Grid structure is preserved exactly.
    np.testing.assert_array_equal(lifted.s_values, s3_mesh.s_values)
    assert lifted.closed_s == s3_mesh.closed_s


def test_stereographic_pole_collision():
    vertices = np.zeros((2, 8, 4))
    vertices[..., 3] = 1.0
    vertices[1, 3] = [0.0, 0.0, 0.0, -1.0]  # exactly the projection pole
    mesh = surfaces.SurfaceMesh(
        vertices=vertices,
        s_values=np.array([0.0, 1.0]),
        theta_values=np.linspace(0.0, 2.0 * math.pi, 8, endpoint=False),
        closed_s=False,
        closed_theta=True,
        ambient="s3",
    )
    with pytest.raises(bisurf.PoleCollisionError, match=r"i=1, j=3"):
        bisurf.stereographic_project(mesh)


def test_stereographic_rejects_wrong_ambient(r3_mesh):
    with pytest.raises(ValueError):
        bisurf.stereographic_project(r3_mesh)
    four_d = replace(
        r3_mesh,
        vertices=np.concatenate(
            [r3_mesh.vertices, np.zeros(r3_mesh.vertices.shape[:2] + (1,))], axis=-1
        ),
    )
    with pytest.raises(ValueError):
        bisurf.stereographic_lift(four_d)


# ---------------------------------------------------------------------------
# connectivity
# ---------------------------------------------------------------------------


def test_quad_faces_fully_closed(s3_mesh):
    faces, wraps_s, wraps_theta = s3_mesh.quad_faces()
    assert faces.shape == (s3_mesh.n_s * s3_mesh.n_theta, 4)
    assert wraps_s.sum() == s3_mesh.n_theta
    assert wraps_theta.sum() == s3_mesh.n_s
    assert faces.min() >= 0
    assert faces.max() < s3_mesh.n_s * s3_mesh.n_theta
    # Every vertex appears in exactly four quads on a fully closed grid.
    counts = np.bincount(faces.reshape(-1), minlength=s3_mesh.n_s * s3_mesh.n_theta)
    assert counts.min() == counts.max() == 4


def test_quad_faces_open_profile(r3_mesh):
    faces, wraps_s, wraps_theta = r3_mesh.quad_faces()
    assert faces.shape == ((r3_mesh.n_s - 1) * r3_mesh.n_theta, 4)
    assert wraps_s.sum() == 0
    assert wraps_theta.sum() == r3_mesh.n_s - 1


def test_vertex_index_row_major(s3_mesh):
    assert s3_mesh.vertex_index(0, 0) == 0
    assert s3_mesh.vertex_index(2, 3) == 2 * s3_mesh.n_theta + 3


# ---------------------------------------------------------------------------
# export / import
# ---------------------------------------------------------------------------


def test_json_round_trip_bit_exact(tmp_path, s3_mesh):
    path = bisurf.export_mesh(s3_mesh, tmp_path / "mesh.json")
    back = bisurf.import_mesh(path)
    np.testing.assert_array_equal(back.vertices, s3_mesh.vertices)
    np.testing.assert_array_equal(back.s_values, s3_mesh.s_values)
    np.testing.assert_array_equal(back.theta_values, s3_mesh.theta_values)
    assert back.closed_s == s3_mesh.closed_s
    assert back.closed_theta == s3_mesh.closed_theta
    assert back.ambient == s3_mesh.ambient


def test_obj_export(tmp_path, result_32):
    path = bisurf.export_mesh(result_32.projected, tmp_path / "mesh.obj")
    lines = path.read_text(encoding="utf-8").splitlines()
    mesh = result_32.projected
    v_lines = [ln for ln in lines if ln.startswith("v ")]
    f_lines = [ln for ln in lines if ln.startswith("f ")]
    assert len(v_lines) == mesh.n_s * mesh.n_theta
    assert len(f_lines) == mesh.quad_faces()[0].shape[0]
    first = np.array([float(tok) for tok in v_lines[0].split()[1:]])
    np.testing.assert_allclose(first, mesh.vertices[0, 0], atol=1e-15)
    # OBJ indices are one-based and in range.
    idx = np.array([[int(tok) for tok in ln.split()[1:]] for ln in f_lines])
    assert idx.min() == 1
    assert idx.max() == len(v_lines)


def test_obj_export_rejects_4d(tmp_path, s3_mesh):
    with pytest.raises(ValueError, match="3-dimensional"):
        bisurf.export_mesh(s3_mesh, tmp_path / "mesh.obj")


def test_csv_export_and_format_override(tmp_path, r3_mesh):
    path = bisurf.export_mesh(r3_mesh, tmp_path / "mesh.dat", format="csv")
    header, data = bisurf.serialization.read_csv(path)
    assert header == ["i", "j", "s", "theta", "x0", "x1", "x2"]
    assert data.shape == (r3_mesh.n_s * r3_mesh.n_theta, 7)
    with pytest.raises(ValueError, match="unsupported"):
        bisurf.export_mesh(r3_mesh, tmp_path / "mesh.xyz")


# ---------------------------------------------------------------------------
# control meshes
# ---------------------------------------------------------------------------


def test_sphere_control_geometry(sphere_mesh):
    r = 1.0 / math.sqrt(2.0)
    np.testing.assert_allclose(
        np.linalg.norm(sphere_mesh.vertices, axis=-1), r, atol=1e-12
    )
    assert not sphere_mesh.closed_s


def test_cylinder_control_geometry(cylinder_mesh):
    r = np.linalg.norm(cylinder_mesh.vertices[:, :, :2], axis=-1)
    np.testing.assert_allclose(r, 1.0, atol=1e-14)


def test_clifford_control_geometry(clifford_mesh):
    np.testing.assert_allclose(
        np.linalg.norm(clifford_mesh.vertices, axis=-1), 1.0, atol=1e-12
    )
    # Both orbit radii are 1/sqrt(2): the torus is square.
    r12 = np.linalg.norm(clifford_mesh.vertices[:, :, :2], axis=-1)
    r34 = np.linalg.norm(clifford_mesh.vertices[:, :, 2:], axis=-1)
    np.testing.assert_allclose(r12, 1.0 / math.sqrt(2.0), atol=1e-12)
    np.testing.assert_allclose(r34, 1.0 / math.sqrt(2.0), atol=1e-12)
    assert clifford_mesh.closed_s and clifford_mesh.closed_theta


def test_cone_control_geometry(cone_mesh):
    r = np.linalg.norm(cone_mesh.vertices[:, :, :2], axis=-1)
    np.testing.assert_allclose(cone_mesh.vertices[:, :, 2], 1.0 + r, atol=1e-12)


def test_perturbation_changes_mesh_but_keeps_sphere(clifford_mesh):
    bumped = surfaces.perturb_mesh(clifford_mesh)
    assert np.abs(bumped.vertices - clifford_mesh.vertices).max() > 1e-3
    np.testing.assert_allclose(
        np.linalg.norm(bumped.vertices, axis=-1), 1.0, atol=1e-12
    )
    # Deterministic: same input, same output.
    again = surfaces.perturb_mesh(clifford_mesh)
    np.testing.assert_array_equal(bumped.vertices, again.vertices)
