"""Surfaces of revolution from profile curves, mesh export, stereography.

A profile curve on the unit 2-sphere sitting inside the unit 3-sphere as the
section ``x2 = 0``-like totally geodesic equator is revolved by the rotation
family fixing a great circle: with the profile aligned so its rotation pole is
the **first** coordinate axis, the vertex grid is

    vertex(i, j) = (gamma_1(s_i) cos(theta_j), gamma_1(s_i) sin(theta_j),
                    gamma_2(s_i), gamma_3(s_i)),

which stays exactly on the unit 3-sphere and has orbit radius
``gamma_1 = cos(polar angle) > 0``.  The Euclidean analogue revolves a planar
``(x, z)`` profile about the z-axis.  Stereographic projection from
``(0, 0, 0, -1)`` maps 3-sphere meshes conformally into R^3 for export and
visualization; its inverse lifts them back.

Meshes carry their parameter grids and closure flags so that downstream
finite differences can wrap around seams exactly instead of one-sidedly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import serialization
from .curves import (
    AMBIENT_PLANE2,
    AMBIENT_SPHERE2,
    SampledCurve,
    constant_latitude_curve,
)

__all__ = [
    "AMBIENT_S3",
    "AMBIENT_R3",
    "SurfaceMesh",
    "AxisAlignmentError",
    "PoleCollisionError",
    "revolve_in_s3",
    "revolve_in_r3",
    "stereographic_project",
    "stereographic_lift",
    "export_mesh",
    "import_mesh",
    "make_sphere_mesh",
    "make_cylinder_mesh",
    "make_cone_mesh",
    "make_clifford_mesh",
    "perturb_mesh",
]

AMBIENT_S3 = "s3"
AMBIENT_R3 = "r3"

_E1 = np.array([1.0, 0.0, 0.0])


class AxisAlignmentError(ValueError):
    """Raised when a profile is not aligned for the revolution convention."""


class PoleCollisionError(ValueError):
    """Raised when a mesh vertex sits at the stereographic projection pole."""


@dataclass
class SurfaceMesh:
    """Structured quad mesh of a parameterized surface.

    Attributes
    ----------
    vertices : ndarray of shape (n_s, n_theta, dim)
        Vertex grid; ``dim`` is 4 for 3-sphere meshes and 3 for Euclidean.
    s_values : ndarray (n_s,)
        Profile-parameter value of each row.
    theta_values : ndarray (n_theta,)
        Revolution angle of each column.
    closed_s, closed_theta : bool
        Whether the grid wraps around in each direction (the first row/column
        follows the last).
    ambient : str
        ``"s3"`` or ``"r3"``.
    """

    vertices: np.ndarray
    s_values: np.ndarray
    theta_values: np.ndarray
    closed_s: bool
    closed_theta: bool
    ambient: str

    @property
    def n_s(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def n_theta(self) -> int:
        return int(self.vertices.shape[1])

    @property
    def ambient_dim(self) -> int:
        return int(self.vertices.shape[2])

    def vertex_index(self, i: int, j: int) -> int:
        """Flat index of grid vertex (i, j) in row-major order."""
        return i * self.n_theta + j

    def quad_faces(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Quad connectivity with seam flags.

        Returns
        -------
        faces : ndarray (n_faces, 4) of flat vertex indices, each quad ordered
            (i, j), (i+1, j), (i+1, j+1), (i, j+1) with wraparound.
        wraps_s : ndarray (n_faces,) bool — face crosses the s seam.
        wraps_theta : ndarray (n_faces,) bool — face crosses the theta seam.
        """
        ni = self.n_s if self.closed_s else self.n_s - 1
        nj = self.n_theta if self.closed_theta else self.n_theta - 1
        ii, jj = np.meshgrid(np.arange(ni), np.arange(nj), indexing="ij")
        i2 = (ii + 1) % self.n_s
        j2 = (jj + 1) % self.n_theta
        faces = np.stack(
            [
                ii * self.n_theta + jj,
                i2 * self.n_theta + jj,
                i2 * self.n_theta + j2,
                ii * self.n_theta + j2,
            ],
            axis=-1,
        ).reshape(-1, 4)
        wraps_s = (ii + 1 == self.n_s).reshape(-1)
        wraps_theta = (jj + 1 == self.n_theta).reshape(-1)
        return faces, wraps_s, wraps_theta

    def to_dict(self) -> dict:
        return {
            "ambient": self.ambient,
            "closed_s": self.closed_s,
            "closed_theta": self.closed_theta,
            "n_s": self.n_s,
            "n_theta": self.n_theta,
            "s_values": self.s_values,
            "theta_values": self.theta_values,
            "vertices": self.vertices,
        }


def _theta_grid(n_theta: int) -> np.ndarray:
    if n_theta < 8:
        raise ValueError("revolution needs at least 8 angular samples")
    return np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)


def _closes(curve: SampledCurve, tol: float) -> bool:
    gap = np.linalg.norm(curve.points[-1] - curve.points[0])
    return bool(gap < tol)


def revolve_in_s3(
    curve: SampledCurve,
    n_theta: int = 128,
    close: bool | None = None,
    closure_tol: float = 1e-6,
) -> SurfaceMesh:
    """Revolve an aligned spherical profile inside the unit 3-sphere.

    The profile must lie on the unit 2-sphere with its rotation pole on the
    **first** coordinate axis (``align_to_axis(curve, axis, target="x")``);
    the rotation family then acts on the first two ambient coordinates and
    fixes the great circle they vanish on.

    Parameters
    ----------
    curve : SampledCurve
        Axis-aligned spherical profile.
    n_theta : int
        Angular resolution (at least 8); the theta seam is always closed.
    close : bool, optional
        Identify the profile's end row with its start row (the mesh's
        ``s`` seam).  Default: detect by comparing the endpoint gap with
        ``closure_tol``.  Passing ``close=True`` for a profile whose
        endpoints do not actually coincide raises ``ValueError``.
    closure_tol : float
        Endpoint-gap tolerance used for detection and for the
        ``close=True`` validation.

    Raises
    ------
    AxisAlignmentError
        If the profile is not aligned to the first axis.
    ValueError
        If the orbit radius (first coordinate) is not strictly positive, or
        ``close=True`` on a visibly open profile.
    """
    if curve.ambient != AMBIENT_SPHERE2:
        raise ValueError("revolve_in_s3 requires a spherical profile curve")
    if curve.axis is None or not np.allclose(curve.axis, _E1, atol=1e-12):
        raise AxisAlignmentError(
            "profile must be aligned with its rotation pole on the first "
            "coordinate axis; use align_to_axis(curve, axis, target='x')"
        )
    radius = curve.points[:, 0]
    if radius.min() <= 1e-9:
        raise ValueError(
            "profile touches the fixed great circle (zero orbit radius); "
            f"min radius = {radius.min():.3e}"
        )

    closed = _closes(curve, closure_tol) if close is None else bool(close)
    if closed and not _closes(curve, closure_tol):
        raise ValueError(
            "close=True but the profile endpoints differ by more than "
            f"{closure_tol:.1e}"
        )
    pts = curve.points[:-1] if closed else curve.points
    s_vals = curve.arclengths[:-1] if closed else curve.arclengths
    theta = _theta_grid(n_theta)

    r = pts[:, 0][:, None]
    vertices = np.empty((pts.shape[0], n_theta, 4))
    vertices[:, :, 0] = r * np.cos(theta)[None, :]
    vertices[:, :, 1] = r * np.sin(theta)[None, :]
    vertices[:, :, 2] = pts[:, 1][:, None]
    vertices[:, :, 3] = pts[:, 2][:, None]
    return SurfaceMesh(
        vertices=vertices,
        s_values=np.asarray(s_vals, dtype=float),
        theta_values=theta,
        closed_s=closed,
        closed_theta=True,
        ambient=AMBIENT_S3,
    )


def revolve_in_r3(
    curve: SampledCurve, n_theta: int = 128, closure_tol: float = 1e-9
) -> SurfaceMesh:
    """Revolve a planar ``(x, z)`` profile about the z-axis in R^3."""
    if curve.ambient != AMBIENT_PLANE2:
        raise ValueError("revolve_in_r3 requires a planar profile curve")
    radius = curve.points[:, 0]
    if radius.min() <= 0.0:
        raise ValueError(
            f"profile radius must stay positive; min = {radius.min():.3e}"
        )
    closed = _closes(curve, closure_tol)
    pts = curve.points[:-1] if closed else curve.points
    s_vals = curve.arclengths[:-1] if closed else curve.arclengths
    theta = _theta_grid(n_theta)
    r = pts[:, 0][:, None]
    vertices = np.empty((pts.shape[0], n_theta, 3))
    vertices[:, :, 0] = r * np.cos(theta)[None, :]
    vertices[:, :, 1] = r * np.sin(theta)[None, :]
    vertices[:, :, 2] = pts[:, 1][:, None]
    return SurfaceMesh(
        vertices=vertices,
        s_values=np.asarray(s_vals, dtype=float),
        theta_values=theta,
        closed_s=closed,
        closed_theta=True,
        ambient=AMBIENT_R3,
    )


def stereographic_project(mesh: SurfaceMesh, pole_tol: float = 1e-12) -> SurfaceMesh:
    """Stereographic image in R^3 of a 3-sphere mesh, projecting from
    ``(0, 0, 0, -1)``:  ``y = (x1, x2, x3) / (1 + x4)``.

    Raises
    ------
    PoleCollisionError
        If any vertex has ``|1 + x4| < pole_tol``; the message names the
        offending grid index.
    """
    if mesh.ambient != AMBIENT_S3 or mesh.ambient_dim != 4:
        raise ValueError("stereographic projection needs a 3-sphere mesh")
    denom = 1.0 + mesh.vertices[:, :, 3]
    if np.abs(denom).min() < pole_tol:
        i, j = np.unravel_index(int(np.abs(denom).argmin()), denom.shape)
        raise PoleCollisionError(
            f"vertex (i={i}, j={j}) lies at the projection pole "
            f"(1 + x4 = {denom[i, j]:.3e})"
        )
    return replace(
        mesh,
        vertices=mesh.vertices[:, :, :3] / denom[:, :, None],
        ambient=AMBIENT_R3,
    )


def stereographic_lift(mesh: SurfaceMesh) -> SurfaceMesh:
    """Inverse stereographic map of an R^3 mesh back onto the unit 3-sphere:
    ``x = (2 y, 1 - |y|^2) / (1 + |y|^2)``."""
    if mesh.ambient_dim != 3:
        raise ValueError("stereographic lift needs a 3-dimensional mesh")
    y = mesh.vertices
    n2 = np.sum(y**2, axis=-1)
    denom = (1.0 + n2)[:, :, None]
    vertices = np.concatenate(
        [2.0 * y / denom, ((1.0 - n2) / (1.0 + n2))[:, :, None]], axis=-1
    )
    return replace(mesh, vertices=vertices, ambient=AMBIENT_S3)


def export_mesh(
    mesh: SurfaceMesh, path: str | Path, format: str | None = None
) -> Path:
    """Write a mesh to ``.obj`` (3D only), ``.csv``, or ``.json``.

    The format is taken from ``format`` when given, otherwise inferred from
    the path suffix.
    """
    path = Path(path)
    fmt = (format or path.suffix.lstrip(".")).lower()
    if fmt == "obj":
        return _export_obj(mesh, path)
    if fmt == "csv":
        return _export_csv(mesh, path)
    if fmt == "json":
        return serialization.write_json(mesh.to_dict(), path)
    raise ValueError(f"unsupported mesh format {fmt!r}; use .obj, .csv, or .json")


def _export_obj(mesh: SurfaceMesh, path: Path) -> Path:
    if mesh.ambient_dim != 3:
        raise ValueError(
            "OBJ export requires 3-dimensional vertices; project the mesh first"
        )
    lines = [f"# quad mesh, {mesh.n_s} x {mesh.n_theta} grid, ambient {mesh.ambient}"]
    flat = mesh.vertices.reshape(-1, 3)
    for v in flat:
        lines.append(
            "v "
            + " ".join(serialization.format_float(x, 17) for x in v)
        )
    faces, _, _ = mesh.quad_faces()
    for f in faces:
        lines.append("f " + " ".join(str(idx + 1) for idx in f))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _export_csv(mesh: SurfaceMesh, path: Path) -> Path:
    dim = mesh.ambient_dim
    header = ["i", "j", "s", "theta"] + [f"x{k}" for k in range(dim)]
    rows = []
    for i in range(mesh.n_s):
        for j in range(mesh.n_theta):
            rows.append(
                [i, j, float(mesh.s_values[i]), float(mesh.theta_values[j])]
                + [float(x) for x in mesh.vertices[i, j]]
            )
    return serialization.write_csv(path, header, rows)


def import_mesh(path: str | Path) -> SurfaceMesh:
    """Read a mesh previously exported as ``.json`` (bit-exact round trip)."""
    data = serialization.read_json(path)
    return SurfaceMesh(
        vertices=np.asarray(data["vertices"], dtype=float),
        s_values=np.asarray(data["s_values"], dtype=float),
        theta_values=np.asarray(data["theta_values"], dtype=float),
        closed_s=bool(data["closed_s"]),
        closed_theta=bool(data["closed_theta"]),
        ambient=str(data["ambient"]),
    )


# ---------------------------------------------------------------------------
# Control meshes with known closed-form geometry, for certifier validation.
# ---------------------------------------------------------------------------


def make_sphere_mesh(
    radius: float = 1.0 / math.sqrt(2.0),
    n_s: int = 96,
    n_theta: int = 96,
    polar_margin: float = 0.35,
) -> SurfaceMesh:
    """Round sphere of the given radius in R^3 (poles trimmed off), as a
    surface of revolution: both principal curvatures equal ``1/radius``."""
    t = np.linspace(polar_margin, math.pi - polar_margin, n_s)
    pts = np.column_stack((radius * np.sin(t), -radius * np.cos(t)))
    curve = SampledCurve(
        ambient=AMBIENT_PLANE2,
        points=pts,
        tangents=np.column_stack((np.cos(t), np.sin(t))),
        arclengths=radius * (t - t[0]),
    )
    return revolve_in_r3(curve, n_theta=n_theta)


def make_cylinder_mesh(
    radius: float = 1.0, height: float = 2.0, n_s: int = 96, n_theta: int = 96
) -> SurfaceMesh:
    """Right circular cylinder in R^3: principal curvatures ``1/radius`` and 0."""
    z = np.linspace(-0.5 * height, 0.5 * height, n_s)
    curve = SampledCurve(
        ambient=AMBIENT_PLANE2,
        points=np.column_stack((np.full_like(z, radius), z)),
        tangents=np.column_stack((np.zeros_like(z), np.ones_like(z))),
        arclengths=z - z[0],
    )
    return revolve_in_r3(curve, n_theta=n_theta)


def make_cone_mesh(
    r_min: float = 0.5, r_max: float = 2.0, n_s: int = 96, n_theta: int = 96
) -> SurfaceMesh:
    """Flat cone ``z = 1 + r`` in R^3 (apex excluded).

    Intrinsically flat (zero Gauss curvature) yet non-CMC: the mean curvature
    varies along the meridian, so its gradient field is nowhere zero on the
    mesh while the Hopf-type quadratic form stays constant.
    """
    r = np.linspace(r_min, r_max, n_s)
    sq = math.sqrt(2.0)
    curve = SampledCurve(
        ambient=AMBIENT_PLANE2,
        points=np.column_stack((r, 1.0 + r)),
        tangents=np.column_stack((np.full_like(r, 1 / sq), np.full_like(r, 1 / sq))),
        arclengths=sq * (r - r[0]),
    )
    return revolve_in_r3(curve, n_theta=n_theta)


def make_clifford_mesh(n_s: int = 96, n_theta: int = 96) -> SurfaceMesh:
    """Square minimal torus in the unit 3-sphere (both circle radii
    ``1/sqrt(2)``): principal curvatures ``+1`` and ``-1``, zero mean
    curvature, flat induced metric."""
    curve = constant_latitude_curve(1.0 / math.sqrt(2.0), n_samples=n_s + 1)
    return revolve_in_s3(curve, n_theta=n_theta)


def perturb_mesh(mesh: SurfaceMesh, amplitude: float = 0.01) -> SurfaceMesh:
    """Deterministic smooth perturbation used as a negative control.

    Adds a low-frequency bump to the vertex grid (and re-projects onto the
    unit 3-sphere when the mesh lives there), large enough to break the
    curvature identities certified by this package but small enough to keep
    the grid embedded.
    """
    s_norm = np.linspace(0.0, 2.0 * math.pi, mesh.n_s, endpoint=mesh.closed_s)
    bump = amplitude * np.outer(np.sin(2.0 * s_norm), np.cos(3.0 * mesh.theta_values))
    vertices = mesh.vertices.copy()
    vertices[:, :, -1] += bump
    if mesh.ambient == AMBIENT_S3:
        vertices /= np.linalg.norm(vertices, axis=-1, keepdims=True)
    return replace(mesh, vertices=vertices)
