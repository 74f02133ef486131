"""Independent finite-difference certification of surface geometry.

Given only a structured quad mesh (no knowledge of how it was built), this
module recovers both fundamental forms with fourth-order seam-aware finite
differences, forms the shape operator, and checks the curvature identities
that characterize the surfaces this package constructs:

* principal-curvature balance ``3*lambda_1 + lambda_2 = 0``, with
  ``lambda_1`` labeled as the principal curvature whose eigendirection is
  aligned with the mean-curvature gradient;
* the tangency equation ``A(grad f) + f grad f = 0`` satisfied by
  biconservative surfaces (``f`` the mean curvature, ``A`` the shape
  operator);
* the ambient Gauss equation ``K = det A + c`` relating intrinsic curvature
  (computed purely from the first fundamental form) to extrinsic data;
* the bienergy stress tensor ``S2 = -2 f^2 g + 4 f II``: its trace identity
  ``tr_g S2 = 4 f^2`` (algebraic, machine precision) and its covariant
  divergence (zero exactly on biconservative surfaces);
* the Hopf-type quadratic form ``Q = (G/4) f (lambda_m - lambda_p)`` of a
  revolution grid, whose arclength derivative satisfies
  ``2 Q_s = G lambda_m f_s`` by the Codazzi equation.

Every check reports a dimensionless residual normalized by the natural
curvature scale of the mesh, so tolerances are resolution- and
size-independent.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import serialization
from .fd import grid_derivative
from .surfaces import AMBIENT_R3, AMBIENT_S3, SurfaceMesh

__all__ = [
    "CertTolerances",
    "GeometrySamples",
    "CheckResult",
    "CertReport",
    "StressReport",
    "HopfReport",
    "DegenerateGridError",
    "fundamental_forms",
    "weingarten_residual",
    "biconservative_residual",
    "gauss_residual",
    "stress_bienergy",
    "hopf_q_residual",
    "certify_surface",
]


class DegenerateGridError(ValueError):
    """Raised when the mesh parameterization degenerates (det g <= 0)."""


@dataclass(frozen=True)
class CertTolerances:
    """Dimensionless tolerances for the certification checks."""

    weingarten: float = 1e-3
    biconservative: float = 1e-3
    gauss: float = 1e-3
    stress_trace: float = 1e-12
    stress_divergence: float = 1e-3
    hopf_mismatch: float = 1e-2
    hopf_holomorphic: float = 1e-6
    self_adjoint: float = 1e-10
    alignment_angle: float = 1e-2  #: radians
    #: Gradient mask: points with |grad f| below
    #: max(grad_mask_rel * max|grad f|, grad_mask_floor * max|lambda|^2)
    #: are excluded from gradient-based checks.
    grad_mask_rel: float = 1e-3
    grad_mask_floor: float = 1e-4
    #: Below this unmasked fraction the surface is treated as CMC-like.
    cmc_fraction: float = 0.01
    #: Relative noise floor for the Hopf identity (both sides negligible).
    hopf_noise_floor: float = 1e-8


@dataclass
class GeometrySamples:
    """Fundamental forms and derived curvature data sampled on a mesh grid.

    All arrays have the grid shape ``(n_s, n_theta)`` unless noted.  The
    orientation of the unit normal is chosen so the mean curvature ``f`` is
    nonnegative where it is significant.
    """

    ambient: str
    c_ambient: float  #: sectional curvature of the ambient space form
    h_s: float
    h_theta: float
    closed_s: bool
    closed_theta: bool
    E: np.ndarray = field(repr=False, default=None)
    F: np.ndarray = field(repr=False, default=None)
    G: np.ndarray = field(repr=False, default=None)
    e: np.ndarray = field(repr=False, default=None)
    f2: np.ndarray = field(repr=False, default=None)
    g2: np.ndarray = field(repr=False, default=None)
    det_g: np.ndarray = field(repr=False, default=None)
    normal: np.ndarray = field(repr=False, default=None)
    a11: np.ndarray = field(repr=False, default=None)
    a12: np.ndarray = field(repr=False, default=None)
    a21: np.ndarray = field(repr=False, default=None)
    a22: np.ndarray = field(repr=False, default=None)
    f: np.ndarray = field(repr=False, default=None)  #: mean curvature
    lam_minus: np.ndarray = field(repr=False, default=None)
    lam_plus: np.ndarray = field(repr=False, default=None)
    lam1: np.ndarray = field(repr=False, default=None)  #: gradient-aligned
    lam2: np.ndarray = field(repr=False, default=None)
    f_s: np.ndarray = field(repr=False, default=None)
    f_t: np.ndarray = field(repr=False, default=None)
    grad_s: np.ndarray = field(repr=False, default=None)  #: raised components
    grad_t: np.ndarray = field(repr=False, default=None)
    grad_norm: np.ndarray = field(repr=False, default=None)
    usable: np.ndarray = field(repr=False, default=None)  #: gradient mask
    alignment_angle: np.ndarray = field(repr=False, default=None)
    K_intrinsic: np.ndarray | None = field(repr=False, default=None)
    self_adjoint_residual: float = 0.0
    orientation_flipped: bool = False
    lambda_max: float = 0.0
    unmasked_fraction: float = 0.0

    @property
    def grid_shape(self) -> tuple[int, int]:
        return self.E.shape


def _metric_inner(geom: GeometrySamples, v0, v1, w0, w1):
    """First-fundamental-form inner product of contravariant vectors."""
    return geom.E * v0 * w0 + geom.F * (v0 * w1 + v1 * w0) + geom.G * v1 * w1


def _normal_r3(xs: np.ndarray, xt: np.ndarray) -> np.ndarray:
    n = np.cross(xs, xt)
    return n / np.linalg.norm(n, axis=-1, keepdims=True)


def _normal_s3(v: np.ndarray, xs: np.ndarray, xt: np.ndarray) -> np.ndarray:
    """Unit normal tangent to the 3-sphere: the 4D vector orthogonal to the
    position vector and both coordinate tangents (generalized cross
    product via cofactor expansion)."""
    m = np.stack([v, xs, xt], axis=-2)  # (..., 3, 4)
    cols = np.arange(4)
    n = np.empty(v.shape)
    for i in range(4):
        minor = m[..., :, cols[cols != i]]
        n[..., i] = ((-1.0) ** i) * np.linalg.det(minor)
    return n / np.linalg.norm(n, axis=-1, keepdims=True)


def _uniform_spacing(values: np.ndarray, name: str) -> float:
    diffs = np.diff(values)
    h = float(diffs[0])
    if h <= 0 or np.abs(diffs - h).max() > 1e-9 * abs(h):
        raise ValueError(f"{name} grid must be uniformly spaced")
    return h


def fundamental_forms(
    mesh: SurfaceMesh,
    ambient: str | None = None,
    tolerances: CertTolerances | None = None,
) -> GeometrySamples:
    """Recover metric, second fundamental form, and shape-operator data.

    All derivatives are fourth-order finite differences that wrap around the
    mesh seams exactly where the grid is closed and fall back to one-sided
    stencils at open boundaries.

    Parameters
    ----------
    mesh : SurfaceMesh
        Rectangular-grid mesh (32+ samples per direction recommended).
    ambient : str, optional
        ``"r3"`` or ``"s3"``; must agree with ``mesh.ambient`` when given
        (the mesh already knows where it lives — the parameter exists to let
        callers assert it).
    tolerances : CertTolerances, optional
        Masking/labeling thresholds; defaults apply otherwise.

    Raises
    ------
    DegenerateGridError
        If the induced metric degenerates anywhere on the grid.
    ValueError
        If ``ambient`` contradicts the mesh.
    """
    if ambient is not None and ambient != mesh.ambient:
        raise ValueError(
            f"requested ambient {ambient!r} but the mesh lives in "
            f"{mesh.ambient!r}"
        )
    tol = tolerances or CertTolerances()
    v = np.asarray(mesh.vertices, dtype=float)
    h_s = _uniform_spacing(mesh.s_values, "s")
    h_t = _uniform_spacing(mesh.theta_values, "theta")

    def d_s(a, order=1):
        return grid_derivative(a, h_s, order, axis=0, periodic=mesh.closed_s)

    def d_t(a, order=1):
        return grid_derivative(a, h_t, order, axis=1, periodic=mesh.closed_theta)

    xs = d_s(v)
    xt = d_t(v)
    xss = d_s(v, 2)
    xtt = d_t(v, 2)
    xst = d_t(xs)
    xts = d_s(xt)

    E = np.sum(xs * xs, axis=-1)
    F = np.sum(xs * xt, axis=-1)
    G = np.sum(xt * xt, axis=-1)
    det_g = E * G - F * F
    if det_g.min() <= 0.0:
        i, j = np.unravel_index(int(det_g.argmin()), det_g.shape)
        raise DegenerateGridError(
            f"induced metric degenerates at grid point (i={i}, j={j}): "
            f"det g = {det_g[i, j]:.3e}"
        )

    if mesh.ambient == AMBIENT_S3:
        normal = _normal_s3(v, xs, xt)
        c_ambient = 1.0
    elif mesh.ambient == AMBIENT_R3:
        normal = _normal_r3(xs, xt)
        c_ambient = 0.0
    else:
        raise ValueError(f"unknown ambient {mesh.ambient!r}")

    e = np.sum(xss * normal, axis=-1)
    f2 = np.sum(xst * normal, axis=-1)
    g2 = np.sum(xtt * normal, axis=-1)
    f2_alt = np.sum(xts * normal, axis=-1)
    b_scale = max(np.abs(e).max(), np.abs(f2).max(), np.abs(g2).max(), 1e-300)
    self_adjoint_residual = float(np.abs(f2 - f2_alt).max() / b_scale)

    # Mean curvature sign convention: flip the normal so the significant part
    # of f is nonnegative.
    f_pre = 0.5 * ((G * e - F * f2) + (E * g2 - F * f2)) / det_g
    flipped = False
    f_abs_max = np.abs(f_pre).max()
    if f_abs_max > 0:
        sig = np.abs(f_pre) > 0.05 * f_abs_max
        if sig.any() and f_pre[sig].mean() < 0.0:
            flipped = True
            normal = -normal
            e, f2, g2 = -e, -f2, -g2

    a11 = (G * e - F * f2) / det_g
    a12 = (G * f2 - F * g2) / det_g
    a21 = (E * f2 - F * e) / det_g
    a22 = (E * g2 - F * f2) / det_g
    f = 0.5 * (a11 + a22)
    det_a = a11 * a22 - a12 * a21
    disc = np.sqrt(np.clip(f * f - det_a, 0.0, None))
    lam_minus = f - disc
    lam_plus = f + disc
    lambda_max = float(max(np.abs(lam_minus).max(), np.abs(lam_plus).max()))

    f_s = d_s(f)
    f_t = d_t(f)
    grad_s = (G * f_s - F * f_t) / det_g
    grad_t = (E * f_t - F * f_s) / det_g
    grad_norm = np.sqrt(np.clip(f_s * grad_s + f_t * grad_t, 0.0, None))
    threshold = max(
        tol.grad_mask_rel * float(grad_norm.max()),
        tol.grad_mask_floor * lambda_max**2,
    )
    usable = grad_norm > threshold
    unmasked_fraction = float(usable.mean())

    # Eigendirections: for each eigenvalue take the better-conditioned row of
    # (A - lambda I) as a null-vector candidate.
    def _eigvec(lam):
        c1_0, c1_1 = a12, lam - a11
        c2_0, c2_1 = lam - a22, a21
        n1 = c1_0**2 + c1_1**2
        n2 = c2_0**2 + c2_1**2
        use1 = n1 >= n2
        return np.where(use1, c1_0, c2_0), np.where(use1, c1_1, c2_1)

    def _cos2_with_grad(v0, v1):
        num = _metric_inner(geom_stub, v0, v1, grad_s, grad_t) ** 2
        den = _metric_inner(geom_stub, v0, v1, v0, v1) * grad_norm**2
        # Cauchy-Schwarz bounds num <= den, so flooring the denominator is
        # safe: degenerate candidates report zero alignment.
        return num / np.maximum(den, 1e-300)

    # Small stub so the metric helper can be reused before the dataclass
    # is assembled.
    geom_stub = GeometrySamples(
        ambient=mesh.ambient, c_ambient=c_ambient, h_s=h_s, h_theta=h_t,
        closed_s=mesh.closed_s, closed_theta=mesh.closed_theta,
    )
    geom_stub.E, geom_stub.F, geom_stub.G = E, F, G

    vp0, vp1 = _eigvec(lam_plus)
    vm0, vm1 = _eigvec(lam_minus)
    cos2_p = _cos2_with_grad(vp0, vp1)
    cos2_m = _cos2_with_grad(vm0, vm1)
    plus_aligned = cos2_p >= cos2_m
    lam1 = np.where(plus_aligned, lam_plus, lam_minus)
    lam2 = np.where(plus_aligned, lam_minus, lam_plus)
    # Outside the usable region the labeling is undefined; fall back to the
    # deterministic order (lam1 = smaller eigenvalue).
    lam1 = np.where(usable, lam1, lam_minus)
    lam2 = np.where(usable, lam2, lam_plus)
    best_cos2 = np.clip(np.maximum(cos2_p, cos2_m), 0.0, 1.0)
    alignment_angle = np.where(
        usable, np.arccos(np.sqrt(best_cos2)), np.nan
    )

    # Intrinsic Gauss curvature from the first fundamental form alone, on
    # orthogonal parameter grids.
    K_intrinsic = None
    if np.abs(F).max() <= 1e-5 * math.sqrt(float(E.max()) * float(G.max())):
        root = np.sqrt(E * G)
        term_s = d_s(d_s(G) / root)
        term_t = d_t(d_t(E) / root)
        K_intrinsic = -(term_s + term_t) / (2.0 * root)

    geom = geom_stub
    geom.e, geom.f2, geom.g2 = e, f2, g2
    geom.det_g = det_g
    geom.normal = normal
    geom.a11, geom.a12, geom.a21, geom.a22 = a11, a12, a21, a22
    geom.f = f
    geom.lam_minus, geom.lam_plus = lam_minus, lam_plus
    geom.lam1, geom.lam2 = lam1, lam2
    geom.f_s, geom.f_t = f_s, f_t
    geom.grad_s, geom.grad_t = grad_s, grad_t
    geom.grad_norm = grad_norm
    geom.usable = usable
    geom.alignment_angle = alignment_angle
    geom.K_intrinsic = K_intrinsic
    geom.self_adjoint_residual = self_adjoint_residual
    geom.orientation_flipped = flipped
    geom.lambda_max = lambda_max
    geom.unmasked_fraction = unmasked_fraction
    return geom


def weingarten_residual(geom: GeometrySamples) -> float:
    """Relative residual of ``3 lambda_1 + lambda_2 = 0`` on the usable set.

    ``lambda_1`` is the gradient-aligned principal curvature.  Normalized by
    the largest principal-curvature magnitude.

    Raises
    ------
    ValueError
        If the usable set is empty (CMC-like surface; the labeling — and the
        identity — are then undefined).
    """
    if not geom.usable.any():
        raise ValueError(
            "no usable mean-curvature gradient: the Weingarten identity "
            "check is undefined on CMC-like surfaces"
        )
    resid = np.abs(3.0 * geom.lam1 + geom.lam2)[geom.usable].max()
    return float(resid / geom.lambda_max)


def biconservative_residual(geom: GeometrySamples) -> float:
    """Relative residual of the tangency equation ``A(grad f) + f grad f = 0``.

    The vector residual is measured in the induced metric and normalized by
    the cubed curvature scale ``max|lambda|^3`` (the natural magnitude of
    ``A grad f`` on a unit-feature surface), so the check passes on CMC
    surfaces — which satisfy the equation trivially, with both terms at the
    gradient noise level — and fails on surfaces where the genuine tangent
    defect is of curvature order.
    """
    r0 = geom.a11 * geom.grad_s + geom.a12 * geom.grad_t + geom.f * geom.grad_s
    r1 = geom.a21 * geom.grad_s + geom.a22 * geom.grad_t + geom.f * geom.grad_t
    norm = np.sqrt(np.clip(_metric_inner(geom, r0, r1, r0, r1), 0.0, None))
    return float(norm.max() / max(geom.lambda_max**3, 1e-300))


def gauss_residual(geom: GeometrySamples) -> float:
    """Relative residual of the Gauss equation ``K = det A + c``.

    ``K`` comes from the first fundamental form alone; ``det A`` from the
    second.  Normalized by ``max(|K|, lambda_max^2, |c|)``.

    Raises
    ------
    ValueError
        If the intrinsic curvature was not computable (non-orthogonal grid).
    """
    if geom.K_intrinsic is None:
        raise ValueError(
            "intrinsic curvature unavailable: the parameter grid is not "
            "orthogonal"
        )
    det_a = geom.a11 * geom.a22 - geom.a12 * geom.a21
    resid = np.abs(geom.K_intrinsic - (det_a + geom.c_ambient))
    scale = max(
        float(np.abs(geom.K_intrinsic).max()),
        geom.lambda_max**2,
        abs(geom.c_ambient),
        1e-300,
    )
    return float(resid.max() / scale)


@dataclass(frozen=True)
class StressReport:
    """Residuals of the bienergy stress tensor ``S2 = -2 f^2 g + 4 f II``."""

    trace_residual: float  #: max |tr_g S2 - 4 f^2| / max(4 f^2, lambda_max^2)
    divergence_residual: float  #: max ||div S2||_g / lambda_max^3
    divergence_max: float  #: max ||div S2||_g (absolute)


def stress_bienergy(geom: GeometrySamples) -> StressReport:
    """Evaluate the bienergy stress tensor's trace and covariant divergence.

    The trace identity ``tr_g S2 = 4 f^2`` is algebraic and must hold at
    machine precision.  The covariant divergence
    ``(div S2)_j = g^{ik} (d_i S_{kj} - Gamma^l_{ik} S_{lj} - Gamma^l_{ij} S_{kl})``
    uses finite-difference Christoffel symbols of the induced metric and
    vanishes exactly on biconservative surfaces.
    """
    E, F, G = geom.E, geom.F, geom.G
    f, e, f2, g2 = geom.f, geom.e, geom.f2, geom.g2
    det = geom.det_g

    s11 = -2.0 * f**2 * E + 4.0 * f * e
    s12 = -2.0 * f**2 * F + 4.0 * f * f2
    s22 = -2.0 * f**2 * G + 4.0 * f * g2

    trace = (G * s11 - 2.0 * F * s12 + E * s22) / det
    target = 4.0 * f**2
    # Scale by the curvature magnitude even when f itself is negligible
    # (minimal surfaces), where the roundoff of the trace expression would
    # otherwise be compared against a vanishing target.
    trace_scale = max(float(target.max()), geom.lambda_max**2, 1e-300)
    trace_residual = float(np.abs(trace - target).max() / trace_scale)

    def d_s(a):
        return grid_derivative(a, geom.h_s, 1, axis=0, periodic=geom.closed_s)

    def d_t(a):
        return grid_derivative(a, geom.h_theta, 1, axis=1, periodic=geom.closed_theta)

    Es, Et = d_s(E), d_t(E)
    Fs, Ft = d_s(F), d_t(F)
    Gs, Gt = d_s(G), d_t(G)

    # Christoffel symbols of the first kind, Gamma_{ij,m}; symmetric in (i, j).
    L = np.empty(E.shape + (2, 2, 2))
    L[..., 0, 0, 0] = 0.5 * Es
    L[..., 0, 0, 1] = Fs - 0.5 * Et
    L[..., 0, 1, 0] = 0.5 * Et
    L[..., 0, 1, 1] = 0.5 * Gs
    L[..., 1, 0, 0] = 0.5 * Et
    L[..., 1, 0, 1] = 0.5 * Gs
    L[..., 1, 1, 0] = Ft - 0.5 * Gs
    L[..., 1, 1, 1] = 0.5 * Gt

    ginv = np.empty(E.shape + (2, 2))
    ginv[..., 0, 0] = G / det
    ginv[..., 0, 1] = -F / det
    ginv[..., 1, 0] = -F / det
    ginv[..., 1, 1] = E / det

    gamma = np.einsum("...lm,...ijm->...lij", ginv, L)

    S = np.empty(E.shape + (2, 2))
    S[..., 0, 0] = s11
    S[..., 0, 1] = s12
    S[..., 1, 0] = s12
    S[..., 1, 1] = s22
    dS = np.stack([d_s(S), d_t(S)], axis=2)  # (..., i, k, j) = d_i S_{kj}

    div = (
        np.einsum("...ik,...ikj->...j", ginv, dS)
        - np.einsum("...ik,...lik,...lj->...j", ginv, gamma, S)
        - np.einsum("...ik,...lij,...kl->...j", ginv, gamma, S)
    )
    # Norm of the covector in the induced metric: div_i g^{ij} div_j.
    div_up = np.einsum("...ij,...j->...i", ginv, div)
    div_norm = np.sqrt(np.clip(np.sum(div * div_up, axis=-1), 0.0, None))
    scale = max(geom.lambda_max**3, 1e-300)
    return StressReport(
        trace_residual=trace_residual,
        divergence_residual=float(div_norm.max() / scale),
        divergence_max=float(div_norm.max()),
    )


@dataclass(frozen=True)
class HopfReport:
    """Hopf-type quadratic form diagnostics on a revolution grid.

    ``Q = (G/4) f (lambda_m - lambda_p)`` with ``lambda_m = e/E`` (meridian),
    ``lambda_p = g2/G`` (parallel).  By the Codazzi equation every surface of
    revolution satisfies ``2 Q_s = G lambda_m f_s``; in the conformal
    parameter the checked identity reads
    ``4 dQ/dzbar = 2 sqrt(G/E) Q_s  =  sqrt(G/E) G lambda_m f_s``.
    """

    mismatch: float  #: relative identity mismatch (0 when below noise floor)
    holomorphic: float  #: max |4 dQ/dzbar| / (max G^{3/2} lambda_max^3)
    imag_part: float  #: max |2 dQ/dtheta| on the same scale
    below_noise_floor: bool  #: both identity sides numerically negligible
    q_min: float
    q_max: float
    k_intrinsic_max: float | None
    grad_norm_max: float
    q: np.ndarray = field(repr=False, default=None)
    lhs: np.ndarray = field(repr=False, default=None)  #: 4 dQ/dzbar samples
    rhs: np.ndarray = field(repr=False, default=None)  #: shape-operator side


def hopf_q_residual(
    geom: GeometrySamples, tolerances: CertTolerances | None = None
) -> HopfReport:
    """Check the Hopf-type quadratic form identity on a revolution grid.

    Raises
    ------
    ValueError
        If the grid is not by principal parameter curves (F or the mixed
        second-form coefficient not negligibly small), i.e. not a surface of
        revolution sampled the way this package produces them.
    """
    tol = tolerances or CertTolerances()
    E, G = geom.E, geom.G
    scale_g = math.sqrt(float(E.max()) * float(G.max()))
    if np.abs(geom.F).max() > 1e-5 * scale_g:
        raise ValueError("Hopf check requires an orthogonal parameter grid")
    b_scale = max(np.abs(geom.e).max(), np.abs(geom.g2).max(), 1e-300)
    if np.abs(geom.f2).max() > 1e-4 * b_scale:
        raise ValueError(
            "Hopf check requires principal parameter curves "
            "(mixed second-form coefficient must vanish)"
        )

    lam_m = geom.e / E
    lam_p = geom.g2 / G
    q = 0.25 * G * geom.f * (lam_m - lam_p)
    q_s = grid_derivative(q, geom.h_s, 1, axis=0, periodic=geom.closed_s)
    q_t = grid_derivative(q, geom.h_theta, 1, axis=1, periodic=geom.closed_theta)

    w = np.sqrt(G / E)
    lhs = 2.0 * w * q_s
    rhs = w * G * lam_m * geom.f_s
    scale = max(float((G**1.5).max()) * geom.lambda_max**3, 1e-300)

    pair_scale = max(float(np.abs(lhs).max()), float(np.abs(rhs).max()))
    below_floor = pair_scale < tol.hopf_noise_floor * scale
    mismatch = 0.0 if below_floor else float(np.abs(lhs - rhs).max() / pair_scale)

    return HopfReport(
        mismatch=mismatch,
        holomorphic=float(np.abs(lhs).max() / scale),
        imag_part=float(2.0 * np.abs(q_t).max() / scale),
        below_noise_floor=bool(below_floor),
        q_min=float(q.min()),
        q_max=float(q.max()),
        k_intrinsic_max=(
            None
            if geom.K_intrinsic is None
            else float(np.abs(geom.K_intrinsic).max())
        ),
        grad_norm_max=float(geom.grad_norm.max()),
        q=q,
        lhs=lhs,
        rhs=rhs,
    )


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tolerance: float
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "note": self.note,
        }


@dataclass
class CertReport:
    """Outcome of a full certification run on one mesh."""

    checks: list[CheckResult]
    notes: list[str]
    ambient: str
    n_s: int
    n_theta: int
    unmasked_fraction: float
    orientation_flipped: bool
    lambda_max: float
    cmc_like: bool

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "ambient": self.ambient,
            "n_s": self.n_s,
            "n_theta": self.n_theta,
            "unmasked_fraction": self.unmasked_fraction,
            "orientation_flipped": self.orientation_flipped,
            "lambda_max": self.lambda_max,
            "cmc_like": self.cmc_like,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }

    def write_json(self, path: str | Path) -> Path:
        return serialization.write_json(self.to_dict(), path)

    def write_csv(self, path: str | Path) -> Path:
        return serialization.write_csv(
            path,
            ["check", "value", "tolerance", "passed"],
            [[c.name, c.value, c.tolerance, c.passed] for c in self.checks],
        )


def certify_surface(
    mesh: SurfaceMesh, tolerances: CertTolerances | None = None
) -> CertReport:
    """Run the full battery of curvature-identity checks on a mesh.

    Checks that require a well-defined mean-curvature gradient direction
    (Weingarten balance, eigendirection alignment) are skipped with a note on
    CMC-like surfaces, where the gradient mask removes (nearly) every point;
    the remaining checks — biconservative tangency, Gauss equation, stress
    trace and divergence, Hopf identity in holomorphy mode — still run, since
    CMC surfaces satisfy them.
    """
    tol = tolerances or CertTolerances()
    geom = fundamental_forms(mesh, tolerances=tol)
    checks: list[CheckResult] = []
    notes: list[str] = []
    cmc_like = geom.unmasked_fraction < tol.cmc_fraction

    checks.append(
        CheckResult(
            "self_adjoint",
            geom.self_adjoint_residual,
            tol.self_adjoint,
            geom.self_adjoint_residual <= tol.self_adjoint,
            "mixed second-form coefficient from both derivative orders",
        )
    )

    f_abs = np.abs(geom.f)
    # A mean curvature is significant only relative to the curvature scale;
    # on minimal surfaces f is pure noise and carries no orientation signal.
    sig = f_abs > max(0.05 * float(f_abs.max()), 1e-8 * geom.lambda_max)
    neg_fraction = float((geom.f[sig] < 0).mean()) if sig.any() else 0.0
    checks.append(
        CheckResult(
            "orientation",
            neg_fraction,
            0.0,
            neg_fraction <= 0.0,
            "fraction of significant mean curvature below zero after orientation",
        )
    )

    if cmc_like:
        notes.append(
            "weingarten and alignment checks skipped: CMC-like surface "
            f"(usable gradient fraction {geom.unmasked_fraction:.2%})"
        )
    else:
        value = weingarten_residual(geom)
        checks.append(
            CheckResult(
                "weingarten",
                value,
                tol.weingarten,
                value <= tol.weingarten,
                "max |3 lambda_1 + lambda_2| / max |lambda| on the usable set",
            )
        )
        angle = float(np.nanmax(geom.alignment_angle))
        checks.append(
            CheckResult(
                "eigen_alignment",
                angle,
                tol.alignment_angle,
                angle <= tol.alignment_angle,
                "max angle (radians) between grad f and the lambda_1 "
                "eigendirection on the usable set",
            )
        )

    value = biconservative_residual(geom)
    checks.append(
        CheckResult(
            "biconservative",
            value,
            tol.biconservative,
            value <= tol.biconservative,
            "max ||A grad f + f grad f||_g, normalized",
        )
    )

    if geom.K_intrinsic is not None:
        value = gauss_residual(geom)
        checks.append(
            CheckResult(
                "gauss",
                value,
                tol.gauss,
                value <= tol.gauss,
                "max |K - (det A + c)| / curvature scale",
            )
        )
    else:
        notes.append("gauss check skipped: non-orthogonal parameter grid")

    stress = stress_bienergy(geom)
    checks.append(
        CheckResult(
            "stress_trace",
            stress.trace_residual,
            tol.stress_trace,
            stress.trace_residual <= tol.stress_trace,
            "max |tr_g S2 - 4 f^2| / curvature scale",
        )
    )
    checks.append(
        CheckResult(
            "stress_divergence",
            stress.divergence_residual,
            tol.stress_divergence,
            stress.divergence_residual <= tol.stress_divergence,
            "max ||div S2||_g / max|lambda|^3",
        )
    )

    try:
        hopf = hopf_q_residual(geom, tol)
    except ValueError as exc:
        notes.append(f"hopf check skipped: {exc}")
        hopf = None
    if hopf is not None:
        if cmc_like:
            checks.append(
                CheckResult(
                    "hopf_holomorphic",
                    hopf.holomorphic,
                    tol.hopf_holomorphic,
                    hopf.holomorphic <= tol.hopf_holomorphic,
                    "max |4 dQ/dzbar| / curvature scale (CMC mode)",
                )
            )
        else:
            note = "relative mismatch of 2 Q_s = G lambda_m f_s"
            if hopf.below_noise_floor:
                note += " (both sides below the noise floor)"
            checks.append(
                CheckResult(
                    "hopf_identity",
                    hopf.mismatch,
                    tol.hopf_mismatch,
                    hopf.mismatch <= tol.hopf_mismatch,
                    note,
                )
            )

    return CertReport(
        checks=checks,
        notes=notes,
        ambient=geom.ambient,
        n_s=mesh.n_s,
        n_theta=mesh.n_theta,
        unmasked_fraction=geom.unmasked_fraction,
        orientation_flipped=geom.orientation_flipped,
        lambda_max=geom.lambda_max,
        cmc_like=cmc_like,
    )
