"""Reconstruction of profile curves from their curvature laws.

On the unit 2-sphere a curve with geodesic curvature ``kappa(s)`` satisfies
the frame system

    gamma' = T,      T' = -gamma + kappa * (gamma x T),

with ``N = gamma x T`` completing the oriented orthonormal frame.  This module
integrates that system with a high-order explicit Runge-Kutta method (tight
tolerances, frame re-orthonormalization at every output sample, drift
tracking), measures closure defects and winding numbers of the result,
recovers the rotation axis the curve winds around from the restriction of the
ambient rotation field to the curve, and rigidly aligns curves for
revolution.  It also constructs the planar profile of the Euclidean
biconservative graph of revolution in closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from . import serialization
from .curvature import CurvatureProfile

__all__ = [
    "AMBIENT_SPHERE2",
    "AMBIENT_PLANE2",
    "SampledCurve",
    "ClosureDiagnostics",
    "AxisEstimationError",
    "integrate_frenet_sphere",
    "integrate_on_sphere",
    "constant_latitude_curve",
    "closure_diagnostics",
    "killing_axis",
    "align_to_axis",
    "euclidean_profile",
    "profile_slope",
]

AMBIENT_SPHERE2 = "sphere2"
AMBIENT_PLANE2 = "plane2"

_TARGET_AXES = {
    "x": np.array([1.0, 0.0, 0.0]),
    "y": np.array([0.0, 1.0, 0.0]),
    "z": np.array([0.0, 0.0, 1.0]),
}


class AxisEstimationError(ValueError):
    """Raised when no well-defined rotation axis can be recovered."""


@dataclass
class SampledCurve:
    """A discretely sampled arclength-parameterized curve.

    Attributes
    ----------
    ambient : str
        ``"sphere2"`` (points on the unit 2-sphere in R^3) or ``"plane2"``
        (points in R^2).
    points, tangents : ndarray of shape (N, dim)
        Unit-speed samples and tangents.
    arclengths : ndarray of shape (N,)
        Arclength parameter values of the samples.
    kappas, kappa_s : ndarray or None
        Geodesic curvature and its arclength derivative at the samples, when
        the curve came from a known curvature law.
    axis : ndarray or None
        The rotation axis this curve has been aligned to (set by
        :func:`align_to_axis`), in curve coordinates.
    max_sphere_drift : float
        Largest deviation of ``|point|`` or frame orthonormality from exact
        sphere geometry seen during integration, before renormalization.
    """

    ambient: str
    points: np.ndarray
    tangents: np.ndarray
    arclengths: np.ndarray
    kappas: np.ndarray | None = None
    kappa_s: np.ndarray | None = None
    axis: np.ndarray | None = None
    max_sphere_drift: float = 0.0

    @property
    def n_samples(self) -> int:
        return int(self.points.shape[0])

    def write_csv(self, path: str | Path) -> Path:
        dim = self.points.shape[1]
        coords = ["x", "y", "z"] if dim == 3 else ["x", "z"]
        header = ["s"] + coords + [f"T{c}" for c in coords]
        rows = np.column_stack([self.arclengths, self.points, self.tangents])
        if self.kappas is not None:
            header.append("kappa")
            rows = np.column_stack([rows, self.kappas])
        return serialization.write_csv(path, header, rows.tolist())


@dataclass(frozen=True)
class ClosureDiagnostics:
    """Closure and winding measurements of a spherical curve.

    Attributes
    ----------
    defect : float
        ``|gamma(L) - gamma(0)| + |T(L) - T(0)|``.
    winding : int
        Signed number of trips around the axis (rounded azimuth advance over
        ``2 pi``).
    axis : ndarray
        Unit rotation axis, oriented toward the hemisphere containing the
        curve (so winding is positive for these profiles).
    delta_theta : float
        Total unwrapped azimuth advance about ``axis``.
    """

    defect: float
    winding: int
    axis: np.ndarray
    delta_theta: float

    def to_dict(self) -> dict:
        return {
            "defect": self.defect,
            "winding": self.winding,
            "axis": self.axis,
            "delta_theta": self.delta_theta,
        }


def _rhs_factory(kappa_fn: Callable[[float], float]):
    def rhs(s: float, y: np.ndarray) -> np.ndarray:
        g = y[:3]
        t = y[3:]
        return np.concatenate((t, -g + kappa_fn(s) * np.cross(g, t)))

    return rhs


def _frame_drift(y: np.ndarray) -> float:
    g = y[:3]
    t = y[3:]
    return max(
        abs(np.linalg.norm(g) - 1.0),
        abs(np.linalg.norm(t) - 1.0),
        abs(float(np.dot(g, t))),
    )


def _renormalize(y: np.ndarray) -> np.ndarray:
    g = y[:3] / np.linalg.norm(y[:3])
    t = y[3:] - np.dot(y[3:], g) * g
    t /= np.linalg.norm(t)
    return np.concatenate((g, t))


def integrate_frenet_sphere(
    kappa_fn: Callable[[float], float],
    s_eval: np.ndarray,
    y0: np.ndarray | None = None,
    rtol: float = 1e-12,
    atol: float = 1e-12,
) -> tuple[np.ndarray, np.ndarray, float]:
    """Integrate the spherical frame system through given arclength samples.

    Integration proceeds sample to sample with an 8th-order explicit
    Runge-Kutta method; after each sample the frame is re-orthonormalized
    (projected back onto the unit sphere with a perpendicular unit tangent)
    and the largest pre-projection drift is recorded.

    Parameters
    ----------
    kappa_fn : callable
        Geodesic curvature as a function of arclength.
    s_eval : array
        Strictly monotone sample parameters (increasing or decreasing).
    y0 : array of shape (6,), optional
        Initial ``(gamma, T)``; defaults to ``gamma = e1``, ``T = e2``.
    rtol, atol : float
        Integrator tolerances.

    Returns
    -------
    points : ndarray (N, 3)
    tangents : ndarray (N, 3)
    max_drift : float
    """
    s_eval = np.asarray(s_eval, dtype=float)
    steps = np.diff(s_eval)
    if not (np.all(steps > 0) or np.all(steps < 0)):
        raise ValueError("s_eval must be strictly monotone")
    if y0 is None:
        y0 = np.array([1.0, 0.0, 0.0, 0.0, 1.0, 0.0])
    y = _renormalize(np.asarray(y0, dtype=float))

    rhs = _rhs_factory(kappa_fn)
    n = s_eval.size
    points = np.empty((n, 3))
    tangents = np.empty((n, 3))
    points[0], tangents[0] = y[:3], y[3:]
    drift = 0.0
    for i in range(1, n):
        sol = solve_ivp(
            rhs,
            (s_eval[i - 1], s_eval[i]),
            y,
            method="DOP853",
            rtol=rtol,
            atol=atol,
            dense_output=False,
        )
        if not sol.success:
            raise ArithmeticError(
                f"frame integration failed on [{s_eval[i-1]}, {s_eval[i]}]: "
                f"{sol.message}"
            )
        y_raw = sol.y[:, -1]
        drift = max(drift, _frame_drift(y_raw))
        y = _renormalize(y_raw)
        points[i], tangents[i] = y[:3], y[3:]
    return points, tangents, drift


def integrate_on_sphere(
    profile: CurvatureProfile,
    n_periods: int = 1,
    n_samples: int | None = None,
    samples_per_period: int = 512,
    rtol: float = 1e-12,
    atol: float = 1e-12,
) -> SampledCurve:
    """Reconstruct the spherical curve of a periodic curvature profile.

    Parameters
    ----------
    profile : CurvatureProfile
        Periodic curvature law (provides ``kappa_at``, ``kappa_s_at``,
        ``rho``).
    n_periods : int
        Number of curvature periods to traverse.
    n_samples : int, optional
        Total number of samples including both endpoints; defaults to
        ``n_periods * samples_per_period + 1``.
    samples_per_period : int
        Used only when ``n_samples`` is not given.
    """
    if n_periods < 1:
        raise ValueError("n_periods must be at least 1")
    if n_samples is None:
        n_samples = n_periods * samples_per_period + 1
    if n_samples < 2:
        raise ValueError("need at least two samples")
    s_eval = np.linspace(0.0, n_periods * profile.rho, n_samples)
    kappa_fn = lambda s: float(profile.kappa_at(s))  # noqa: E731
    points, tangents, drift = integrate_frenet_sphere(
        kappa_fn, s_eval, rtol=rtol, atol=atol
    )
    return SampledCurve(
        ambient=AMBIENT_SPHERE2,
        points=points,
        tangents=tangents,
        arclengths=s_eval,
        kappas=np.asarray(profile.kappa_at(s_eval), dtype=float),
        kappa_s=np.asarray(profile.kappa_s_at(s_eval), dtype=float),
        max_sphere_drift=drift,
    )


def constant_latitude_curve(cos_polar: float, n_samples: int = 257) -> SampledCurve:
    """Closed circle of constant polar angle about the first coordinate axis.

    The circle at polar angle ``psi`` (with ``cos_polar = cos(psi)``, in
    ``(0, 1)``) is sampled over exactly one circumference, unit-speed, and is
    returned already aligned for revolution about ``e1`` (``axis`` set).  Its
    constant geodesic curvature ``cot(psi)`` is stored with a zero arclength
    derivative.
    """
    if not 0.0 < cos_polar < 1.0:
        raise ValueError("cos_polar must lie strictly between 0 and 1")
    sin_polar = math.sqrt(1.0 - cos_polar**2)
    length = 2.0 * math.pi * sin_polar
    s = np.linspace(0.0, length, n_samples)
    ang = s / sin_polar
    points = np.column_stack(
        (np.full_like(s, cos_polar), sin_polar * np.cos(ang), sin_polar * np.sin(ang))
    )
    tangents = np.column_stack(
        (np.zeros_like(s), -np.sin(ang), np.cos(ang))
    )
    kappa = cos_polar / sin_polar
    return SampledCurve(
        ambient=AMBIENT_SPHERE2,
        points=points,
        tangents=tangents,
        arclengths=s,
        kappas=np.full_like(s, kappa),
        kappa_s=np.zeros_like(s),
        axis=_TARGET_AXES["x"].copy(),
    )


def killing_axis(
    curve: SampledCurve, profile: CurvatureProfile | None = None
) -> tuple[np.ndarray, float]:
    """Rotation axis recovered from the curve's restricted rotation field.

    For these profiles the ambient rotation field the surface is equivariant
    under restricts along the curve to

        J = -(1/4) kappa^{1/4} T - (1/16) kappa^{-7/4} kappa_s N,

    with ``N = gamma x T``.  A rotation field of axis vector ``a`` restricts
    to ``a x gamma``, so ``a`` is recovered by least squares from
    ``a x gamma_i = J_i`` over all samples.

    Parameters
    ----------
    curve : SampledCurve
        Spherical curve with curvature samples (``kappas``/``kappa_s``).
    profile : CurvatureProfile, optional
        Curvature law to evaluate at ``curve.arclengths`` when the curve does
        not carry its own curvature samples.

    Returns
    -------
    axis : ndarray (3,)
        Unit axis (sign as fitted; the curve winds around ``-axis`` when
        ``<axis, gamma> < 0``).
    residual : float
        ``max_i |J_i - a x gamma_i| / max_i |J_i|`` of the fit.

    Raises
    ------
    AxisEstimationError
        If curvature data is missing or the curvature is not strictly
        positive (the field degenerates on geodesics).
    """
    if curve.ambient != AMBIENT_SPHERE2:
        raise AxisEstimationError("rotation-axis recovery requires a spherical curve")
    kappas, kappa_s = curve.kappas, curve.kappa_s
    if (kappas is None or kappa_s is None) and profile is not None:
        kappas = profile.kappa_at(curve.arclengths)
        kappa_s = profile.kappa_s_at(curve.arclengths)
    if kappas is None or kappa_s is None:
        raise AxisEstimationError(
            "rotation-axis recovery needs kappa and kappa_s samples "
            "(pass a CurvatureProfile to evaluate them)"
        )
    kap = np.asarray(kappas, dtype=float)
    if kap.min() <= 1e-12:
        raise AxisEstimationError(
            "rotation-axis recovery needs strictly positive curvature; "
            f"min kappa = {kap.min():.3e}"
        )
    g = curve.points
    t = curve.tangents
    nrm = np.cross(g, t)
    kps = np.asarray(kappa_s, dtype=float)
    j = (
        -0.25 * kap[:, None] ** 0.25 * t
        - (1.0 / 16.0) * kap[:, None] ** -1.75 * kps[:, None] * nrm
    )
    # a x gamma = -skew(gamma) a; stack the skew matrices into one system.
    n = g.shape[0]
    mat = np.zeros((n, 3, 3))
    mat[:, 0, 1] = -g[:, 2]
    mat[:, 0, 2] = g[:, 1]
    mat[:, 1, 0] = g[:, 2]
    mat[:, 1, 2] = -g[:, 0]
    mat[:, 2, 0] = -g[:, 1]
    mat[:, 2, 1] = g[:, 0]
    a, *_ = np.linalg.lstsq(mat.reshape(-1, 3), -j.reshape(-1), rcond=None)
    fit = np.cross(np.broadcast_to(a, g.shape), g)
    residual = float(
        np.linalg.norm(j - fit, axis=1).max() / np.linalg.norm(j, axis=1).max()
    )
    norm_a = np.linalg.norm(a)
    if norm_a < 1e-12:
        raise AxisEstimationError("fitted rotation field is identically zero")
    return a / norm_a, residual


def _rotation_between(src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    """Proper rotation matrix taking unit vector ``src`` to unit ``dst``."""
    v = np.cross(src, dst)
    c = float(np.dot(src, dst))
    if c < -1.0 + 1e-12:
        # Antiparallel: rotate by pi about any axis orthogonal to src.
        helper = np.array([1.0, 0.0, 0.0])
        if abs(src[0]) > 0.9:
            helper = np.array([0.0, 1.0, 0.0])
        axis = np.cross(src, helper)
        axis /= np.linalg.norm(axis)
        return 2.0 * np.outer(axis, axis) - np.eye(3)
    vx = np.array(
        [[0.0, -v[2], v[1]], [v[2], 0.0, -v[0]], [-v[1], v[0], 0.0]]
    )
    return np.eye(3) + vx + vx @ vx / (1.0 + c)


def align_to_axis(curve: SampledCurve, axis: np.ndarray, target: str = "x") -> SampledCurve:
    """Rigidly rotate a spherical curve so ``axis`` maps to a coordinate axis.

    Parameters
    ----------
    curve : SampledCurve
    axis : array (3,)
        Axis in current curve coordinates (need not be unit).
    target : {"x", "y", "z"}
        Which coordinate axis to align to.  Revolution requires ``"x"``.

    Returns
    -------
    SampledCurve
        A new curve with rotated points/tangents and ``axis`` set to the
        target coordinate axis.
    """
    if target not in _TARGET_AXES:
        raise ValueError(f"target must be one of {sorted(_TARGET_AXES)}")
    axis = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(axis)
    if norm < 1e-12:
        raise ValueError("axis must be a nonzero vector")
    rot = _rotation_between(axis / norm, _TARGET_AXES[target])
    return replace(
        curve,
        points=curve.points @ rot.T,
        tangents=curve.tangents @ rot.T,
        axis=_TARGET_AXES[target].copy(),
    )


def closure_diagnostics(curve: SampledCurve) -> ClosureDiagnostics:
    """Measure closure defect, rotation axis, and winding of a spherical curve.

    The axis comes from :func:`killing_axis` when curvature data is present
    (oriented toward the hemisphere containing the curve); otherwise the
    sample centroid direction is used for closed curves.  The azimuth about
    the axis is unwrapped along the samples to count signed trips.

    Raises
    ------
    AxisEstimationError
        If no well-defined axis exists (e.g. a great circle, whose centroid
        vanishes and whose curvature is zero).
    """
    if curve.ambient != AMBIENT_SPHERE2:
        raise ValueError("closure diagnostics require a spherical curve")
    g = curve.points
    defect = float(
        np.linalg.norm(g[-1] - g[0]) + np.linalg.norm(curve.tangents[-1] - curve.tangents[0])
    )
    centroid = g[:-1].mean(axis=0)

    axis = None
    if (
        curve.kappas is not None
        and curve.kappa_s is not None
        and np.asarray(curve.kappas).min() > 1e-12
    ):
        axis, _ = killing_axis(curve)
    else:
        c_norm = np.linalg.norm(centroid)
        if c_norm < 1e-8:
            raise AxisEstimationError(
                "curve has no usable rotation axis: zero curvature data and "
                "vanishing centroid (great-circle-like)"
            )
        axis = centroid / c_norm

    side = float(np.dot(axis, centroid))
    if abs(side) < 1e-10:
        raise AxisEstimationError(
            "curve centroid is orthogonal to the fitted axis; winding is ambiguous"
        )
    pole = axis if side > 0.0 else -axis

    rot = _rotation_between(pole, _TARGET_AXES["z"])
    q = g @ rot.T
    theta = np.unwrap(np.arctan2(q[:, 1], q[:, 0]))
    delta = float(theta[-1] - theta[0])
    return ClosureDiagnostics(
        defect=defect,
        winding=int(round(delta / (2.0 * math.pi))),
        axis=pole,
        delta_theta=delta,
    )


def profile_slope(x, c_param: float):
    """Slope ``dz/dx = C / sqrt(x^{2/3} - C^2)`` of the Euclidean profile.

    Valid for ``x > C^3`` (the profile leaves the waist ``x = C^3``
    vertically).
    """
    if c_param <= 0.0:
        raise ValueError("the profile constant C must be positive")
    x = np.asarray(x, dtype=float)
    if np.any(x <= c_param**3):
        raise ValueError(f"slope is defined only for x > C^3 = {c_param**3}")
    out = c_param / np.sqrt(x ** (2.0 / 3.0) - c_param**2)
    return out if out.ndim else float(out)


def euclidean_profile(
    c_param: float, x_max: float, n_samples: int = 257
) -> SampledCurve:
    """Planar profile of the Euclidean biconservative graph of revolution.

    The graph ``z(x)`` with slope ``dz/dx = C / sqrt(x^{2/3} - C^2)`` revolved
    about the z-axis has principal curvatures ``kappa_m = -(C/3) x^{-4/3}``
    (meridian) and ``kappa_p = C x^{-4/3}`` (parallel), so it satisfies
    ``3 kappa_m + kappa_p = 0`` with mean curvature ``f = (C/3) x^{-4/3} > 0``,
    and its curvature constant in the vanishing-ambient-curvature prime
    integral is ``d = (3/C)^{3/2} / 16``.

    The substitution ``x = (C^2 + t^2)^{3/2}`` regularizes the vertical
    tangent at the waist radius ``C^3`` (where the curve itself is smooth):

        dx/dt = 3 t sqrt(C^2 + t^2),   dz/dt = 3 C sqrt(C^2 + t^2),
        ds/dt = 3 (C^2 + t^2),         s(t) = 3 C^2 t + t^3,
        z(t) = (3C/2) * (t sqrt(C^2 + t^2) + C^2 asinh(t / C)),

    all in closed form.  Samples are uniform in arclength (``t`` recovered
    from ``s`` by the real Cardano root of ``t^3 + 3 C^2 t = s``), starting at
    the waist itself, so finite-difference consumers see a uniform grid.

    Parameters
    ----------
    c_param : float
        Profile constant ``C > 0``; the waist radius is ``C^3``.
    x_max : float
        Largest radius sampled; must exceed ``C^3``.
    n_samples : int
        Number of samples on ``[C^3, x_max]``, waist included.

    Returns
    -------
    SampledCurve
        Planar curve with points ``(x, z)``, unit tangents, uniform
        arclengths from the waist, and ``kappas`` holding the positive mean
        curvature ``f = (C/3) x^{-4/3}`` (the meridian curvature is ``-f``,
        the parallel one ``3 f``).
    """
    if c_param <= 0.0:
        raise ValueError("the profile constant C must be positive")
    if x_max <= c_param**3:
        raise ValueError(
            f"x_max must exceed the waist radius C^3 = {c_param**3}, got {x_max}"
        )
    if n_samples < 2:
        raise ValueError("need at least two samples")
    t_max = math.sqrt(x_max ** (2.0 / 3.0) - c_param**2)
    s_max = 3.0 * c_param**2 * t_max + t_max**3
    s = np.linspace(0.0, s_max, n_samples)

    # Real root of t^3 + 3 C^2 t - s = 0, in the cancellation-free form
    # t = A - C^2/A with A = cbrt(s/2 + sqrt(s^2/4 + C^6)).
    a = np.cbrt(0.5 * s + np.sqrt(0.25 * s**2 + c_param**6))
    t = a - c_param**2 / a
    t[0] = 0.0

    w = np.sqrt(c_param**2 + t**2)
    x = w**3
    z = 1.5 * c_param * (t * w + c_param**2 * np.arcsinh(t / c_param))
    tangents = np.column_stack((t / w, np.full_like(t, c_param) / w))
    return SampledCurve(
        ambient=AMBIENT_PLANE2,
        points=np.column_stack((x, z)),
        tangents=tangents,
        arclengths=s,
        kappas=(c_param / 3.0) * x ** (-4.0 / 3.0),
        kappa_s=None,
        axis=None,
    )
