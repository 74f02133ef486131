"""Periodic geodesic-curvature laws for rotational biconservative profiles.

The profile curve of a rotational surface whose principal curvatures satisfy
``3*lambda_1 + lambda_2 = 0`` in a space form of sectional curvature ``c`` has
geodesic curvature ``kappa(s)`` governed by the second-order law

    kappa^{3/4} * (kappa^{-3/4})'' - 3*kappa^2 + c = 0,

whose every positive solution conserves the prime integral

    kappa_s^2 = (16/9) * kappa^2 * (16*d*kappa^{3/2} - 9*kappa^2 - c)

for some constant ``d > 0``.  In the substitution ``u = sqrt(kappa)`` the
conserved form reads ``u'^2 = (4/9) * u^2 * Q(u)`` with the quartic

    Q(u) = 16*d*u^3 - 9*u^4 - c,

so the sign structure of ``Q`` decides everything: for ``c > 0`` and ``d``
above the critical value ``d* = (27*c)^{1/4} / 4`` the quartic is positive
between two simple roots ``0 < u1 < u2`` and the curvature oscillates
periodically between ``u1^2`` and ``u2^2``.

This module classifies those orbits, computes the arclength period by
singularity-free quadrature, reconstructs the periodic profile ``kappa(s)``,
and measures how well a reconstructed profile satisfies both the prime
integral and the second-order law (the latter by fourth-order periodic finite
differences) so downstream consumers can certify their inputs.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from . import serialization
from .fd import grid_derivative

__all__ = [
    "SpaceForm",
    "Oscillatory",
    "Degenerate",
    "NonPeriodic",
    "OrbitClass",
    "NoPeriodicOrbitError",
    "CurvatureProfile",
    "DEGENERATE_GUARD",
    "q_poly",
    "critical_d",
    "classify_orbit",
    "period",
    "curvature_profile",
    "prime_integral_residual",
    "euler_lagrange_residual",
]

#: Relative half-width of the band around the critical ``d*`` inside which an
#: orbit is reported as degenerate rather than oscillatory: the two positive
#: roots of Q collide like sqrt(d - d*) there and root refinement / quadrature
#: lose their conditioning.
DEGENERATE_GUARD = 1e-6

#: Required relative accuracy of the period quadrature.
PERIOD_REL_TOL = 1e-10

_TABLE_INTERVALS = 2048
_GAUSS_POINTS = 12
_MIN_PROFILE_SAMPLES = 16


class SpaceForm(enum.Enum):
    """Ambient simply connected space forms used by this package."""

    SPHERE3 = "sphere3"
    EUCLIDEAN3 = "euclidean3"

    @property
    def curvature(self) -> float:
        """Sectional curvature ``c`` of the space form."""
        return 1.0 if self is SpaceForm.SPHERE3 else 0.0


class NoPeriodicOrbitError(ValueError):
    """Raised when parameters admit no periodic curvature oscillation."""


@dataclass(frozen=True)
class Oscillatory:
    """Curvature oscillates between ``u1**2`` and ``u2**2``."""

    u1: float
    u2: float


@dataclass(frozen=True)
class Degenerate:
    """The two positive roots of Q coincide (circular profile limit)."""

    u_double: float


@dataclass(frozen=True)
class NonPeriodic:
    """Q has no positive-measure positivity window; no periodic orbit."""


OrbitClass = Oscillatory | Degenerate | NonPeriodic


def q_poly(u, d: float, c: float):
    """Evaluate ``Q(u) = 16 d u^3 - 9 u^4 - c`` (vectorized in ``u``)."""
    u = np.asarray(u, dtype=float)
    out = 16.0 * d * u**3 - 9.0 * u**4 - c
    return out if out.ndim else float(out)


def _q_coefficients(d: float, c: float) -> np.ndarray:
    """Coefficients of ``Q(u) = -9 u^4 + 16 d u^3 - c`` in descending powers."""
    return np.array([-9.0, 16.0 * d, 0.0, 0.0, -c])


def critical_d(c: float) -> float:
    """Critical constant ``d* = (27 c)^{1/4} / 4`` separating orbit types.

    At ``d = d*`` the local maximum of Q, attained at ``u = 4d/3``, is exactly
    zero: ``Q(4d/3) = 256 d^4 / 27 - c``.

    Raises
    ------
    ValueError
        If ``c <= 0``: for non-positive ambient curvature the quartic is
        negative at its positive critical point for every ``d > 0``, so no
        critical threshold exists (and no periodic orbit does either).
    """
    if c <= 0.0:
        raise ValueError(
            f"critical constant requires positive ambient curvature, got c={c}"
        )
    return (27.0 * c) ** 0.25 / 4.0


def classify_orbit(
    d: float, c: float, degenerate_guard: float = DEGENERATE_GUARD
) -> OrbitClass:
    """Classify the orbit of the curvature law for constants ``(d, c)``.

    Returns
    -------
    Oscillatory
        With the two positive simple roots ``u1 < u2`` of Q refined to
        machine precision, when ``c > 0`` and ``d > d* (1 + guard)``.
    Degenerate
        When ``|d - d*| <= guard * d*``.
    NonPeriodic
        Otherwise (including every ``c <= 0``).

    Raises
    ------
    ValueError
        If ``d <= 0``.
    """
    if d <= 0.0:
        raise ValueError(f"the orbit constant d must be positive, got d={d}")
    if c <= 0.0:
        return NonPeriodic()
    dstar = critical_d(c)
    rel = (d - dstar) / dstar
    if abs(rel) <= degenerate_guard:
        return Degenerate(u_double=4.0 * d / 3.0)
    if rel < 0.0:
        return NonPeriodic()
    # Exact sign brackets: Q(0) = -c < 0, Q(4d/3) = 256 d^4/27 - c > 0 off the
    # guard band, and Q(16d/9) = -c < 0 identically.
    u_top = 4.0 * d / 3.0
    u_out = 16.0 * d / 9.0
    fn = lambda u: q_poly(u, d, c)  # noqa: E731
    eps = np.finfo(float).eps
    u1 = brentq(fn, 1e-300, u_top, xtol=1e-15, rtol=4 * eps)
    u2 = brentq(fn, u_top, u_out, xtol=1e-15, rtol=4 * eps)
    return Oscillatory(u1=float(u1), u2=float(u2))


def _deflate(coeffs: np.ndarray, root: float) -> np.ndarray:
    """Synthetic division of a polynomial (descending coeffs) by (u - root)."""
    out = np.empty(len(coeffs) - 1)
    acc = 0.0
    for i, a in enumerate(coeffs[:-1]):
        acc = acc * root + a
        out[i] = acc
    return out


def _positive_factor(d: float, c: float, u1: float, u2: float) -> np.ndarray:
    """Quadratic ``P`` with ``Q(u) = (u - u1) * (u2 - u) * P(u)``, ``P > 0``.

    Dividing Q by its two positive roots leaves ``-P``; the sign flip accounts
    for writing the second factor as ``(u2 - u)`` so that every factor is
    positive on the open orbit interval.
    """
    cubic = _deflate(_q_coefficients(d, c), u1)
    quadratic = _deflate(cubic, u2)
    return -quadratic


@dataclass(frozen=True)
class _OrbitQuadrature:
    """Oscillatory orbit data prepared for sin^2 substitution quadrature."""

    d: float
    c: float
    u1: float
    u2: float
    p_coeffs: np.ndarray

    def u_of_phi(self, phi):
        return self.u1 + (self.u2 - self.u1) * np.sin(phi) ** 2

    def sqrt_p(self, u):
        return np.sqrt(np.polyval(self.p_coeffs, u))


def _orbit_quadrature(d: float, c: float) -> _OrbitQuadrature:
    orbit = classify_orbit(d, c)
    if not isinstance(orbit, Oscillatory):
        raise NoPeriodicOrbitError(
            f"no periodic curvature orbit for d={d}, c={c}: "
            f"orbit class is {type(orbit).__name__}"
        )
    return _OrbitQuadrature(
        d=d, c=c, u1=orbit.u1, u2=orbit.u2,
        p_coeffs=_positive_factor(d, c, orbit.u1, orbit.u2),
    )


def _period_quad(oq: _OrbitQuadrature) -> tuple[float, float]:
    """Period integral and its error estimate.

    The substitution ``u = u1 + (u2 - u1) sin^2 phi`` turns
    ``rho = 3 * Int_{u1}^{u2} du / (u sqrt(Q))`` into the regular integral
    ``rho = Int_0^{pi/2} 6 dphi / (u(phi) sqrt(P(u(phi))))``.
    """

    def integrand(phi: float) -> float:
        u = oq.u_of_phi(phi)
        return 6.0 / (u * oq.sqrt_p(u))

    value, err = quad(integrand, 0.0, 0.5 * math.pi,
                      epsabs=1e-14, epsrel=1e-13, limit=200)
    if err > PERIOD_REL_TOL * abs(value):
        raise ArithmeticError(
            f"period quadrature error estimate {err:.3e} exceeds "
            f"{PERIOD_REL_TOL:.0e} relative for d={oq.d}, c={oq.c}"
        )
    return value, err


def period(d: float, c: float) -> float:
    """Arclength period ``rho(d, c)`` of the curvature oscillation.

    Raises
    ------
    NoPeriodicOrbitError
        If the orbit is not oscillatory.
    ArithmeticError
        If the quadrature error estimate fails the 1e-10 relative bound.
    """
    rho, _ = _period_quad(_orbit_quadrature(d, c))
    return rho


@dataclass
class CurvatureProfile:
    """One full period of a periodic curvature law, sampled and evaluable.

    Attributes
    ----------
    d, c : float
        Orbit constants of the prime integral.
    u1, u2 : float
        Roots of Q; the curvature oscillates in ``[u1**2, u2**2]``.
    rho : float
        Arclength period.
    rho_error : float
        Error estimate of the period quadrature.
    s, kappa : ndarray
        Uniform samples on ``[0, rho]`` (endpoints included) with
        ``kappa(0) = kappa(rho) = u2**2`` (the curve starts at the curvature
        maximum) and the mirror symmetry ``kappa(rho - s) = kappa(s)``.
    prime_residual, prime_scale : float
        Max absolute defect of the prime integral over interior samples and
        the scale it should be compared against (max of the conserved-form
        right-hand side).
    el_residual, el_scale : float
        Max absolute defect of the second-order law under fourth-order
        periodic finite differences, and its comparison scale (max kappa^2).
    """

    d: float
    c: float
    u1: float
    u2: float
    rho: float
    rho_error: float
    s: np.ndarray
    kappa: np.ndarray
    prime_residual: float = 0.0
    prime_scale: float = 0.0
    el_residual: float = 0.0
    el_scale: float = 0.0
    _spline: CubicSpline = field(repr=False, compare=False, default=None)
    _half: float = field(repr=False, compare=False, default=0.0)

    def _fold(self, s) -> tuple[np.ndarray, np.ndarray]:
        """Map arclength to the descending half-period, with branch sign."""
        t = np.mod(np.asarray(s, dtype=float), self.rho)
        mirrored = t > self._half
        t_half = np.where(mirrored, self.rho - t, t)
        t_half = np.clip(t_half, 0.0, self._half)
        sign = np.where(mirrored, -1.0, 1.0)
        return t_half, sign

    def u_at(self, s):
        """sqrt(kappa) at arbitrary arclength (vectorized, periodic)."""
        t_half, _ = self._fold(s)
        out = self._spline(t_half)
        return out if out.ndim else float(out)

    def kappa_at(self, s):
        """Curvature at arbitrary arclength (vectorized, periodic)."""
        t_half, _ = self._fold(s)
        out = self._spline(t_half) ** 2
        return out if out.ndim else float(out)

    def kappa_s_at(self, s):
        """Arclength derivative of the curvature (vectorized, periodic)."""
        t_half, sign = self._fold(s)
        u = self._spline(t_half)
        # On the mirrored branch kappa(s) = kappa(rho - s), so the derivative
        # picks up a sign flip relative to the tabulated descending branch.
        du = self._spline.derivative()(t_half) * sign
        out = 2.0 * u * du
        return out if out.ndim else float(out)

    def to_dict(self, include_samples: bool = False) -> dict:
        data = {
            "d": self.d,
            "c": self.c,
            "u1": self.u1,
            "u2": self.u2,
            "kappa_min": self.u1**2,
            "kappa_max": self.u2**2,
            "rho": self.rho,
            "rho_error_estimate": self.rho_error,
            "n_samples": int(self.s.size),
            "prime_integral": {
                "max_residual": self.prime_residual,
                "scale": self.prime_scale,
            },
            "second_order_law": {
                "max_residual": self.el_residual,
                "scale": self.el_scale,
            },
        }
        if include_samples:
            data["samples"] = {"s": self.s, "kappa": self.kappa}
        return data

    def write_json(self, path: str | Path, include_samples: bool = False) -> Path:
        return serialization.write_json(self.to_dict(include_samples), path)

    def write_csv(self, path: str | Path) -> Path:
        return serialization.write_csv(
            path, ["s", "kappa"], zip(self.s.tolist(), self.kappa.tolist())
        )


def _half_period_table(oq: _OrbitQuadrature) -> tuple[np.ndarray, np.ndarray, float]:
    """Cumulative arclength table along the descending curvature branch.

    Uses the same sin^2 substitution as the period integral: with
    ``s(u) = (3/2) * Int_u^{u2} dv / (v sqrt(Q(v)))`` (the half-period map from
    the curvature maximum at ``s = 0`` down to the minimum at ``s = rho/2``),
    the arclength from angle ``phi`` to ``pi/2`` is
    ``Int_phi^{pi/2} 3 dphi' / (u sqrt(P))``.

    Returns
    -------
    s_grid : ndarray, ascending from exactly 0 to the half period
    u_grid : ndarray, u values with ``u_grid[0] = u2`` and last ``= u1``
    half : float, the tabulated half period
    """
    edges = np.linspace(0.0, 0.5 * math.pi, _TABLE_INTERVALS + 1)
    nodes, weights = leggauss(_GAUSS_POINTS)
    mid = 0.5 * (edges[1:] + edges[:-1])
    rad = 0.5 * (edges[1:] - edges[:-1])
    phi = mid[:, None] + rad[:, None] * nodes[None, :]
    u = oq.u_of_phi(phi)
    g = 3.0 / (u * oq.sqrt_p(u))
    cell = rad * np.sum(weights[None, :] * g, axis=1)
    cum = np.concatenate(([0.0], np.cumsum(cell)))
    half = cum[-1]
    s_desc = half - cum        # phi ascending: s runs from half down to 0
    u_edges = oq.u_of_phi(edges)
    return s_desc[::-1].copy(), u_edges[::-1].copy(), half


def curvature_profile(d: float, c: float, n_samples: int = 513) -> CurvatureProfile:
    """Reconstruct one arclength period of the periodic curvature law.

    The half-period branch is tabulated by composite Gauss-Legendre quadrature
    of the arclength map and inverted with a clamped cubic spline (the exact
    turning-point conditions ``u'(0) = u'(rho/2) = 0``); the full period
    follows by the even mirror symmetry about ``rho/2``.

    Parameters
    ----------
    d, c : float
        Orbit constants; must give an oscillatory orbit.
    n_samples : int
        Number of uniform samples on ``[0, rho]``, endpoints included.

    Raises
    ------
    NoPeriodicOrbitError
        If the orbit is not oscillatory.
    ValueError
        If ``n_samples`` is too small for the fourth-order residual stencils.
    """
    if n_samples < _MIN_PROFILE_SAMPLES:
        raise ValueError(
            f"n_samples must be at least {_MIN_PROFILE_SAMPLES}, got {n_samples}"
        )
    oq = _orbit_quadrature(d, c)
    rho, rho_err = _period_quad(oq)
    s_grid, u_grid, half = _half_period_table(oq)
    if abs(2.0 * half - rho) > 1e-9 * rho:
        raise ArithmeticError(
            "half-period table disagrees with the period quadrature: "
            f"{2 * half!r} vs {rho!r}"
        )
    spline = CubicSpline(s_grid, u_grid, bc_type=((1, 0.0), (1, 0.0)))

    profile = CurvatureProfile(
        d=d, c=c, u1=oq.u1, u2=oq.u2, rho=rho, rho_error=rho_err,
        s=np.linspace(0.0, rho, n_samples), kappa=np.empty(n_samples),
        _spline=spline, _half=half,
    )
    profile.kappa = profile.kappa_at(profile.s)
    profile.prime_residual, profile.prime_scale = prime_integral_residual(profile)
    profile.el_residual, profile.el_scale = euler_lagrange_residual(profile)
    return profile


def prime_integral_residual(profile: CurvatureProfile) -> tuple[float, float]:
    """Max defect of the prime integral over the profile's interior samples.

    Compares ``kappa_s^2`` (from the evaluator) against
    ``(16/9) kappa^2 (16 d kappa^{3/2} - 9 kappa^2 - c)`` and returns
    ``(max |difference|, max right-hand side)``; a faithful profile keeps the
    ratio below 1e-8.
    """
    s = profile.s[1:-1]
    kap = profile.kappa_at(s)
    kps = profile.kappa_s_at(s)
    rhs = (16.0 / 9.0) * kap**2 * (
        16.0 * profile.d * kap**1.5 - 9.0 * kap**2 - profile.c
    )
    resid = np.abs(kps**2 - rhs)
    return float(resid.max()), float(rhs.max())


def euler_lagrange_residual(profile: CurvatureProfile) -> tuple[float, float]:
    """Max defect of the second-order law under periodic finite differences.

    Evaluates ``kappa^{3/4} (kappa^{-3/4})'' - 3 kappa^2 + c`` on the uniform
    sample grid with fourth-order periodic stencils and returns
    ``(max |residual|, max kappa^2)``.
    """
    kap = profile.kappa[:-1]  # one exact period, endpoint dropped
    h = profile.s[1] - profile.s[0]
    w = kap**-0.75
    w_ss = grid_derivative(w, h, order=2, periodic=True)
    resid = np.abs(kap**0.75 * w_ss - 3.0 * kap**2 + profile.c)
    return float(resid.max()), float((kap**2).max())
