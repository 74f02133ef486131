"""Closure condition for periodic profiles revolved inside the unit 3-sphere.

A periodic curvature profile on the unit 2-sphere winds around a fixed pole;
over one curvature period the azimuth advances by the progression angle

    I(d) = 36 sqrt(d) * Int_{u1}^{u2} u^{5/2} du / ((16 d u^3 - 1) sqrt(Q(u))),

a strictly decreasing function of ``d`` with range ``(pi, sqrt(2) pi)``.  The
profile closes up after ``m`` curvature periods and ``n`` trips around the
pole exactly when ``I(d) = 2 pi n / m``.  Compatibility of the target with the
range forces the integer conditions ``gcd(m, n) = 1``, ``m < 2 n`` and
``2 n^2 < m^2`` on admissible winding pairs.

This module evaluates ``I``, sweeps it over ranges of ``d`` (optionally in
parallel), enumerates admissible pairs, and solves the closure equation for a
given pair by bracketed root finding.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from . import serialization
from .curvature import _orbit_quadrature, critical_d, period

__all__ = [
    "PROGRESSION_LOWER",
    "PROGRESSION_UPPER",
    "InadmissiblePairError",
    "ClosureSolution",
    "SweepReport",
    "progression_angle",
    "sweep",
    "admissible_pair",
    "enumerate_pairs",
    "single_winding_violations",
    "solve_closure",
]

#: Open range of the progression angle over all oscillatory orbits at c = 1.
PROGRESSION_LOWER = math.pi
PROGRESSION_UPPER = math.sqrt(2.0) * math.pi

#: Required relative accuracy of the progression-angle quadrature.
_ANGLE_REL_TOL = 1e-10

#: Default accuracy demanded of a closure solve.
CLOSURE_TOL = 1e-10


class InadmissiblePairError(ValueError):
    """Raised when a winding pair has no closure solution."""


def progression_angle(d: float) -> float:
    """Azimuth advance ``I(d)`` per curvature period on the unit 2-sphere.

    Evaluated after the singularity-removing substitution
    ``u = u1 + (u2 - u1) sin^2 phi`` as

        I(d) = Int_0^{pi/2} 72 sqrt(d) u^{5/2} dphi / ((16 d u^3 - 1) sqrt(P)),

    where ``Q(u) = (u - u1)(u2 - u) P(u)`` with ``P > 0`` on the orbit.  The
    denominator ``16 d u^3 - 1 = 9 u^4 + Q(u) >= 9 u1^4 > 0`` never vanishes
    on an oscillatory orbit, but for large ``d`` it drops to ``9 u1^4`` in a
    thin boundary layer at the lower turning point; the quadrature splits that
    layer off so the adaptive error estimate stays reliable.

    Raises
    ------
    NoPeriodicOrbitError
        If ``(d, c=1)`` is not an oscillatory orbit.
    ArithmeticError
        If the quadrature cannot certify 1e-10 relative accuracy.
    """
    oq = _orbit_quadrature(d, 1.0)
    u1, u2 = oq.u1, oq.u2
    pref = 72.0 * math.sqrt(d)

    def integrand(phi: float) -> float:
        u = oq.u_of_phi(phi)
        return pref * u**2.5 / ((16.0 * d * u**3 - 1.0) * oq.sqrt_p(u))

    # Boundary-layer edge: 16 d u^3 - 1 grows from 9 u1^4 at rate Q'(u1).
    dq_u1 = 12.0 * u1**2 * (4.0 * d - 3.0 * u1)
    layer = 9.0 * u1**4 / dq_u1
    frac = min(0.25, 20.0 * layer / (u2 - u1))
    phi_split = math.asin(math.sqrt(frac))

    total, err = 0.0, 0.0
    for a, b in ((0.0, phi_split), (phi_split, 0.5 * math.pi)):
        if b <= a:
            continue
        v, e = quad(integrand, a, b, epsabs=1e-14, epsrel=1e-13, limit=200)
        total += v
        err += e
    if err > _ANGLE_REL_TOL * abs(total):
        raise ArithmeticError(
            f"progression-angle quadrature error estimate {err:.3e} exceeds "
            f"{_ANGLE_REL_TOL:.0e} relative at d={d}"
        )
    return total


@dataclass
class SweepReport:
    """Progression angles on a grid of orbit constants, with range checks."""

    d_values: np.ndarray
    i_values: np.ndarray
    monotone_decreasing: bool
    in_bounds: bool
    lower_margin: float  #: min(I) - pi
    upper_margin: float  #: sqrt(2) pi - max(I)

    def to_dict(self) -> dict:
        return {
            "d_min": float(self.d_values[0]),
            "d_max": float(self.d_values[-1]),
            "steps": int(self.d_values.size),
            "monotone_decreasing": self.monotone_decreasing,
            "in_bounds": self.in_bounds,
            "lower_bound": PROGRESSION_LOWER,
            "upper_bound": PROGRESSION_UPPER,
            "lower_margin": self.lower_margin,
            "upper_margin": self.upper_margin,
        }

    def write_csv(self, path: str | Path) -> Path:
        return serialization.write_csv(
            path,
            ["d", "progression_angle"],
            zip(self.d_values.tolist(), self.i_values.tolist()),
        )


def sweep(d_min: float, d_max: float, steps: int, threads: int = 1) -> SweepReport:
    """Evaluate the progression angle on a uniform grid of ``d`` values.

    Parameters
    ----------
    d_min, d_max : float
        Grid endpoints; both must lie strictly above the critical ``d*``.
    steps : int
        Number of grid points (>= 2).
    threads : int
        Worker threads for the independent quadratures; results are identical
        for any thread count (the grid order is preserved).
    """
    if steps < 2:
        raise ValueError("sweep needs at least two grid points")
    d_values = np.linspace(d_min, d_max, steps)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            i_values = np.fromiter(
                pool.map(progression_angle, d_values), dtype=float, count=steps
            )
    else:
        i_values = np.fromiter(
            (progression_angle(x) for x in d_values), dtype=float, count=steps
        )
    return SweepReport(
        d_values=d_values,
        i_values=i_values,
        monotone_decreasing=bool(np.all(np.diff(i_values) < 0.0)),
        in_bounds=bool(
            np.all(i_values > PROGRESSION_LOWER)
            and np.all(i_values < PROGRESSION_UPPER)
        ),
        lower_margin=float(i_values.min() - PROGRESSION_LOWER),
        upper_margin=float(PROGRESSION_UPPER - i_values.max()),
    )


def admissible_pair(m: int, n: int) -> bool:
    """Exact integer test for a winding pair to admit a closure solution.

    Requires ``gcd(m, n) = 1`` plus the range conditions ``m < 2 n`` (target
    above ``pi``) and ``2 n^2 < m^2`` (target below ``sqrt(2) pi``), checked in
    integer arithmetic.
    """
    if m < 1 or n < 1:
        return False
    return math.gcd(m, n) == 1 and m < 2 * n and 2 * n * n < m * m


def enumerate_pairs(m_max: int) -> list[tuple[int, int]]:
    """All admissible winding pairs with ``m <= m_max``, sorted by ``(m, n)``."""
    pairs = []
    for m in range(1, m_max + 1):
        # m < 2n  =>  n > m/2;   2 n^2 < m^2  =>  n <= isqrt((m^2 - 1) // 2).
        n_lo = m // 2 + 1
        n_hi = math.isqrt((m * m - 1) // 2) if m > 1 else 0
        for n in range(n_lo, n_hi + 1):
            if math.gcd(m, n) == 1:
                pairs.append((m, n))
    return pairs


def single_winding_violations(m_max: int) -> list[int]:
    """All ``m <= m_max`` making ``(m, 1)`` admissible (provably none).

    A single trip around the pole would need ``m < 2`` and ``2 < m^2``
    simultaneously; the scan is a vectorized exact check kept as an explicit
    guarantee rather than an argument.
    """
    m = np.arange(1, m_max + 1, dtype=np.int64)
    mask = (m < 2) & (2 < m * m)
    return m[mask].tolist()


@dataclass(frozen=True)
class ClosureSolution:
    """Solved closure condition ``I(d) = 2 pi n / m`` for one winding pair."""

    m: int
    n: int
    d: float
    rho: float  #: curvature period at the solved d
    target: float  #: 2 pi n / m
    i_value: float  #: progression angle at the solved d
    residual: float  #: |i_value - target|

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "d": self.d,
            "rho": self.rho,
            "target": self.target,
            "i_value": self.i_value,
            "residual": self.residual,
        }


def solve_closure(m: int, n: int, tol: float = CLOSURE_TOL) -> ClosureSolution:
    """Solve ``I(d) = 2 pi n / m`` for the orbit constant ``d``.

    Parameters
    ----------
    m, n : int
        Winding pair: the profile closes after ``m`` curvature periods and
        ``n`` trips around the pole.
    tol : float
        Maximum accepted ``|I(d) - 2 pi n / m|``.

    Raises
    ------
    InadmissiblePairError
        If the pair fails the exact admissibility test; the message names the
        violated range condition.
    """
    if not admissible_pair(m, n):
        reasons = []
        if m < 1 or n < 1 or math.gcd(m, n) != 1:
            reasons.append("m and n must be coprime positive integers")
        if m >= 2 * n:
            reasons.append(
                f"target 2*pi*{n}/{m} <= pi, at or below the progression-angle "
                "infimum pi"
            )
        if 2 * n * n >= m * m:
            reasons.append(
                f"target 2*pi*{n}/{m} >= sqrt(2)*pi, at or above the "
                "progression-angle supremum sqrt(2)*pi"
            )
        raise InadmissiblePairError(
            f"winding pair (m={m}, n={n}) admits no closure solution: "
            f"the closure target must lie inside (pi, sqrt(2)*pi); "
            + "; ".join(reasons)
        )
    target = 2.0 * math.pi * n / m
    dstar = critical_d(1.0)

    # Lower bracket: just above the degenerate threshold, where I -> sqrt(2) pi.
    eps = 1e-4
    d_lo = dstar * (1.0 + eps)
    while progression_angle(d_lo) <= target:
        eps *= 0.1
        if eps < 2e-6:
            raise ArithmeticError(
                f"failed to bracket the closure solution for (m={m}, n={n}) "
                "near the degenerate threshold"
            )
        d_lo = dstar * (1.0 + eps)

    # Upper bracket: I decreases toward pi, so double the offset until below.
    offset = 1.0
    for _ in range(60):
        d_hi = dstar + offset
        if progression_angle(d_hi) < target:
            break
        offset *= 2.0
    else:
        raise ArithmeticError(
            f"failed to bracket the closure solution for (m={m}, n={n})"
        )

    eps_f = np.finfo(float).eps
    d_hat = brentq(
        lambda dd: progression_angle(dd) - target,
        d_lo,
        d_hi,
        xtol=1e-14,
        rtol=4 * eps_f,
    )
    i_val = progression_angle(d_hat)
    residual = abs(i_val - target)
    if residual > tol:
        raise ArithmeticError(
            f"closure solve for (m={m}, n={n}) stalled at residual "
            f"{residual:.3e} > {tol:.0e}"
        )
    return ClosureSolution(
        m=m, n=n, d=float(d_hat), rho=period(d_hat, 1.0),
        target=target, i_value=i_val, residual=residual,
    )
