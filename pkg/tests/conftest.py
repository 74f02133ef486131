"""Shared fixtures: expensive artifacts built once per session.

Frozen reference values in this suite were produced by independent oracles
(time-domain ODE shooting for the curvature period, Frenet-frame integration
plus axis fitting for the progression angle) and cross-checked against the
quadrature implementations before being frozen; the oracle code lives in the
test modules next to the values.
"""
from __future__ import annotations

import numpy as np
import pytest

import bisurf

# Orbit constant solving the (3, 2) closure condition I(d) = 4 pi / 3,
# reproduced independently by the Frenet/axis oracle in test_curves.py.
D_HAT_32 = 0.789851747148022

# One verdict line per acceptance criterion, filled by test_acceptance.py and
# echoed after the run so the gate is readable without digging into captures.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter) -> None:
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def closure_32() -> bisurf.ClosureSolution:
    return bisurf.solve_closure(3, 2)


@pytest.fixture(scope="session")
def profile_11() -> bisurf.CurvatureProfile:
    return bisurf.curvature_profile(1.0, 1.0)


@pytest.fixture(scope="session")
def profile_32(closure_32) -> bisurf.CurvatureProfile:
    return bisurf.curvature_profile(closure_32.d, 1.0)


@pytest.fixture(scope="session")
def one_period_curve_32(profile_32) -> bisurf.SampledCurve:
    return bisurf.integrate_on_sphere(
        profile_32, n_periods=1, samples_per_period=512
    )


@pytest.fixture(scope="session")
def result_32() -> bisurf.PipelineResult:
    """Moderate-resolution full pipeline output for the (3, 2) surface."""
    return bisurf.build_closed_surface(
        3, 2, n_s=66, n_theta=64, diagnostic_samples_per_period=256
    )


@pytest.fixture(scope="session")
def sphere_mesh() -> bisurf.SurfaceMesh:
    from bisurf.surfaces import make_sphere_mesh

    return make_sphere_mesh()


@pytest.fixture(scope="session")
def cylinder_mesh() -> bisurf.SurfaceMesh:
    from bisurf.surfaces import make_cylinder_mesh

    return make_cylinder_mesh()


@pytest.fixture(scope="session")
def clifford_mesh() -> bisurf.SurfaceMesh:
    from bisurf.surfaces import make_clifford_mesh

    return make_clifford_mesh()


@pytest.fixture(scope="session")
def cone_mesh() -> bisurf.SurfaceMesh:
    from bisurf.surfaces import make_cone_mesh

    return make_cone_mesh()


@pytest.fixture(scope="session")
def r3_profile_curve() -> bisurf.SampledCurve:
    return bisurf.euclidean_profile(1.0, 8.0, n_samples=257)


@pytest.fixture(scope="session")
def r3_mesh(r3_profile_curve) -> bisurf.SurfaceMesh:
    return bisurf.revolve_in_r3(r3_profile_curve, n_theta=256)


def assert_unit_rows(arr: np.ndarray, tol: float = 1e-9) -> None:
    norms = np.linalg.norm(arr, axis=-1)
    assert np.abs(norms - 1.0).max() <= tol
