"""Rotational biconservative surfaces: construction and certification.

The package builds closed non-CMC biconservative surfaces of revolution in
the unit 3-sphere (and their Euclidean counterpart) from a periodic
geodesic-curvature law, and certifies the construction by evaluating every
defining geometric identity — prime integral, closure, Weingarten relation
``3 lambda_1 + lambda_2 = 0``, biconservativity ``A(grad f) + f grad f = 0``,
stress-tensor trace/divergence, and the Hopf-type holomorphy dichotomy — as
numerical residuals with independent finite-difference checks.

Layer map (each importable on its own):

``curvature``
    Orbit classification and the periodic curvature profile ``kappa(s)``.
``closure``
    Progression angle ``I(d)``, admissible winding pairs, root-finding.
``curves``
    Frenet reconstruction on the 2-sphere, closure/winding diagnostics,
    rotation-axis recovery, the planar Euclidean profile.
``surfaces``
    Revolution meshes in S^3 and R^3, stereographic projection, export.
``certify``
    Discrete fundamental forms and all identity residuals.
``spectra``
    Exact principal-curvature spectra of the canonical hypersurface examples.
``pipeline``
    One-call construction of a closed ``(m, n)`` surface.
"""
from __future__ import annotations

from .certify import (
    CertReport,
    CertTolerances,
    GeometrySamples,
    biconservative_residual,
    certify_surface,
    fundamental_forms,
    gauss_residual,
    hopf_q_residual,
    stress_bienergy,
    weingarten_residual,
)
from .closure import (
    ClosureSolution,
    InadmissiblePairError,
    SweepReport,
    admissible_pair,
    enumerate_pairs,
    progression_angle,
    single_winding_violations,
    solve_closure,
    sweep,
)
from .curvature import (
    CurvatureProfile,
    Degenerate,
    NonPeriodic,
    NoPeriodicOrbitError,
    Oscillatory,
    SpaceForm,
    classify_orbit,
    critical_d,
    curvature_profile,
    euler_lagrange_residual,
    period,
    prime_integral_residual,
    q_poly,
)
from .curves import (
    AxisEstimationError,
    ClosureDiagnostics,
    SampledCurve,
    align_to_axis,
    closure_diagnostics,
    constant_latitude_curve,
    euclidean_profile,
    integrate_on_sphere,
    killing_axis,
    profile_slope,
)
from .pipeline import PipelineResult, assemble_closed_profile, build_closed_surface
from .spectra import (
    BiharmonicVerdict,
    CurvatureSpectrum,
    biharmonic_check,
    format_spectrum_table,
    spectrum_from_values,
    spectrum_minimal_product,
    spectrum_small_sphere,
    spectrum_sphere_product,
)
from .surfaces import (
    AxisAlignmentError,
    PoleCollisionError,
    SurfaceMesh,
    export_mesh,
    import_mesh,
    revolve_in_r3,
    revolve_in_s3,
    stereographic_lift,
    stereographic_project,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # curvature
    "SpaceForm",
    "Oscillatory",
    "Degenerate",
    "NonPeriodic",
    "NoPeriodicOrbitError",
    "CurvatureProfile",
    "q_poly",
    "critical_d",
    "classify_orbit",
    "period",
    "curvature_profile",
    "prime_integral_residual",
    "euler_lagrange_residual",
    # closure
    "ClosureSolution",
    "SweepReport",
    "InadmissiblePairError",
    "progression_angle",
    "sweep",
    "admissible_pair",
    "enumerate_pairs",
    "single_winding_violations",
    "solve_closure",
    # curves
    "SampledCurve",
    "ClosureDiagnostics",
    "AxisEstimationError",
    "integrate_on_sphere",
    "closure_diagnostics",
    "killing_axis",
    "align_to_axis",
    "constant_latitude_curve",
    "euclidean_profile",
    "profile_slope",
    # surfaces
    "SurfaceMesh",
    "AxisAlignmentError",
    "PoleCollisionError",
    "revolve_in_s3",
    "revolve_in_r3",
    "stereographic_project",
    "stereographic_lift",
    "export_mesh",
    "import_mesh",
    # certify
    "GeometrySamples",
    "CertTolerances",
    "CertReport",
    "fundamental_forms",
    "biconservative_residual",
    "weingarten_residual",
    "gauss_residual",
    "hopf_q_residual",
    "stress_bienergy",
    "certify_surface",
    # spectra
    "CurvatureSpectrum",
    "BiharmonicVerdict",
    "spectrum_small_sphere",
    "spectrum_sphere_product",
    "spectrum_minimal_product",
    "spectrum_from_values",
    "biharmonic_check",
    "format_spectrum_table",
    # pipeline
    "PipelineResult",
    "assemble_closed_profile",
    "build_closed_surface",
]
