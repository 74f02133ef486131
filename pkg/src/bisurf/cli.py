"""Command-line front end for building and certifying the surfaces.

Subcommands
-----------
closure
    Solve the closure condition for a winding pair ``(m, n)``, reconstruct
    and verify the closed profile curve, revolve it inside the 3-sphere, and
    export the mesh with its stereographic projection.
sweep
    Tabulate the progression angle over a grid of orbit constants and verify
    its monotonicity and range bounds.
profile
    Reconstruct one period of the curvature law at a given orbit constant and
    verify its conservation-law residuals.
certify
    Run the full geometric-identity certification on a mesh: one freshly
    built for a winding pair, a named control surface, or a previously
    exported ``.json`` mesh file.
examples
    Evaluate the exact principal-curvature spectra of the canonical
    constant-curvature hypersurfaces and classify each one.
r3profile
    Build, revolve, and certify the Euclidean biconservative profile.

Every command writes a JSON report (floats at 17 significant digits) that
echoes its effective configuration, plus CSV/OBJ artifacts where meaningful
(CSV floats at 9 significant digits).  Outputs are deterministic: identical
configuration yields bit-identical files, with no timestamps.

The output directory is taken from ``--outdir``, else the ``BISURF_OUTDIR``
environment variable, else the working directory.  A JSON file passed via
``--config`` overrides the corresponding flags.

Exit codes:
    0   every enabled check passed
    1   at least one check failed
    2   invalid usage or inadmissible parameters
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import serialization
from .certify import CertTolerances, certify_surface
from .closure import InadmissiblePairError, solve_closure, sweep
from .curvature import NoPeriodicOrbitError, curvature_profile
from .curves import euclidean_profile, profile_slope
from .pipeline import build_closed_surface
from .spectra import (
    biharmonic_check,
    format_spectrum_table,
    spectrum_from_values,
    spectrum_minimal_product,
    spectrum_small_sphere,
    spectrum_sphere_product,
)
from .surfaces import (
    export_mesh,
    import_mesh,
    make_clifford_mesh,
    make_cone_mesh,
    make_cylinder_mesh,
    make_sphere_mesh,
    perturb_mesh,
    revolve_in_r3,
)

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

_CONTROL_BUILDERS = {
    "sphere": make_sphere_mesh,
    "cylinder": make_cylinder_mesh,
    "cone": make_cone_mesh,
    "clifford": make_clifford_mesh,
    "perturbed-clifford": lambda **kw: perturb_mesh(make_clifford_mesh(**kw)),
}

_EXAMPLE_CASES = ("small-sphere", "sphere-product", "minimal-product", "non-example")


def _output_dir(args: argparse.Namespace) -> Path:
    out = args.outdir or os.environ.get("BISURF_OUTDIR") or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _echo_config(args: argparse.Namespace) -> dict:
    skip = {"func"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _check(name: str, value: float, tolerance: float, note: str = "") -> dict:
    entry = {
        "name": name,
        "value": value,
        "tolerance": tolerance,
        "passed": bool(value <= tolerance),
    }
    if note:
        entry["note"] = note
    return entry


def _equality_check(name: str, actual, expected, note: str = "") -> dict:
    entry = {
        "name": name,
        "value": actual,
        "expected": expected,
        "passed": bool(actual == expected),
    }
    if note:
        entry["note"] = note
    return entry


def _print_checks(checks: list[dict]) -> bool:
    ok = True
    for c in checks:
        status = "PASS" if c["passed"] else "FAIL"
        if "tolerance" in c:
            detail = f"{c['value']:.6e} (tolerance {c['tolerance']:.1e})"
        else:
            detail = f"{c['value']!r} (expected {c['expected']!r})"
        print(f"  {c['name']:<22} {detail}  {status}")
        ok &= c["passed"]
    return ok


def _write_report(path: Path, payload: dict) -> None:
    serialization.write_json(payload, path)
    print(f"wrote {path}")


# ---------------------------------------------------------------------------
# closure
# ---------------------------------------------------------------------------


def cmd_closure(args: argparse.Namespace) -> int:
    outdir = _output_dir(args)
    try:
        result = build_closed_surface(
            args.m,
            args.n,
            n_s=args.n_s,
            n_theta=args.n_theta,
            tol=args.tol,
        )
    except InadmissiblePairError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    norm_defect = float(
        np.abs(np.linalg.norm(result.mesh.vertices, axis=-1) - 1.0).max()
    )
    checks = [
        _check(
            "closure_residual",
            result.solution.residual,
            args.tol,
            "|I(d) - 2 pi n/m| at the solved orbit constant",
        ),
        _check(
            "closure_defect",
            result.diagnostics.defect,
            args.defect_tol,
            "endpoint gap of the plain m-period integration",
        ),
        _equality_check(
            "winding", result.diagnostics.winding, args.n,
            "trips around the pole, from unwrapped azimuth",
        ),
        _check(
            "axis_fit_residual",
            result.axis_residual,
            1e-5,
            "rotation-field least-squares fit on the assembled curve",
        ),
        _check(
            "mesh_unit_norm",
            norm_defect,
            1e-8,
            "max | |vertex| - 1 | on the 3-sphere mesh",
        ),
    ]

    base = f"closure_m{args.m}_n{args.n}"
    print(f"closure (m={args.m}, n={args.n}): d = {result.solution.d:.17g}")
    passed = _print_checks(checks)

    obj_path = outdir / f"{base}_projected.obj"
    export_mesh(result.projected, obj_path)
    print(f"wrote {obj_path}")
    curve_path = outdir / f"{base}_curve.csv"
    result.curve.write_csv(curve_path)
    print(f"wrote {curve_path}")
    profile_path = outdir / f"{base}_profile.csv"
    result.profile.write_csv(profile_path)
    print(f"wrote {profile_path}")
    if args.mesh_json:
        mesh_path = outdir / f"{base}_mesh4.json"
        export_mesh(result.mesh, mesh_path)
        print(f"wrote {mesh_path}")

    _write_report(
        outdir / f"{base}.json",
        {
            "command": "closure",
            "config": _echo_config(args),
            "passed": passed,
            "checks": checks,
            "result": result.to_dict(),
        },
    )
    return EXIT_PASS if passed else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def cmd_sweep(args: argparse.Namespace) -> int:
    outdir = _output_dir(args)
    try:
        report = sweep(args.d_min, args.d_max, args.steps, threads=args.threads)
    except (ValueError, NoPeriodicOrbitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    checks = [
        _equality_check(
            "monotone_decreasing", report.monotone_decreasing, True,
            "progression angle strictly decreasing over the grid",
        ),
        _equality_check(
            "in_bounds", report.in_bounds, True,
            "every value inside (pi, sqrt(2) pi)",
        ),
    ]
    print(
        f"sweep: {args.steps} points on [{args.d_min:g}, {args.d_max:g}]"
    )
    passed = _print_checks(checks)

    csv_path = outdir / "sweep.csv"
    report.write_csv(csv_path)
    print(f"wrote {csv_path}")
    _write_report(
        outdir / "sweep.json",
        {
            "command": "sweep",
            "config": _echo_config(args),
            "passed": passed,
            "checks": checks,
            "result": report.to_dict(),
        },
    )
    return EXIT_PASS if passed else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# profile
# ---------------------------------------------------------------------------


def cmd_profile(args: argparse.Namespace) -> int:
    outdir = _output_dir(args)
    try:
        profile = curvature_profile(args.d, args.c, n_samples=args.samples)
    except (ValueError, NoPeriodicOrbitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    checks = [
        _check(
            "prime_integral",
            profile.prime_residual / max(profile.prime_scale, 1e-300),
            1e-8,
            "conserved-quantity defect relative to its scale",
        ),
        _check(
            "second_order_law",
            profile.el_residual / max(profile.el_scale, 1e-300),
            1e-4,
            "fourth-order FD residual of the curvature law",
        ),
    ]
    print(
        f"profile (d={args.d:g}, c={args.c:g}): period rho = {profile.rho:.17g}"
    )
    passed = _print_checks(checks)

    csv_path = outdir / "profile.csv"
    profile.write_csv(csv_path)
    print(f"wrote {csv_path}")
    _write_report(
        outdir / "profile.json",
        {
            "command": "profile",
            "config": _echo_config(args),
            "passed": passed,
            "checks": checks,
            "result": profile.to_dict(),
        },
    )
    return EXIT_PASS if passed else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------


def cmd_certify(args: argparse.Namespace) -> int:
    outdir = _output_dir(args)
    sources = [args.mesh is not None, args.control is not None, args.m is not None]
    if sum(sources) != 1:
        print(
            "error: choose exactly one mesh source: --mesh FILE, "
            "--control NAME, or --m M --n N",
            file=sys.stderr,
        )
        return EXIT_USAGE

    try:
        if args.mesh is not None:
            mesh = import_mesh(args.mesh)
            label = Path(args.mesh).name
        elif args.control is not None:
            builder = _CONTROL_BUILDERS[args.control]
            mesh = builder(n_s=args.n_s, n_theta=args.n_theta)
            label = args.control
        else:
            if args.n is None:
                print("error: --m requires --n", file=sys.stderr)
                return EXIT_USAGE
            result = build_closed_surface(
                args.m, args.n, n_s=args.n_s, n_theta=args.n_theta
            )
            mesh = result.mesh
            label = f"closure_m{args.m}_n{args.n}"
    except (InadmissiblePairError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    report = certify_surface(mesh)
    print(
        f"certify {label}: {mesh.n_s} x {mesh.n_theta} grid in {report.ambient}"
    )
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"  {c.name:<22} {c.value:.6e} (tolerance {c.tolerance:.1e})  {status}")
    for note in report.notes:
        print(f"  note: {note}")

    csv_path = outdir / "certify_checks.csv"
    report.write_csv(csv_path)
    print(f"wrote {csv_path}")
    _write_report(
        outdir / "certify.json",
        {
            "command": "certify",
            "config": _echo_config(args),
            "mesh_label": label,
            **report.to_dict(),
        },
    )
    return EXIT_PASS if report.passed else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# examples
# ---------------------------------------------------------------------------


def _example_battery(case: str) -> list[tuple]:
    """(spectrum, expected verdict) pairs for one named case."""
    battery: list[tuple] = []
    if case in ("all", "small-sphere"):
        battery += [
            (spectrum_small_sphere(n), "proper_biharmonic") for n in (2, 3, 10)
        ]
    if case in ("all", "sphere-product"):
        battery += [
            (spectrum_sphere_product(2, 1), "proper_biharmonic"),
            (spectrum_sphere_product(3, 2), "proper_biharmonic"),
            (spectrum_sphere_product(2, 2), "minimal"),
        ]
    if case in ("all", "minimal-product"):
        battery += [
            (spectrum_minimal_product(1, 1), "minimal"),
            (spectrum_minimal_product(2, 3), "minimal"),
        ]
    if case in ("all", "non-example"):
        battery.append(
            (
                spectrum_from_values([(2.0, 3)], name="constant spectrum {2 x3}"),
                "not_biharmonic",
            )
        )
    return battery


def cmd_examples(args: argparse.Namespace) -> int:
    outdir = _output_dir(args)
    battery = _example_battery(args.case)
    rows = []
    checks = []
    for spectrum, expected in battery:
        verdict = biharmonic_check(spectrum)
        rows.append((spectrum, verdict))
        checks.append(
            _equality_check(
                spectrum.name, verdict.verdict, expected,
                "exact-arithmetic classification",
            )
        )

    if args.table:
        print(format_spectrum_table([s for s, _ in rows]))
    passed = _print_checks(checks)

    _write_report(
        outdir / "examples.json",
        {
            "command": "examples",
            "config": _echo_config(args),
            "passed": passed,
            "checks": checks,
            "result": [
                {"spectrum": s.to_dict(), "verdict": v.to_dict()}
                for s, v in rows
            ],
        },
    )
    return EXIT_PASS if passed else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# r3profile
# ---------------------------------------------------------------------------


def cmd_r3profile(args: argparse.Namespace) -> int:
    outdir = _output_dir(args)
    try:
        curve = euclidean_profile(args.C, args.x_max, n_samples=args.samples)
        mesh = revolve_in_r3(curve, n_theta=args.n_theta)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    report = certify_surface(mesh)
    slope = profile_slope(args.x_max, args.C)
    print(
        f"r3profile (C={args.C:g}, x_max={args.x_max:g}): "
        f"slope at x_max = {slope:.17g}"
    )
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"  {c.name:<22} {c.value:.6e} (tolerance {c.tolerance:.1e})  {status}")
    for note in report.notes:
        print(f"  note: {note}")

    curve_path = outdir / "r3profile_curve.csv"
    curve.write_csv(curve_path)
    print(f"wrote {curve_path}")
    obj_path = outdir / "r3profile_mesh.obj"
    export_mesh(mesh, obj_path)
    print(f"wrote {obj_path}")
    _write_report(
        outdir / "r3profile.json",
        {
            "command": "r3profile",
            "config": _echo_config(args),
            "slope_at_x_max": slope,
            "waist_x": args.C**3,
            **report.to_dict(),
        },
    )
    return EXIT_PASS if report.passed else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# parser plumbing
# ---------------------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--outdir",
        default=None,
        help="output directory (default: $BISURF_OUTDIR or the working directory)",
    )
    sub.add_argument(
        "--config",
        default=None,
        help="JSON file whose entries override the corresponding flags",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bisurf",
        description=(
            "Build and certify rotational biconservative surfaces in the "
            "3-sphere and in Euclidean 3-space."
        ),
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    p = subparsers.add_parser(
        "closure",
        help="solve, reconstruct, and revolve a closed (m, n) surface",
    )
    p.add_argument("--m", type=int, required=True, help="curvature periods until closure")
    p.add_argument("--n", type=int, required=True, help="trips around the pole")
    p.add_argument("--tol", type=float, default=1e-10, help="closure residual bound")
    p.add_argument(
        "--defect-tol", type=float, default=1e-6,
        help="allowed endpoint gap of the verification integration",
    )
    p.add_argument("--n-s", type=int, default=256, help="mesh rows (rounded up to a multiple of m)")
    p.add_argument("--n-theta", type=int, default=256, help="mesh columns")
    p.add_argument(
        "--mesh-json", action="store_true",
        help="also export the 4-dimensional mesh as JSON (large)",
    )
    _add_common(p)
    p.set_defaults(func=cmd_closure)

    p = subparsers.add_parser(
        "sweep", help="tabulate the progression angle over an orbit-constant grid"
    )
    p.add_argument("--d-min", type=float, required=True)
    p.add_argument("--d-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument(
        "--threads", type=int, default=1,
        help="worker threads (never changes results)",
    )
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = subparsers.add_parser(
        "profile", help="reconstruct one period of the curvature law"
    )
    p.add_argument("--d", type=float, required=True, help="orbit constant")
    p.add_argument("--c", type=float, default=1.0, help="ambient sectional curvature")
    p.add_argument("--samples", type=int, default=513, help="samples over one period")
    _add_common(p)
    p.set_defaults(func=cmd_profile)

    p = subparsers.add_parser(
        "certify", help="run the geometric-identity certification on a mesh"
    )
    p.add_argument("--mesh", default=None, help="mesh JSON file to certify")
    p.add_argument(
        "--control", default=None, choices=sorted(_CONTROL_BUILDERS),
        help="certify a built-in control surface",
    )
    p.add_argument("--m", type=int, default=None, help="build the (m, n) surface and certify it")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n-s", type=int, default=96, help="grid rows for built meshes")
    p.add_argument("--n-theta", type=int, default=96, help="grid columns for built meshes")
    _add_common(p)
    p.set_defaults(func=cmd_certify)

    p = subparsers.add_parser(
        "examples",
        help="classify the canonical constant-curvature hypersurface spectra",
    )
    p.add_argument(
        "--case", default="all", choices=("all",) + _EXAMPLE_CASES,
        help="which example family to evaluate",
    )
    p.add_argument(
        "--table", action="store_true", help="print the spectrum table"
    )
    _add_common(p)
    p.set_defaults(func=cmd_examples)

    p = subparsers.add_parser(
        "r3profile",
        help="build, revolve, and certify the Euclidean biconservative profile",
    )
    p.add_argument("--C", type=float, default=1.0, help="profile constant (waist at x = C^3)")
    p.add_argument("--x-max", type=float, default=8.0, help="largest profile radius")
    p.add_argument("--samples", type=int, default=257, help="profile samples")
    p.add_argument("--n-theta", type=int, default=256, help="mesh columns")
    _add_common(p)
    p.set_defaults(func=cmd_r3profile)

    return parser


def _apply_config_file(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    """Overlay values from ``--config`` (JSON object keyed by flag names)."""
    if not args.config:
        return
    try:
        loaded = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config file {args.config}: {exc}")
    if not isinstance(loaded, dict):
        parser.error(f"config file {args.config} must hold a JSON object")
    for key, value in loaded.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr) or attr in ("func", "command", "config"):
            parser.error(f"config file {args.config} sets unknown flag {key!r}")
        setattr(args, attr, value)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _apply_config_file(args, parser)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
