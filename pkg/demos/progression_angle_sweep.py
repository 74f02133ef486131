"""Why closed solutions exist in infinite families — and why none winds once.

The profile curve advances its azimuth about the rotation pole by the
progression angle ``I(d)`` in each curvature period.  A surface closes after
``m`` periods and ``n`` trips around the pole exactly when

    I(d) = 2 pi n / m.

This script tabulates ``I(d)`` over a grid of orbit constants and verifies
the two facts the whole existence theory rests on:

* ``I`` is strictly decreasing, and
* its values fill (a subset of) the open interval ``(pi, sqrt(2) pi)``.

Both bounds carry geometric meaning: targets ``2 pi n / m`` inside the
interval are hit by exactly one ``d`` (one surface per admissible pair),
while targets outside are never hit.  In particular ``n = 1`` would need
``I(d) = 2 pi / m <= pi`` — below the infimum — so no closed solution winds
once, and every closed member of the family intersects its own rotation
axis tube nontrivially rather than embedding.  The admissible pairs are the
coprime ``(m, n)`` with ``m < 2n < sqrt(2) m``.

Run from the repository root:

    python demos/progression_angle_sweep.py [--steps 200] [--m-max 9]

Exit codes:
    0   bounds, monotonicity, and admissibility checks all passed
    1   a check failed
    2   invalid usage
"""
from __future__ import annotations

import argparse
import math
from pathlib import Path

import numpy as np

import bisurf


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--d-min", type=float, default=0.57, help="smallest orbit constant")
    parser.add_argument("--d-max", type=float, default=50.0, help="largest orbit constant")
    parser.add_argument("--steps", type=int, default=200, help="grid points")
    parser.add_argument("--m-max", type=int, default=9, help="enumerate admissible pairs up to this m")
    parser.add_argument("--outdir", default="demo_output", help="directory for the sweep CSV")
    args = parser.parse_args(argv)

    failures: list[str] = []

    def verify(ok: bool, what: str) -> None:
        print(f"  [{'ok' if ok else 'FAIL'}] {what}")
        if not ok:
            failures.append(what)

    print(f"sweeping I(d) at {args.steps} points, d in [{args.d_min}, {args.d_max}] ...")
    report = bisurf.sweep(args.d_min, args.d_max, args.steps)
    i_min, i_max = float(report.i_values.min()), float(report.i_values.max())
    print(f"observed range: [{i_min:.9f}, {i_max:.9f}]")
    print(f"claimed bounds: (pi, sqrt(2) pi) = ({math.pi:.9f}, {math.sqrt(2) * math.pi:.9f})")
    verify(report.in_bounds, f"every value inside the bounds "
           f"(margins {report.lower_margin:.2e} above pi, {report.upper_margin:.2e} below sqrt(2) pi)")
    verify(report.monotone_decreasing, "strictly decreasing across the grid")

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = report.write_csv(outdir / "progression_sweep.csv")
    print(f"wrote {csv_path}")

    print()
    print("consequences for closure targets 2 pi n / m:")
    violations = bisurf.single_winding_violations(10**6)
    verify(
        violations == [],
        "n = 1 impossible for every m up to 10^6 (2 pi / m never exceeds pi)",
    )

    pairs = bisurf.enumerate_pairs(args.m_max)
    print()
    print(f"admissible pairs with m <= {args.m_max}, and the orbit constant hitting each target:")
    print(f"  {'(m, n)':<8} {'target':<16} {'solved d':<20} {'|I(d) - target|':<12}")
    for m, n in pairs:
        sol = bisurf.solve_closure(m, n)
        print(f"  ({m}, {n})   {sol.target:<16.12f} {sol.d:<20.15f} {sol.residual:.1e}")
        verify(sol.residual < 1e-10, f"({m}, {n}) target hit to 1e-10")

    print()
    if failures:
        print(f"{len(failures)} check(s) FAILED")
        return 1
    print("all checks passed")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
