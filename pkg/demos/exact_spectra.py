"""Canonical constant-curvature hypersurfaces, classified in exact arithmetic.

For a hypersurface of the unit sphere with *constant* principal curvatures,
the biharmonic condition collapses to one algebraic equation on the
spectrum: writing ``m`` for the dimension, ``f`` for the mean curvature and
``|A|^2`` for the squared norm of the shape operator,

    (|A|^2 - m) * f = 0.

Minimal hypersurfaces (``f = 0``) satisfy it trivially; non-minimal ones are
*proper* biharmonic exactly when ``|A|^2 = m``.  Because every spectrum in
the canonical families is a rational multiple of a square root of an
integer, the package evaluates ``f`` and ``|A|^2`` with exact rational
arithmetic — the verdicts below involve no floating-point tolerance at all.

The families:

* small hyperspheres ``S^(n-1)(1/sqrt(2))`` in ``S^n`` — every curvature 1,
  so ``f = 1``, ``|A|^2 = m``: proper biharmonic;
* sphere products ``S^(n1)(1/sqrt(2)) x S^(n2)(1/sqrt(2))`` — curvatures
  +1/-1, ``|A|^2 = m`` always, ``f = (n1 - n2)/m``: proper biharmonic when
  unbalanced, minimal when balanced;
* generalized minimal product tori ``S^p(sqrt(p/m)) x S^q(sqrt(q/m))`` —
  ``f = 0`` exactly, ``|A|^2 = m``;
* a non-example (constant curvature 2, multiplicity 3) whose normal-equation
  residual is exactly 18, demonstrating the classifier rejects.

Run from the repository root:

    python demos/exact_spectra.py

Exit codes:
    0   every verdict matched the stated classification
    1   a verdict deviated
"""
from __future__ import annotations

import argparse

import bisurf


def main(argv: list[str] | None = None) -> int:
    argparse.ArgumentParser(description=__doc__.splitlines()[0]).parse_args(argv)

    spectra = [
        bisurf.spectrum_small_sphere(3),
        bisurf.spectrum_small_sphere(5),
        bisurf.spectrum_sphere_product(2, 1),
        bisurf.spectrum_sphere_product(3, 2),
        bisurf.spectrum_sphere_product(2, 2),
        bisurf.spectrum_minimal_product(1, 1),
        bisurf.spectrum_minimal_product(2, 3),
        bisurf.spectrum_from_values([(2.0, 3)], name="curvature 2, multiplicity 3"),
    ]
    print(bisurf.format_spectrum_table(spectra))

    expected = [
        "proper_biharmonic",
        "proper_biharmonic",
        "proper_biharmonic",
        "proper_biharmonic",
        "minimal",
        "minimal",
        "minimal",
        "not_biharmonic",
    ]
    failures = 0
    print()
    for spectrum, want in zip(spectra, expected):
        verdict = bisurf.biharmonic_check(spectrum)
        ok = verdict.verdict == want
        failures += not ok
        extra = ""
        if verdict.verdict == "not_biharmonic":
            extra = f"  (normal-equation residual exactly {verdict.normal_residual:g})"
        print(f"  [{'ok' if ok else 'FAIL'}] {spectrum.name}: {verdict.verdict}{extra}")

    # The balanced sphere product and the (k, k) minimal torus are the same
    # hypersurface reached through two different constructors; their exact
    # spectra must agree entry for entry.
    same = (
        bisurf.spectrum_sphere_product(2, 2).entries
        == bisurf.spectrum_minimal_product(2, 2).entries
    )
    failures += not same
    print(f"  [{'ok' if same else 'FAIL'}] balanced product == minimal torus (exact entries)")

    print()
    if failures:
        print(f"{failures} verdict(s) FAILED")
        return 1
    print("all verdicts exact and as stated")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
