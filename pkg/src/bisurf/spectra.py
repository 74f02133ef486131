"""Exact principal-curvature spectra of canonical constant-curvature examples.

A hypersurface with constant principal curvatures is proper biharmonic in the
unit sphere exactly when its mean curvature is nonzero and the squared norm of
its shape operator equals the hypersurface dimension ``m``; it is minimal when
the mean curvature vanishes.  This module books principal-curvature spectra
*exactly* — each distinct value is a rational multiple of the square root of a
positive integer, with an integer multiplicity — so those verdicts come from
integer/rational arithmetic, not floating-point tolerances.

Covered families (all inside the unit sphere ``S^{m+1}``):

* small hyperspheres ``S^m(1/sqrt(2))``: one curvature value 1, multiplicity m;
* Clifford-type products ``S^{n1}(1/sqrt(2)) x S^{n2}(1/sqrt(2))``:
  values +1 and -1 with multiplicities n1, n2;
* minimal generalized Clifford tori ``S^p(sqrt(p/(p+q))) x S^q(sqrt(q/(p+q)))``:
  values ``sqrt(q/p)`` (multiplicity p) and ``-sqrt(p/q)`` (multiplicity q).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, sqrt
from pathlib import Path

from . import serialization

__all__ = [
    "SpectrumEntry",
    "CurvatureSpectrum",
    "BiharmonicVerdict",
    "spectrum_small_sphere",
    "spectrum_sphere_product",
    "spectrum_minimal_product",
    "spectrum_from_values",
    "biharmonic_check",
    "format_spectrum_table",
]


def _reduce_radical(radicand: int) -> tuple[int, int]:
    """Write ``sqrt(radicand) = k * sqrt(r)`` with ``r`` squarefree-ish.

    Extracts the largest square factor; ``radicand`` must be positive.
    """
    if radicand <= 0:
        raise ValueError("radicand must be a positive integer")
    k = 1
    r = radicand
    f = 2
    while f * f <= r:
        while r % (f * f) == 0:
            r //= f * f
            k *= f
        f += 1
    return k, r


@dataclass(frozen=True)
class SpectrumEntry:
    """One distinct principal curvature ``coeff * sqrt(radicand)``.

    ``coeff`` is an exact rational, ``radicand`` a positive square-free
    integer (so equal values always share a representation), and
    ``multiplicity`` a positive integer.
    """

    coeff: Fraction
    radicand: int
    multiplicity: int

    @property
    def value(self) -> float:
        return float(self.coeff) * sqrt(self.radicand)

    def __str__(self) -> str:
        if self.radicand == 1:
            core = str(self.coeff)
        elif self.coeff == 1:
            core = f"sqrt({self.radicand})"
        elif self.coeff == -1:
            core = f"-sqrt({self.radicand})"
        else:
            core = f"{self.coeff}*sqrt({self.radicand})"
        return f"{core} (x{self.multiplicity})"


def _normalized_entries(
    raw: list[tuple[Fraction, int, int]]
) -> tuple[SpectrumEntry, ...]:
    combined: dict[tuple[int, Fraction], int] = {}
    order: list[tuple[int, Fraction]] = []
    for coeff, radicand, mult in raw:
        if mult < 1:
            raise ValueError("multiplicities must be positive integers")
        k, r = _reduce_radical(radicand)
        key = (r, Fraction(coeff) * k)
        if key in combined:
            combined[key] += mult
        else:
            combined[key] = mult
            order.append(key)
    return tuple(
        SpectrumEntry(coeff=key[1], radicand=key[0], multiplicity=combined[key])
        for key in order
    )


@dataclass(frozen=True)
class CurvatureSpectrum:
    """Exact multiset of principal curvatures of a hypersurface in a sphere.

    Attributes
    ----------
    name : str
        Human-readable label of the example (excluded from equality: two
        spectra are equal exactly when their entries agree).
    entries : tuple of SpectrumEntry
        Distinct values with multiplicities.
    """

    name: str = field(compare=False)
    entries: tuple[SpectrumEntry, ...] = ()

    @property
    def dimension(self) -> int:
        """Hypersurface dimension ``m`` (sum of multiplicities)."""
        return sum(e.multiplicity for e in self.entries)

    def mean_curvature_exact(self) -> dict[int, Fraction]:
        """Exact ``f = (sum of curvatures) / m`` as ``{radicand: coeff}``.

        Zero contributions are dropped, so an empty dict means ``f`` is
        exactly zero.
        """
        m = self.dimension
        acc: dict[int, Fraction] = {}
        for e in self.entries:
            acc[e.radicand] = acc.get(e.radicand, Fraction(0)) + e.coeff * e.multiplicity
        return {
            r: c / m for r, c in sorted(acc.items()) if c != 0
        }

    @property
    def mean_curvature(self) -> float:
        return float(sum(float(c) * sqrt(r) for r, c in self.mean_curvature_exact().items()))

    def shape_norm_sq_exact(self) -> Fraction:
        """Exact ``|A|^2 = sum multiplicity * value^2`` (always rational)."""
        return sum(
            (e.coeff**2 * e.radicand * e.multiplicity for e in self.entries),
            start=Fraction(0),
        )

    @property
    def shape_norm_sq(self) -> float:
        return float(self.shape_norm_sq_exact())

    @property
    def values(self) -> list[float]:
        return [e.value for e in self.entries]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "dimension": self.dimension,
            "entries": [
                {
                    "value": e.value,
                    "coeff": str(e.coeff),
                    "radicand": e.radicand,
                    "multiplicity": e.multiplicity,
                }
                for e in self.entries
            ],
            "mean_curvature": self.mean_curvature,
            "shape_norm_sq": self.shape_norm_sq,
        }


def spectrum_small_sphere(n: int) -> CurvatureSpectrum:
    """Small hypersphere ``S^{n-1}(1/sqrt(2))`` inside ``S^n``.

    All ``m = n - 1`` principal curvatures equal 1, so ``f = 1`` and
    ``|A|^2 = m``: the classical proper biharmonic hypersphere.
    """
    if n < 2:
        raise ValueError("need n >= 2 for a hypersurface in S^n")
    return CurvatureSpectrum(
        name=f"S^{n - 1}(1/sqrt(2)) in S^{n}",
        entries=_normalized_entries([(Fraction(1), 1, n - 1)]),
    )


def spectrum_sphere_product(n1: int, n2: int) -> CurvatureSpectrum:
    """Product ``S^{n1}(1/sqrt(2)) x S^{n2}(1/sqrt(2))`` in ``S^{n1+n2+1}``.

    Principal curvatures +1 (multiplicity ``n1``) and -1 (``n2``), so
    ``|A|^2 = n1 + n2 = m`` always, and ``f = (n1 - n2)/m``: proper
    biharmonic exactly when ``n1 != n2``, minimal exactly when ``n1 = n2``.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("both factor dimensions must be positive")
    return CurvatureSpectrum(
        name=f"S^{n1}(1/sqrt(2)) x S^{n2}(1/sqrt(2)) in S^{n1 + n2 + 1}",
        entries=_normalized_entries(
            [(Fraction(1), 1, n1), (Fraction(-1), 1, n2)]
        ),
    )


def spectrum_minimal_product(p: int, q: int) -> CurvatureSpectrum:
    """Generalized Clifford torus ``S^p(sqrt(p/(p+q))) x S^q(sqrt(q/(p+q)))``.

    Principal curvatures ``sqrt(q/p)`` (multiplicity ``p``) and
    ``-sqrt(p/q)`` (``q``); exactly minimal (``f = 0``) with
    ``|A|^2 = p + q = m``, hence biharmonic only in the trivial minimal sense.
    """
    if p < 1 or q < 1:
        raise ValueError("both factor dimensions must be positive")
    # sqrt(q/p) = (1/p) sqrt(pq): exact rational coefficient on one radicand.
    return CurvatureSpectrum(
        name=f"S^{p}(sqrt({p}/{p + q})) x S^{q}(sqrt({q}/{p + q})) in S^{p + q + 1}",
        entries=_normalized_entries(
            [(Fraction(1, p), p * q, p), (Fraction(-1, q), p * q, q)]
        ),
    )


def spectrum_from_values(
    pairs: list[tuple[float, int]], name: str = "custom"
) -> CurvatureSpectrum:
    """Spectrum from float (value, multiplicity) pairs.

    Each float is converted exactly (IEEE doubles are rationals), so integer
    and dyadic inputs stay exact; irrational values should be constructed via
    the family constructors instead.
    """
    return CurvatureSpectrum(
        name=name,
        entries=_normalized_entries(
            [(Fraction(v), 1, int(mult)) for v, mult in pairs]
        ),
    )


@dataclass(frozen=True)
class BiharmonicVerdict:
    """Exact classification of a constant-curvature spectrum.

    verdict is one of ``"proper_biharmonic"``, ``"minimal"``, or
    ``"not_biharmonic"``; the residual fields record the exact quantities the
    verdict rests on.
    """

    verdict: str
    is_minimal: bool
    is_proper_biharmonic: bool
    mean_curvature: float
    shape_norm_sq: float
    dimension: int
    normal_residual: float  #: (|A|^2 - m) * f, zero iff normal equation holds

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "is_minimal": self.is_minimal,
            "is_proper_biharmonic": self.is_proper_biharmonic,
            "mean_curvature": self.mean_curvature,
            "shape_norm_sq": self.shape_norm_sq,
            "dimension": self.dimension,
            "normal_residual": self.normal_residual,
        }


def biharmonic_check(spectrum: CurvatureSpectrum) -> BiharmonicVerdict:
    """Classify a constant-curvature hypersurface spectrum exactly.

    The normal bienergy equation for constant principal curvatures in the
    unit sphere reduces to ``(|A|^2 - m) f = 0``: minimal (``f = 0``) always
    satisfies it; nonminimal spectra are biharmonic iff ``|A|^2 = m``, and
    then proper.  Both conditions are decided in exact arithmetic.
    """
    f_exact = spectrum.mean_curvature_exact()
    f_zero = not f_exact
    a2 = spectrum.shape_norm_sq_exact()
    m = spectrum.dimension
    a2_matches = a2 == m

    if f_zero:
        verdict = "minimal"
    elif a2_matches:
        verdict = "proper_biharmonic"
    else:
        verdict = "not_biharmonic"
    return BiharmonicVerdict(
        verdict=verdict,
        is_minimal=f_zero,
        is_proper_biharmonic=(not f_zero) and a2_matches,
        mean_curvature=spectrum.mean_curvature,
        shape_norm_sq=float(a2),
        dimension=m,
        normal_residual=float(a2 - m) * spectrum.mean_curvature,
    )


def format_spectrum_table(spectra: list[CurvatureSpectrum]) -> str:
    """Fixed-width text table of spectra and their exact verdicts."""
    rows = [
        ["example", "m", "principal curvatures", "f", "|A|^2", "verdict"]
    ]
    for sp in spectra:
        verdict = biharmonic_check(sp)
        rows.append(
            [
                sp.name,
                str(sp.dimension),
                ", ".join(str(e) for e in sp.entries),
                serialization.format_float(verdict.mean_curvature, 6),
                serialization.format_float(verdict.shape_norm_sq, 6),
                verdict.verdict,
            ]
        )
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for i, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)
