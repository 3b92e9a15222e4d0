"""Characteristic-p center reduction of Weyl endomorphisms.

Over F_p the center of the Weyl algebra is the polynomial ring generated by
the p-th powers of the generators; writing X_i for Y_i^p, every relation-
verified endomorphism restricts to a polynomial endomorphism of those 2n
commutative variables.  The restriction is computed from the definition:
the p-th power of each image is formed by p-fold multiplication, checked to
be central with all exponents divisible by p, and read off with exponents
divided by p.  Failures of those checks are internal errors, not data.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poisson import PoissonContext, is_symplectic
from .poly import Poly, PolyEndo
from .weyl import WeylElement, WeylEndo, is_central


class CenterReductionError(AssertionError):
    """Centrality or divisibility failed; signals an arithmetic bug upstream."""


@dataclass(frozen=True)
class CenterEndo:
    """Induced endomorphism on the center, tagged with its source."""

    endo: PolyEndo
    source: WeylEndo


@dataclass(frozen=True)
class DegreeReport:
    deg_endo: int
    deg_center: int
    equal: bool
    witness_index: int | None = None


@dataclass(frozen=True)
class CenterSymplecticReport:
    center: CenterEndo
    symplectic: bool


def _read_central(elem: WeylElement, p: int) -> Poly:
    """Read a central normal-form element as a polynomial in X_i = Y_i^p.

    The exponent pair (g, d) corresponds to X-exponents d/p on the first n
    variables and g/p on the last n.
    """
    alg = elem.algebra
    terms = {}
    for (g, d), c in elem.terms.items():
        if any(e % p for e in g) or any(e % p for e in d):
            raise CenterReductionError(
                f"exponents of {elem.to_text()} are not all divisible by {p}"
            )
        terms[tuple(e // p for e in d) + tuple(e // p for e in g)] = c
    return Poly(alg.ring, 2 * alg.n, terms)


def induced_center_endo(endo: WeylEndo) -> CenterEndo:
    """The endomorphism induced on the center, from p-fold image powers."""
    ring = endo.algebra.ring
    p = ring.characteristic()
    if p == 0:
        raise ValueError("center reduction needs prime-field coefficients")
    images = []
    for i, im in enumerate(endo.images, start=1):
        power = im**p
        if not is_central(power):
            raise CenterReductionError(
                f"image {i} has non-central p-th power {power.to_text()}"
            )
        images.append(_read_central(power, p))
    return CenterEndo(PolyEndo(ring, 2 * endo.algebra.n, images), endo)


def check_degree_preservation(endo: WeylEndo) -> DegreeReport:
    """deg of the endomorphism and of its center restriction; must agree."""
    center = induced_center_endo(endo)
    deg_endo = endo.degree()
    deg_center = center.endo.degree()
    witness = None
    if deg_endo != deg_center:
        for i, (im, cim) in enumerate(zip(endo.images, center.endo.images), start=1):
            d1 = 0 if im.is_zero() else im.degree()
            d2 = 0 if cim.is_zero() else cim.degree()
            if d1 != d2:
                witness = i
                break
    return DegreeReport(deg_endo, deg_center, deg_endo == deg_center, witness)


def check_center_symplectic(endo: WeylEndo) -> CenterSymplecticReport:
    """The center restriction of a relation-verified endomorphism must preserve
    the canonical bracket; a False result is a falsification event."""
    center = induced_center_endo(endo)
    ctx = PoissonContext(endo.algebra.ring, endo.algebra.n)
    return CenterSymplecticReport(center, is_symplectic(ctx, center.endo))
