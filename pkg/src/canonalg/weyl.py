"""The Weyl algebra on 2n generators, in normal-ordered representation.

Generators Y_1..Y_n act as partial derivations and Y_{n+1}..Y_{2n} as
multiplication by the matching coordinate, so the defining relations are

    [Y_i, Y_{i+n}] = 1   (1 <= i <= n),   all other generator pairs commute.

Every element is stored in normal order: a finite sum of terms

    c * Y_{n+1}^{g_1} ... Y_{2n}^{g_n} * Y_1^{d_1} ... Y_n^{d_n}

keyed by the exponent pair (g, d).  The product of two such terms follows the
operator Leibniz rule: the derivation part of the left factor acts on the
position part of the right factor,

    (x^g1 d^d1)(x^g2 d^d2)
        = sum over l <= min(d1, g2) of
          binom(d1, l) * falling(g2, l) * x^(g1+g2-l) d^(d1+d2-l)

with binomials and falling factorials computed as exact integers and then
reduced into the coefficient ring, so characteristic-p vanishing happens on
its own.  A worked instance over Q with n = 1 (writing x = Y_2, d = Y_1):

    d^2 * x^2 = x^2 d^2 + 4 x d + 2
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .linalg import matrix_rank, solve_many
from .poly import Poly, monomials_upto
from .rings import Ring

TermKey = tuple[tuple[int, ...], tuple[int, ...]]


class RelationError(ValueError):
    """An image list violates the defining relations; carries the witness pair."""

    def __init__(self, i: int, j: int, commutator: "WeylElement"):
        self.i = i
        self.j = j
        self.commutator = commutator
        super().__init__(
            f"images {i} and {j} have commutator {commutator.to_text()}, "
            f"expected {'1' if j == i + commutator.algebra.n else '0'}"
        )


@dataclass(frozen=True)
class WeylAlgebra:
    """Coefficient ring plus the index n (2n generators)."""

    ring: Ring
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("index n must be >= 1")

    @property
    def ngens(self) -> int:
        return 2 * self.n

    def zero(self) -> "WeylElement":
        return WeylElement(self, {})

    def one(self) -> "WeylElement":
        return self.const(self.ring.one())

    def const(self, c) -> "WeylElement":
        return WeylElement(self, {((0,) * self.n, (0,) * self.n): c})

    def generator(self, i: int) -> "WeylElement":
        """Y_i, 1-based: derivation letter for i <= n, position letter above."""
        if not 1 <= i <= self.ngens:
            raise IndexError(f"generator index {i} out of range 1..{self.ngens}")
        g = [0] * self.n
        d = [0] * self.n
        if i <= self.n:
            d[i - 1] = 1
        else:
            g[i - self.n - 1] = 1
        return WeylElement(self, {(tuple(g), tuple(d)): self.ring.one()})

    def generators(self) -> list["WeylElement"]:
        return [self.generator(i) for i in range(1, self.ngens + 1)]


def _falling(b: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= b - t
    return out


class WeylElement:
    """Normal-ordered element: exponent pair (position, derivation) -> coefficient."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: WeylAlgebra, terms: dict | None = None):
        self.algebra = algebra
        ring = algebra.ring
        clean: dict[TermKey, object] = {}
        for (g, d), c in (terms or {}).items():
            if len(g) != algebra.n or len(d) != algebra.n:
                raise ValueError("exponent pair has wrong length")
            if not ring.is_zero(c):
                clean[(tuple(g), tuple(d))] = c
        self.terms = clean

    # -- queries ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree in all 2n generators; undefined for zero."""
        if not self.terms:
            raise ValueError("degree of the zero element is undefined")
        return max(sum(g) + sum(d) for g, d in self.terms)

    def sorted_terms(self) -> list[tuple[TermKey, object]]:
        return sorted(
            self.terms.items(),
            key=lambda kv: (sum(kv[0][0]) + sum(kv[0][1]), kv[0]),
            reverse=True,
        )

    def _check(self, other: "WeylElement"):
        if self.algebra != other.algebra:
            raise ValueError("elements of different Weyl algebras")

    # -- linear structure --------------------------------------------------------

    def __add__(self, other: "WeylElement") -> "WeylElement":
        self._check(other)
        ring = self.algebra.ring
        out = dict(self.terms)
        for key, c in other.terms.items():
            acc = ring.add(out.get(key, ring.zero()), c)
            if ring.is_zero(acc):
                out.pop(key, None)
            else:
                out[key] = acc
        return WeylElement(self.algebra, out)

    def __neg__(self) -> "WeylElement":
        ring = self.algebra.ring
        return WeylElement(self.algebra, {k: ring.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other: "WeylElement") -> "WeylElement":
        return self + (-other)

    def scale(self, c) -> "WeylElement":
        ring = self.algebra.ring
        return WeylElement(self.algebra, {k: ring.mul(c, v) for k, v in self.terms.items()})

    # -- multiplication ------------------------------------------------------------

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        """Normal-ordered product via the operator Leibniz rule (see module doc)."""
        self._check(other)
        alg = self.algebra
        ring = alg.ring
        out: dict[TermKey, object] = {}
        for (g1, d1), c1 in self.terms.items():
            for (g2, d2), c2 in other.terms.items():
                base = ring.mul(c1, c2)
                ranges = [range(min(a, b) + 1) for a, b in zip(d1, g2)]
                for lam in itertools.product(*ranges):
                    weight = 1
                    for a, b, l in zip(d1, g2, lam):
                        if l:
                            weight *= comb(a, l) * _falling(b, l)
                    c = ring.mul(base, ring.of_int(weight))
                    if ring.is_zero(c):
                        continue
                    key = (
                        tuple(x + y - l for x, y, l in zip(g1, g2, lam)),
                        tuple(x + y - l for x, y, l in zip(d1, d2, lam)),
                    )
                    acc = ring.add(out.get(key, ring.zero()), c)
                    if ring.is_zero(acc):
                        out.pop(key, None)
                    else:
                        out[key] = acc
        return WeylElement(alg, out)

    def __pow__(self, k: int) -> "WeylElement":
        if k < 0:
            raise ValueError("negative power")
        result = self.algebra.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeylElement)
            and self.algebra == other.algebra
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def __repr__(self):
        return f"WeylElement({self.algebra.ring}, {self.to_text()})"

    def to_text(self, names: Sequence[str] | None = None) -> str:
        """Grammar-compatible text, position letters left of derivation letters."""
        if not self.terms:
            return "0"
        n = self.algebra.n
        names = list(names) if names is not None else [f"Y{i}" for i in range(1, 2 * n + 1)]
        ring = self.algebra.ring
        pieces = []
        for idx, ((g, d), c) in enumerate(self.sorted_terms()):
            if ring.kind == "Fp":
                neg, mag = False, str(c)
            else:
                neg = c < 0
                mag = str(-c if neg else c)
            letters = [
                names[n + k] if e == 1 else f"{names[n + k]}^{e}" for k, e in enumerate(g) if e
            ] + [names[k] if e == 1 else f"{names[k]}^{e}" for k, e in enumerate(d) if e]
            if not letters:
                body = mag
            elif mag == "1":
                body = "*".join(letters)
            else:
                body = "*".join([mag] + letters)
            if idx == 0:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)


def commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    return a * b - b * a


def is_central(a: WeylElement) -> bool:
    """Commutes with every generator."""
    return all(commutator(a, g).is_zero() for g in a.algebra.generators())


def verify_endo_relations(
    algebra: WeylAlgebra, images: Sequence[WeylElement]
) -> tuple[bool, tuple[int, int, WeylElement] | None]:
    """Check the defining relations on a candidate image list.

    Returns (True, None) when [G_i, G_{i+n}] = 1 for all i <= n and every
    other pair of images commutes; otherwise (False, witness) with the
    offending 1-based pair and its commutator.
    """
    if len(images) != algebra.ngens:
        raise ValueError(f"need {algebra.ngens} images, got {len(images)}")
    for im in images:
        if im.algebra != algebra:
            raise ValueError("image from the wrong algebra")
    one = algebra.one()
    for i in range(1, algebra.ngens + 1):
        for j in range(i + 1, algebra.ngens + 1):
            c = commutator(images[i - 1], images[j - 1])
            expected = one if j == i + algebra.n else algebra.zero()
            if c != expected:
                return False, (i, j, c)
    return True, None


class WeylEndo:
    """Relation-verified endomorphism; construction rejects invalid image lists."""

    __slots__ = ("algebra", "images")

    def __init__(self, algebra: WeylAlgebra, images: Sequence[WeylElement]):
        ok, witness = verify_endo_relations(algebra, images)
        if not ok:
            raise RelationError(*witness)
        self.algebra = algebra
        self.images = tuple(images)

    @classmethod
    def identity(cls, algebra: WeylAlgebra) -> "WeylEndo":
        return cls(algebra, algebra.generators())

    def is_identity(self) -> bool:
        return list(self.images) == self.algebra.generators()

    def degree(self) -> int:
        degs = [im.degree() for im in self.images if not im.is_zero()]
        if not degs:
            raise ValueError("degree of the all-zero endomorphism is undefined")
        return max(degs)

    def apply(self, a: WeylElement) -> WeylElement:
        """Image of an element: each normal-form term maps to the ordered product
        of image powers, position block first."""
        if a.algebra != self.algebra:
            raise ValueError("element from the wrong algebra")
        alg = self.algebra
        powers: dict[tuple[int, int], WeylElement] = {}

        def image_power(gen_index: int, k: int) -> WeylElement:
            key = (gen_index, k)
            if key not in powers:
                if k == 0:
                    powers[key] = alg.one()
                else:
                    powers[key] = image_power(gen_index, k - 1) * self.images[gen_index - 1]
            return powers[key]

        out = alg.zero()
        for (g, d), c in a.sorted_terms():
            acc = alg.one()
            for i, e in enumerate(g, start=1):
                if e:
                    acc = acc * image_power(alg.n + i, e)
            for i, e in enumerate(d, start=1):
                if e:
                    acc = acc * image_power(i, e)
            out = out + acc.scale(c)
        return out

    def compose(self, other: "WeylEndo") -> "WeylEndo":
        """self after other; the result is re-verified on construction."""
        if self.algebra != other.algebra:
            raise ValueError("endomorphism mismatch")
        return WeylEndo(self.algebra, [self.apply(im) for im in other.images])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeylEndo)
            and self.algebra == other.algebra
            and self.images == other.images
        )

    def __repr__(self):
        return "WeylEndo(" + ", ".join(im.to_text() for im in self.images) + ")"


def inverse_degree_bound(endo: WeylEndo) -> int:
    """Degree bound for the inverse of a Weyl-algebra automorphism: deg^(2n-1)."""
    return endo.degree() ** (2 * endo.algebra.n - 1)


# -- embeddings of commutative polynomials ----------------------------------------


def from_position_poly(algebra: WeylAlgebra, f: Poly) -> WeylElement:
    """Embed f(x_1..x_n) using the position generators Y_{n+1}..Y_{2n}."""
    if f.nvars != algebra.n or f.ring != algebra.ring:
        raise ValueError("polynomial must have n variables over the algebra ring")
    zero = (0,) * algebra.n
    return WeylElement(algebra, {(exps, zero): c for exps, c in f.terms.items()})


def from_derivation_poly(algebra: WeylAlgebra, f: Poly) -> WeylElement:
    """Embed f(d_1..d_n) using the derivation generators Y_1..Y_n."""
    if f.nvars != algebra.n or f.ring != algebra.ring:
        raise ValueError("polynomial must have n variables over the algebra ring")
    zero = (0,) * algebra.n
    return WeylElement(algebra, {(zero, exps): c for exps, c in f.terms.items()})


# -- elementary automorphisms and test families ------------------------------------


def position_shear(algebra: WeylAlgebra, h: Poly) -> WeylEndo:
    """Y_i -> Y_i + dh/dx_i with h a polynomial in the position block."""
    images = []
    for i in range(1, algebra.n + 1):
        images.append(algebra.generator(i) + from_position_poly(algebra, h.partial(i)))
    for i in range(algebra.n + 1, algebra.ngens + 1):
        images.append(algebra.generator(i))
    return WeylEndo(algebra, images)


def derivation_shear(algebra: WeylAlgebra, h: Poly) -> WeylEndo:
    """Y_{n+i} -> Y_{n+i} + dh/dd_i with h a polynomial in the derivation block."""
    images = [algebra.generator(i) for i in range(1, algebra.n + 1)]
    for i in range(1, algebra.n + 1):
        images.append(algebra.generator(algebra.n + i) + from_derivation_poly(algebra, h.partial(i)))
    return WeylEndo(algebra, images)


def pair_swap(algebra: WeylAlgebra, i: int) -> WeylEndo:
    """Y_i -> Y_{i+n}, Y_{i+n} -> -Y_i on one pair."""
    if not 1 <= i <= algebra.n:
        raise IndexError(f"pair index {i} out of range 1..{algebra.n}")
    images = algebra.generators()
    images[i - 1] = algebra.generator(algebra.n + i)
    images[algebra.n + i - 1] = -algebra.generator(i)
    return WeylEndo(algebra, images)


def pair_scaling(algebra: WeylAlgebra, i: int, unit) -> WeylEndo:
    """Y_i -> u Y_i, Y_{i+n} -> u^{-1} Y_{i+n} for a unit u."""
    if not 1 <= i <= algebra.n:
        raise IndexError(f"pair index {i} out of range 1..{algebra.n}")
    images = algebra.generators()
    images[i - 1] = images[i - 1].scale(unit)
    images[algebra.n + i - 1] = images[algebra.n + i - 1].scale(algebra.ring.inv(unit))
    return WeylEndo(algebra, images)


def _random_poly_nvars(rng: random.Random, ring: Ring, nvars: int, max_degree: int) -> Poly:
    acc = Poly.zero(ring, nvars)
    for _ in range(rng.randint(1, 2)):
        exps = [0] * nvars
        for _ in range(rng.randint(1, max_degree)):
            exps[rng.randrange(nvars)] += 1
        if ring.kind == "Fp":
            c = rng.randint(1, ring.p - 1)
        elif ring.kind == "Q":
            c = ring.of_int(rng.choice([1, -1, 2, -2]))
        else:
            c = rng.choice([1, -1])
        acc = acc + Poly.monomial(ring, nvars, exps, c)
    return acc


def generate_weyl_automorphism(
    algebra: WeylAlgebra, seed: int, steps: int, max_degree: int | None = None
) -> WeylEndo:
    """Deterministic composition of shears, swaps and unit scalings.

    Every elementary factor is relation-verified on construction, and so is
    each partial composition; a step that would push the degree past
    max_degree is skipped.
    """
    rng = random.Random(seed)
    endo = WeylEndo.identity(algebra)
    done = 0
    attempts = 0
    while done < steps and attempts < 8 * steps + 8:
        attempts += 1
        kind = rng.choice(("shear", "dual-shear", "swap", "scale"))
        if kind == "shear":
            step = position_shear(algebra, _random_poly_nvars(rng, algebra.ring, algebra.n, 3))
        elif kind == "dual-shear":
            step = derivation_shear(algebra, _random_poly_nvars(rng, algebra.ring, algebra.n, 3))
        elif kind == "swap":
            step = pair_swap(algebra, rng.randint(1, algebra.n))
        else:
            if algebra.ring.kind == "Fp":
                u = rng.randint(1, algebra.ring.p - 1)
            elif algebra.ring.kind == "Q":
                u = algebra.ring.of_int(rng.choice([1, -1, 2]))
            else:
                u = rng.choice([1, -1])
            step = pair_scaling(algebra, rng.randint(1, algebra.n), u)
        candidate = step.compose(endo)
        if max_degree is not None and candidate.degree() > max_degree:
            continue
        endo = candidate
        done += 1
    return endo


def central_monomial(algebra: WeylAlgebra, g: Iterable[int], d: Iterable[int]) -> WeylElement:
    """Monomial with all exponents multiplied by p, hence central over F_p."""
    p = algebra.ring.characteristic()
    if p == 0:
        raise ValueError("central monomials of this shape need a prime field")
    return WeylElement(
        algebra,
        {(tuple(p * e for e in g), tuple(p * e for e in d)): algebra.ring.one()},
    )


def generate_central_perturbation(algebra: WeylAlgebra, seed: int) -> WeylEndo:
    """Y_i -> Y_i + (random central element); relation-preserving, usually
    not invertible."""
    p = algebra.ring.characteristic()
    if p == 0:
        raise ValueError("central perturbations need a prime field")
    rng = random.Random(seed)
    images = []
    for i in range(1, algebra.ngens + 1):
        im = algebra.generator(i)
        for _ in range(rng.randint(1, 2)):
            if rng.random() < 0.4:
                continue
            g = [0] * algebra.n
            d = [0] * algebra.n
            for _ in range(rng.randint(1, 2)):
                block = rng.choice((g, d))
                block[rng.randrange(algebra.n)] += 1
            if not any(g) and not any(d):
                continue
            c = rng.randint(1, p - 1)
            im = im + central_monomial(algebra, g, d).scale(c)
        images.append(im)
    return WeylEndo(algebra, images)


# -- center slice and inverse search -------------------------------------------------


@dataclass(frozen=True)
class CenterSliceReport:
    degree_cap: int
    dimension_found: int
    dimension_expected: int
    match: bool


def slice_monomials(algebra: WeylAlgebra, max_degree: int) -> list[TermKey]:
    n = algebra.n
    return [(exps[:n], exps[n:]) for exps in monomials_upto(2 * n, max_degree)]


def center_slice_check(algebra: WeylAlgebra, degree_cap: int) -> CenterSliceReport:
    """Compare the joint ad-kernel on the degree slice with the p-divisible span.

    The kernel of all 2n maps a -> [a, Y_i] restricted to elements of degree
    <= degree_cap is computed by Gaussian elimination; it must coincide with
    the span of the normal-form monomials whose exponents are all divisible
    by p.  Equality is certified by matching dimensions plus centrality of
    each expected basis monomial.
    """
    ring = algebra.ring
    p = ring.characteristic()
    if p == 0:
        raise ValueError("center slice check needs a prime field")
    basis = slice_monomials(algebra, degree_cap)
    expected = [key for key in basis if all(e % p == 0 for pair in key for e in pair)]

    columns: list[dict[TermKey, object]] = []
    row_keys: set[TermKey] = set()
    for key in basis:
        elem = WeylElement(algebra, {key: ring.one()})
        stacked: dict[TermKey, object] = {}
        for gi, gen in enumerate(algebra.generators()):
            c = commutator(elem, gen)
            for tkey, v in c.terms.items():
                stacked[(gi,) + tkey] = v  # tag rows by generator index
        columns.append(stacked)
        row_keys.update(stacked.keys())
    ordered_rows = sorted(row_keys)
    rows = [[col.get(rk, ring.zero()) for col in columns] for rk in ordered_rows]
    rank = matrix_rank(ring, rows) if rows else 0
    dimension_found = len(basis) - rank
    contained = all(
        is_central(WeylElement(algebra, {key: ring.one()})) for key in expected
    )
    return CenterSliceReport(
        degree_cap=degree_cap,
        dimension_found=dimension_found,
        dimension_expected=len(expected),
        match=contained and dimension_found == len(expected),
    )


def _monomial_image(endo: WeylEndo, key: TermKey, cache: dict) -> WeylElement:
    """Image of a normal-form monomial, peeling one letter at a time."""
    alg = endo.algebra
    if key in cache:
        return cache[key]
    g, d = key
    j = next((k for k in range(alg.n - 1, -1, -1) if d[k] > 0), None)
    if j is not None:
        pred = (g, tuple(e - (1 if k == j else 0) for k, e in enumerate(d)))
        out = _monomial_image(endo, pred, cache) * endo.images[j]
    else:
        j = next((k for k in range(alg.n - 1, -1, -1) if g[k] > 0), None)
        if j is None:
            out = alg.one()
        else:
            pred = (tuple(e - (1 if k == j else 0) for k, e in enumerate(g)), d)
            out = _monomial_image(endo, pred, cache) * endo.images[alg.n + j]
    cache[key] = out
    return out


def inverse_search(
    endo: WeylEndo, degree_cap: int, _cache: dict | None = None
) -> tuple["WeylEndo | None", int | None]:
    """Search for an inverse with image degrees <= degree_cap.

    Because the endomorphism is linear over the monomial basis, the equations
    endo(psi(Y_i)) = Y_i are linear in psi's unknown coefficients; they are
    solved degree cap by degree cap (the coefficient matrix for cap D is a
    sub-matrix of the one for D+1, so images are cached across caps).  A
    solution is relation-verified and checked two-sided before being
    returned as (inverse, degree at which it was found); exhaustion returns
    (None, None).
    """
    alg = endo.algebra
    ring = alg.ring
    if not ring.is_field():
        raise ValueError("inverse search needs field coefficients")
    cache = _cache if _cache is not None else {}
    targets = alg.generators()
    for cap in range(1, degree_cap + 1):
        basis = slice_monomials(alg, cap)
        columns = [_monomial_image(endo, key, cache).terms for key in basis]
        row_keys = sorted({rk for col in columns for rk in col} | {
            rk for t in targets for rk in t.terms
        })
        rows = [[col.get(rk, ring.zero()) for col in columns] for rk in row_keys]
        rhs = [[t.terms.get(rk, ring.zero()) for rk in row_keys] for t in targets]
        solutions = solve_many(ring, rows, rhs)
        if any(sol is None for sol in solutions):
            continue
        images = []
        for sol in solutions:
            im = alg.zero()
            for c, key in zip(sol, basis):
                if not ring.is_zero(c):
                    im = im + WeylElement(alg, {key: c})
            images.append(im)
        inverse = WeylEndo(alg, images)  # raises RelationError on a bad solve
        if not endo.compose(inverse).is_identity() or not inverse.compose(endo).is_identity():
            raise AssertionError("one-sided inverse failed the two-sided check (internal bug)")
        return inverse, cap
    return None, None
