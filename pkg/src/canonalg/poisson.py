"""The canonical Poisson algebra on 2n variables.

The bracket pairs variable i with variable i+n:

    {f, g} = sum_i (df/dX_i * dg/dX_{i+n} - df/dX_{i+n} * dg/dX_i)

A polynomial endomorphism is symplectic when it preserves every pairwise
bracket of the coordinates; the module also reports the jacobian-determinant
consequence (det = 1 whenever the map is symplectic and n! is a unit) and
provides a composable family of elementary symplectomorphisms for test data.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .poly import Poly, PolyEndo, PolyMatrix
from .rings import Ring


@dataclass(frozen=True)
class PoissonContext:
    """Coefficient ring plus the pairing index n (so 2n variables)."""

    ring: Ring
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("index n must be >= 1")

    @property
    def nvars(self) -> int:
        return 2 * self.n


def poisson_bracket(ctx: PoissonContext, f: Poly, g: Poly) -> Poly:
    if f.nvars != ctx.nvars or g.nvars != ctx.nvars or f.ring != ctx.ring:
        raise ValueError("bracket operands must live in 2n variables over the context ring")
    acc = Poly.zero(ctx.ring, ctx.nvars)
    for i in range(1, ctx.n + 1):
        acc = acc + f.partial(i) * g.partial(i + ctx.n) - f.partial(i + ctx.n) * g.partial(i)
    return acc


def bracket_matrix(ctx: PoissonContext, endo: PolyEndo) -> PolyMatrix:
    """All pairwise brackets of the images, antisymmetric by construction."""
    if endo.nvars != ctx.nvars or endo.ring != ctx.ring:
        raise ValueError("endomorphism does not match the context")
    m = ctx.nvars
    zero = Poly.zero(ctx.ring, m)
    rows = [[zero] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            b = poisson_bracket(ctx, endo.images[i], endo.images[j])
            rows[i][j] = b
            rows[j][i] = -b
    return PolyMatrix(ctx.ring, m, rows)


def canonical_bracket_matrix(ctx: PoissonContext) -> PolyMatrix:
    return bracket_matrix(ctx, PolyEndo.identity(ctx.ring, ctx.nvars))


def is_symplectic(ctx: PoissonContext, endo: PolyEndo) -> bool:
    """Bracket preservation over all coordinate pairs 1 <= i < j <= 2n."""
    return bracket_matrix(ctx, endo) == canonical_bracket_matrix(ctx)


@dataclass(frozen=True)
class SymplecticReport:
    symplectic: bool
    n_factorial_unit: bool
    det: Poly
    det_is_one: bool

    @property
    def assertion_violated(self) -> bool:
        """Symplectic with n! a unit forces det = 1; anything else is a bug witness."""
        return self.symplectic and self.n_factorial_unit and not self.det_is_one


def check_symplectic(ctx: PoissonContext, endo: PolyEndo) -> SymplecticReport:
    """Symplectic test plus the jacobian determinant and its unit-n! consequence.

    When n! is not a unit the determinant is still reported but nothing is
    asserted about it.
    """
    det = endo.jacobian().determinant()
    return SymplecticReport(
        symplectic=is_symplectic(ctx, endo),
        n_factorial_unit=ctx.ring.factorial_is_unit(ctx.n),
        det=det,
        det_is_one=det == Poly.one(ctx.ring, ctx.nvars),
    )


# -- elementary symplectomorphisms ----------------------------------------------


def _check_block(ctx: PoissonContext, h: Poly, lo: int, hi: int):
    """h may only involve variables with 1-based index in [lo, hi]."""
    for exps in h.terms:
        for k, e in enumerate(exps, start=1):
            if e and not lo <= k <= hi:
                raise ValueError(f"generator polynomial touches X{k} outside block {lo}..{hi}")


def coordinate_shear(ctx: PoissonContext, h: Poly) -> PolyEndo:
    """X_i -> X_i + dh/dX_{i+n} with h in the second block X_{n+1}..X_{2n} only."""
    _check_block(ctx, h, ctx.n + 1, 2 * ctx.n)
    images = []
    for i in range(1, ctx.n + 1):
        images.append(Poly.variable(ctx.ring, ctx.nvars, i) + h.partial(i + ctx.n))
    for i in range(ctx.n + 1, 2 * ctx.n + 1):
        images.append(Poly.variable(ctx.ring, ctx.nvars, i))
    return PolyEndo(ctx.ring, ctx.nvars, images)


def momentum_shear(ctx: PoissonContext, h: Poly) -> PolyEndo:
    """X_{n+i} -> X_{n+i} + dh/dX_i with h in the first block X_1..X_n only."""
    _check_block(ctx, h, 1, ctx.n)
    images = [Poly.variable(ctx.ring, ctx.nvars, i) for i in range(1, ctx.n + 1)]
    for i in range(1, ctx.n + 1):
        images.append(Poly.variable(ctx.ring, ctx.nvars, i + ctx.n) + h.partial(i))
    return PolyEndo(ctx.ring, ctx.nvars, images)


def pair_swap(ctx: PoissonContext, i: int) -> PolyEndo:
    """X_i -> X_{i+n}, X_{i+n} -> -X_i on one pair, identity elsewhere."""
    if not 1 <= i <= ctx.n:
        raise IndexError(f"pair index {i} out of range 1..{ctx.n}")
    images = [Poly.variable(ctx.ring, ctx.nvars, k) for k in range(1, ctx.nvars + 1)]
    images[i - 1] = Poly.variable(ctx.ring, ctx.nvars, i + ctx.n)
    images[i + ctx.n - 1] = -Poly.variable(ctx.ring, ctx.nvars, i)
    return PolyEndo(ctx.ring, ctx.nvars, images)


def pair_scaling(ctx: PoissonContext, i: int, unit) -> PolyEndo:
    """X_i -> u X_i, X_{i+n} -> u^{-1} X_{i+n} for a unit u."""
    if not 1 <= i <= ctx.n:
        raise IndexError(f"pair index {i} out of range 1..{ctx.n}")
    images = [Poly.variable(ctx.ring, ctx.nvars, k) for k in range(1, ctx.nvars + 1)]
    images[i - 1] = images[i - 1].scale(unit)
    images[i + ctx.n - 1] = images[i + ctx.n - 1].scale(ctx.ring.inv(unit))
    return PolyEndo(ctx.ring, ctx.nvars, images)


def _random_block_poly(rng: random.Random, ctx: PoissonContext, lo: int, hi: int, max_degree: int) -> Poly:
    ring = ctx.ring
    acc = Poly.zero(ring, ctx.nvars)
    for _ in range(rng.randint(1, 2)):
        exps = [0] * ctx.nvars
        deg = rng.randint(1, max_degree)
        for _ in range(deg):
            exps[rng.randint(lo, hi) - 1] += 1
        c = _random_unit(rng, ring)
        acc = acc + Poly.monomial(ring, ctx.nvars, exps, c)
    return acc


def _random_unit(rng: random.Random, ring: Ring):
    if ring.kind == "Fp":
        return rng.randint(1, ring.p - 1)
    if ring.kind == "Q":
        return ring.of_int(rng.choice([1, -1, 2, -2, 3]))
    return ring.of_int(rng.choice([1, -1]))


def generate_symplectomorphism(
    ctx: PoissonContext, seed: int, steps: int, max_degree: int | None = None
) -> PolyEndo:
    """Deterministic composition of elementary symplectomorphisms.

    Draws shears (both blocks), pair swaps and unit scalings from the seed;
    a step whose composition would exceed max_degree is skipped.  The result
    is verified symplectic before being returned.
    """
    rng = random.Random(seed)
    endo = PolyEndo.identity(ctx.ring, ctx.nvars)
    done = 0
    attempts = 0
    while done < steps and attempts < 8 * steps + 8:
        attempts += 1
        kind = rng.choice(("shear", "dual-shear", "swap", "scale"))
        if kind == "shear":
            step = coordinate_shear(ctx, _random_block_poly(rng, ctx, ctx.n + 1, 2 * ctx.n, 3))
        elif kind == "dual-shear":
            step = momentum_shear(ctx, _random_block_poly(rng, ctx, 1, ctx.n, 3))
        elif kind == "swap":
            step = pair_swap(ctx, rng.randint(1, ctx.n))
        else:
            step = pair_scaling(ctx, rng.randint(1, ctx.n), _random_unit(rng, ctx.ring))
        candidate = step.compose(endo)
        if max_degree is not None and candidate.degree() > max_degree:
            continue
        endo = candidate
        done += 1
    if not is_symplectic(ctx, endo):
        raise AssertionError("generator produced a non-symplectic map (internal bug)")
    return endo
