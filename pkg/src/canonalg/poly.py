"""Sparse multivariate polynomial arithmetic over an exact coefficient ring.

A polynomial in m variables is a finite map from exponent vectors (length-m
tuples of naturals) to nonzero ring elements.  Term iteration, printing and
matrix assembly all use one deterministic graded-lexicographic order so that
identical inputs give byte-identical output.

The module also provides polynomial maps (algebra endomorphisms given by
their images of the variables), jacobian matrices, and division-free
determinants -- the commutative substrate everything else builds on.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .rings import Ring

Exponents = tuple[int, ...]


def grlex_key(exps: Exponents):
    return (sum(exps), exps)


def compositions(total: int, k: int) -> Iterator[Exponents]:
    """All exponent vectors of length k with the given total, first entry largest."""
    if k == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, k - 1):
            yield (first,) + rest


def monomials_upto(nvars: int, max_degree: int) -> list[Exponents]:
    """Exponent vectors of total degree <= max_degree, graded order, ascending."""
    out: list[Exponents] = []
    for d in range(max_degree + 1):
        out.extend(compositions(d, nvars))
    return out


def monomial_count(nvars: int, max_degree: int) -> int:
    """Number of monomials of degree <= max_degree in nvars variables."""
    from math import comb

    return comb(max_degree + nvars, nvars)


class Poly:
    """Sparse polynomial: ``terms`` maps exponent tuples to nonzero coefficients.

    Values are immutable by convention; every operation returns a fresh
    polynomial with zero terms pruned.
    """

    __slots__ = ("ring", "nvars", "terms")

    def __init__(self, ring: Ring, nvars: int, terms: dict | None = None):
        if nvars < 0:
            raise ValueError("nvars must be >= 0")
        self.ring = ring
        self.nvars = nvars
        clean: dict[Exponents, object] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has length != {nvars}")
            if not ring.is_zero(c):
                clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, ring: Ring, nvars: int) -> "Poly":
        return cls(ring, nvars, {})

    @classmethod
    def const(cls, ring: Ring, nvars: int, value) -> "Poly":
        return cls(ring, nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, ring: Ring, nvars: int) -> "Poly":
        return cls.const(ring, nvars, ring.one())

    @classmethod
    def variable(cls, ring: Ring, nvars: int, i: int) -> "Poly":
        """The i-th variable, 1-based."""
        if not 1 <= i <= nvars:
            raise IndexError(f"variable index {i} out of range 1..{nvars}")
        exps = [0] * nvars
        exps[i - 1] = 1
        return cls(ring, nvars, {tuple(exps): ring.one()})

    @classmethod
    def monomial(cls, ring: Ring, nvars: int, exps: Iterable[int], coeff=None) -> "Poly":
        c = ring.one() if coeff is None else coeff
        return cls(ring, nvars, {tuple(exps): c})

    # -- basic queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        """The coefficient of the empty monomial (0 if absent)."""
        return self.terms.get((0,) * self.nvars, self.ring.zero())

    def degree(self) -> int:
        """Total degree; undefined (error) for the zero polynomial."""
        if not self.terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(sum(e) for e in self.terms)

    def sorted_terms(self) -> list[tuple[Exponents, object]]:
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def coeff(self, exps: Exponents):
        return self.terms.get(tuple(exps), self.ring.zero())

    def _check_compatible(self, other: "Poly"):
        if self.ring != other.ring or self.nvars != other.nvars:
            raise ValueError("polynomials live over different rings or variable counts")

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check_compatible(other)
        ring = self.ring
        out = dict(self.terms)
        for exps, c in other.terms.items():
            acc = ring.add(out.get(exps, ring.zero()), c)
            if ring.is_zero(acc):
                out.pop(exps, None)
            else:
                out[exps] = acc
        return Poly(ring, self.nvars, out)

    def __neg__(self) -> "Poly":
        ring = self.ring
        return Poly(ring, self.nvars, {e: ring.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check_compatible(other)
        ring = self.ring
        out: dict[Exponents, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc = ring.add(out.get(e, ring.zero()), ring.mul(c1, c2))
                if ring.is_zero(acc):
                    out.pop(e, None)
                else:
                    out[e] = acc
        return Poly(ring, self.nvars, out)

    def scale(self, c) -> "Poly":
        ring = self.ring
        return Poly(ring, self.nvars, {e: ring.mul(c, v) for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.ring, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.ring == other.ring
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly({self.ring}, {self.to_text()})"

    # -- calculus and substitution ------------------------------------------------

    def partial(self, i: int) -> "Poly":
        """Formal partial derivative with respect to the i-th variable (1-based)."""
        if not 1 <= i <= self.nvars:
            raise IndexError(f"variable index {i} out of range 1..{self.nvars}")
        ring = self.ring
        out: dict[Exponents, object] = {}
        for exps, c in self.terms.items():
            e = exps[i - 1]
            if e == 0:
                continue
            factor = ring.mul(c, ring.of_int(e))
            if ring.is_zero(factor):
                continue  # characteristic kills the term
            new = list(exps)
            new[i - 1] = e - 1
            key = tuple(new)
            acc = ring.add(out.get(key, ring.zero()), factor)
            if ring.is_zero(acc):
                out.pop(key, None)
            else:
                out[key] = acc
        return Poly(ring, self.nvars, out)

    def frobenius(self) -> "Poly":
        """p-th power over F_p, one term at a time: c*X^a -> c*X^(p*a)."""
        p = self.ring.characteristic()
        if p == 0:
            raise ValueError("frobenius power needs a prime-field coefficient ring")
        return Poly(self.ring, self.nvars, {tuple(p * e for e in exps): c for exps, c in self.terms.items()})

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Evaluate at the given variable images: f(images[0], ..., images[m-1])."""
        if len(images) != self.nvars:
            raise ValueError("image count does not match variable count")
        for im in images:
            self._check_compatible(im)
        cache: dict[Exponents, Poly] = {}
        result = Poly.zero(self.ring, self.nvars)
        for exps, c in self.sorted_terms():
            result = result + _monomial_image(exps, images, cache).scale(c)
        return result

    def evaluate(self, point: Sequence):
        """Value at a point given as ring elements, one per variable."""
        if len(point) != self.nvars:
            raise ValueError("point arity does not match variable count")
        ring = self.ring
        acc = ring.zero()
        for exps, c in self.terms.items():
            v = c
            for e, a in zip(exps, point):
                for _ in range(e):
                    v = ring.mul(v, a)
            acc = ring.add(acc, v)
        return acc

    def to_text(self, names: Sequence[str] | None = None) -> str:
        return poly_to_text(self, names)


def _monomial_image(exps: Exponents, images: Sequence[Poly], cache: dict) -> Poly:
    """Image of X^exps under the map, built by peeling one variable at a time."""
    ring, nvars = images[0].ring, images[0].nvars
    todo = [exps]
    while todo:
        cur = todo[-1]
        if cur in cache:
            todo.pop()
            continue
        j = next((k for k in range(nvars - 1, -1, -1) if cur[k] > 0), None)
        if j is None:
            cache[cur] = Poly.one(ring, nvars)
            todo.pop()
            continue
        pred = list(cur)
        pred[j] -= 1
        pred = tuple(pred)
        if pred in cache:
            cache[cur] = cache[pred] * images[j]
            todo.pop()
        else:
            todo.append(pred)
    return cache[exps]


class PolyEndo:
    """Algebra endomorphism of the polynomial ring, given by variable images."""

    __slots__ = ("ring", "nvars", "images")

    def __init__(self, ring: Ring, nvars: int, images: Sequence[Poly]):
        if len(images) != nvars:
            raise ValueError(f"need {nvars} images, got {len(images)}")
        for im in images:
            if im.ring != ring or im.nvars != nvars:
                raise ValueError("image over wrong ring or variable count")
        self.ring = ring
        self.nvars = nvars
        self.images = tuple(images)

    @classmethod
    def identity(cls, ring: Ring, nvars: int) -> "PolyEndo":
        return cls(ring, nvars, [Poly.variable(ring, nvars, i) for i in range(1, nvars + 1)])

    def is_identity(self) -> bool:
        return self == PolyEndo.identity(self.ring, self.nvars)

    def degree(self) -> int:
        """Max total degree over the nonzero images; rejects the zero map."""
        degs = [im.degree() for im in self.images if not im.is_zero()]
        if not degs:
            raise ValueError("degree of the all-zero endomorphism is undefined")
        return max(degs)

    def apply(self, f: Poly) -> Poly:
        return f.substitute(self.images)

    def compose(self, other: "PolyEndo") -> "PolyEndo":
        """self after other: (self . other)(X_i) = self(other(X_i))."""
        if self.ring != other.ring or self.nvars != other.nvars:
            raise ValueError("endomorphism mismatch")
        return PolyEndo(self.ring, self.nvars, [im.substitute(self.images) for im in other.images])

    def jacobian(self) -> "PolyMatrix":
        rows = [[im.partial(j) for j in range(1, self.nvars + 1)] for im in self.images]
        return PolyMatrix(self.ring, self.nvars, rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyEndo)
            and self.ring == other.ring
            and self.nvars == other.nvars
            and self.images == other.images
        )

    def __repr__(self):
        return "PolyEndo(" + ", ".join(im.to_text() for im in self.images) + ")"


class PolyMatrix:
    """Rectangular grid of polynomials over one ring and variable count."""

    __slots__ = ("ring", "nvars", "rows")

    def __init__(self, ring: Ring, nvars: int, rows: Sequence[Sequence[Poly]]):
        width = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != width:
                raise ValueError("ragged matrix")
            for entry in row:
                if entry.ring != ring or entry.nvars != nvars:
                    raise ValueError("matrix entry over wrong ring or variable count")
        self.ring = ring
        self.nvars = nvars
        self.rows = tuple(tuple(row) for row in rows)

    @classmethod
    def identity(cls, ring: Ring, nvars: int, size: int) -> "PolyMatrix":
        one = Poly.one(ring, nvars)
        zero = Poly.zero(ring, nvars)
        return cls(ring, nvars, [[one if i == j else zero for j in range(size)] for i in range(size)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def entry(self, i: int, j: int) -> Poly:
        return self.rows[i][j]

    def matmul(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ValueError("matrix shape mismatch")
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = Poly.zero(self.ring, self.nvars)
                for k in range(self.ncols):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, self.nvars, out)

    def map_entries(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.nvars, [[fn(e) for e in row] for row in self.rows])

    def determinant(self) -> Poly:
        """Cofactor expansion along the first row; division-free, sizes <= 8."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return _det(self.rows, self.ring, self.nvars)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyMatrix)
            and self.ring == other.ring
            and self.nvars == other.nvars
            and self.rows == other.rows
        )

    def __repr__(self):
        body = "; ".join(", ".join(e.to_text() for e in row) for row in self.rows)
        return f"PolyMatrix[{body}]"


def _det(rows, ring: Ring, nvars: int) -> Poly:
    size = len(rows)
    if size == 0:
        return Poly.one(ring, nvars)
    if size == 1:
        return rows[0][0]
    acc = Poly.zero(ring, nvars)
    for j in range(size):
        entry = rows[0][j]
        if entry.is_zero():
            continue
        minor = [[row[k] for k in range(size) if k != j] for row in rows[1:]]
        cof = entry * _det(minor, ring, nvars)
        acc = acc + (cof if j % 2 == 0 else -cof)
    return acc


# -- plain-text rendering (shared CLI grammar) ---------------------------------


def default_names(nvars: int, letter: str = "X") -> list[str]:
    return [f"{letter}{i}" for i in range(1, nvars + 1)]


def _render_coeff(ring: Ring, c) -> tuple[bool, str]:
    """Split a coefficient into (is_negative, magnitude_text)."""
    if ring.kind == "Fp":
        return False, str(c)
    neg = c < 0
    return neg, str(-c if neg else c)


def poly_to_text(f: Poly, names: Sequence[str] | None = None) -> str:
    """Grammar-compatible rendering: graded order, explicit ``*``, ``^`` powers."""
    if f.is_zero():
        return "0"
    names = list(names) if names is not None else default_names(f.nvars)
    pieces = []
    for idx, (exps, c) in enumerate(f.sorted_terms()):
        neg, mag = _render_coeff(f.ring, c)
        vars_part = "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(names, exps) if e > 0
        )
        if not vars_part:
            body = mag
        elif mag == "1":
            body = vars_part
        else:
            body = f"{mag}*{vars_part}"
        if idx == 0:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)
