"""Bigraded polynomial rings k[x_1..x_s; y_0..y_e] over an exact field.

The base variables carry bidegree (1, 0) and the fiber variables (0, 1).
Monomials are exponent tuples of length s + f, polynomials are immutable
sorted term lists, and every graded piece has a canonical ordered monomial
basis (graded-lexicographic, base variables before fiber variables).

Examples
========

>>> R = RingSpec(QQ, ("x", "y"), ("T",))
>>> x, y, T = R.gens()
>>> (x + y) * T
Polynomial(x*T + y*T)
>>> [R.monomial_str(m) for m in monomial_basis(R, (2, 1))]
['x^2*T', 'x*y*T', 'y^2*T']
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .fields import QQ, FieldError

__all__ = [
    "GradingError",
    "RingSpec",
    "Polynomial",
    "SubmoduleSpec",
    "monomial_basis",
    "power_generators",
    "product_generators",
]


class GradingError(ValueError):
    pass


@dataclass(frozen=True)
class RingSpec:
    """A bigraded polynomial ring: field, base variables, fiber variables."""

    field: object
    base: tuple
    fiber: tuple

    def __post_init__(self):
        names = tuple(self.base) + tuple(self.fiber)
        if len(names) == 0:
            raise GradingError("ring needs at least one variable")
        if len(set(names)) != len(names):
            raise GradingError(f"duplicate variable names in {names}")
        for name in names:
            if not (name and name[0].isalpha() and name.replace("_", "").isalnum()):
                raise GradingError(f"bad variable name {name!r}")
        object.__setattr__(self, "base", tuple(self.base))
        object.__setattr__(self, "fiber", tuple(self.fiber))

    @property
    def nvars(self) -> int:
        return len(self.base) + len(self.fiber)

    @property
    def names(self) -> tuple:
        return self.base + self.fiber

    def bidegree_of_monomial(self, mono) -> tuple[int, int]:
        s = len(self.base)
        return (sum(mono[:s]), sum(mono[s:]))

    def monomial_str(self, mono) -> str:
        parts = []
        for name, e in zip(self.names, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def monomial(self, mono, coeff=1) -> "Polynomial":
        if len(mono) != self.nvars:
            raise GradingError(f"exponent tuple {mono} has wrong length")
        if any(e < 0 for e in mono):
            raise GradingError(f"negative exponent in {mono}")
        c = self.field.coerce(coeff)
        if self.field.is_zero(c):
            return Polynomial(self, ())
        return Polynomial(self, ((tuple(mono), c),))

    def gen(self, name) -> "Polynomial":
        idx = self.names.index(name)
        expo = tuple(1 if i == idx else 0 for i in range(self.nvars))
        return self.monomial(expo)

    def gens(self) -> tuple:
        return tuple(self.gen(name) for name in self.names)

    @property
    def one(self) -> "Polynomial":
        return self.monomial((0,) * self.nvars)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def __repr__(self) -> str:
        return f"{self.field!r}[{','.join(self.base)};{','.join(self.fiber)}]"


@dataclass(frozen=True)
class Polynomial:
    """Immutable polynomial: term tuple sorted by descending monomial order.

    All arithmetic stays in the ring's field. Polynomials hash, so they can
    key caches of power and product generator sets.
    """

    ring: RingSpec
    terms: tuple  # ((exponent tuple, scalar), ...) with scalars nonzero

    @classmethod
    def from_dict(cls, ring, coeffs) -> "Polynomial":
        items = []
        for mono, c in coeffs.items():
            c = ring.field.coerce(c)
            if not ring.field.is_zero(c):
                items.append((tuple(mono), c))
        items.sort(key=lambda t: t[0], reverse=True)
        return cls(ring, tuple(items))

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading_monomial(self):
        if not self.terms:
            raise GradingError("zero polynomial has no leading monomial")
        return self.terms[0][0]

    def is_bihomogeneous(self) -> bool:
        degs = {self.ring.bidegree_of_monomial(m) for m, _ in self.terms}
        return len(degs) <= 1

    def bidegree(self) -> tuple[int, int]:
        """Bidegree of a nonzero bihomogeneous polynomial.

        Raises GradingError naming an offending term when the terms do not
        all share one bidegree.
        """
        if not self.terms:
            raise GradingError("zero polynomial has no bidegree")
        deg = self.ring.bidegree_of_monomial(self.terms[0][0])
        for m, _ in self.terms[1:]:
            if self.ring.bidegree_of_monomial(m) != deg:
                raise GradingError(
                    f"mixed bidegrees in one polynomial: term {self.ring.monomial_str(m)}"
                    f" has bidegree {self.ring.bidegree_of_monomial(m)}, expected {deg}"
                )
        return deg

    def fiber_degree(self) -> int:
        return self.bidegree()[1]

    def monic(self) -> "Polynomial":
        """Scale so the leading coefficient is 1 (canonical up to scalars)."""
        if not self.terms:
            return self
        f = self.ring.field
        lead = self.terms[0][1]
        if lead == f.one:
            return self
        inv = f.div(f.one, lead)
        return Polynomial(self.ring, tuple((m, f.mul(inv, c)) for m, c in self.terms))

    def _check_ring(self, other) -> None:
        if self.ring != other.ring:
            raise GradingError(f"mixed rings {self.ring!r} and {other.ring!r}")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.monomial((0,) * self.ring.nvars, other)
        self._check_ring(other)
        f = self.ring.field
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = f.add(acc.get(m, f.zero), c)
        return Polynomial.from_dict(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, tuple((m, f.neg(c)) for m, c in self.terms))

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.monomial((0,) * self.ring.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            f = self.ring.field
            c = f.coerce(other)
            if f.is_zero(c):
                return self.ring.zero
            return Polynomial(self.ring, tuple((m, f.mul(c, cc)) for m, cc in self.terms))
        self._check_ring(other)
        f = self.ring.field
        acc = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = tuple(a + b for a, b in zip(m1, m2))
                prev = acc.get(m)
                acc[m] = f.mul(c1, c2) if prev is None else f.add(prev, f.mul(c1, c2))
        return Polynomial.from_dict(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise GradingError("negative power of a polynomial")
        result = self.ring.one
        square = self
        while n:
            if n & 1:
                result = result * square
            n >>= 1
            if n:
                square = square * square
        return result

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            ms = self.ring.monomial_str(m)
            if c == self.ring.field.one and ms != "1":
                parts.append(ms)
            elif ms == "1":
                parts.append(self.ring.field.to_str(c))
            else:
                parts.append(f"{self.ring.field.to_str(c)}*{ms}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative ints summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def monomial_basis(ring: RingSpec, bidegree) -> tuple:
    """Ordered monomial basis of the ring's piece of the given bidegree.

    Within a fixed bidegree the graded-lexicographic order (base block
    first) is descending lexicographic order on exponent tuples.
    """
    a, n = bidegree
    if a < 0 or n < 0:
        return ()
    basis = [
        bp + fp
        for bp in _compositions(a, len(ring.base))
        for fp in _compositions(n, len(ring.fiber))
    ]
    basis.sort(reverse=True)
    return tuple(basis)


@lru_cache(maxsize=None)
def _basis_index(ring: RingSpec, bidegree) -> dict:
    return {m: i for i, m in enumerate(monomial_basis(ring, bidegree))}


@dataclass(frozen=True)
class SubmoduleSpec:
    """Generators of H as a submodule of the fiber-degree-d part of the ring.

    Every generator is bihomogeneous with fiber degree exactly d. Base
    degrees may differ between generators, and the generator list is kept
    as given (no minimalization) apart from dropping zero entries.
    """

    ring: RingSpec
    fiber_degree: int
    gens: tuple

    def __post_init__(self):
        if self.fiber_degree < 0:
            raise GradingError("negative fiber degree")
        kept = []
        for g in self.gens:
            if g.ring != self.ring:
                raise GradingError("generator from a different ring")
            if g.is_zero():
                continue
            first_fdeg = self.ring.bidegree_of_monomial(g.terms[0][0])[1]
            for m, _ in g.terms[1:]:
                if self.ring.bidegree_of_monomial(m)[1] != first_fdeg:
                    raise GradingError(
                        "mixed fiber degrees in one polynomial:"
                        f" term {self.ring.monomial_str(m)} in {g}"
                    )
            g.bidegree()  # also rejects mixed base degrees
            if g.fiber_degree() != self.fiber_degree:
                raise GradingError(
                    f"generator {g} has fiber degree {g.fiber_degree()},"
                    f" declared {self.fiber_degree}"
                )
            kept.append(g)
        object.__setattr__(self, "gens", tuple(kept))

    def is_unit(self) -> bool:
        one = self.ring.one
        return any(g.monic() == one for g in self.gens)

    def __repr__(self) -> str:
        inner = ", ".join(str(g) for g in self.gens) or "0"
        return f"SubmoduleSpec(d={self.fiber_degree}, <{inner}>)"


def _dedup_monic(ring: RingSpec, polys) -> tuple:
    seen = {}
    for g in polys:
        if g.is_zero():
            continue
        gm = g.monic()
        seen[gm.terms] = gm
    out = list(seen.values())
    out.sort(key=lambda g: g.terms, reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def power_generators(h: SubmoduleSpec, p: int) -> SubmoduleSpec:
    """Generators of H^p: all p-fold products of generators of H.

    p = 0 gives the unit submodule <1> at fiber degree 0. Scalar-multiple
    duplicates are removed by normalizing each product to be monic.
    """
    if p < 0:
        raise GradingError("negative power of a submodule")
    if p == 0:
        return SubmoduleSpec(h.ring, 0, (h.ring.one,))
    products = []
    for combo in itertools.combinations_with_replacement(h.gens, p):
        prod = combo[0]
        for g in combo[1:]:
            prod = prod * g
        products.append(prod)
    return SubmoduleSpec(h.ring, p * h.fiber_degree, _dedup_monic(h.ring, products))


@lru_cache(maxsize=None)
def product_generators(h1: SubmoduleSpec, h2: SubmoduleSpec) -> SubmoduleSpec:
    """Generators of the product H1*H2: pairwise generator products."""
    if h1.ring != h2.ring:
        raise GradingError("product of submodules over different rings")
    products = [g1 * g2 for g1 in h1.gens for g2 in h2.gens]
    return SubmoduleSpec(
        h1.ring, h1.fiber_degree + h2.fiber_degree, _dedup_monic(h1.ring, products)
    )


def coerce_field_check(ring: RingSpec, scalar):
    try:
        return ring.field.coerce(scalar)
    except FieldError:
        raise


# re-exported so callers building rings do not need brmult.fields for Q
QQ = QQ
