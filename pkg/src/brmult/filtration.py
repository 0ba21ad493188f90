"""Power and mixed-power filtrations and their graded factor lengths.

One submodule H of fiber degree d filters the slice M_{pd+n} through

    nu-th factor = H^nu M_{d(p-nu)+n} / H^(nu+1) M_{d(p-nu-1)+n},

for nu = 0..p, with M_j = 0 for j < 0. The factor lengths telescope: their
sum is the length of M_{pd+n} / H^(p+1) M_{n-d}.

Two submodules H1, H2 give the mixed filtration level

    level(p, q, nu) = sum of H1^i H2^j over i <= p, j <= q, i+j >= p+q-nu,

which is H1^p H2^q at nu = 0 and the unit ideal once nu >= p+q. The levels
nest, multiplying by H1 H2 drops a level back down, and dropping both p
and q by one absorbs a level. The factor lengths of the induced slice
filtration sum to the mixed quotient length at (p+1, q+1, n-d1-d2).

The local associated graded pieces live here too: for a base-only ring,
``assoc_graded_piece_dims`` measures I^i M / (I^(i+1) M + J I^i M) per
base degree, where J is the modulus ideal (typically I + m^(k+1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .modules import (
    DEFAULT_CUTOFF,
    LengthResult,
    ModulePresentation,
    SliceSpan,
    graded_slice_length,
    span_dim,
)
from .rings import (
    GradingError,
    Polynomial,
    SubmoduleSpec,
    power_generators,
    product_generators,
)

__all__ = [
    "MixedFiltrationLevel",
    "InclusionWitness",
    "mixed_level",
    "check_filtration_inclusions",
    "assoc_graded_piece_dims",
    "filtration_factor_lengths",
    "mixed_factor_lengths",
]


@dataclass(frozen=True)
class MixedFiltrationLevel:
    """Generators of one level of the mixed filtration of H1, H2."""

    h1: SubmoduleSpec
    h2: SubmoduleSpec
    p: int
    q: int
    nu: int
    gens: tuple

    def slice_items(self, target_fiber: int) -> tuple:
        """SliceSpan items whose spans land in the given fiber degree."""
        return tuple(
            SliceSpan(g, target_fiber - g.fiber_degree()) for g in self.gens
        )


def _dedup_monic_sorted(polys) -> tuple:
    seen = {}
    for g in polys:
        if not g.is_zero():
            gm = g.monic()
            seen[gm.terms] = gm
    return tuple(sorted(seen.values(), key=lambda g: g.terms, reverse=True))


@lru_cache(maxsize=None)
def _level_generators(
    h1: SubmoduleSpec, h2: SubmoduleSpec, p: int, q: int, min_total: int
) -> tuple:
    gens = []
    for i in range(p + 1):
        for j in range(q + 1):
            if i + j < min_total:
                continue
            gens.extend(
                product_generators(power_generators(h1, i), power_generators(h2, j)).gens
            )
    return _dedup_monic_sorted(gens)


def mixed_level(
    h1: SubmoduleSpec, h2: SubmoduleSpec, p: int, q: int, nu: int
) -> MixedFiltrationLevel:
    """The nu-th mixed filtration level between H1^p H2^q and the unit."""
    if h1.ring != h2.ring:
        raise GradingError("mixed level of submodules over different rings")
    if p < 0 or q < 0 or nu < 0:
        raise GradingError("mixed level indices must be nonnegative")
    gens = _level_generators(h1, h2, p, q, p + q - nu)
    return MixedFiltrationLevel(h1, h2, p, q, nu, gens)


def _ring_presentation(ring) -> ModulePresentation:
    from .modules import FreeModuleSpec

    return ModulePresentation(FreeModuleSpec(ring, ((0, 0),)))


def _ideal_items(gens, target_fiber: int):
    return [SliceSpan(g, target_fiber - g.fiber_degree()) for g in gens]


def _contains(ring_pres, span_gens, g: Polynomial) -> bool:
    """Is g in the bidegree piece spanned by span_gens at g's bidegree?"""
    deg = g.bidegree()
    items = _ideal_items(span_gens, deg[1])
    base = span_dim(ring_pres, deg, items)
    extended = span_dim(ring_pres, deg, items + [SliceSpan(g, 0)])
    return extended == base


@dataclass(frozen=True)
class InclusionWitness:
    """Outcome of one generator-level inclusion test."""

    part: str  # "a" or "b"
    nu: int
    passed: bool
    generator: Optional[str] = None
    bidegree: Optional[tuple] = None


def check_filtration_inclusions(
    h1: SubmoduleSpec, h2: SubmoduleSpec, p: int, q: int
) -> list:
    """Check the nesting laws of the mixed filtration at (p, q).

    For every nu in 1..p+q, (a) each generator of H1 H2 * level(nu) must
    lie in level(nu-1), and (b) each generator of level(nu) must lie in
    the (p-1, q-1) filtration's level nu-1; (b) is only meaningful when p
    and q are both positive and is skipped otherwise. Containment is
    tested as an exact rank condition at the generator's own bidegree,
    which suffices because the target spans are ideal pieces.
    """
    ring_pres = _ring_presentation(h1.ring)
    h1h2 = product_generators(h1, h2)
    results = []
    for nu in range(1, p + q + 1):
        level_nu = mixed_level(h1, h2, p, q, nu)
        lower = mixed_level(h1, h2, p, q, nu - 1)
        ok = True
        witness = None
        for g in _dedup_monic_sorted(
            a * b for a in h1h2.gens for b in level_nu.gens
        ):
            if not _contains(ring_pres, lower.gens, g):
                ok = False
                witness = g
                break
        results.append(
            InclusionWitness(
                "a",
                nu,
                ok,
                None if ok else str(witness),
                None if ok else witness.bidegree(),
            )
        )
        if p >= 1 and q >= 1:
            target = mixed_level(h1, h2, p - 1, q - 1, nu - 1)
            ok = True
            witness = None
            for g in level_nu.gens:
                if not _contains(ring_pres, target.gens, g):
                    ok = False
                    witness = g
                    break
            results.append(
                InclusionWitness(
                    "b",
                    nu,
                    ok,
                    None if ok else str(witness),
                    None if ok else witness.bidegree(),
                )
            )
    return results


def assoc_graded_piece_dims(
    ideal: SubmoduleSpec,
    pres: ModulePresentation,
    modulus: SubmoduleSpec,
    i_index: int,
    up_to_base_degree: Optional[int] = None,
    cutoff: int = DEFAULT_CUTOFF,
) -> LengthResult:
    """Per-base-degree dims of I^i M / (I^(i+1) M + modulus * I^i M).

    Base-only setting: the ring must have no fiber variables and both
    ideals fiber degree 0. The result carries the usual finiteness
    certificate; when ``up_to_base_degree`` is given the per-degree table
    is padded or truncated to that length (the total stays exact).
    """
    ring = pres.ring
    if ring.fiber:
        raise GradingError(
            "associated graded dims need a base-only ring (no fiber variables)"
        )
    if ideal.fiber_degree != 0 or modulus.fiber_degree != 0:
        raise GradingError("local queries need ideals of fiber degree 0")
    if i_index < 0:
        raise GradingError("negative filtration index")
    power_i = power_generators(ideal, i_index)
    power_i1 = power_generators(ideal, i_index + 1)
    mixed = product_generators(modulus, power_i)
    top = [SliceSpan(g, 0) for g in power_i.gens]
    bottom = [SliceSpan(g, 0) for g in power_i1.gens + mixed.gens]
    result = graded_slice_length(pres, 0, top, bottom, cutoff)
    if up_to_base_degree is None:
        return result
    wanted = up_to_base_degree + 1
    per = (result.per_degree + (0,) * wanted)[:wanted]
    return LengthResult(result.total, per, result.stop_degree)


def filtration_factor_lengths(
    pres: ModulePresentation,
    h: SubmoduleSpec,
    d: int,
    p: int,
    n: int,
    cutoff: int = DEFAULT_CUTOFF,
) -> tuple:
    """Lengths of the p+1 filtration factors of the slice at fiber pd+n.

    Factor nu is H^nu M_{d(p-nu)+n} / H^(nu+1) M_{d(p-nu-1)+n}; a negative
    slice index means the zero module. The factor totals sum to the
    length of M_{pd+n} / H^(p+1) M_{n-d}.
    """
    if d != h.fiber_degree:
        raise GradingError(
            f"declared fiber degree {d} but H has fiber degree {h.fiber_degree}"
        )
    nn = d * p + n
    out = []
    for nu in range(p + 1):
        top = [
            SliceSpan(g, d * (p - nu) + n) for g in power_generators(h, nu).gens
        ]
        bottom = [
            SliceSpan(g, d * (p - nu - 1) + n)
            for g in power_generators(h, nu + 1).gens
        ]
        out.append(graded_slice_length(pres, nn, top, bottom, cutoff))
    return tuple(out)


def mixed_factor_lengths(
    pres: ModulePresentation,
    h1: SubmoduleSpec,
    h2: SubmoduleSpec,
    p: int,
    q: int,
    n: int,
    cutoff: int = DEFAULT_CUTOFF,
) -> tuple:
    """Lengths of the mixed filtration factors of the slice at (p, q, n).

    Factor 0 is level(0) M / H1^(p+1) H2^(q+1) M_{n-d1-d2} and factor nu
    (nu >= 1) is level(nu) M / level(nu-1) M, all inside the slice of
    fiber degree d1 p + d2 q + n. Their totals sum to the mixed quotient
    length at (p+1, q+1, n-d1-d2).
    """
    d1, d2 = h1.fiber_degree, h2.fiber_degree
    nn = d1 * p + d2 * q + n
    bottom0 = product_generators(
        power_generators(h1, p + 1), power_generators(h2, q + 1)
    )
    out = [
        graded_slice_length(
            pres,
            nn,
            mixed_level(h1, h2, p, q, 0).slice_items(nn),
            [SliceSpan(g, n - d1 - d2) for g in bottom0.gens],
            cutoff,
        )
    ]
    for nu in range(1, p + q + 1):
        out.append(
            graded_slice_length(
                pres,
                nn,
                mixed_level(h1, h2, p, q, nu).slice_items(nn),
                mixed_level(h1, h2, p, q, nu - 1).slice_items(nn),
                cutoff,
            )
        )
    return tuple(out)
