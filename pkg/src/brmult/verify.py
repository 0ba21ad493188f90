"""Theorem-checking harness.

Each check computes the two sides of a provable identity along genuinely
independent code paths (direct quotient lengths versus filtration-factor
sums, product-submodule pure pipeline versus mixed pipeline) and demands
exact integer agreement. A failure carries a concrete witness: the grid
point, the degree, and both values.

The filtration identities are statements about bigraded pieces, so the
factor-sum checks compare the full per-base-degree dimension vectors of
both sides up to a stated bound. That keeps them meaningful even where
the total lengths are infinite (non-primary pairs, or slices of M below
the fiber shift, where the convention M_n = 0 for n < 0 turns a
denominator off entirely).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Optional

from .filtration import mixed_level
from .modules import (
    DEFAULT_CUTOFF,
    ModulePresentation,
    SliceSpan,
    slice_dims_up_to,
)
from .multiplicity import (
    MixedQuery,
    MultiplicityReport,
    PureQuery,
    br_multiplicities,
    mixed_br_multiplicities,
)
from .polyfit import DEFAULT_WINDOW, finite_difference, total_degree_estimate
from .rings import SubmoduleSpec, power_generators, product_generators

__all__ = [
    "VerificationReport",
    "check_mixed_operator_formula",
    "check_telescoping",
    "check_mixed_factor_sum",
    "check_degree_bound",
    "check_symmetry",
]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one identity check on one instance.

    ``left`` and ``right`` are parallel tuples of (label, integer) pairs;
    the check passes exactly when every pair of compared integers agrees.
    """

    check: str
    instance: str
    left: tuple
    right: tuple
    passed: bool
    witness: Optional[str] = None


def _verdict(check, instance, left, right):
    passed = len(left) == len(right) and all(
        a[1] == b[1] for a, b in zip(left, right)
    )
    witness = None
    if not passed:
        for a, b in zip(left, right):
            if a[1] != b[1]:
                witness = f"{a[0]}: left {a[1]} != right {b[1]}"
                break
    return VerificationReport(
        check, instance, tuple(left), tuple(right), passed, witness
    )


def _describe(module: ModulePresentation, subs) -> str:
    ring = module.ring
    ringpart = ",".join(ring.base)
    if ring.fiber:
        ringpart += ";" + ",".join(ring.fiber)
    gens = " vs ".join(
        "(" + ", ".join(str(g) for g in h.gens) + ")" for h in subs
    )
    return f"k[{ringpart}], rank {module.free.rank}, {gens}"


def check_mixed_operator_formula(
    module: ModulePresentation,
    h1: SubmoduleSpec,
    d1: int,
    h2: SubmoduleSpec,
    d2: int,
    r: Optional[int] = None,
    grid: Optional[int] = None,
    cutoff: int = DEFAULT_CUTOFF,
    window: int = DEFAULT_WINDOW,
    workers: int = 1,
) -> VerificationReport:
    """e-values of the product submodule against binomial sums of mixed ones.

    For every split n + k = r the pure multiplicity of H1*H2 in slot
    (n, k) must equal sum over i+j=n of C(n, i) times the mixed
    multiplicity in slot (i, j, k). Declared fiber degrees are validated
    up front; a mismatch is a precondition error, never a fail verdict.
    """
    mixed_q = MixedQuery(
        module, h1, h2, d1, d2, r=r, grid=grid, cutoff=cutoff,
        window=window, workers=workers,
    )
    product = product_generators(h1, h2)
    pure_q = PureQuery(
        module, product, d1 + d2, r=r, grid=grid, cutoff=cutoff,
        window=window, workers=workers,
    )
    mixed_rep = mixed_br_multiplicities(mixed_q)
    pure_rep = br_multiplicities(pure_q)
    rr = pure_rep.r
    left = []
    right = []
    for n in range(rr + 1):
        k = rr - n
        lhs = pure_rep.leading[(n, k)]
        rhs = sum(
            comb(n, i) * mixed_rep.leading[(i, n - i, k)]
            for i in range(n + 1)
        )
        left.append((f"e[{n},{k}](H1*H2)", lhs))
        right.append((f"sum C({n},i)*e[i,{n}-i,{k}]", rhs))
    return _verdict(
        "mixed-operator-formula", _describe(module, (h1, h2)), left, right
    )


@lru_cache(maxsize=None)
def _dims_cached(module, fiber_deg, top_items, bottom_items, max_degree):
    top = None if top_items is None else top_items
    return slice_dims_up_to(module, fiber_deg, top, bottom_items, max_degree)


def _vector_sum(vectors):
    return tuple(sum(col) for col in zip(*vectors))


def check_telescoping(
    module: ModulePresentation,
    h: SubmoduleSpec,
    d: Optional[int] = None,
    grid: int = 4,
    degree_bound: Optional[int] = None,
) -> VerificationReport:
    """Filtration factors of H^p at fiber slice pd+n sum to a quotient.

    The nu-th factor is H^nu M_{d(p-nu)+n} / H^(nu+1) M_{d(p-nu-1)+n} for
    nu = 0..p; their per-base-degree dimensions must sum to those of
    M_{pd+n} / H^(p+1) M_{n-d}, with M_m = 0 for m < 0. The identity is
    bigraded, so each base degree up to the bound is compared separately;
    the report rows carry the per-point sums over those degrees.
    """
    if d is None:
        d = h.fiber_degree
    if d != h.fiber_degree:
        raise ValueError(
            f"declared d = {d} but H has fiber degree {h.fiber_degree}"
        )
    left = []
    right = []
    first_bad = None
    for p in range(grid + 1):
        for n in range(grid + 1):
            fiber = d * p + n
            bound = (
                degree_bound
                if degree_bound is not None
                else fiber + p + n + 6
            )
            factors = []
            for nu in range(p + 1):
                top = tuple(
                    SliceSpan(g, d * (p - nu) + n)
                    for g in power_generators(h, nu).gens
                )
                bottom = tuple(
                    SliceSpan(g, d * (p - nu - 1) + n)
                    for g in power_generators(h, nu + 1).gens
                )
                factors.append(
                    _dims_cached(module, fiber, top, bottom, bound)
                )
            lhs_vec = _vector_sum(factors)
            bottom = tuple(
                SliceSpan(g, n - d) for g in power_generators(h, p + 1).gens
            )
            rhs_vec = _dims_cached(module, fiber, None, bottom, bound)
            left.append((f"(p,n)=({p},{n}) sum of factors", sum(lhs_vec)))
            right.append((f"(p,n)=({p},{n}) direct quotient", sum(rhs_vec)))
            if lhs_vec != rhs_vec and first_bad is None:
                for a, (lv, rv) in enumerate(zip(lhs_vec, rhs_vec)):
                    if lv != rv:
                        first_bad = (
                            f"(p,n)=({p},{n}) base degree {a}:"
                            f" factors {lv} != quotient {rv}"
                        )
                        break
    report = _verdict(
        "telescoping-factor-sum", _describe(module, (h,)), left, right
    )
    if first_bad is not None and report.passed:
        report = VerificationReport(
            report.check, report.instance, report.left, report.right,
            False, first_bad,
        )
    return report


def check_mixed_factor_sum(
    module: ModulePresentation,
    h1: SubmoduleSpec,
    d1: int,
    h2: SubmoduleSpec,
    d2: int,
    grid: int = 3,
    degree_bound: Optional[int] = None,
) -> VerificationReport:
    """Mixed filtration factors sum to the double-power quotient.

    At (p, q, n) the chain M = level_{p+q} >= ... >= level_0 =
    H1^p H2^q M followed by H1^(p+1) H2^(q+1) M_{n-d1-d2} telescopes, so
    the per-base-degree dimensions of the factors (level_nu / level_{nu-1}
    for nu = p+q..1, then level_0 / H1^(p+1) H2^(q+1)) must sum to those
    of M_{d1 p + d2 q + n} / H1^(p+1) H2^(q+1) M_{n-d1-d2}.
    """
    for h, dd in ((h1, d1), (h2, d2)):
        if dd != h.fiber_degree:
            raise ValueError(
                f"declared d = {dd} but generators have fiber degree"
                f" {h.fiber_degree}"
            )
    left = []
    right = []
    first_bad = None
    rng = range(grid + 1)
    for p in rng:
        for q in rng:
            for n in rng:
                fiber = d1 * p + d2 * q + n
                bound = (
                    degree_bound
                    if degree_bound is not None
                    else fiber + p + q + n + 6
                )
                deep = tuple(
                    SliceSpan(g, n - d1 - d2)
                    for g in product_generators(
                        power_generators(h1, p + 1),
                        power_generators(h2, q + 1),
                    ).gens
                )
                factors = []
                prev = deep
                for nu in range(p + q + 1):
                    top = mixed_level(h1, h2, p, q, nu).slice_items(fiber)
                    factors.append(
                        _dims_cached(module, fiber, top, prev, bound)
                    )
                    prev = top
                lhs_vec = _vector_sum(factors)
                rhs_vec = _dims_cached(module, fiber, None, deep, bound)
                tag = f"(p,q,n)=({p},{q},{n})"
                left.append((f"{tag} sum of factors", sum(lhs_vec)))
                right.append((f"{tag} direct quotient", sum(rhs_vec)))
                if lhs_vec != rhs_vec and first_bad is None:
                    for a, (lv, rv) in enumerate(zip(lhs_vec, rhs_vec)):
                        if lv != rv:
                            first_bad = (
                                f"{tag} base degree {a}: factors {lv}"
                                f" != quotient {rv}"
                            )
                            break
    report = _verdict(
        "mixed-factor-sum", _describe(module, (h1, h2)), left, right
    )
    if first_bad is not None and report.passed:
        report = VerificationReport(
            report.check, report.instance, report.left, report.right,
            False, first_bad,
        )
    return report


def check_degree_bound(report: MultiplicityReport) -> VerificationReport:
    """The table must be eventually polynomial of total degree at most r.

    The estimate is recomputed from the table, so a tampered or
    hand-assembled report cannot pass by assertion alone. Transient
    nonpolynomial behavior near the origin is allowed; on failure the
    witness is the deepest nonvanishing difference of total order r+1,
    i.e. one from the region where the table should already be
    polynomial.
    """
    table = report.table
    arity = table.arity
    r = report.r
    estimate = total_degree_estimate(table, report.leading.window)
    passed = estimate <= r
    witness = None
    if not passed:

        def alphas(total):
            if arity == 1:
                yield (total,)
                return
            for first in range(total, -1, -1):
                rest = total - first
                if arity == 2:
                    yield (first, rest)
                else:
                    for second in range(rest, -1, -1):
                        yield (first, second, rest - second)

        deepest = None
        for alpha in alphas(r + 1):
            diff = table
            for axis_pos, order in enumerate(alpha):
                for _ in range(order):
                    diff = finite_difference(diff, table.axes[axis_pos])
            for idx in range(len(diff.values) - 1, -1, -1):
                if diff.values[idx] == 0:
                    continue
                if deepest is None or idx > deepest[0]:
                    point = []
                    rem = idx
                    for stride in diff.strides():
                        point.append(rem // stride)
                        rem %= stride
                    point = tuple(
                        o + c for o, c in zip(diff.origin, point)
                    )
                    deepest = (idx, alpha, point, diff.values[idx])
                break
        if deepest is not None:
            _, alpha, point, value = deepest
            witness = (
                f"difference of order {alpha} at {point} is {value}, not 0"
            )
        else:
            witness = f"degree estimate {estimate} exceeds r = {r}"
    return VerificationReport(
        "degree-bound",
        f"table over axes {table.axes}, r = {r}",
        (("degree estimate", estimate),),
        (("declared r", r),),
        passed,
        witness,
    )


def check_symmetry(
    module: ModulePresentation,
    h1: SubmoduleSpec,
    d1: int,
    h2: SubmoduleSpec,
    d2: int,
    r: Optional[int] = None,
    grid: Optional[int] = None,
    cutoff: int = DEFAULT_CUTOFF,
    window: int = DEFAULT_WINDOW,
    workers: int = 1,
) -> VerificationReport:
    """Swapping the two submodules transposes the mixed e-values."""
    fwd = mixed_br_multiplicities(
        MixedQuery(
            module, h1, h2, d1, d2, r=r, grid=grid, cutoff=cutoff,
            window=window, workers=workers,
        )
    )
    rev = mixed_br_multiplicities(
        MixedQuery(
            module, h2, h1, d2, d1, r=r, grid=grid, cutoff=cutoff,
            window=window, workers=workers,
        )
    )
    left = []
    right = []
    for alpha, value in fwd.leading.entries:
        i, j, k = alpha
        left.append((f"e[{i},{j},{k}](H1,H2)", value))
        right.append((f"e[{j},{i},{k}](H2,H1)", rev.leading[(j, i, k)]))
    return _verdict(
        "mixed-symmetry", _describe(module, (h1, h2)), left, right
    )
