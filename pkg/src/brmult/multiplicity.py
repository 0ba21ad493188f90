"""End-to-end multiplicity pipelines.

Three length functions drive everything:

* lambda_pure(p, n)     = length of M_{pd+n} / H^p M_n,
* lambda_mixed(p, q, n) = length of M_{d1 p + d2 q + n} / H1^p H2^q M_n,
* lambda_local(n)       = length of (sum_{i<=n} I^i M / I^{i+1} M) cut down
                          by the modulus ideal I + m^(k+1).

Each is eventually a polynomial of total degree at most r; the pipelines
tabulate the function on an integer grid, extract the total-degree-r
leading form by exact finite differences, and report the integer e-values
(Buchsbaum-Rim, mixed Buchsbaum-Rim, and generalized Samuel
multiplicities). Grids default to [0, r+4] per axis and are enlarged once
by 2 per axis if the differences have not stabilized, after which the
failure is raised.

Grid cells are filled through a deterministic order-preserving map, so
the same query yields the same report bit for bit regardless of the
worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .filtration import assoc_graded_piece_dims
from .modules import (
    DEFAULT_CUTOFF,
    LengthResult,
    ModulePresentation,
    SliceSpan,
    krull_dimension,
    piece_dimension,
    quotient_fiber_length,
)
from .polyfit import (
    DEFAULT_WINDOW,
    DegreeExceedsError,
    GridTooSmallError,
    LeadingForm,
    LengthTable,
    StabilizationError,
    leading_form,
    total_degree_estimate,
)
from .rings import (
    GradingError,
    SubmoduleSpec,
    monomial_basis,
    power_generators,
    product_generators,
)

__all__ = [
    "PureQuery",
    "MixedQuery",
    "LocalQuery",
    "MultiplicityReport",
    "LocalReport",
    "SupportConditionError",
    "KInstabilityError",
    "lambda_pure",
    "pure_table",
    "br_multiplicities",
    "lambda_mixed",
    "mixed_table",
    "mixed_br_multiplicities",
    "lambda_local",
    "local_table",
    "resolve_r",
    "generalized_samuel",
    "generalized_samuel_report",
    "has_maximal_analytic_spread",
    "samuel_function",
]


class SupportConditionError(RuntimeError):
    pass


class KInstabilityError(RuntimeError):
    pass


def resolve_r(module: ModulePresentation, explicit: Optional[int]) -> tuple:
    """The fitting degree r and which rule produced it.

    Explicit values win; otherwise Krull dimension minus one when fiber
    variables are present (the length polynomial lives on a projectivized
    fiber), plain Krull dimension for base-only local queries.
    """
    if explicit is not None:
        if explicit < 0:
            raise ValueError("r must be nonnegative")
        return explicit, "explicit"
    dim = krull_dimension(module)
    if module.ring.fiber:
        return dim - 1, "krull-1"
    return dim, "krull"


@lru_cache(maxsize=None)
def _module_nonzero(module: ModulePresentation) -> bool:
    return any(piece_dimension(module, shift) > 0 for shift in module.free.shifts)


def _grid_map(fn, points, workers: int):
    if workers <= 1:
        return [fn(pt) for pt in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, points))


@dataclass(frozen=True)
class PureQuery:
    """Everything needed for lambda(p, n) and its leading form."""

    module: ModulePresentation
    h: SubmoduleSpec
    d: Optional[int] = None
    r: Optional[int] = None
    grid: Optional[int] = None
    cutoff: int = DEFAULT_CUTOFF
    window: int = DEFAULT_WINDOW
    workers: int = 1

    def __post_init__(self):
        if self.h.ring != self.module.ring:
            raise GradingError("H lives in a different ring than M")
        d = self.h.fiber_degree if self.d is None else self.d
        if d != self.h.fiber_degree:
            raise GradingError(
                f"declared d = {d} but H has fiber degree {self.h.fiber_degree}"
            )
        object.__setattr__(self, "d", d)
        if self.r is not None and self.r < 0:
            raise ValueError("r must be nonnegative")


@dataclass(frozen=True)
class MixedQuery:
    """Everything needed for lambda(p, q, n) and its leading form."""

    module: ModulePresentation
    h1: SubmoduleSpec
    h2: SubmoduleSpec
    d1: Optional[int] = None
    d2: Optional[int] = None
    r: Optional[int] = None
    grid: Optional[int] = None
    cutoff: int = DEFAULT_CUTOFF
    window: int = DEFAULT_WINDOW
    workers: int = 1

    def __post_init__(self):
        for h in (self.h1, self.h2):
            if h.ring != self.module.ring:
                raise GradingError("H lives in a different ring than M")
        d1 = self.h1.fiber_degree if self.d1 is None else self.d1
        d2 = self.h2.fiber_degree if self.d2 is None else self.d2
        if d1 != self.h1.fiber_degree or d2 != self.h2.fiber_degree:
            raise GradingError(
                f"declared (d1, d2) = {(d1, d2)} but generators have fiber"
                f" degrees {(self.h1.fiber_degree, self.h2.fiber_degree)}"
            )
        object.__setattr__(self, "d1", d1)
        object.__setattr__(self, "d2", d2)
        if self.r is not None and self.r < 0:
            raise ValueError("r must be nonnegative")


@dataclass(frozen=True)
class LocalQuery:
    """Generalized Samuel multiplicity of a base ideal at the origin."""

    module: ModulePresentation
    ideal: SubmoduleSpec
    k: Optional[int] = None
    r: Optional[int] = None
    grid: Optional[int] = None
    cutoff: int = DEFAULT_CUTOFF
    window: int = DEFAULT_WINDOW
    workers: int = 1

    def __post_init__(self):
        if self.module.ring.fiber:
            raise GradingError("local queries need a base-only ring")
        if self.ideal.ring != self.module.ring:
            raise GradingError("I lives in a different ring than M")
        if self.ideal.fiber_degree != 0:
            raise GradingError("local queries need an ideal of fiber degree 0")
        if self.k is not None and self.k < 0:
            raise ValueError("k must be nonnegative")


@dataclass(frozen=True)
class MultiplicityReport:
    """A populated length table with its fitted leading form."""

    table: LengthTable
    leading: LeadingForm
    r: int
    r_source: str
    degree_estimate: int
    stops: tuple  # finiteness certificate: stop base degree per cell
    enlarged: bool
    wall_time: float  # informational only, never serialized


@dataclass(frozen=True)
class LocalReport:
    """Generalized Samuel pipeline output, including the k-agreement."""

    table: LengthTable
    leading: LeadingForm
    e: int
    r: int
    r_source: str
    k: int
    e_next_k: int
    enlarged: bool
    wall_time: float


@lru_cache(maxsize=None)
def _pure_length(
    module: ModulePresentation, h: SubmoduleSpec, p: int, n: int, cutoff: int
) -> LengthResult:
    items = [SliceSpan(g, n) for g in power_generators(h, p).gens]
    return quotient_fiber_length(module, items, h.fiber_degree * p + n, cutoff)


def lambda_pure(query: PureQuery, p: int, n: int) -> int:
    """Exact length of M_{pd+n} / H^p M_n."""
    if p < 0 or n < 0:
        raise ValueError("p and n must be nonnegative")
    if p >= 1 and not query.h.gens and _module_nonzero(query.module):
        raise SupportConditionError(
            "H has no generators but M is nonzero: H^p M_n has infinite"
            " colength, the support condition cannot hold"
        )
    return _pure_length(query.module, query.h, p, n, query.cutoff).total


@lru_cache(maxsize=None)
def _mixed_length(
    module: ModulePresentation,
    h1: SubmoduleSpec,
    h2: SubmoduleSpec,
    p: int,
    q: int,
    n: int,
    cutoff: int,
) -> LengthResult:
    gens = product_generators(power_generators(h1, p), power_generators(h2, q))
    items = [SliceSpan(g, n) for g in gens.gens]
    fiber = h1.fiber_degree * p + h2.fiber_degree * q + n
    return quotient_fiber_length(module, items, fiber, cutoff)


def lambda_mixed(query: MixedQuery, p: int, q: int, n: int) -> int:
    """Exact length of M_{d1 p + d2 q + n} / H1^p H2^q M_n."""
    if p < 0 or q < 0 or n < 0:
        raise ValueError("p, q and n must be nonnegative")
    starved = (p >= 1 and not query.h1.gens) or (q >= 1 and not query.h2.gens)
    if starved and _module_nonzero(query.module):
        raise SupportConditionError(
            "a power of a generatorless H acts on a nonzero M: the quotient"
            " has infinite colength"
        )
    return _mixed_length(
        query.module, query.h1, query.h2, p, q, n, query.cutoff
    ).total


def _fit_with_retry(build_table, r: int, window: int, grid_max: int):
    """Fit a leading form, enlarging the grid once on stabilization failure."""
    table, stops = build_table(grid_max)
    try:
        return table, stops, leading_form(table, r, window), False
    except (StabilizationError, GridTooSmallError, DegreeExceedsError):
        table, stops = build_table(grid_max + 2)
        try:
            return table, stops, leading_form(table, r, window), True
        except StabilizationError as err:
            _raise_if_degree_exceeds(table, r, window, err)
            raise


def _raise_if_degree_exceeds(table, r, window, err):
    """Rewrite a stabilization failure as a degree overshoot when provable."""
    try:
        estimate = total_degree_estimate(table, window)
    except (StabilizationError, GridTooSmallError):
        return
    if estimate > r:
        raise DegreeExceedsError(
            f"table degree estimate {estimate} exceeds r = {r}"
        ) from err


def pure_table(query: PureQuery, gmax: int) -> tuple:
    """The lambda(p, n) table on [0, gmax]^2 with its finiteness stops."""
    points = [(p, n) for p in range(gmax + 1) for n in range(gmax + 1)]

    def cell(pt):
        p, n = pt
        if p >= 1 and not query.h.gens and _module_nonzero(query.module):
            raise SupportConditionError("H has no generators but M is nonzero")
        return _pure_length(query.module, query.h, p, n, query.cutoff)

    results = _grid_map(cell, points, query.workers)
    table = LengthTable(
        ("p", "n"),
        (0, 0),
        (gmax + 1, gmax + 1),
        tuple(res.total for res in results),
    )
    return table, tuple(res.stop_degree for res in results)


def br_multiplicities(query: PureQuery) -> MultiplicityReport:
    """All Buchsbaum-Rim multiplicities e^{i,k} with i + k = r for H on M."""
    start = time.perf_counter()
    r, r_source = resolve_r(query.module, query.r)
    grid_max = query.grid if query.grid is not None else r + 4

    def build(gmax):
        return pure_table(query, gmax)

    table, stops, lf, enlarged = _fit_with_retry(build, r, query.window, grid_max)
    estimate = total_degree_estimate(table, query.window)
    if estimate > r:
        raise DegreeExceedsError(
            f"table degree estimate {estimate} exceeds r = {r}"
        )
    return MultiplicityReport(
        table, lf, r, r_source, estimate, stops, enlarged,
        time.perf_counter() - start,
    )


def mixed_table(query: MixedQuery, gmax: int) -> tuple:
    """The lambda(p, q, n) table on [0, gmax]^3 with its finiteness stops."""
    rng = range(gmax + 1)
    points = [(p, q, n) for p in rng for q in rng for n in rng]

    def cell(pt):
        p, q, n = pt
        starved = (p >= 1 and not query.h1.gens) or (
            q >= 1 and not query.h2.gens
        )
        if starved and _module_nonzero(query.module):
            raise SupportConditionError(
                "a power of a generatorless H acts on a nonzero M"
            )
        return _mixed_length(
            query.module, query.h1, query.h2, p, q, n, query.cutoff
        )

    results = _grid_map(cell, points, query.workers)
    table = LengthTable(
        ("p", "q", "n"),
        (0, 0, 0),
        (gmax + 1,) * 3,
        tuple(res.total for res in results),
    )
    return table, tuple(res.stop_degree for res in results)


def mixed_br_multiplicities(query: MixedQuery) -> MultiplicityReport:
    """All mixed multiplicities e^{i,j,k} with i + j + k = r."""
    start = time.perf_counter()
    r, r_source = resolve_r(query.module, query.r)
    grid_max = query.grid if query.grid is not None else r + 4

    def build(gmax):
        return mixed_table(query, gmax)

    table, stops, lf, enlarged = _fit_with_retry(build, r, query.window, grid_max)
    estimate = total_degree_estimate(table, query.window)
    if estimate > r:
        raise DegreeExceedsError(
            f"table degree estimate {estimate} exceeds r = {r}"
        )
    return MultiplicityReport(
        table, lf, r, r_source, estimate, stops, enlarged,
        time.perf_counter() - start,
    )


@lru_cache(maxsize=None)
def _modulus(ideal: SubmoduleSpec, k: int) -> SubmoduleSpec:
    """The ideal I + m^(k+1) cutting out the k-th infinitesimal neighborhood."""
    ring = ideal.ring
    socle = tuple(ring.monomial(mono) for mono in monomial_basis(ring, (k + 1, 0)))
    return SubmoduleSpec(ring, 0, ideal.gens + socle)


@lru_cache(maxsize=None)
def _assoc_total(
    module: ModulePresentation, ideal: SubmoduleSpec, k: int, i: int, cutoff: int
) -> int:
    return assoc_graded_piece_dims(
        ideal, module, _modulus(ideal, k), i, cutoff=cutoff
    ).total


def lambda_local(query: LocalQuery, n: int, k: Optional[int] = None) -> int:
    """Length of (sum_{i<=n} I^i M / I^{i+1} M) over the k-th neighborhood."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k is None:
        if query.k is not None:
            k = query.k
        else:
            r, _ = resolve_r(query.module, query.r)
            k = r + 2
    return sum(
        _assoc_total(query.module, query.ideal, k, i, query.cutoff)
        for i in range(n + 1)
    )


def local_table(query: LocalQuery, k: int, gmax: int) -> LengthTable:
    """The lambda(n) table on [0, gmax] at neighborhood order k."""
    points = list(range(gmax + 1))
    values = _grid_map(lambda n: lambda_local(query, n, k), points, query.workers)
    return LengthTable(("n",), (0,), (gmax + 1,), tuple(values))


def generalized_samuel_report(query: LocalQuery) -> LocalReport:
    """e(I, M) with the k versus k+1 stability check and the fitted table."""
    start = time.perf_counter()
    r, r_source = resolve_r(query.module, query.r)
    k = query.k if query.k is not None else r + 2
    grid_max = query.grid if query.grid is not None else r + 4

    def fit(k_used, gmax):
        table = local_table(query, k_used, gmax)
        return table, leading_form(table, r, query.window)

    enlarged = False
    try:
        table, lf = fit(k, grid_max)
        _, lf_next = fit(k + 1, grid_max)
    except (StabilizationError, GridTooSmallError):
        enlarged = True
        try:
            table, lf = fit(k, grid_max + 2)
            _, lf_next = fit(k + 1, grid_max + 2)
        except StabilizationError as err:
            _raise_if_degree_exceeds(
                local_table(query, k, grid_max + 2), r, query.window, err
            )
            raise
    e = lf.entries[0][1]
    e_next = lf_next.entries[0][1]
    if e != e_next:
        raise KInstabilityError(
            f"leading coefficient differs between k = {k} ({e}) and"
            f" k = {k + 1} ({e_next}); increase k"
        )
    return LocalReport(
        table, lf, e, r, r_source, k, e_next, enlarged,
        time.perf_counter() - start,
    )


def generalized_samuel(query: LocalQuery) -> int:
    """The generalized Samuel multiplicity e(I, M) at the origin."""
    return generalized_samuel_report(query).e


def has_maximal_analytic_spread(query: LocalQuery) -> bool:
    """True exactly when e(I, M) > 0."""
    return generalized_samuel(query) > 0


def samuel_function(
    module: ModulePresentation,
    ideal: SubmoduleSpec,
    n: int,
    cutoff: int = DEFAULT_CUTOFF,
) -> int:
    """length(M / I^(n+1) M), the classical Samuel function.

    Finite only for m-primary I; a non-primary ideal runs into the cutoff
    diagnostic. Serves as the independent oracle for the local pipeline.
    """
    if module.ring.fiber:
        raise GradingError("the Samuel function needs a base-only ring")
    if ideal.fiber_degree != 0:
        raise GradingError("the Samuel function needs a fiber degree 0 ideal")
    if n < 0:
        raise ValueError("n must be nonnegative")
    items = [SliceSpan(g, 0) for g in power_generators(ideal, n + 1).gens]
    return quotient_fiber_length(module, items, 0, cutoff).total
