"""Exact polynomial fitting of integer length tables by finite differences.

A LengthTable holds exact integer values of a length function on a
rectangular lattice grid. For a function that is eventually polynomial of
total degree r, every iterated mixed difference of order (i, j, k) with
i + j + k = r is eventually the constant e^{i,j,k} (the coefficient of
p^i q^j n^k / i!j!k!), and every difference of total order r + 1 is
eventually zero. The fitter looks for a window of w consecutive lattice
points per axis on which both facts hold and reads the e-values off at
the window's base point.

The window test is a heuristic certificate: a table that merely imitates
a polynomial on the probed region will fool it. The remedy is a larger
grid or window, and the multiplicity pipelines retry once with a grid
enlarged by 2 per axis before giving up.

No floating point is used anywhere; values are Python ints and the
e-values are asserted to be integers (they are iterated differences of
integers, so this is a consistency assertion, not a rounding step).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

__all__ = [
    "LengthTable",
    "LeadingForm",
    "GridTooSmallError",
    "StabilizationError",
    "DegreeExceedsError",
    "finite_difference",
    "leading_form",
    "total_degree_estimate",
]

DEFAULT_WINDOW = 2


class GridTooSmallError(ValueError):
    pass


class StabilizationError(RuntimeError):
    pass


class DegreeExceedsError(RuntimeError):
    pass


@dataclass(frozen=True)
class LengthTable:
    """Integer values of a length function on a lattice box.

    ``axes`` names the axes (one to three of them), ``origin`` is the
    lattice point of the first entry, ``extents`` the number of points per
    axis, and ``values`` the row-major flat value tuple.
    """

    axes: tuple
    origin: tuple
    extents: tuple
    values: tuple

    def __post_init__(self):
        axes = tuple(self.axes)
        origin = tuple(int(v) for v in self.origin)
        extents = tuple(int(v) for v in self.extents)
        if not 1 <= len(axes) <= 3:
            raise GridTooSmallError(f"need 1 to 3 axes, got {len(axes)}")
        if len(origin) != len(axes) or len(extents) != len(axes):
            raise GridTooSmallError("axes, origin and extents disagree in arity")
        if any(e < 1 for e in extents):
            raise GridTooSmallError(f"empty extent in {extents}")
        size = 1
        for e in extents:
            size *= e
        values = tuple(self.values)
        if len(values) != size:
            raise GridTooSmallError(
                f"got {len(values)} values for a grid of {size} points"
            )
        for v in values:
            if not isinstance(v, int) or isinstance(v, bool):
                raise GridTooSmallError(f"non-integer table value {v!r}")
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "extents", extents)
        object.__setattr__(self, "values", values)

    @property
    def arity(self) -> int:
        return len(self.axes)

    def strides(self) -> tuple:
        out = [1] * self.arity
        for i in range(self.arity - 2, -1, -1):
            out[i] = out[i + 1] * self.extents[i + 1]
        return tuple(out)

    def value(self, idx) -> int:
        flat = 0
        for i, (j, e, s) in enumerate(zip(idx, self.extents, self.strides())):
            if not 0 <= j < e:
                raise IndexError(f"index {idx} outside extents {self.extents}")
            flat += j * s
        return self.values[flat]

    def points(self):
        return itertools.product(*(range(e) for e in self.extents))

    def axis_index(self, axis) -> int:
        if isinstance(axis, str):
            return self.axes.index(axis)
        return int(axis)


def finite_difference(t: LengthTable, axis) -> LengthTable:
    """Forward difference along one axis; the extent there shrinks by 1."""
    ax = t.axis_index(axis)
    if t.extents[ax] < 2:
        raise GridTooSmallError(
            f"cannot difference axis {t.axes[ax]!r} of extent {t.extents[ax]}"
        )
    new_extents = tuple(
        e - 1 if i == ax else e for i, e in enumerate(t.extents)
    )
    strides = t.strides()
    values = []
    for idx in itertools.product(*(range(e) for e in new_extents)):
        flat = sum(j * s for j, s in zip(idx, strides))
        values.append(t.values[flat + strides[ax]] - t.values[flat])
    return LengthTable(t.axes, t.origin, new_extents, tuple(values))


@dataclass(frozen=True)
class LeadingForm:
    """Total-degree-r leading form of an eventually polynomial table.

    ``entries`` maps each exponent tuple alpha with |alpha| = r to the
    integer e-value, i.e. the coefficient of prod(axis^alpha) divided by
    prod(alpha!). ``base_point`` is the lattice point (original
    coordinates) where the differences stabilized.
    """

    r: int
    axes: tuple
    entries: tuple  # ((alpha, e), ...) sorted by descending alpha
    base_point: tuple
    window: int

    def as_dict(self) -> dict:
        return dict(self.entries)

    def __getitem__(self, alpha) -> int:
        return self.as_dict()[tuple(alpha)]


def _alphas(arity: int, total: int):
    out = []
    for alpha in itertools.product(range(total + 1), repeat=arity):
        if sum(alpha) == total:
            out.append(alpha)
    out.sort(reverse=True)
    return out


def _difference_tables(t: LengthTable, max_order: int) -> dict:
    tables = {(0,) * t.arity: t}
    for total in range(1, max_order + 1):
        for alpha in _alphas(t.arity, total):
            ax = next(i for i, a in enumerate(alpha) if a > 0)
            prev = tuple(a - 1 if i == ax else a for i, a in enumerate(alpha))
            tables[alpha] = finite_difference(tables[prev], ax)
    return tables


def _window_block(base, window, arity):
    return itertools.product(*(range(b, b + window) for b in base))


def _feasible_bases(t: LengthTable, order: int, window: int):
    """Base points whose window fits every difference table up to order."""
    ranges = []
    for e in t.extents:
        top = e - window - order + 1
        if top <= 0:
            return None
        ranges.append(range(top))
    return itertools.product(*ranges)


def leading_form(t: LengthTable, r: int, window: int = DEFAULT_WINDOW) -> LeadingForm:
    """Extract all order-r e-values at the first stabilization window.

    Scans base points in row-major order for a window of ``window`` points
    per axis where every order-r mixed difference is constant and every
    order-(r+1) difference vanishes. Raises GridTooSmallError when no
    window fits, DegreeExceedsError when differences go constant but the
    order-(r+1) ones refuse to vanish, and StabilizationError otherwise.
    """
    if r < 0:
        raise ValueError("negative degree")
    if window < 1:
        raise ValueError("window must be at least 1")
    bases = _feasible_bases(t, r + 1, window)
    if bases is None:
        raise GridTooSmallError(
            f"extents {t.extents} too small for degree {r} with window {window}"
        )
    tables = _difference_tables(t, r + 1)
    order_r = [tables[a] for a in _alphas(t.arity, r)]
    order_r1 = [tables[a] for a in _alphas(t.arity, r + 1)]
    constant_seen = False
    for base in bases:
        block = list(_window_block(base, window, t.arity))
        if all(
            len({tab.value(p) for p in block}) == 1 for tab in order_r
        ):
            if all(tab.value(p) == 0 for tab in order_r1 for p in block):
                entries = tuple(
                    (alpha, tables[alpha].value(base))
                    for alpha in _alphas(t.arity, r)
                )
                for _, e in entries:
                    assert isinstance(e, int)
                point = tuple(o + b for o, b in zip(t.origin, base))
                return LeadingForm(r, t.axes, entries, point, window)
            constant_seen = True
    if constant_seen:
        raise DegreeExceedsError(
            f"order-{r} differences stabilize but order-{r + 1} differences"
            " do not vanish: the table's degree exceeds the requested r"
        )
    raise StabilizationError(
        f"no stabilization window of size {window} for degree {r} within"
        f" extents {t.extents}: the table is not yet polynomial there"
    )


def total_degree_estimate(t: LengthTable, window: int = DEFAULT_WINDOW) -> int:
    """Smallest D whose order-(D+1) differences vanish on some window."""
    max_d = min(t.extents) - window - 1
    if max_d < 0:
        raise GridTooSmallError(
            f"extents {t.extents} too small for any degree estimate with"
            f" window {window}"
        )
    for degree in range(max_d + 1):
        tables = _difference_tables(t, degree + 1)
        order_d1 = [tables[a] for a in _alphas(t.arity, degree + 1)]
        bases = _feasible_bases(t, degree + 1, window)
        for base in bases:
            block = list(_window_block(base, window, t.arity))
            if all(tab.value(p) == 0 for tab in order_d1 for p in block):
                return degree
    raise StabilizationError(
        f"no vanishing difference window up to degree {max_d} within"
        f" extents {t.extents}"
    )
