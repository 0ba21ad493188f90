"""Bigraded polynomial rings, monomials, and submodule generators."""

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from brmult.fields import QQ
from brmult.rings import (
    GradingError,
    Polynomial,
    RingSpec,
    SubmoduleSpec,
    monomial_basis,
    power_generators,
    product_generators,
)

R2 = RingSpec(QQ, ("x", "y"), ("T",))
R22 = RingSpec(QQ, ("x", "y"), ("u", "v"))


def enumerate_monomials(ring, bidegree):
    """Brute-force enumeration: scan the full exponent box."""
    a, n = bidegree
    nb, nf = len(ring.base), len(ring.fiber)
    out = []
    for exps in product(range(max(a, n) + 1), repeat=nb + nf):
        if sum(exps[:nb]) == a and sum(exps[nb:]) == n:
            out.append(exps)
    return sorted(out, reverse=True)


def test_monomial_basis_matches_enumeration():
    for ring in (R2, R22):
        for a in range(5):
            for n in range(4):
                assert list(monomial_basis(ring, (a, n))) == enumerate_monomials(
                    ring, (a, n)
                )


def test_monomial_basis_sizes():
    # dim of the (a, n) piece of k[x,y;u,v] is (a+1)(n+1)
    for a in range(6):
        for n in range(6):
            assert len(monomial_basis(R22, (a, n))) == (a + 1) * (n + 1)
    # one fiber variable: dim (a, n) piece is a+1
    for a in range(6):
        assert len(monomial_basis(R2, (a, 3))) == a + 1


def test_negative_bidegree_is_empty():
    assert monomial_basis(R2, (-1, 0)) == ()
    assert monomial_basis(R2, (0, -2)) == ()


def poly_of(ring, pairs):
    return Polynomial.from_dict(ring, dict(pairs))


small_exps = st.tuples(
    st.integers(min_value=0, max_value=3),
    st.integers(min_value=0, max_value=3),
    st.integers(min_value=0, max_value=3),
)


@st.composite
def bihomogeneous_polys(draw):
    a = draw(st.integers(min_value=0, max_value=3))
    n = draw(st.integers(min_value=0, max_value=3))
    basis = monomial_basis(R2, (a, n))
    chosen = draw(
        st.lists(st.sampled_from(basis), min_size=1, max_size=3, unique=True)
    )
    coeffs = draw(
        st.lists(
            st.integers(min_value=-5, max_value=5).filter(lambda c: c != 0),
            min_size=len(chosen),
            max_size=len(chosen),
        )
    )
    return poly_of(R2, zip(chosen, coeffs))


@given(bihomogeneous_polys(), bihomogeneous_polys())
@settings(max_examples=100, deadline=None)
def test_bidegrees_add_under_products(f, g):
    fa, fn = f.bidegree()
    ga, gn = g.bidegree()
    prod = f * g
    if prod.is_zero():
        return
    assert prod.bidegree() == (fa + ga, fn + gn)


@given(bihomogeneous_polys(), st.integers(min_value=0, max_value=3))
@settings(max_examples=60, deadline=None)
def test_power_is_iterated_product(f, n):
    expected = R2.one
    for _ in range(n):
        expected = expected * f
    assert f**n == expected


def test_polynomial_str_samples():
    x, y, t = R2.gen("x"), R2.gen("y"), R2.gen("T")
    assert str(x * x * t) == "x^2*T"
    assert str(x * y - y * y) == "x*y - 1*y^2"
    assert str(R2.zero) == "0"
    assert str(R2.one * 3) == "3"


def test_mixed_fiber_degree_rejected_with_term_named():
    x, y, t = R2.gen("x"), R2.gen("y"), R2.gen("T")
    with pytest.raises(GradingError) as err:
        SubmoduleSpec(R2, 1, (x * t + y,))
    assert "y" in str(err.value)


def test_mixed_base_degree_rejected():
    x, y = R2.gen("x"), R2.gen("y")
    with pytest.raises(GradingError):
        SubmoduleSpec(R2, 0, (x + y * y,))


def test_declared_fiber_degree_must_match():
    x, t = R2.gen("x"), R2.gen("T")
    with pytest.raises(GradingError):
        SubmoduleSpec(R2, 0, (x * t,))


def test_zero_generators_are_dropped():
    x = R2.gen("x")
    h = SubmoduleSpec(R2, 0, (x, R2.zero, x))
    assert len(h.gens) == 2


def test_power_generators_counts():
    x, y = R2.gen("x"), R2.gen("y")
    m = SubmoduleSpec(R2, 0, (x, y))
    for p in range(6):
        hp = power_generators(m, p)
        # monomials of degree p in two variables, deduplicated
        assert len(hp.gens) == p + 1
        assert hp.fiber_degree == 0
    assert power_generators(m, 0).is_unit()


def test_power_generators_dedup_scalar_multiples():
    x = R2.gen("x")
    h = SubmoduleSpec(R2, 0, (x, x + x))
    assert len(power_generators(h, 2).gens) == 1


def test_product_generators_match_power_of_product():
    x, y = R2.gen("x"), R2.gen("y")
    h1 = SubmoduleSpec(R2, 0, (x, y * y))
    h2 = SubmoduleSpec(R2, 0, (x * x, y))
    prod = product_generators(h1, h2)
    expected = sorted(
        set((g1 * g2).monic().terms for g1 in h1.gens for g2 in h2.gens),
        reverse=True,
    )
    assert [g.terms for g in prod.gens] == expected


def test_product_fiber_degrees_add():
    xu = R22.gen("x") * R22.gen("u")
    yv = R22.gen("y") * R22.gen("v")
    h = SubmoduleSpec(R22, 1, (xu, yv))
    assert product_generators(h, h).fiber_degree == 2
    assert power_generators(h, 3).fiber_degree == 3


def test_ring_rejects_bad_names():
    with pytest.raises(GradingError):
        RingSpec(QQ, ("x", "x"), ("T",))
    with pytest.raises(GradingError):
        RingSpec(QQ, (), ())
