"""Length functions and multiplicity pipelines on frozen instances.

Every expected number here is either a closed-form monomial count or an
independently computed oracle value; nothing is copied back from the code
under test.
"""

import pytest

from brmult.corpus import curated_local, curated_mixed, curated_pure
from brmult.fields import QQ
from brmult.modules import FreeModuleSpec, ModulePresentation
from brmult.multiplicity import (
    KInstabilityError,
    LocalQuery,
    MixedQuery,
    PureQuery,
    SupportConditionError,
    br_multiplicities,
    generalized_samuel,
    generalized_samuel_report,
    has_maximal_analytic_spread,
    lambda_local,
    lambda_mixed,
    lambda_pure,
    mixed_br_multiplicities,
    resolve_r,
    samuel_function,
)
from brmult.polyfit import DegreeExceedsError
from brmult.rings import RingSpec, SubmoduleSpec

R2 = RingSpec(QQ, ("x", "y"), ("T",))
R22 = RingSpec(QQ, ("x", "y"), ("u", "v"))
BASE = RingSpec(QQ, ("x", "y"), ())


def free_module(ring):
    return ModulePresentation(FreeModuleSpec(ring, ((0, 0),)))


def block_query(**kw):
    x, y, u, v = (R22.gen(s) for s in "xyuv")
    h = SubmoduleSpec(R22, 1, (x * u, x * v, y * u, y * v))
    return PureQuery(free_module(R22), h, **kw)


def test_lambda_pure_block_closed_form():
    q = block_query()
    # lambda(p, n) = (p + n + 1) p (p + 1) / 2 by monomial counting
    assert lambda_pure(q, 2, 3) == 18
    assert lambda_pure(q, 7, 7) == 420
    for p in range(4):
        for n in range(4):
            assert lambda_pure(q, p, n) == (p + n + 1) * p * (p + 1) // 2


def test_lambda_pure_p_zero_is_zero():
    q = block_query()
    for n in range(6):
        assert lambda_pure(q, 0, n) == 0


def test_lambda_pure_d_zero_max_ideal():
    m = SubmoduleSpec(R2, 0, (R2.gen("x"), R2.gen("y")))
    q = PureQuery(free_module(R2), m)
    # length(A/m^p) = p(p+1)/2, independent of n
    for p in range(5):
        for n in range(3):
            assert lambda_pure(q, p, n) == p * (p + 1) // 2


def test_br_multiplicities_block():
    report = br_multiplicities(block_query())
    assert report.r == 3
    assert report.r_source == "krull-1"
    assert report.leading.as_dict() == {
        (3, 0): 3,
        (2, 1): 1,
        (1, 2): 0,
        (0, 3): 0,
    }
    assert report.degree_estimate <= 3
    assert not report.enlarged


def test_br_multiplicities_square_of_max_ideal():
    x, y = R2.gen("x"), R2.gen("y")
    h = SubmoduleSpec(R2, 0, (x * x, x * y, y * y))
    q = PureQuery(free_module(R2), h)
    report = br_multiplicities(q)
    assert report.r == 2
    # lambda(p, n) = 2 p^2 + p
    assert report.leading.as_dict() == {(2, 0): 4, (1, 1): 0, (0, 2): 0}


def test_degenerate_degree_gives_zero_leading_form():
    # M = k[x,y;T]/(x) with H = (xT, yT): lambda(p, n) = p, so asking for
    # r = 2 yields an identically zero leading form rather than an error
    x, y, t = R2.gen("x"), R2.gen("y"), R2.gen("T")
    killed = ModulePresentation(FreeModuleSpec(R2, ((0, 0),)), ((x,),))
    h = SubmoduleSpec(R2, 1, (x * t, y * t))
    q = PureQuery(killed, h, r=2)
    report = br_multiplicities(q)
    assert report.r_source == "explicit"
    assert set(report.leading.as_dict().values()) == {0}
    assert report.degree_estimate == 1


def test_killed_axis_natural_r():
    x, y, t = R2.gen("x"), R2.gen("y"), R2.gen("T")
    killed = ModulePresentation(FreeModuleSpec(R2, ((0, 0),)), ((x,),))
    h = SubmoduleSpec(R2, 1, (x * t, y * t))
    for p in range(1, 5):
        assert lambda_pure(PureQuery(killed, h), p, 2) == p
    report = br_multiplicities(PureQuery(killed, h))
    assert report.r == 1
    assert report.leading.as_dict() == {(1, 0): 1, (0, 1): 0}


def test_resolve_r_paths():
    assert resolve_r(free_module(R22), None) == (3, "krull-1")
    assert resolve_r(free_module(BASE), None) == (2, "krull")
    assert resolve_r(free_module(R2), 5) == (5, "explicit")


def test_empty_h_is_a_support_error():
    h = SubmoduleSpec(R2, 0, ())
    q = PureQuery(free_module(R2), h)
    with pytest.raises(SupportConditionError):
        lambda_pure(q, 1, 0)


def test_query_grading_guards():
    m = SubmoduleSpec(R2, 0, (R2.gen("x"), R2.gen("y")))
    with pytest.raises(Exception):
        PureQuery(free_module(R22), m)
    with pytest.raises(Exception):
        PureQuery(free_module(R2), m, d=1)
    with pytest.raises(Exception):
        LocalQuery(free_module(R2), m)  # ring has a fiber variable


def test_lambda_mixed_max_ideal_pair():
    m = SubmoduleSpec(R2, 0, (R2.gen("x"), R2.gen("y")))
    q = MixedQuery(free_module(R2), m, m)
    # length(A/m^(p+q)) = (p+q)(p+q+1)/2
    for p in range(4):
        for qq in range(4):
            want = (p + qq) * (p + qq + 1) // 2
            assert lambda_mixed(q, p, qq, 1) == want


def test_mixed_br_max_ideal_pair():
    m = SubmoduleSpec(R2, 0, (R2.gen("x"), R2.gen("y")))
    report = mixed_br_multiplicities(MixedQuery(free_module(R2), m, m))
    assert report.r == 2
    lead = report.leading.as_dict()
    assert lead[(2, 0, 0)] == 1
    assert lead[(1, 1, 0)] == 1
    assert lead[(0, 2, 0)] == 1
    assert all(e == 0 for alpha, e in lead.items() if alpha[2] > 0)


def test_mixed_br_newton_pair():
    x, y = R2.gen("x"), R2.gen("y")
    h1 = SubmoduleSpec(R2, 0, (x, y * y))
    h2 = SubmoduleSpec(R2, 0, (x * x, y))
    report = mixed_br_multiplicities(MixedQuery(free_module(R2), h1, h2))
    lead = report.leading.as_dict()
    assert lead[(2, 0, 0)] == 2
    assert lead[(1, 1, 0)] == 1
    assert lead[(0, 2, 0)] == 2


def test_mixed_p_zero_edge_reduces_to_pure():
    x, y = R2.gen("x"), R2.gen("y")
    h1 = SubmoduleSpec(R2, 0, (x, y * y))
    h2 = SubmoduleSpec(R2, 0, (x * x, y))
    mq = MixedQuery(free_module(R2), h1, h2)
    pq = PureQuery(free_module(R2), h2)
    for qq in range(4):
        for n in range(3):
            assert lambda_mixed(mq, 0, qq, n) == lambda_pure(pq, qq, n)


def local_query(gens, **kw):
    ideal = SubmoduleSpec(BASE, 0, tuple(gens))
    return LocalQuery(free_module(BASE), ideal, **kw)


def test_lambda_local_max_ideal():
    x, y = BASE.gen("x"), BASE.gen("y")
    q = local_query((x, y))
    for k in (2, 4):
        for n in range(5):
            assert lambda_local(q, n, k=k) == (n + 1) * (n + 2) // 2


def test_lambda_local_one_axis():
    x = BASE.gen("x")
    q = local_query((x,))
    # with k = 2 each factor is spanned by x^i, x^i y, x^i y^2
    for n in range(5):
        assert lambda_local(q, n, k=2) == 3 * (n + 1)


def test_lambda_local_unit_ideal():
    q = local_query((BASE.one,))
    assert lambda_local(q, 3, k=2) == 0


def test_generalized_samuel_suite():
    x, y = BASE.gen("x"), BASE.gen("y")
    assert generalized_samuel(local_query((x, y))) == 1
    assert generalized_samuel(local_query((x,))) == 0
    assert generalized_samuel(local_query((x * x, y * y))) == 4


def test_generalized_samuel_report_fields():
    x, y = BASE.gen("x"), BASE.gen("y")
    report = generalized_samuel_report(local_query((x * x, y * y)))
    assert report.e == 4
    assert report.r == 2
    assert report.r_source == "krull"
    assert report.k == 4  # default r + 2
    assert report.e_next_k == report.e


def test_analytic_spread():
    x, y = BASE.gen("x"), BASE.gen("y")
    assert has_maximal_analytic_spread(local_query((x, y)))
    assert not has_maximal_analytic_spread(local_query((x,)))
    assert has_maximal_analytic_spread(local_query((x * x, y * y)))
    assert not has_maximal_analytic_spread(local_query((BASE.one,)))


def test_lambda_local_matches_samuel_function_when_primary():
    # the two pipelines agree for m-primary ideals once k is large
    x, y = BASE.gen("x"), BASE.gen("y")
    module = free_module(BASE)
    for gens in ((x, y), (x * x, y * y), (x * x, x * y, y * y)):
        ideal = SubmoduleSpec(BASE, 0, gens)
        q = LocalQuery(module, ideal)
        for n in range(5):
            assert lambda_local(q, n, k=6) == samuel_function(module, ideal, n)


def test_samuel_function_values():
    x, y = BASE.gen("x"), BASE.gen("y")
    module = free_module(BASE)
    m = SubmoduleSpec(BASE, 0, (x, y))
    for n in range(5):
        assert samuel_function(module, m, n) == (n + 1) * (n + 2) // 2
    squares = SubmoduleSpec(BASE, 0, (x * x, y * y))
    assert samuel_function(module, squares, 0) == 4
    axis = SubmoduleSpec(BASE, 0, (x,))
    with pytest.raises(Exception):
        samuel_function(module, axis, 1)


def test_degree_exceeds_is_a_hard_error():
    x, y = BASE.gen("x"), BASE.gen("y")
    with pytest.raises(DegreeExceedsError):
        generalized_samuel(local_query((x, y), r=1))
    with pytest.raises(DegreeExceedsError):
        br_multiplicities(block_query(r=2))


def test_workers_do_not_change_reports():
    serial = br_multiplicities(block_query())
    parallel = br_multiplicities(block_query(workers=4))
    assert serial.table == parallel.table
    assert serial.leading.as_dict() == parallel.leading.as_dict()


def test_curated_instances_all_run():
    for inst in curated_pure():
        report = br_multiplicities(PureQuery(inst.module, inst.h))
        assert all(e >= 0 for e in report.leading.as_dict().values())
    for inst in curated_mixed():
        report = mixed_br_multiplicities(
            MixedQuery(inst.module, inst.h1, inst.h2)
        )
        assert all(e >= 0 for e in report.leading.as_dict().values())
    for inst in curated_local():
        q = LocalQuery(inst.module, inst.ideal)
        if inst.ideal.is_unit():
            assert not has_maximal_analytic_spread(q)
        else:
            assert generalized_samuel(q) >= 0
