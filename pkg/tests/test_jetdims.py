from fractions import Fraction

import pytest

from jetcalc.groebner import BudgetExhausted
from jetcalc.invariants import (INF, NEG_INF, SANDWICH_LOG, DimensionSequence, InvariantError, JetEngine,
                                SandwichViolation, alpha_pq, alpha_table, beta_m, beta_monomial, beta_table,
                                gamma_estimate, homog_fiber_dims, jet_dimension, jet_order, lci_jet_check,
                                lct_diagonal, lct_estimate, mld_estimate, monotonicity_check,
                                quasi_homogeneous_weights)
from jetcalc.invariants.jetdims import _sandwich
from jetcalc.localalgebra import box, fat_point, make_local_algebra, truncation
from jetcalc.polyring import IdealPresentation


def ideal(v, g):
    return IdealPresentation.from_strings(v, g)


XY = ideal("xy", ["x*y"])
CUSP = ideal("xy", ["x^2+y^3"])


def test_jet_dimension_examples():
    assert jet_dimension(IdealPresentation(("x", "y"), ()), box(2, 2)) == 8
    assert jet_dimension(XY, truncation(1)) == 2
    assert jet_dimension(XY, box(2, 2)) == 5


@pytest.mark.parametrize("m", range(6))
def test_xy_jets_have_dimension_m_plus_one(m):
    assert jet_dimension(XY, truncation(m)) == m + 1


def test_engine_orders_agree():
    dims = {o: JetEngine(order=o).jet_dimension(CUSP, truncation(3)) for o in ("auto", "degrevlex", "lex")}
    assert set(dims.values()) == {4}


def test_grading_detection():
    assert quasi_homogeneous_weights(CUSP) == (3, 2)
    assert quasi_homogeneous_weights(ideal("xy", ["x*y-1"])) is None
    order = jet_order(CUSP, truncation(1))
    assert order.permutation == (0, 2, 1, 3)
    assert order.weights == (3, 3, 2, 2)


def test_sandwich_counts_and_raises():
    before = dict(SANDWICH_LOG)
    _sandwich(5, 1, 2, 4)
    assert SANDWICH_LOG["checks"] == before["checks"] + 1
    with pytest.raises(SandwichViolation):
        _sandwich(9, 1, 2, 4)
    SANDWICH_LOG["violations"] -= 1  # the deliberate violation above is not a real one


def test_lct_estimate_small_cases():
    rep = lct_estimate(ideal("x", ["x"]), 3)
    assert rep.value == 1 and rep.status == "exact"
    rep = lct_estimate(ideal("x", ["x^2"]), 3)
    assert rep.value == Fraction(1, 2) and rep.details["witness"] == [1, 3]
    assert lct_estimate(IdealPresentation(("x",), ()), 2).value == 0
    assert lct_estimate(ideal("x", ["1"]), 2).value == INF


def test_lct_estimate_cusp_is_uncertified_at_m5():
    rep = lct_estimate(CUSP, 5)
    assert [e["dim"] for e in rep.details["sequence"]] == [1, 2, 3, 4, 5, 7]
    assert rep.value == lct_diagonal((2, 3))
    assert rep.status == "upper_bound" and rep.details["argmax"] == [5]


def test_lct_estimate_partial_on_budget():
    rep = lct_estimate(CUSP, 5, JetEngine(budget=12))
    assert rep.details["partial"] and rep.details["failed_at"] <= 5


def test_lct_estimate_never_below_closed_form():
    for a in [(2, 3), (2, 2), (3, 3)]:
        I = ideal("xy", [f"x^{a[0]}+y^{a[1]}"])
        rep = lct_estimate(I, 3)
        for e in rep.details["sequence"]:
            assert e["normalized"] <= 2 - lct_diagonal(a)


def test_monotonicity_check():
    good = DimensionSequence.from_dims([1, 2, 3, 4, 5, 7], 2)
    assert monotonicity_check(good)
    assert monotonicity_check(DimensionSequence.from_dims([2 * (m + 1) for m in range(6)], 2))
    assert not monotonicity_check(DimensionSequence.from_dims([1, 5, 3, 4, 5, 7], 2))


def test_mld_estimate():
    W, Z = ideal("xy", ["x"]), ideal("xy", ["x", "y"])
    rep = mld_estimate(W, Z, 1, 3)
    assert rep.value == 1 and rep.status == "upper_bound"
    rep = mld_estimate(W, Z, 3, 3)
    assert rep.value == NEG_INF and rep.status == "certified" and rep.details["negative_at"] == 0
    with pytest.raises(InvariantError, match="empty"):
        mld_estimate(W, ideal("xy", ["1"]), 1, 2)
    with pytest.raises(InvariantError):
        mld_estimate(ideal("x", ["x"]), ideal("x", ["x"]), 1, 2)


def test_alpha():
    assert alpha_pq(IdealPresentation(("x",), ()), 2, 3) == 6
    assert alpha_pq(XY, 1, 1) == 1
    t = alpha_table(XY, 2, 2)
    assert t["sup_lower_bound"] == Fraction(5, 4) and t["monotone"]


def test_alpha_table_monotone_on_cusp():
    t = alpha_table(CUSP, 3, 2)
    assert t["monotone"] and not t["partial"]


def test_beta():
    assert beta_m(XY, 1) == 1 and beta_m(XY, 2) == 4
    for n in (1, 2):
        space = IdealPresentation(tuple("xy"[:n]), ())
        assert [beta_m(space, m) for m in (1, 2, 3)] == [n * m * (m + 1) // 2 for m in (1, 2, 3)]
    t = beta_table(XY, 3)
    assert [r["beta"] for r in t["rows"]] == [beta_monomial((1, 1), m) for m in (1, 2, 3)]


def test_gamma():
    rep = gamma_estimate(XY, [box(2, 2)])
    assert rep.value == Fraction(5, 4) and rep.status == "lower_bound"
    assert gamma_estimate(IdealPresentation(("x", "y"), ()), [box(2, 2), fat_point(2, 3)]).value == 2
    with pytest.raises(InvariantError):
        gamma_estimate(XY, [])
    with pytest.raises(InvariantError, match="embedding"):
        gamma_estimate(XY, [fat_point(3, 2)])


def test_homog_matches_jets():
    quadric = ideal("xyz", ["x^2+y^2+z^2"])
    assert homog_fiber_dims(2, 2, 3)["D"] == [jet_dimension(XY, truncation(m)) for m in range(4)]
    assert homog_fiber_dims(3, 2, 2)["D"] == [jet_dimension(quadric, truncation(m)) for m in range(3)]


def test_lci_check():
    v = lci_jet_check(XY, 1, truncation(1))
    assert v["pure_dimensional"] and not v["irreducible"] and v["singular_fiber_dimension"] == 2
    v = lci_jet_check(ideal("xyz", ["x^2+y^2+z^2"]), 2, truncation(1))
    assert v["irreducible"] and v["singular_fiber_dimension"] == 3
    v = lci_jet_check(ideal("xy", ["x"]), 1, make_local_algebra(2, [(2, 0), (1, 1), (0, 3)]))
    assert v["irreducible"] and v["pure_dimensional"]
    with pytest.raises(InvariantError, match="complete intersection"):
        lci_jet_check(XY, 0, truncation(1))
    with pytest.raises(InvariantError, match="declared"):
        lci_jet_check(ideal("xyz", ["x*y", "x*z"]), 1, truncation(1))


def test_budget_propagates():
    with pytest.raises(BudgetExhausted):
        JetEngine(budget=3).jet_dimension(CUSP, truncation(5), dim_x=1)
