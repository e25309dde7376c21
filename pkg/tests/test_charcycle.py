from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from ccycle.charcycle import (
    IrregularCCData,
    cc_quasinormal,
    classical_ginsburg,
    ginsburg_limit,
    limit_multiplicity,
    limit_multiplicity_via_cover,
    quadric_chi,
    quadric_limit_cycle,
    toric_degree_witness,
)
from ccycle.constructible import LagrangianCycle, cc_from_chi, smooth_eu_table
from ccycle.errors import IntegralityViolation, InvalidInput
from ccycle.exactla import IntMatrix
from ccycle.puiseux import BivariatePolynomial, count_vanishing_branches
from ccycle.stalkcalc import QuasiNormalData, chart_stratification, chi_sol_function

E = frozenset


def subsets(items):
    items = sorted(items)
    return [E(c) for r in range(len(items) + 1) for c in combinations(items, r)]


@pytest.mark.parametrize("k", [0, 1, 4])
def test_cc_quasinormal_one_branch(k):
    q = QuasiNormalData.from_irregularities([k], 1)
    assert cc_quasinormal(q) == {E(): 1, E({1}): k + 1}


def test_cc_quasinormal_two_branches():
    q = QuasiNormalData.from_irregularities([2, 5], 1)
    assert cc_quasinormal(q) == {E(): 1, E({1}): 3, E({2}): 6, E({1, 2}): 8}
    assert cc_quasinormal(QuasiNormalData(2, (), 0)) == {}


def test_cc_quasinormal_propagates_integrality():
    q = QuasiNormalData(1, ((("3/2",), 1),), 1, (2,))
    with pytest.raises(IntegralityViolation):
        cc_quasinormal(q)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4).flatmap(lambda l: st.lists(st.integers(0, 9), min_size=l, max_size=l)), st.integers(0, 5))
def test_cc_quasinormal_matches_index_theorem(irr, r):
    if r == 0:
        irr = [0] * len(irr)
    q = QuasiNormalData.from_irregularities(irr, r)
    base = chart_stratification(len(irr))
    assert cc_quasinormal(q) == cc_from_chi(chi_sol_function(q), smooth_eu_table(base))


def test_limit_multiplicity_examples():
    d = IrregularCCData.build([1, 2, 3], factors=[({1: 2, 2: 3, 3: 1}, 1)])
    assert limit_multiplicity(d, {1, 2, 3}) == 7
    d = IrregularCCData.build([1, 2], factors=[({1: 0, 2: 0}, 3)])
    assert limit_multiplicity(d, {1, 2}) == 3
    d = IrregularCCData.build([1], factors=[({1: "3/2"}, 1), ({1: "3/2"}, 1)], ramification={1: 2})
    assert limit_multiplicity(d, {1}) == 5
    assert limit_multiplicity_via_cover(d, {1}) == 5


def test_limit_multiplicity_errors():
    d = IrregularCCData.build([1], factors=[({1: "3/2"}, 1)], ramification={1: 2})
    with pytest.raises(IntegralityViolation):
        limit_multiplicity(d, {1})
    with pytest.raises(IntegralityViolation):
        limit_multiplicity_via_cover(d, {1})
    with pytest.raises(InvalidInput):
        limit_multiplicity(d, set())
    with pytest.raises(InvalidInput):
        IrregularCCData.build([1], factors=[({1: "1/3"}, 1)], ramification={1: 2})


def test_cover_route_on_one_branch_matches_newton_polygon():
    # on the d-fold cover, t(dw/w-type terms) gives y-exponents 0, dk, dk + d
    for k, dd in [(Fraction(3, 2), 2), (Fraction(5, 3), 3), (Fraction(2), 1)]:
        a = int(dd * k)
        p = BivariatePolynomial.from_terms([(0, 1, 1), (a, 1, 2), (a + dd, 0, 3)])
        data = IrregularCCData.build([1], factors=[({1: k}, dd)], ramification={1: dd})
        assert count_vanishing_branches(p) == dd * (k + 1)
        assert limit_multiplicity_via_cover(data, {1}) == limit_multiplicity(data, {1})


@st.composite
def ramified_pairs(draw):
    l = draw(st.integers(1, 3))
    d = [draw(st.integers(1, 4)) for _ in range(l)]
    orders = {j + 1: Fraction(draw(st.integers(0, 12)), d[j]) for j in range(l)}
    # one factor together with its d-fold conjugates keeps the irregularity integral
    mult = draw(st.integers(1, 3))
    factors = [(orders, mult)] * max(d)
    return l, d, factors


@settings(max_examples=100, deadline=None)
@given(ramified_pairs(), st.integers(1, 3), st.data())
def test_ramification_refinement_invariance(pair, e, data):
    l, d, factors = pair
    branches = list(range(1, l + 1))
    base = IrregularCCData.build(branches, factors=factors, ramification=dict(zip(branches, d)))
    finer = IrregularCCData.build(branches, factors=factors, ramification={j: dj * e for j, dj in zip(branches, d)})
    S = data.draw(st.sampled_from(subsets(branches)[1:]))
    try:
        expected = limit_multiplicity(base, S)
    except IntegralityViolation:
        with pytest.raises(IntegralityViolation):
            limit_multiplicity(finer, S)
        return
    assert limit_multiplicity(finer, S) == expected
    assert limit_multiplicity_via_cover(base, S) == expected
    assert limit_multiplicity_via_cover(finer, S) == expected


def test_ginsburg_twist_example():
    for k in range(0, 5):
        d = IrregularCCData.build([1], [2], factors=[({1: k}, 1)])
        assert ginsburg_limit(d) == {E(): 1, E({1}): k + 1, E({2}): 1, E({1, 2}): k + 1}


@pytest.mark.parametrize("k", [0, 1, 3, 8])
def test_ginsburg_agrees_with_quasinormal(k):
    d = IrregularCCData.build([1], factors=[({1: k}, 1)])
    assert ginsburg_limit(d) == cc_quasinormal(QuasiNormalData.from_irregularities([k], 1))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 9), min_size=1, max_size=3), st.integers(1, 4))
def test_ginsburg_agrees_with_quasinormal_on_charts(k, r):
    branches = list(range(1, len(k) + 1))
    d = IrregularCCData.build(branches, factors=[(dict(zip(branches, k)), 1), ({}, r - 1)] if r > 1 else [(dict(zip(branches, k)), 1)])
    assert ginsburg_limit(d) == cc_quasinormal(QuasiNormalData.from_irregularities(k, r))


@st.composite
def regular_data(draw):
    n_a = draw(st.integers(0, 2))
    n_b = draw(st.integers(0, 2))
    I_A = list(range(1, n_a + 1))
    I_B = list(range(n_a + 1, n_a + n_b + 1))
    reg = {S: draw(st.integers(0, 4)) for S in subsets(I_B)}
    r = draw(st.integers(1, 3))
    return I_A, I_B, reg, r


@settings(max_examples=100, deadline=None)
@given(regular_data())
def test_zero_exponential_part_is_classical(args):
    I_A, I_B, reg, r = args
    d = IrregularCCData.build(I_A, I_B, factors=[({}, r)], regular_cycle=reg)
    expected = classical_ginsburg(LagrangianCycle(reg), r, I_A)
    assert ginsburg_limit(d) == expected
    for key, c in expected.coefficients.items():
        assert c == r * reg[key - E(I_A)]


def test_overlap_is_normalized():
    d = IrregularCCData.build([1], [1, 2], factors=[({1: 2}, 1)])
    assert d.regular_branches == E({2})
    assert d.regular_cycle == {E(): 1, E({2}): 1}
    assert ginsburg_limit(d) == {E(): 1, E({1}): 3, E({2}): 1, E({1, 2}): 3}


def test_g_orders_do_not_matter():
    base = IrregularCCData.build([1, 2], [3], factors=[({1: 2, 2: 1}, 2)])
    other = IrregularCCData.build([1, 2], [3], factors=[({1: 2, 2: 1}, 2)], g_orders={1: 5, 2: 3, 3: 7})
    assert ginsburg_limit(base) == ginsburg_limit(other)
    with pytest.raises(InvalidInput):
        IrregularCCData.build([1], factors=[({1: 1}, 1)], g_orders={1: 0})


def test_regular_cycle_must_live_on_regular_branches():
    with pytest.raises(InvalidInput):
        IrregularCCData.build([1], [2], factors=[({1: 1}, 1)], regular_cycle={E({3}): 1})


@pytest.mark.parametrize(
    "k, diag",
    [([1, 1], (1, 3)), ([4], (5,)), ([0, 0, 0], (1, 1, 1)), ([2, 3], (1, 6))],
)
def test_toric_witness_examples(k, diag):
    w = toric_degree_witness(k)
    assert w.snf.diag == diag
    assert w.degree == sum(k) + 1


def test_toric_witness_matrices():
    w = toric_degree_witness([7])
    assert w.A == IntMatrix.from_rows([[-8]])
    assert toric_degree_witness([0, 0, 0]).A == IntMatrix.identity(3).scale(-1)
    with pytest.raises(InvalidInput):
        toric_degree_witness([1, -1])
    with pytest.raises(InvalidInput):
        toric_degree_witness([])


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(0, 9), min_size=1, max_size=5))
def test_toric_witness_property(k):
    w = toric_degree_witness(k)
    n = sum(k) + 1
    assert w.A @ w.C == IntMatrix.identity(len(k)).scale(n)


def test_quadric_assembly():
    c = quadric_limit_cycle()
    assert c == {"Z": 1, "K+": 2, "K-": 2, "L+": 1, "L-": 1, "0": 8}
    chi = quadric_chi()
    assert chi["0"] == 0 + 1 + 1 + 2 + 2 - 8 == -2
