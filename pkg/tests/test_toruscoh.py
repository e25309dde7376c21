from itertools import product
from math import comb, gcd

import pytest
from hypothesis import given, settings, strategies as st

from ccycle.errors import InvalidInput
from ccycle.exactla import IntMatrix, smith_normal_form
from ccycle.toruscoh import (
    TorusProblem,
    closed_form_dims,
    count_components_on_grid,
    long_exact_dims,
    oracle_dims,
    phi_is_diffeomorphism_onto_component,
    phi_parametrization,
    restriction_rank,
    straighten,
)

from oracles import torus_dims_by_binomials


@pytest.mark.parametrize(
    "k, dims",
    [((2, 3), {1: 1, 2: 1}), ((2, 4, 6), {1: 2, 2: 4, 3: 2}), ((1, 1), {1: 1, 2: 1})],
)
def test_closed_form_examples(k, dims):
    assert closed_form_dims(TorusProblem.of(k)).nonzero() == dims


@pytest.mark.parametrize(
    "k, dims",
    [((2, 2), {1: 2, 2: 2}), ((1, 1, 1), {1: 1, 2: 2, 3: 1}), ((2, 3), {1: 1, 2: 1})],
)
def test_oracle_examples(k, dims):
    assert oracle_dims(TorusProblem.of(k)).nonzero() == dims


def test_problem_validation():
    with pytest.raises(InvalidInput):
        TorusProblem.of([3])
    with pytest.raises(InvalidInput):
        TorusProblem.of([1, 0])
    with pytest.raises(InvalidInput):
        TorusProblem(3, (1, 2))


@pytest.mark.parametrize("l", [2, 3])
def test_closed_form_equals_oracle_small_box(l):
    for k in product(range(1, 5), repeat=l):
        p = TorusProblem.of(k)
        assert closed_form_dims(p) == oracle_dims(p)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 30), min_size=2, max_size=5))
def test_closed_form_properties(k):
    p = TorusProblem.of(k)
    table = closed_form_dims(p)
    assert table.dims == torus_dims_by_binomials(len(k), gcd(*k))
    assert table.euler == 0
    assert oracle_dims(p) == table


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 12), min_size=2, max_size=5))
def test_straightening_is_unimodular(k):
    d, V = straighten(TorusProblem.of(k))
    assert d == gcd(*k)
    assert smith_normal_form(V).diag == (1,) * len(k)


@pytest.mark.parametrize("j, expected", [(1, 1), (0, 1)])
def test_restriction_rank_l2(j, expected):
    for k in [(1, 1), (2, 3), (4, 6)]:
        assert restriction_rank(TorusProblem.of(k), j) == expected


def test_restriction_rank_examples():
    assert restriction_rank(TorusProblem.of([1, 2, 3, 4]), 0) == 1
    assert restriction_rank(TorusProblem.of([2, 3, 4]), 2) == 1


@pytest.mark.parametrize("l", [2, 3])
def test_long_exact_sequence_consistency(l):
    for k in product(range(1, 4), repeat=l):
        p = TorusProblem.of(k)
        assert long_exact_dims(p).nonzero() == closed_form_dims(p).nonzero()


def test_long_exact_sequence_l4_sample():
    for k in [(1, 1, 1, 1), (2, 4, 6, 8), (3, 5, 7, 2)]:
        p = TorusProblem.of(k)
        assert long_exact_dims(p).nonzero() == closed_form_dims(p).nonzero()


@pytest.mark.parametrize(
    "k, cols",
    [((2, 3, 4), [[3, -2, 0], [-4, 4, -1]]), ((2, 3), [[3, -2]]), ((1, 1), [[1, -1]])],
)
def test_phi_examples(k, cols):
    assert phi_parametrization(TorusProblem.of(k)).columns() == cols


def test_phi_needs_coprime_weights():
    with pytest.raises(InvalidInput):
        phi_parametrization(TorusProblem.of([2, 4]))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 20), min_size=2, max_size=5))
def test_phi_lands_in_kernel_and_is_saturated(k):
    p = TorusProblem.of(k)
    assert phi_is_diffeomorphism_onto_component(p)
    if p.d == 1:
        P = phi_parametrization(p)
        assert all(sum(a * b for a, b in zip(k, c)) == 0 for c in P.columns())


@pytest.mark.parametrize("k", [(1, 1), (2, 3), (2, 2), (4, 6), (5, 5), (1, 1, 1), (2, 2, 4), (3, 3, 3)])
def test_grid_component_count(k):
    p = TorusProblem.of(k)
    assert count_components_on_grid(p) == p.d == closed_form_dims(p)[1]
