from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from montyhall import closedform, enumeration
from montyhall.hypergeom import (
    DomainError,
    UnsupportedPredicate,
    UrnSample,
    chu_vandermonde_check,
    hypergeom_for,
    hypergeom_pmf,
    mh3_via_hypergeom,
    two_phase_joint,
)
from montyhall.scenario import OutcomePredicate, Scenario
from grid import count_predicates, game, shapes
from oracles import choose

TWELVE = Scenario(12, 5)


def test_pmf_examples():
    assert hypergeom_pmf(1, UrnSample(2, 1, 1)) == Fraction(1, 2)
    no_red = sum(1 for s in combinations(range(12), 3) if not set(s) & {0, 1, 2, 3, 4})
    assert hypergeom_pmf(0, UrnSample(12, 5, 3)) == Fraction(no_red, choose(12, 3)) == Fraction(35, 220)
    assert hypergeom_pmf(4, UrnSample(12, 5, 3)) == 0


def test_normalization_examples():
    assert chu_vandermonde_check(UrnSample(12, 5, 3)) == 1
    assert chu_vandermonde_check(UrnSample(1, 1, 1)) == 1
    assert sum(hypergeom_pmf(r, UrnSample(20, 7, 9)) for r in range(10)) == 1


def test_bad_urns():
    with pytest.raises(ValueError):
        UrnSample(3, 4, 1)
    with pytest.raises(ValueError):
        UrnSample(3, 1, -1)


def test_two_phase_example():
    assert two_phase_joint(3, 0, 3, 2, TWELVE, 2) == Fraction(10, 220) * Fraction(10, 21)
    total = sum(two_phase_joint(x, y, 3, 2, TWELVE, 2) for x in range(4) for y in range(3))
    assert total == 1
    no_switch_car = sum(two_phase_joint(x, 0, 3, 2, TWELVE, 2) for x in range(4))
    assert 1 - no_switch_car == Fraction(45000, 55440)
    with pytest.raises(DomainError):
        two_phase_joint(0, 0, 3, 2, Scenario(4, 1), 2)


def test_route_values():
    at_least = OutcomePredicate("posterior", "at_least", 1)
    assert mh3_via_hypergeom(TWELVE, 3, 2, 2, at_least) == Fraction(45000, 55440)
    assert mh3_via_hypergeom(Scenario(3, 1), 1, 1, 1, OutcomePredicate("all", "all_cars")) == 0
    exactly2 = game(12, 5, 3, 2, 2, OutcomePredicate("posterior", "exactly", 2))
    assert hypergeom_for(exactly2) == enumeration.outcome_probability(exactly2)
    with pytest.raises(UnsupportedPredicate):
        mh3_via_hypergeom(TWELVE, 3, 2, 2, OutcomePredicate("posterior", "position_is_car", 1))


@given(st.integers(0, 30), st.data())
def test_draws_and_reds_exchange(n_pop, data):
    reds = data.draw(st.integers(0, n_pop))
    draws = data.draw(st.integers(0, n_pop))
    r = data.draw(st.integers(0, n_pop))
    assert hypergeom_pmf(r, UrnSample(n_pop, reds, draws)) == hypergeom_pmf(r, UrnSample(n_pop, draws, reds))


def test_three_routes_on_grid():
    for shape in shapes(max_doors=8, max_picks=5):
        d, c, p, o, q = shape
        seqs = enumeration.enumerate_sequences(game(*shape))
        for pred in count_predicates(p, q):
            g = game(*shape, pred)
            value = hypergeom_for(g)
            assert value == enumeration.probability_where(seqs, g.plan, pred), (shape, pred)
            closed = closedform.closed_form_for(g)
            if closed is not None:
                assert closed == value, (shape, pred)
