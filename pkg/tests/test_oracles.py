import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import aut
from descs.errors import BudgetExceeded
from descs.oracles import (EnumerationBudget, oracle_controllable,
                           oracle_language, oracle_language_dfs,
                           oracle_sync_controllable, random_alphabet,
                           random_automaton, random_pair)
from descs.supremal import f_syn

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.mark.parametrize("kw", [{"max_depth": 0}, {"max_cases": -1}])
def test_budget_validation(kw):
    with pytest.raises(ValueError):
        EnumerationBudget(**kw)


def test_budget_rng_is_reproducible():
    b = EnumerationBudget(seed=7)
    assert b.rng().random() == b.rng().random()


def test_language_of_single_state():
    a = aut([], "x0", events=("a",))
    assert oracle_language(a, EnumerationBudget(3)) == ({()}, set())


def test_language_of_one_step():
    a = aut([("x0", "a", "x1")], marked=("x1",))
    assert oracle_language(a, EnumerationBudget(2)) == ({(), ("a",)},
                                                        {("a",)})


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_walk_orders_agree(seed):
    rng = random.Random(seed)
    a = random_automaton(rng, random_alphabet(rng, max_events=3),
                         rng.randint(1, 5), nondet=0.4)
    budget = EnumerationBudget(5)
    assert oracle_language(a, budget) == oracle_language_dfs(a, budget)


def test_sync_oracle_identity_and_dead_end(dead_end_pair):
    g = aut([("x0", "a", "x1"), ("x1", "u", "x0")], unctrl=("u",), det=True)
    assert oracle_sync_controllable(g, g)
    assert not oracle_sync_controllable(*dead_end_pair)


def test_sync_oracle_budget():
    r = aut([("q0", "a", "q1"), ("q1", "a", "q2"), ("q2", "a", "q3")], "q0",
            det=True)
    with pytest.raises(BudgetExceeded):
        oracle_sync_controllable(r, r, EnumerationBudget(max_depth=2))


def test_controllable_oracle_is_depth_bounded():
    g = aut([("x0", "a", "x1"), ("x1", "a", "x2"), ("x2", "u", "x3")],
            events=("a", "u"), unctrl=("u",))
    k = aut([("k0", "a", "k1"), ("k1", "a", "k2")], "k0", events=("a", "u"),
            unctrl=("u",), det=True)
    assert oracle_controllable(k, g, EnumerationBudget(2))
    assert not oracle_controllable(k, g, EnumerationBudget(3))


def test_generator_is_seeded():
    a = random_pair(random.Random(3), merged=f_syn)
    b = random_pair(random.Random(3), merged=f_syn)
    assert a[0] == b[0] and a[1] == b[1]


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_generator_respects_bounds(seed):
    r, g = random_pair(random.Random(seed), max_plant=4, max_spec=3,
                       merged=f_syn)
    assert len(g) <= 4
    assert r.is_deterministic
    assert r.alphabet == g.alphabet
    assert len(r.events) <= 4
