"""Budgets, assignments, strategies, and the strategy transforms."""

import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import complete, graph, path, star, winkler_strategy
from hatcheck.errors import GuardExceededError
from hatcheck.game import (
    ColorBudget,
    Strategy,
    enumerate_assignments,
    enumerate_strategies,
    guess_set_count,
    guesses_at,
    induce_strategy_after_fixing,
    is_defeating,
    lift_to_supergraph,
    merge_two_guess,
    nth_guess_set,
    random_strategy,
    restrict_strategy_to_vertices,
    restrict_to_budget,
    strategy_from_text,
    strategy_space_size,
    strategy_to_text,
    table_size,
)
from hatcheck.graphs import Graph
from hatcheck.guards import Guards
from hatcheck.rng import SplitMix64


# ---------------------------------------------------------------------------
# budgets and assignments
# ---------------------------------------------------------------------------

def test_budget_validation():
    with pytest.raises(ValueError):
        ColorBudget((2, 0))
    b = ColorBudget((3, 2))
    assert b.product() == 6
    assert b.contains((2, 1)) and not b.contains((3, 0))
    assert ColorBudget.uniform(3, 4).sizes == (4, 4, 4)


def test_enumerate_assignments_counts_and_order():
    assert len(list(enumerate_assignments(ColorBudget((2, 2))))) == 4
    assert list(enumerate_assignments(ColorBudget((1, 1, 1)))) == [(0, 0, 0)]
    seq = list(enumerate_assignments(ColorBudget((3, 2))))
    assert len(seq) == 6 and seq == sorted(seq)


def test_enumerate_assignments_guard():
    with pytest.raises(GuardExceededError):
        list(enumerate_assignments(ColorBudget((100, 100, 100, 100)), Guards()))


# ---------------------------------------------------------------------------
# guesses and defeat
# ---------------------------------------------------------------------------

def test_winkler_guesses():
    s = winkler_strategy()
    # Alice guesses what she sees on Bob; Bob guesses the opposite
    assert guesses_at(s, 0, (0, 1)) == (1,)
    assert guesses_at(s, 1, (0, 1)) == (1,)


def test_isolated_vertex_constant_table():
    g = Graph(1, frozenset())
    s = Strategy(g, ColorBudget((2,)), 1, (((0,),),))
    assert guesses_at(s, 0, (0,)) == (0,)
    assert guesses_at(s, 0, (1,)) == (0,)
    assert not is_defeating(s, (0,))
    assert is_defeating(s, (1,))


def test_budget_one_never_defeated():
    g = Graph(1, frozenset())
    s = Strategy(g, ColorBudget((1,)), 1, (((0,),),))
    assert not is_defeating(s, (0,))


def test_winkler_never_defeated():
    s = winkler_strategy()
    assert not any(is_defeating(s, a) for a in itertools.product(range(2), repeat=2))


def test_entry_index_mixed_radix():
    # middle of P3 sees vertices 0 and 2 in ascending order, last fastest
    g = path(3)
    b = ColorBudget((2, 3, 4))
    tables = (
        tuple((0,) for _ in range(3)),
        tuple((i % 3,) for i in range(8)),
        tuple((0,) for _ in range(3)),
    )
    s = Strategy(g, b, 1, tables)
    assert guesses_at(s, 1, (1, 0, 3)) == ((1 * 4 + 3) % 3,)


def test_defeat_monotone_under_budget_extension():
    # a defeating assignment survives arbitrary extension of the tables
    g = complete(2)
    small = ColorBudget((2, 2))
    rng = SplitMix64(5)
    for _ in range(30):
        s = random_strategy(g, small, 1, rng)
        defeats = [
            a for a in enumerate_assignments(small) if is_defeating(s, a)
        ]
        big = ColorBudget((4, 3))
        ext = random_strategy(g, big, 1, rng)
        tables = []
        for v in range(2):
            rows = list(ext.tables[v])
            for idx in range(table_size(g, small, v)):
                rows[idx] = s.tables[v][idx]  # small-budget views keep old guesses
            tables.append(tuple(rows))
        lifted = Strategy(g, big, 1, tuple(tables))
        for a in defeats:
            assert is_defeating(lifted, a)


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------

def test_induce_fixing_k2():
    s = winkler_strategy()
    induced, kept = induce_strategy_after_fixing(s, {1: 1})
    assert kept == (0,)
    assert induced.tables == (((1,),),)


def test_induce_fixing_empty_is_identity():
    s = winkler_strategy()
    induced, kept = induce_strategy_after_fixing(s, {})
    assert kept == (0, 1) and induced.tables == s.tables


def test_induce_fixing_locality():
    g = path(3)
    b = ColorBudget.uniform(3, 2)
    s = random_strategy(g, b, 1, SplitMix64(1))
    induced, kept = induce_strategy_after_fixing(s, {2: 1})
    assert kept == (0, 1)
    assert induced.tables[0] == s.tables[0]


def test_induce_commutes_with_guesses():
    # exhaustive on graphs up to 4 vertices: evaluating the induced
    # strategy equals evaluating the original with the fixed part pinned
    rng = SplitMix64(9)
    for g in (path(3), complete(3), star(3), path(4)):
        n = g.vertex_count
        b = ColorBudget(tuple(2 + (v % 2) for v in range(n)))
        for _ in range(5):
            s = random_strategy(g, b, 1, rng)
            for k in range(1, n):
                for fixed_set in itertools.combinations(range(n), k):
                    fixed = {v: b.sizes[v] - 1 for v in fixed_set}
                    induced, kept = induce_strategy_after_fixing(s, fixed)
                    for psi in enumerate_assignments(induced.budget):
                        full = [0] * n
                        for i, v in enumerate(kept):
                            full[v] = psi[i]
                        for v, c in fixed.items():
                            full[v] = c
                        for i, v in enumerate(kept):
                            assert guesses_at(induced, i, psi) == guesses_at(
                                s, v, tuple(full)
                            )


def test_merge_two_guess():
    g = Graph(1, frozenset())
    b = ColorBudget((2,))
    a = Strategy(g, b, 1, (((0,),),))
    c = Strategy(g, b, 1, (((1,),),))
    assert merge_two_guess(a, a).tables == (((0,),),)
    assert merge_two_guess(a, c).tables == (((0, 1),),)


def test_merge_winkler_pair_covers_both_colors():
    g = complete(2)
    b = ColorBudget.uniform(2, 2)
    match = Strategy(g, b, 1, (((0,), (1,)), ((0,), (1,))))
    oppose = Strategy(g, b, 1, (((1,), (0,)), ((1,), (0,))))
    merged = merge_two_guess(match, oppose)
    assert merged.guess_count == 2
    for v in range(2):
        for entry in merged.tables[v]:
            assert set(entry) == {0, 1}


def test_restrict_to_budget_soundness():
    # defeating the restricted strategy defeats the original
    g = path(3)
    big = ColorBudget.uniform(3, 4)
    small = ColorBudget((2, 3, 2))
    rng = SplitMix64(3)
    for _ in range(40):
        s = random_strategy(g, big, 1, rng)
        shrunk = restrict_to_budget(s, small)
        assert shrunk.budget == small
        for a in enumerate_assignments(small):
            if is_defeating(shrunk, a):
                assert is_defeating(s, a)


def test_restrict_to_vertices():
    g = path(3)
    b = ColorBudget.uniform(3, 2)
    s = random_strategy(g, b, 1, SplitMix64(4))
    # {0} sees only vertex 1, which is dropped: rejected
    with pytest.raises(ValueError):
        restrict_strategy_to_vertices(s, (0,))
    sub, kept = restrict_strategy_to_vertices(s, (0, 1, 2))
    assert kept == (0, 1, 2) and sub.tables == s.tables


def test_lift_to_supergraph():
    # lifted tables ignore the new neighbors
    sub = path(3)
    sup = complete(3)
    b = ColorBudget.uniform(3, 2)
    rng = SplitMix64(8)
    for _ in range(20):
        s = random_strategy(sub, b, 1, rng)
        lifted = lift_to_supergraph(s, sup)
        for a in enumerate_assignments(b):
            for v in range(3):
                assert guesses_at(lifted, v, a) == guesses_at(s, v, a)


# ---------------------------------------------------------------------------
# enumeration, sampling, serialization
# ---------------------------------------------------------------------------

def test_guess_sets_singletons_then_pairs():
    assert guess_set_count(3, 1) == 3
    assert guess_set_count(3, 2) == 6
    sets = [nth_guess_set(3, 2, i) for i in range(6)]
    assert sets == [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2)]


def test_strategy_space_enumeration():
    g = complete(2)
    b = ColorBudget((2, 3))
    count = strategy_space_size(g, b, 1)
    assert count == (2 ** 3) * (3 ** 2)
    seen = list(enumerate_strategies(g, b, 1))
    assert len(seen) == count == len(set(seen))
    for s in seen[:50]:
        for v in range(2):
            assert all(x < b.sizes[v] for e in s.tables[v] for x in e)


def test_random_strategy_deterministic():
    g = star(2)
    b = ColorBudget.uniform(3, 3)
    a = [random_strategy(g, b, 2, SplitMix64(11)) for _ in range(5)]
    b2 = [random_strategy(g, b, 2, SplitMix64(11)) for _ in range(5)]
    assert a == b2


def test_strategy_text_roundtrip():
    g = path(3)
    b = ColorBudget((2, 3, 2))
    rng = SplitMix64(6)
    for gc in (1, 2):
        for _ in range(10):
            s = random_strategy(g, b, gc, rng)
            assert strategy_from_text(strategy_to_text(s), g, b) == s


@given(st.integers(0, 2 ** 64 - 1))
def test_splitmix_range(seed):
    rng = SplitMix64(seed)
    for bound in (1, 2, 7, 100):
        x = rng.below(bound)
        assert 0 <= x < bound
