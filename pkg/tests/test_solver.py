import itertools
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from nnecap.errors import BudgetExceeded, CapacityError, ParameterError
from nnecap.graph import ConfusionGraph, graph_power, nne_graph
from nnecap.solver import (LpProblem, fractional_clique_cover_number, max_independent_set,
                           maximal_cliques, solve_clique_cover_lp, verify_feasible, verify_packing)
from oracles import (adjacency_sets, alpha_by_subsets, alpha_exhaustive, alpha_networkx,
                     complete_graph, cycle_graph, lp_float, random_graph)


@pytest.mark.parametrize("m", [1, 2, 5, 9])
def test_mis_complete_and_empty(m):
    assert max_independent_set(complete_graph(m)).size == 1
    r = max_independent_set(ConfusionGraph.from_edges(m, []))
    assert r.size == m and r.witness == tuple(range(m))


def test_mis_nne_23():
    g = nne_graph(2, 3)
    r = max_independent_set(g)
    assert r.size == alpha_by_subsets(g) == 2
    assert g.is_independent(r.witness)
    assert g.is_independent([g.index_of((0, 0)), g.index_of((1, 2))])


@given(st.integers(1, 20), st.floats(0.05, 0.95), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_mis_matches_exhaustive(n, p, seed):
    g = random_graph(n, p, seed)
    r = max_independent_set(g)
    assert g.is_independent(r.witness) and len(r.witness) == r.size
    assert r.size == alpha_exhaustive(adjacency_sets(g))


def test_mis_budget():
    g = graph_power(nne_graph(2, 3), 2)
    with pytest.raises(BudgetExceeded) as info:
        max_independent_set(g, budget=3)
    assert info.value.best_size == len(info.value.witness)


@pytest.mark.parametrize("base", [(1, 3), (1, 4), (1, 5), (2, 3)])
def test_supermultiplicative(base):
    g = nne_graph(*base)
    a = max_independent_set(g).size
    assert max_independent_set(graph_power(g, 2)).size >= a * a


def test_maximal_cliques_examples():
    assert maximal_cliques(complete_graph(3)) == [(0, 1, 2)]
    path = ConfusionGraph.from_edges(3, [(0, 1), (1, 2)])
    assert maximal_cliques(path) == [(0, 1), (1, 2)]
    g = nne_graph(2, 3)
    inner = {g.index_of(x) for x in [(1, 1), (0, 1), (1, 0), (2, 1), (1, 2)]}
    assert g.is_clique(inner)
    assert any(inner <= set(c) for c in maximal_cliques(g))
    with pytest.raises(CapacityError):
        maximal_cliques(cycle_graph(7), budget=3)


@given(st.integers(1, 16), st.floats(0.1, 0.9), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_maximal_cliques_against_networkx(n, p, seed):
    g = random_graph(n, p, seed)
    ours = maximal_cliques(g)
    ref = sorted(tuple(sorted(c)) for c in nx.find_cliques(g.to_networkx()))
    assert ours == ref
    covered_edges = {e for c in ours for e in itertools.combinations(c, 2)}
    assert covered_edges == set(g.edges())
    for c in ours:
        assert g.is_clique(c)
        assert not any(all(g.adjacent(v, u) for u in c) for v in range(n) if v not in c)


def test_lp_complete_graph():
    s = fractional_clique_cover_number(complete_graph(6))
    assert s.value == 1
    assert s.assignment == {tuple(range(6)): Fraction(1)}


def test_lp_pentagon():
    s = fractional_clique_cover_number(cycle_graph(5))
    assert s.value == Fraction(5, 2)
    assert abs(lp_float(cycle_graph(5)) - 2.5) < 1e-9
    assert all(w == Fraction(1, 2) for w in s.assignment.values())
    assert s.vertex_weights == (Fraction(1, 2),) * 5


def test_lp_nne_23():
    g = nne_graph(2, 3)
    s = fractional_clique_cover_number(g)
    assert s.value <= Fraction(41, 5)
    assert abs(float(s.value) - lp_float(g)) < 1e-9
    assert s.value == Fraction(5, 2)


@given(st.integers(1, 10), st.floats(0.1, 0.9), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_lp_all_cliques_equals_maximal(n, p, seed):
    g = random_graph(n, p, seed)
    everything = [tuple(sorted(c)) for c in nx.enumerate_all_cliques(g.to_networkx())]
    full = solve_clique_cover_lp(LpProblem.from_graph(g, cliques=everything))
    restricted = fractional_clique_cover_number(g)
    assert full.value == restricted.value
    assert max_independent_set(g).size <= restricted.value


def test_lp_deterministic():
    g = random_graph(14, 0.5, 42)
    a, b = fractional_clique_cover_number(g), fractional_clique_cover_number(g)
    assert a.assignment == b.assignment and a.vertex_weights == b.vertex_weights


def test_verify_feasible_examples():
    g = random_graph(8, 0.4, 1)
    singletons = [(v,) for v in range(8)]
    p = LpProblem.from_graph(g, cliques=singletons + maximal_cliques(g))
    assert not verify_feasible(p, {})
    assert not verify_feasible(p, {c: 0 for c in singletons})
    assert verify_feasible(p, {c: 1 for c in singletons})
    assert not verify_feasible(p, {c: (-1 if c == (0,) else 1) for c in singletons})
    with pytest.raises(ParameterError):
        verify_feasible(p, {(0, 1, 2, 3, 4, 5, 6, 7): 1})
    assert verify_packing(p, [0] * 8)


def test_lp_problem_validation():
    g = ConfusionGraph.from_edges(3, [(0, 1)])
    with pytest.raises(ParameterError):
        LpProblem.from_graph(g, cliques=[(0, 1, 2)])
    with pytest.raises(ParameterError):
        LpProblem.from_graph(g, cliques=[(0, 1)])


def test_oracles_agree_on_small_graphs():
    for seed in range(10):
        g = random_graph(10, 0.4, seed)
        assert alpha_by_subsets(g) == alpha_exhaustive(adjacency_sets(g)) == alpha_networkx(g)


@given(st.integers(1, 14), st.floats(0.1, 0.9), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_lp_methods_agree(n, p, seed):
    prob = LpProblem.from_graph(random_graph(n, p, seed))
    fast, exact = solve_clique_cover_lp(prob), solve_clique_cover_lp(prob, method="exact")
    assert fast.value == exact.value
    assert verify_feasible(prob, fast.assignment) and verify_packing(prob, fast.vertex_weights)


@pytest.mark.parametrize("d,n,value", [(2, 5, Fraction(31, 5)), (3, 3, Fraction(29, 5)),
                                       (3, 4, Fraction(304, 25))])
def test_lp_methods_agree_nne(d, n, value):
    prob = LpProblem.from_graph(nne_graph(d, n))
    assert solve_clique_cover_lp(prob).value == value
    if d * n <= 10:
        assert solve_clique_cover_lp(prob, method="exact").value == value


def test_lp_unknown_method():
    with pytest.raises(ParameterError):
        solve_clique_cover_lp(LpProblem.from_graph(complete_graph(3)), method="simplex")
