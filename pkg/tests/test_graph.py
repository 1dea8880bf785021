import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from obscover.errors import InvalidInstance, RejectedD
from obscover.graph import (
    CoveringInstance,
    LinkSolution,
    Multigraph,
    Obstruction,
    complement,
    enumerate_obstructions,
    is_feasible,
    obstructions_of,
    simple_graph,
    unit_instance,
    validate_instance,
    vertex_connectivity,
)
from obscover.randgen import HEX_EDGES
import oracles


def cycle(n):
    return simple_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return simple_graph(n, combinations(range(n), 2))


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(2, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return simple_graph(n, [e for e, keep in zip(pairs, mask) if keep])


def test_multigraph_equality_ignores_order():
    a = Multigraph(3, [(0, 1), (1, 2), (1, 2)])
    b = Multigraph(3, [(2, 1), (1, 0), (2, 1)])
    assert a == b
    assert a != Multigraph(3, [(0, 1), (1, 2)])


def test_loop_counts_twice():
    g = Multigraph(2, [(0, 0), (0, 1)])
    assert g.degree(0) == 3
    assert not g.is_simple()


def test_out_of_range_endpoint():
    with pytest.raises(InvalidInstance):
        Multigraph(2, [(0, 2)])


def test_complement_of_k4_is_empty():
    c = complement(complete(4))
    assert c.n == 4 and not c.edges


def test_pentagon_is_self_complementary():
    c = complement(cycle(5))
    assert len(c.edges) == 5
    assert all(len(c.adj[v]) == 2 for v in range(5))
    assert len(c.components()) == 1


def test_complement_rejects_multigraphs():
    with pytest.raises(InvalidInstance):
        complement(Multigraph(2, [(0, 1), (0, 1)]))


@given(graphs(max_n=8))
def test_complement_is_involution(g):
    assert complement(complement(g)).edge_set == g.edge_set


def test_connectivity_small_cases():
    assert vertex_connectivity(complete(5)) == 4
    assert vertex_connectivity(cycle(5)) == 2


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9))
def test_connectivity_matches_cut_enumeration(g):
    assert vertex_connectivity(g) == oracles.connectivity(g.n, g.edges)


def test_connectivity_random_dense():
    rng = random.Random(7)
    for _ in range(20):
        g = simple_graph(9, [e for e in combinations(range(9), 2) if rng.random() < 0.6])
        assert vertex_connectivity(g) == oracles.connectivity(9, g.edges)


def test_four_cycle_has_one_obstruction():
    obs = enumerate_obstructions(unit_instance(cycle(4)))
    assert [ob.canonical_key for ob in obs] == [((0, 2), (1, 3))]


def test_star_has_one_claw():
    obs = enumerate_obstructions(unit_instance(simple_graph(4, [(0, 1), (0, 2), (0, 3)])))
    assert [ob.canonical_key for ob in obs] == [((0,), (1, 2, 3))]
    assert not any(ob.is_square() for ob in obs)


def test_hexagon_template_obstructions():
    g = simple_graph(7, HEX_EDGES)
    obs = enumerate_obstructions(unit_instance(g))
    squares = [ob for ob in obs if ob.is_square()]
    stars = [ob for ob in obs if not ob.is_square()]
    assert len(squares) == 3 and len(stars) == 4
    assert {ob.canonical_key for ob in obs} == oracles.bicliques(7, g.edges, 4)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8), st.sampled_from([4, 5, 6]))
def test_enumeration_matches_bipartitions(g, d):
    obs = obstructions_of(g, d)
    keys = [ob.canonical_key for ob in obs]
    assert len(keys) == len(set(keys))
    assert set(keys) == oracles.bicliques(g.n, g.edges, d)


def test_enumeration_rejects_large_d():
    with pytest.raises(RejectedD):
        obstructions_of(cycle(4), 9)


def test_obstruction_canonical_form():
    ob = Obstruction.make([3, 1], [2, 0])
    assert ob.canonical_key == ((0, 2), (1, 3))
    assert Obstruction.make([5], [1, 2, 3]).canonical_key == ((5,), (1, 2, 3))


def test_validate_accepts_four_cycle():
    assert validate_instance(unit_instance(cycle(4)))


def test_validate_rejects_k23_with_witness():
    g = simple_graph(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)])
    res = validate_instance(unit_instance(g))
    assert not res.ok
    assert res.witness.canonical_key == ((0, 1), (2, 3, 4))


def test_validate_rejects_bad_links_and_costs():
    g = cycle(4)
    assert not validate_instance(CoveringInstance(g, 4, frozenset([(0, 2)])))
    assert not validate_instance(CoveringInstance(g, 4, frozenset([(0, 1)]), {(0, 1): Fraction(-1)}))


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8), st.sampled_from([4, 5]))
def test_validate_matches_forbidden_search(g, d):
    forbidden = any(oracles.bicliques(g.n, g.edges, s) for s in range(d + 1, g.n + 1))
    assert validate_instance(unit_instance(g, d)).ok == (not forbidden)


def test_feasibility_on_four_cycle():
    inst = unit_instance(cycle(4))
    for e in inst.links:
        assert is_feasible(inst, [e])
    assert not is_feasible(inst, [])
    assert is_feasible(inst, LinkSolution.build(inst, [(0, 1)]))


def test_solution_cost_is_exact():
    inst = CoveringInstance(cycle(4), 4, frozenset([(0, 1), (1, 2)]), {(0, 1): Fraction(1, 3), (1, 2): Fraction(1, 6)})
    assert LinkSolution.build(inst, inst.links).total_cost == Fraction(1, 2)
