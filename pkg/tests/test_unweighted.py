import random
from itertools import combinations

import pytest

from obscover.decomposition import HEX_TEMPLATE, chain_decompose
from obscover.edgecover import min_edge_cover
from obscover.errors import Infeasible, RepairError
from obscover.graph import CoveringInstance, Multigraph, is_feasible, simple_graph, unit_instance
from obscover.oracle import enumerate_optima, exact_opt
from obscover.randgen import instance_stream, ladder_edges
from obscover.unweighted import (
    RepairState,
    cover_long_components,
    cover_unit_ladders,
    covered_components,
    ec3,
    initial_state,
    necessary_links,
    solve_unweighted,
)
from generators import low_degree_instances, repair_heavy_instances

SQUARE = ladder_edges(0, 2)


def body_size(sol):
    return sum(1 for t in sol.stage_tags.values() if t in ("unit", "long", "peeled"))


def test_single_link_square_is_forced():
    g = simple_graph(4, SQUARE)
    forced, rest = necessary_links(unit_instance(g, links=[(0, 1)]))
    assert forced == {(0, 1)}
    assert not chain_decompose(rest.graph).components


def test_doubly_covered_forces_nothing():
    inst = unit_instance(simple_graph(4, SQUARE))
    forced, rest = necessary_links(inst)
    assert forced == frozenset() and rest == inst


def test_linkless_obstruction_is_infeasible():
    g = simple_graph(5, SQUARE + [(0, 4)])
    with pytest.raises(Infeasible):
        necessary_links(unit_instance(g, links=[(1, 3)]))


def test_forced_links_lie_in_every_optimum():
    checked = 0
    for inst in instance_stream(31, 120, max_n=10, weighted=False):
        if len(inst.links) > 14:
            continue
        forced, _ = necessary_links(inst)
        for sol in enumerate_optima(inst):
            assert forced <= sol.links
        checked += 1
    assert checked >= 40


def test_ec3_on_lonely_claws():
    g = simple_graph(8, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5), (5, 6), (5, 7)])
    inst = unit_instance(g)
    picked = ec3(inst, chain_decompose(g))
    assert {0, 3, 5} <= {x for e in picked for x in e}
    assert len(picked) == 2


def test_ec3_degree_one_square_matches_oracle():
    g = simple_graph(7, SQUARE + [(3, 4), (4, 5), (4, 6)])
    inst = unit_instance(g)
    assert len(ec3(inst, chain_decompose(g))) == exact_opt(inst).total_cost


def test_ec3_never_exceeds_opt():
    for inst in instance_stream(12, 60, max_n=12, weighted=False):
        _, rest = necessary_links(inst)
        forced = len(inst.links) - len(rest.links)
        dec = chain_decompose(rest.graph)
        assert len(ec3(rest, dec)) + forced <= exact_opt(inst).total_cost


def test_covered_components_keep_ec3():
    g = simple_graph(6, ladder_edges(0, 3))
    inst = unit_instance(g)
    dec = chain_decompose(g)
    st = cover_long_components(inst, dec, {(2, 3)})
    assert st.apx == {(2, 3)} and len(st.covered) == 1 and st.boundary == set()
    assert not st.trace


def test_open_hexagon_gets_at_most_one_link():
    # claw links 0-3, 1-2, 5-6 leave the square 2-3-5-4 open
    g = simple_graph(10, list(HEX_TEMPLATE) + [(1, 7), (4, 8), (6, 9)])
    inst = unit_instance(g)
    dec = chain_decompose(g)
    start = {(0, 3), (1, 2), (5, 6), (4, 8)}
    st = cover_long_components(inst, dec, start)
    assert len(st.covered) == 1
    assert len(st.apx) <= len(start) + 1
    assert is_feasible(inst, st.apx)
    assert [m["seed"] for m in st.trace] == ["hexagon"]


def test_unit_square_with_good_corners():
    g = simple_graph(8, SQUARE + [(0, 4), (1, 5), (2, 6), (3, 7)])
    inst = unit_instance(g)
    start = {(0, 4), (1, 5), (2, 6), (3, 7)}
    moves = []
    out = cover_unit_ladders(inst, chain_decompose(g), start, moves)
    assert len(out - start) == 1 and start <= out
    assert moves[0]["added"] == 1 and moves[0]["entering"] >= 3


def test_good_good_swap():
    g = simple_graph(14, SQUARE + ladder_edges(4, 2) + [(0, 4), (1, 8), (2, 9), (3, 10), (5, 11), (6, 12), (7, 13)])
    inst = unit_instance(g)
    start = {(0, 4), (1, 8), (2, 9), (3, 10), (5, 11), (6, 12), (7, 13)}
    moves = []
    out = cover_unit_ladders(inst, chain_decompose(g), start, moves)
    assert start - out == {(0, 4)}
    assert len(out - start) == 2
    assert moves[0]["swapped"] == ((0, 4),) and moves[0]["added"] == 1
    assert is_feasible(inst, out)


def test_audit_catches_broken_bookkeeping():
    g = simple_graph(8, SQUARE + [(0, 4), (1, 5), (2, 6), (3, 7)])
    inst = unit_instance(g)
    dec = chain_decompose(g)
    st = initial_state(inst, dec, {(0, 4), (1, 5), (2, 6), (3, 7)})
    st.apx.add((0, 1))
    with pytest.raises(RepairError):
        st.audit()


def test_four_cycle():
    sol = solve_unweighted(unit_instance(simple_graph(4, SQUARE)))
    assert sol.total_cost == 1


def test_costs_are_ignored():
    g = simple_graph(4, SQUARE)
    inst = CoveringInstance(g, 4, g.edge_set, {e: 7 for e in g.edges})
    sol = solve_unweighted(inst)
    assert len(sol.links) == 1 and sol.total_cost == 7


def test_trace_rows():
    trace = []
    sol = solve_unweighted(repair_heavy_instances(2, 1)[0], trace)
    assert [r["stage"] for r in trace] == ["necessary", "degree0", "ec3", "long", "unit", "total"]
    assert trace[-1]["size"] == len(sol.links)


def test_low_degree_instances_are_optimal():
    for inst, _ in low_degree_instances(6, 20):
        inst = unit_instance(inst.graph, links=inst.links)
        sol = solve_unweighted(inst)
        assert is_feasible(inst, sol)
        assert len(sol.links) == exact_opt(inst).total_cost


def test_repair_heavy_suite_against_ec3():
    moves = 0
    for inst in repair_heavy_instances(40, 120, max_n=40):
        trace = []
        sol = solve_unweighted(inst, trace)
        assert is_feasible(inst, sol)
        e3 = next(r["size"] for r in trace if r["stage"] == "ec3")
        assert 3 * body_size(sol) <= 4 * e3
        moves += sum(len(r.get("moves", [])) for r in trace)
    assert moves >= 15


def test_repair_heavy_suite_against_oracle():
    for inst in repair_heavy_instances(41, 60, max_n=14):
        sol = solve_unweighted(inst)
        assert is_feasible(inst, sol)
        assert 3 * len(sol.links) <= 4 * exact_opt(inst).total_cost
