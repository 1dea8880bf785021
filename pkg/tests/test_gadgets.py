import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from obscover.errors import FlavorMismatch, InvalidInstance, NotSatisfying, ParseError, RejectedD, SizeExceeded, WrongSize
from obscover.gadgets import (
    GENERAL,
    SAT4,
    SAT22,
    CnfFormula,
    TapInstance,
    assignment_to_solution,
    brute_force_sat,
    extend_to_d,
    format_dimacs,
    normalize_3sat4,
    occurrences,
    parse_dimacs,
    sat_layout,
    sat_to_covering,
    solution_to_assignment,
    tap_feasible,
    tap_to_knca,
)
from obscover.graph import Multigraph, enumerate_obstructions, is_feasible, validate_instance
from obscover.oracle import exact_opt
from obscover.reduction import augmented
from generators import random_3sat4, random_3sat22, random_tree
import oracles

TOY = CnfFormula(1, ((1, -1), (1, -1)), SAT22)
UNSAT = CnfFormula(3, ((1, 2, 2), (1, -2, -2), (-1, 3, 3), (-1, -3, -3)), SAT22)


def test_flavor_checks():
    with pytest.raises(FlavorMismatch):
        CnfFormula(1, ((1, 1, -1),), SAT22)
    with pytest.raises(InvalidInstance):
        CnfFormula(1, ((2,),))
    with pytest.raises(InvalidInstance):
        CnfFormula(1, ((1, 1, 1, 1),))


def test_dimacs_round_trip():
    f = CnfFormula(3, tuple(random_3sat22(random.Random(1))), SAT22)
    g = parse_dimacs(format_dimacs(f))
    assert g == f and g.flavor == SAT22


@pytest.mark.parametrize(
    "text, line",
    [("1 2 0\n", 1), ("p cnf 2 1\np cnf 2 1\n", 2), ("p cnf 2 1\n1 x 0\n", 2), ("p cnf 1 1\n2 0\n", 2)],
)
def test_dimacs_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_dimacs(text)
    assert exc.value.line == line


def test_normalize_keeps_3sat22():
    assert normalize_3sat4(UNSAT) is UNSAT


def test_normalize_rejects_general():
    with pytest.raises(FlavorMismatch):
        normalize_3sat4(CnfFormula(1, ((1,),)))


def test_pure_variable_is_removed():
    # variable 1 is pure positive
    clauses = ((1, 2, -3), (1, -2, 3), (1, 2, 3), (1, -2, -3))
    f = CnfFormula(3, clauses, SAT4)
    g = normalize_3sat4(f)
    assert g.flavor == SAT22
    assert oracles.dpll(g.clauses) == oracles.satisfiable(3, clauses)


def test_three_one_variable_chain():
    clauses = ((1, 2, 3), (1, -2, -3), (1, 2, 3), (-1, -2, -3))
    f = CnfFormula(3, clauses, SAT4)
    g = normalize_3sat4(f)
    pos, neg = occurrences(g.clauses)
    assert all(pos[v] == 2 and neg[v] == 2 for v in range(1, g.variables + 1))
    assert g.variables == 6
    assert oracles.dpll(g.clauses) == oracles.satisfiable(3, clauses)


def test_normalize_is_equisatisfiable():
    rng = random.Random(12)
    seen = Counter()
    for _ in range(150):
        k = rng.choice([3, 6, 9])
        clauses = random_3sat4(rng, k)
        if rng.random() < 0.3:
            # conjoin a small unsatisfiable 3sat22 core so both outcomes occur
            off = k
            clauses += [tuple(l + off if l > 0 else l - off for l in c) for c in UNSAT.clauses]
            k += 3
        f = CnfFormula(k, tuple(clauses), SAT4)
        g = normalize_3sat4(f)
        pos, neg = occurrences(g.clauses)
        assert all(pos[v] == 2 and neg[v] == 2 for v in range(1, g.variables + 1))
        sat = oracles.dpll(f.clauses)
        assert oracles.dpll(g.clauses) == sat
        seen[sat] += 1
    assert seen[True] and seen[False]


def test_instance_shape():
    rng = random.Random(3)
    for _ in range(10):
        f = CnfFormula(3, tuple(random_3sat22(rng)), SAT22)
        inst = sat_to_covering(f)
        assert inst.n == len(f.clauses) + 18 and len(inst.links) == 24
        assert validate_instance(inst)
        assert sat_layout(inst) == (4, 3)


def test_covering_needs_3sat22():
    with pytest.raises(FlavorMismatch):
        sat_to_covering(CnfFormula(1, ((1, 1, 1), (1, -1, -1)), GENERAL))


def test_toy_formula():
    inst = sat_to_covering(TOY)
    assert validate_instance(inst)
    sol = assignment_to_solution(TOY, {1: True})
    assert len(sol.links) == 4 and is_feasible(inst, sol)
    assert solution_to_assignment(TOY, sol) == {1: True}


def test_unsat_core_needs_more_links():
    inst = sat_to_covering(UNSAT)
    assert brute_force_sat(UNSAT) is None
    assert exact_opt(inst, max_n=100).total_cost > 12


def test_certificate_errors():
    f = CnfFormula(3, ((1, 2, 3), (-1, -2, -3), (1, 2, 3), (-1, -2, -3)), SAT22)
    with pytest.raises(NotSatisfying):
        assignment_to_solution(f, {1: True, 2: True, 3: True})
    sol = assignment_to_solution(f, {1: True, 2: False, 3: False})
    with pytest.raises(WrongSize):
        solution_to_assignment(f, list(sol.links)[:-1])
    inst = sat_to_covering(f)
    bogus = sorted(inst.links)[:12]
    with pytest.raises(NotSatisfying):
        solution_to_assignment(f, bogus)


def test_round_trip_over_all_assignments():
    rng = random.Random(5)
    for _ in range(10):
        f = CnfFormula(3, tuple(random_3sat22(rng)), SAT22)
        inst = sat_to_covering(f)
        for mask in range(8):
            a = {v: bool(mask >> (v - 1) & 1) for v in (1, 2, 3)}
            if not f.satisfied_by(a):
                continue
            sol = assignment_to_solution(f, a)
            assert len(sol.links) == 12 and is_feasible(inst, sol)
            assert f.satisfied_by(solution_to_assignment(f, sol))


def test_extension_d5_toy():
    base = sat_to_covering(TOY)
    ext = extend_to_d(base, 5)
    g = ext.graph
    assert validate_instance(ext)
    for c in range(len(TOY.clauses)):
        assert len(g.adj[c]) == len(base.graph.adj[c]) + 1
    assert ext.links == base.links
    keys = {ob.canonical_key for ob in enumerate_obstructions(ext)}
    assert keys == oracles.bicliques(g.n, g.edges, 5)


def test_extension_d6_has_k24():
    ext = extend_to_d(sat_to_covering(TOY), 6)
    shapes = Counter((len(ob.side_x), len(ob.side_y)) for ob in enumerate_obstructions(ext))
    assert shapes[(2, 4)] > 0


def test_extension_rejects_d():
    base = sat_to_covering(TOY)
    for d in (4, 9):
        with pytest.raises(RejectedD):
            extend_to_d(base, d)


def test_extension_preserves_feasibility():
    rng = random.Random(9)
    f = CnfFormula(3, tuple(random_3sat22(rng)), SAT22)
    base = sat_to_covering(f)
    ext = extend_to_d(base, 5)
    links = sorted(base.links)
    for _ in range(200):
        pick = [e for e in links if rng.random() < 0.6]
        assert is_feasible(base, pick) == is_feasible(ext, pick)


def test_tap_two_node_path():
    t = TapInstance(Multigraph(2, [(0, 1)]), frozenset())
    red = tap_to_knca(t, 2)
    g = red.instance.graph
    assert g.n == 8
    assert [set(c) for c in oracles.vertex_cuts(g.n, g.edges, 2)] == [set(red.edge_cliques[0])]
    assert oracles.connectivity(g.n, g.edges) == 2


def test_tap_star():
    t = TapInstance(Multigraph(4, [(0, 1), (0, 2), (0, 3)]), frozenset())
    red = tap_to_knca(t, 2)
    g = red.instance.graph
    cuts = oracles.vertex_cuts(g.n, g.edges, 2)
    assert sorted(map(sorted, cuts)) == sorted(map(sorted, red.edge_cliques))
    assert not oracles.vertex_cuts(g.n, g.edges, 1)


def test_tap_limits():
    t = TapInstance(Multigraph(2, [(0, 1)]), frozenset())
    with pytest.raises(InvalidInstance):
        tap_to_knca(t, 0)
    big = TapInstance(Multigraph(300, [(v - 1, v) for v in range(1, 300)]), frozenset())
    with pytest.raises(SizeExceeded):
        tap_to_knca(big, 3)
    with pytest.raises(InvalidInstance):
        TapInstance(Multigraph(3, [(0, 1)]), frozenset())


def test_tap_links_map_both_ways():
    rng = random.Random(2)
    tree = random_tree(rng, 5)
    links = frozenset({(0, 4), (1, 3), (2, 4)})
    t = TapInstance(tree, links, {e: rng.randint(1, 5) for e in links})
    red = tap_to_knca(t, 2)
    assert red.to_tap(red.to_knca(links)) == links
    for e in links:
        assert red.instance.cost[red.link_map[e]] == t.cost[e]
