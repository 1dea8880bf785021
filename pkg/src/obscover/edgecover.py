"""Edge covers with possibly negative weights, and the gadget reduction that
solves instances whose ladders and hexagons all touch the rest of the graph
through one or two edges."""
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import networkx as nx

from .decomposition import component_degree, corners
from .dp import ChainProblem, solve_chain
from .errors import IsolatedNode, NoSolution, UncoverableNode
from .graph import LinkSolution, Multigraph, norm


def _cost_list(g, c):
    if isinstance(c, dict):
        return [Fraction(c[e]) for e in g.edges]
    return [Fraction(x) for x in c]


def min_edge_cover(g, c):
    """Indices of a minimum-weight set of edges touching every node of ``g``.

    Negative edges are always taken. The nodes they leave uncovered are
    covered by cheapest incident edges, improved by a maximum-saving matching.
    """
    cost = _cost_list(g, c)
    for v in range(g.n):
        if not g.incidence[v]:
            raise IsolatedNode(f"node {v} has no incident edge")
    chosen = {i for i, x in enumerate(cost) if x < 0}
    covered = {x for i in chosen for x in g.edges[i]}
    todo = [v for v in range(g.n) if v not in covered]
    cheapest = {}
    for v in todo:
        cheapest[v] = min(g.incidence[v], key=lambda i: (cost[i], i))
    todo_set = set(todo)
    pair_edge = {}
    for i, (u, v) in enumerate(g.edges):
        if u != v and u in todo_set and v in todo_set:
            if (u, v) not in pair_edge or (cost[i], i) < (cost[pair_edge[(u, v)]], pair_edge[(u, v)]):
                pair_edge[(u, v)] = i
    saving = {}
    for (u, v), i in pair_edge.items():
        s = cost[cheapest[u]] + cost[cheapest[v]] - cost[i]
        if s > 0:
            saving[(u, v)] = s
    matched = set()
    if saving:
        scale = lcm(*(s.denominator for s in saving.values()))
        h = nx.Graph()
        for (u, v), s in sorted(saving.items()):
            h.add_edge(u, v, weight=int(s * scale))
        for u, v in nx.max_weight_matching(h):
            e = norm(u, v)
            chosen.add(pair_edge[e])
            matched.update(e)
    for v in todo:
        if v not in matched:
            chosen.add(cheapest[v])
    return frozenset(chosen)


def n_edge_cover(g, c, required):
    """Indices of a minimum-weight edge set touching every node in ``required``."""
    cost = _cost_list(g, c)
    required = set(required)
    for v in sorted(required):
        if not g.incidence[v]:
            raise UncoverableNode(f"node {v} has no incident edge")
    free = [v for v in range(g.n) if v not in required]
    if not free:
        return min_edge_cover(g, cost)
    apex = g.n
    h = Multigraph(g.n + 1, list(g.edges) + [(v, apex) for v in free])
    full = cost + [Fraction(0)] * len(free)
    picked = min_edge_cover(h, full)
    return frozenset(i for i in picked if i < len(g.edges))


def cover_cost(cost, picked):
    cost = list(cost)
    return sum((Fraction(cost[i]) for i in picked), Fraction(0))


@dataclass(frozen=True)
class GadgetTable:
    """Optimal internal solutions per corner state; a missing entry has no solution.

    Keys are '0', '1' for one corner and '0', '1', '2', '12' for two.
    """

    component: object
    corners: tuple
    entries: dict

    def cost(self, key):
        sol = self.entries.get(key)
        return None if sol is None else sol.total_cost


def _try(p, method):
    try:
        return solve_chain(p, method)
    except NoSolution:
        return None


def gadget_table(inst, comp, method="auto"):
    g = inst.graph
    edges = g.induced_edges(comp.nodes)
    weight = {e: inst.cost[e] for e in edges if e in inst.links}
    base = frozenset(v for v in comp.nodes if len(g.adj[v]) == 3)
    cs = tuple(sorted(corners(g, comp)))

    def run(needed, blocked):
        w = {e: x for e, x in weight.items() if not (set(e) & blocked)}
        req = (base - set(cs)) | needed
        return _try(ChainProblem(comp, edges, w, req), method)

    if len(cs) == 1:
        (v,) = cs
        entries = {"1": run({v}, set()), "0": run(set(), {v})}
    elif len(cs) == 2:
        a, b = cs
        entries = {
            "0": run(set(), {a, b}),
            "1": run({a}, {b}),
            "2": run({b}, {a}),
            "12": run({a, b}, set()),
        }
    else:
        raise ValueError("gadgets exist only for components of degree 1 or 2")
    return GadgetTable(comp, cs, entries)


def solve_degree12(inst, dec, method="auto"):
    """Cheapest links covering every degree-3 node and every square of the
    degree-1 and degree-2 components. Other components are treated as plain
    nodes."""
    g = inst.graph
    tables = [
        gadget_table(inst, comp, method)
        for comp in dec.components
        if component_degree(g, comp) in (1, 2)
    ]
    inside = {}
    for k, t in enumerate(tables):
        for v in t.component.nodes:
            inside[v] = k
    edges, costs, tags = [], [], []

    def add(pair, cost, tag):
        edges.append(pair)
        costs.append(cost)
        tags.append(tag)

    for e in sorted(inst.links):
        ka, kb = inside.get(e[0]), inside.get(e[1])
        if ka is None or ka != kb:
            add(e, inst.cost[e], ("link", e))
    required = {v for v in range(g.n) if len(g.adj[v]) == 3 and v not in inside}
    n = g.n
    fixed = []
    for k, t in enumerate(tables):
        ent = {key: t.cost(key) for key in t.entries}
        if len(t.corners) == 1:
            (v,) = t.corners
            if ent["0"] is None and ent["1"] is None:
                raise NoSolution(f"component at corner {v} cannot be covered")
            v0, v1 = n, n + 1
            n += 2
            required |= {v, v1}
            if ent["0"] is not None:
                add((v0, v1), ent["0"], ("gadget", k, "0"))
            if ent["1"] is not None:
                add((v1, v), ent["1"], ("gadget", k, "1"))
            continue
        a, b = t.corners
        single = [ent[key] for key in ("0", "1", "2") if ent[key] is not None]
        if not single and ent["12"] is None:
            raise NoSolution(f"component with corners {a},{b} cannot be covered")
        if not single:
            fixed.append(k)
            continue
        u0, u1 = n, n + 1
        n += 2
        required |= {a, b, u1}
        for key, pair in (("0", (u0, u1)), ("1", (u1, a)), ("2", (u1, b))):
            if ent[key] is not None:
                add(pair, ent[key], ("gadget", k, key))
        if ent["12"] is not None:
            add((a, b), ent["12"] - min(single), ("gadget", k, "v1v2"))
    # corners of fixed gadgets are covered internally
    for k in fixed:
        required -= set(tables[k].corners)
    aux = Multigraph(n, edges)
    picked = n_edge_cover(aux, costs, required)
    links = set()
    chosen = {k: set() for k in range(len(tables))}
    for i in picked:
        if tags[i][0] == "link":
            links.add(tags[i][1])
        else:
            chosen[tags[i][1]].add(tags[i][2])
    for k, t in enumerate(tables):
        key = decode_gadget(t, chosen[k], k in fixed)
        links |= t.entries[key].links
    links = frozenset(links)
    return LinkSolution(links, inst.total(links), {e: "degree12" for e in links})


def decode_gadget(table, picked, fixed=False):
    """Corner state for the gadget edges chosen by the edge cover."""
    if fixed:
        return "12"
    if len(table.corners) == 1:
        return "1" if "1" in picked else "0"
    if "v1v2" in picked:
        return "12"
    sides = picked & {"1", "2"}
    if len(sides) == 2:
        return "12"
    if sides:
        return sides.pop()
    return "0"
