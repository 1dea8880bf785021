"""Weighted 3/2-approximation for 4-obstruction covering.

Stages: peel degree-0 components, cover the corners of components of degree
at least three (EC), route EC into a 4-regular auxiliary graph, keep the
cheaper 2-factor as F1, cut the corners covered by F1 away from their
components, and solve the rest exactly with the degree-1/2 gadgets.
"""
from dataclasses import dataclass
from fractions import Fraction

from .decomposition import chain_decompose, component_degree, corners
from .dp import solve_degree0
from .edgecover import n_edge_cover, solve_degree12
from .errors import Infeasible, NoSolution, UncoverableNode
from .factorization import DUMMY, make_four_regular, two_factorize
from .graph import CoveringInstance, LinkSolution, Multigraph, norm, uncovered


@dataclass(frozen=True)
class AuxGraph:
    graph: Multigraph
    label: dict
    satisfied: dict
    dropped: tuple
    cost: dict


@dataclass(frozen=True)
class Reduced:
    instance: CoveringInstance
    decode: dict


def high_degree(inst, dec):
    return [c for c in dec.components if component_degree(inst.graph, c) >= 3]


def corner_cover(inst, dec):
    g = inst.graph
    need = set()
    for comp in high_degree(inst, dec):
        need |= corners(g, comp)
    if not need:
        return frozenset()
    order = sorted(inst.links)
    lg = Multigraph(g.n, order)
    try:
        picked = n_edge_cover(lg, [inst.cost[e] for e in order], need)
    except UncoverableNode as exc:
        raise Infeasible(str(exc))
    return frozenset(order[i] for i in picked)


def build_auxiliary(inst, dec, ec):
    """Links of EC become edges between component nodes g_i, in canonical order."""
    g = inst.graph
    comps = high_degree(inst, dec)
    where = {}
    for k, comp in enumerate(comps):
        for v in corners(g, comp):
            where[v] = k
    labels = [f"g{k}" for k in range(len(comps))]
    edges, edge_labels, label = [], [], {}
    touched, satisfied, dropped = set(), {}, []
    for e in sorted(ec, key=lambda e: (e, inst.cost[e])):
        ends = [x for x in e if x in where]
        fresh = [x for x in ends if x not in touched]
        touched.update(e)
        if not fresh:
            dropped.append(e)
            continue
        for x in fresh:
            satisfied[x] = e
        if len(fresh) == 2:
            pair = (where[fresh[0]], where[fresh[1]])
        else:
            other = e[0] if e[1] == fresh[0] else e[1]
            pair = (where[fresh[0]], len(labels))
            labels.append(f"{DUMMY}-for:{other}")
        label[len(edges)] = e
        edges.append(pair)
        edge_labels.append(e)
    aux = make_four_regular(Multigraph(len(labels), edges, labels, edge_labels))
    cost = {i: (inst.cost[aux.edge_labels[i]] if i in label else Fraction(0)) for i in range(len(aux.edges))}
    return AuxGraph(aux, label, satisfied, tuple(dropped), cost)


def select_f1(aux):
    pair = two_factorize(aux.graph)

    def total(idx):
        return sum((aux.cost[i] for i in idx), Fraction(0))

    idx = pair.idx1 if total(pair.idx1) <= total(pair.idx2) else pair.idx2
    return frozenset(aux.label[i] for i in idx if i in aux.label)


def reduce_degrees(inst, dec, f1):
    """Residual instance G'' plus a map from its edges back to original edges."""
    g = inst.graph
    comps = high_degree(inst, dec)
    owner = {}
    for k, comp in enumerate(comps):
        for v in comp.nodes:
            owner[v] = k
    corner_set = {v for comp in comps for v in corners(g, comp)}
    removed, cut, zeroed = set(), set(), set()
    for f in sorted(f1):
        a, b = f
        if a in owner and owner.get(a) == owner.get(b):
            zeroed.add(f)
            cut.update(x for x in f if x in corner_set)
        else:
            removed.add(f)
    dummy = {v: g.n + i for i, v in enumerate(sorted(cut))}

    def moved(x, y):
        return dummy[x] if x in dummy and owner.get(y) != owner[x] else x

    edges, decode, cost, links = [], {}, {}, set()
    for e in g.edges:
        if e in removed:
            continue
        new = norm(moved(*e), moved(e[1], e[0]))
        edges.append(new)
        decode[new] = e
        if e in inst.links:
            links.add(new)
            cost[new] = Fraction(0) if e in zeroed else inst.cost[e]
    labels = [None] * g.n + [f"{DUMMY}-of:{v}" for v in sorted(cut)]
    residual = CoveringInstance(Multigraph(g.n + len(cut), edges, labels), inst.d, frozenset(links), cost)
    return Reduced(residual, decode)


def solve_exact_low_degree(inst, dec=None):
    """Exact solution when every component has degree at most two."""
    dec = chain_decompose(inst.graph) if dec is None else dec
    g = inst.graph
    links, tags = set(), {}
    strip = set()
    for comp in dec.components:
        if component_degree(g, comp) == 0:
            sol = solve_degree0(inst, comp)
            links |= sol.links
            tags.update(sol.stage_tags)
            strip |= g.induced_edges(comp.nodes)
    rest = inst.restricted(strip) if strip else inst
    sol = solve_degree12(rest, chain_decompose(rest.graph))
    links |= sol.links
    tags.update(sol.stage_tags)
    return LinkSolution(frozenset(links), inst.total(links), tags)


def check_coverable(inst):
    bad = uncovered(inst, inst.links)
    if bad:
        raise Infeasible(f"obstruction {bad[0].canonical_key} contains no link", bad[0])


def solve_weighted(inst, trace=None):
    """3/2-approximate covering; ``trace`` (a list) receives per-stage costs."""
    check_coverable(inst)
    g = inst.graph
    dec = chain_decompose(g)
    log = trace.append if trace is not None else (lambda row: None)
    tags = {}
    zero_comps = [c for c in dec.components if component_degree(g, c) == 0]
    f0 = set()
    for comp in zero_comps:
        sol = solve_degree0(inst, comp)
        f0 |= sol.links
        tags.update(sol.stage_tags)
    log({"stage": "degree0", "cost": inst.total(f0)})
    ec = corner_cover(inst, dec)
    log({"stage": "corner_cover", "cost": inst.total(ec)})
    if ec:
        aux = build_auxiliary(inst, dec, ec)
        f1 = select_f1(aux)
    else:
        f1 = frozenset()
    log({"stage": "f1", "cost": inst.total(f1)})
    red = reduce_degrees(inst, dec, f1)
    strip = set()
    for comp in zero_comps:
        strip |= g.induced_edges(comp.nodes)
    residual = red.instance.restricted(strip) if strip else red.instance
    try:
        part = solve_exact_low_degree(residual)
    except NoSolution as exc:
        raise Infeasible(str(exc))
    f2 = frozenset(red.decode[e] for e in part.links)
    log({"stage": "residual", "cost": part.total_cost})
    for e in f2:
        tags[e] = "residual"
    for e in f1:
        tags[e] = "f1"
    links = frozenset(f0) | f1 | f2
    log({"stage": "total", "cost": inst.total(links)})
    return LinkSolution(links, inst.total(links), {e: tags.get(e, "residual") for e in links})
