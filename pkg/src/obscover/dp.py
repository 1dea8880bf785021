"""Exact covering of the squares and required nodes inside one ladder or hexagon.

Ladders with more than ten nodes go through a column DP that first fixes the
edges among the four end nodes (the set D) and then sweeps the columns with
state (L_{i+1} chosen, v_{i+1} covered, u_{i+1} covered). Smaller components,
and any component whose squares the DP cannot see, are solved by an exact
branching search over the constraints.

Ties are broken by (cost, number of edges, sorted edge tuple).
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .decomposition import Ladder
from .errors import NoSolution
from .graph import LinkSolution, norm

FORCED_IN = "in"
FORCED_OUT = "out"
ENUM_LIMIT = 10


@dataclass(frozen=True)
class ChainProblem:
    component: object
    edges: frozenset
    weight: dict
    require: frozenset = frozenset()
    boundary_forced: dict = field(default_factory=dict)

    def __post_init__(self):
        edges = frozenset(norm(*e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "weight", {norm(*e): Fraction(w) for e, w in self.weight.items() if norm(*e) in edges})
        object.__setattr__(self, "require", frozenset(self.require))
        forced = {norm(*e): s for e, s in self.boundary_forced.items()}
        d = end_edges(self.component, edges)
        for e, s in forced.items():
            if e not in d or s not in (FORCED_IN, FORCED_OUT):
                raise ValueError(f"boundary constraint on {e} is not a free/in/out choice on D")
        object.__setattr__(self, "boundary_forced", forced)


def chain_problem(g, comp, weight, require=(), forced=None):
    return ChainProblem(comp, g.induced_edges(comp.nodes), weight, frozenset(require), forced or {})


def end_edges(comp, edges):
    if not isinstance(comp, Ladder):
        return frozenset()
    ends = comp.ends
    return frozenset(e for e in edges if e[0] in ends and e[1] in ends)


def local_squares(nodes, edges):
    adj = {v: set() for v in nodes}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    out = set()
    for a, b in combinations(sorted(nodes), 2):
        common = sorted(adj[a] & adj[b])
        for p, q in combinations(common, 2):
            out.add(frozenset((norm(a, p), norm(p, b), norm(b, q), norm(q, a))))
    return sorted(out, key=sorted)


def _key(cost, chosen):
    return (cost, len(chosen), tuple(sorted(chosen)))


def _constraints(p):
    """Edge sets each of which must meet F; None if one is already empty."""
    usable = {e for e in p.edges if e in p.weight and p.boundary_forced.get(e) != FORCED_OUT}
    cons = [frozenset(sq) & usable for sq in local_squares(p.component.nodes, p.edges)]
    for v in sorted(p.require):
        cons.append(frozenset(e for e in usable if v in e))
    return cons, usable


def solve_by_search(p):
    cons, usable = _constraints(p)
    forced = frozenset(e for e, s in p.boundary_forced.items() if s == FORCED_IN)
    if forced - usable:
        raise NoSolution("a forced edge has infinite weight")
    if any(not c for c in cons):
        raise NoSolution("some square or required node has no finite edge")
    order = sorted(usable)
    best = [None]

    def branch(chosen, banned, cost):
        if best[0] is not None and cost > best[0][0]:
            return
        open_con = next((c for c in cons if not (c & chosen)), None)
        if open_con is None:
            k = _key(cost, chosen)
            if best[0] is None or k < best[0]:
                best[0] = k
            return
        banned = set(banned)
        for e in order:
            if e in open_con and e not in banned:
                branch(chosen | {e}, banned, cost + p.weight[e])
                banned.add(e)

    branch(forced, frozenset(), sum((p.weight[e] for e in forced), Fraction(0)))
    if best[0] is None:
        raise NoSolution("no covering edge set exists")
    cost, _, edges = best[0]
    return frozenset(edges), cost


def _dp_supported(p):
    comp = p.component
    if not isinstance(comp, Ladder):
        return False
    d = end_edges(comp, p.edges)
    if not (p.edges <= comp.structural_edges | d):
        return False
    inner = {comp.square_edges(i) for i in range(comp.length)}
    return all(sq in inner or sq <= d for sq in local_squares(comp.nodes, p.edges))


def solve_by_dp(p):
    comp = p.component
    cols = comp.columns
    c = len(cols)
    w = p.weight
    d = sorted(end_edges(comp, p.edges))
    d_squares = [sq for sq in local_squares(comp.nodes, p.edges) if sq <= set(d)]
    best = None
    free_d = [e for e in d if p.boundary_forced.get(e) is None and e in w]
    fixed_in = [e for e in d if p.boundary_forced.get(e) == FORCED_IN]
    if any(e not in w for e in fixed_in):
        raise NoSolution("a forced edge has infinite weight")
    for r in range(len(free_d) + 1):
        for pick in combinations(free_d, r):
            dset = frozenset(fixed_in) | frozenset(pick)
            if any(not (sq & dset) for sq in d_squares):
                continue
            res = _sweep(comp, cols, c, w, p.require, dset, set(d))
            if res is not None:
                k = _key(res[0], res[1])
                if best is None or k < best:
                    best = k
    if best is None:
        raise NoSolution("no covering edge set exists")
    return frozenset(best[2]), best[0]


def _sweep(comp, cols, c, w, require, dset, d):
    """Column DP for one fixed choice of D edges; returns (cost, edges) or None."""

    def options(e):
        if e in d:
            return (e in dset,)
        return (False, True) if e in w else (False,)

    def dcov(x):
        return any(x in e for e in dset)

    base = _key(sum((w[e] for e in dset), Fraction(0)), dset)
    v0, u0 = cols[0]
    start = (norm(v0, u0) in dset, dcov(v0), dcov(u0))
    table = {start: base}
    for i in range(c - 1):
        v, u = cols[i]
        v2, u2 = cols[i + 1]
        t, b, l2 = norm(v, v2), norm(u, u2), norm(v2, u2)
        nxt = {}
        for (has_l, vcov, ucov), val in table.items():
            for xt in options(t):
                if v in require and not (vcov or xt):
                    continue
                for xb in options(b):
                    if u in require and not (ucov or xb):
                        continue
                    for xl in options(l2):
                        if not (has_l or xt or xb or xl):
                            continue
                        added = [e for e, x in ((t, xt), (b, xb), (l2, xl)) if x and e not in d]
                        cost = val[0] + sum((w[e] for e in added), Fraction(0))
                        edges = tuple(sorted(val[2] + tuple(added)))
                        state = (xl, xt or xl or dcov(v2), xb or xl or dcov(u2))
                        k = (cost, len(edges), edges)
                        if state not in nxt or k < nxt[state]:
                            nxt[state] = k
        table = nxt
    vl, ul = cols[-1]
    finals = [
        val for (_, vcov, ucov), val in table.items()
        if (vcov or vl not in require) and (ucov or ul not in require)
    ]
    if not finals:
        return None
    best = min(finals)
    return best[0], best[2]


def solve_chain(p, method="auto"):
    """Minimum-weight F meeting every square and required node of the component.

    ``method`` is 'auto', 'dp' or 'enum'; 'dp' still defers to the search when
    the component has squares the column sweep does not model.
    """
    use_dp = method == "dp" or (method == "auto" and len(p.component.nodes) > ENUM_LIMIT)
    if use_dp and _dp_supported(p):
        edges, cost = solve_by_dp(p)
    else:
        edges, cost = solve_by_search(p)
    return LinkSolution(edges, cost, {e: "dp" for e in edges})


def degree0_problem(inst, comp):
    g = inst.graph
    edges = g.induced_edges(comp.nodes)
    weight = {e: inst.cost[e] for e in edges if e in inst.links}
    require = frozenset(v for v in comp.nodes if len(g.adj[v]) == 3)
    return ChainProblem(comp, edges, weight, require)


def solve_degree0(inst, comp, method="auto"):
    sol = solve_chain(degree0_problem(inst, comp), method)
    return LinkSolution(sol.links, sol.total_cost, {e: "degree0" for e in sol.links})
