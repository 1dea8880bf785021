"""Split a 4-regular multigraph into two 2-factors, and pad graphs to 4-regularity."""
from dataclasses import dataclass

from .errors import DegreeTooHigh, NotFourRegular
from .graph import Multigraph

DUMMY = "dummy"


@dataclass(frozen=True)
class TwoFactorPair:
    h1: Multigraph
    h2: Multigraph
    idx1: tuple
    idx2: tuple


def _sub(g, idx):
    labels = None if g.edge_labels is None else [g.edge_labels[i] for i in idx]
    return Multigraph(g.n, [g.edges[i] for i in idx], g.labels, labels)


def euler_orientation(g):
    """Orient every edge along an Euler circuit of its component; returns (tail, head) per edge."""
    used = [False] * len(g.edges)
    ptr = [0] * g.n
    heads = [None] * len(g.edges)
    for start in range(g.n):
        if all(used[i] for i in g.incidence[start]):
            continue
        # Hierholzer with an explicit stack of (node, edge used to arrive)
        stack = [(start, None)]
        circuit = []
        while stack:
            v, via = stack[-1]
            inc = g.incidence[v]
            while ptr[v] < len(inc) and used[inc[ptr[v]]]:
                ptr[v] += 1
            if ptr[v] == len(inc):
                stack.pop()
                circuit.append((v, via))
                continue
            i = inc[ptr[v]]
            used[i] = True
            a, b = g.edges[i]
            stack.append((b if a == v else a, i))
        circuit.reverse()
        prev = circuit[0][0]
        for v, via in circuit[1:]:
            heads[via] = (prev, v)
            prev = v
    return heads


def two_factorize(g):
    for v in range(g.n):
        if g.degree(v) != 4:
            raise NotFourRegular(f"node {v} has degree {g.degree(v)}")
    arcs = euler_orientation(g)
    # bipartite graph: tail copy -> head copy, every copy has degree 2
    at_out = [[] for _ in range(g.n)]
    at_in = [[] for _ in range(g.n)]
    for i, (a, b) in enumerate(arcs):
        at_out[a].append(i)
        at_in[b].append(i)
    side = [None] * len(arcs)
    for first in range(len(arcs)):
        if side[first] is not None:
            continue
        i, colour, on_in = first, 0, True
        while side[i] is None:
            side[i] = colour
            a, b = arcs[i]
            pair = at_in[b] if on_in else at_out[a]
            i = pair[1] if pair[0] == i else pair[0]
            colour ^= 1
            on_in = not on_in
    idx1 = tuple(i for i in range(len(arcs)) if side[i] == 0)
    idx2 = tuple(i for i in range(len(arcs)) if side[i] == 1)
    return TwoFactorPair(_sub(g, idx1), _sub(g, idx2), idx1, idx2)


def is_dummy(g, v):
    lab = g.label(v)
    return isinstance(lab, str) and lab.startswith(DUMMY)


def make_four_regular(g):
    """Pad with dummy nodes and edges labelled 'dummy'; original edges keep their indices."""
    deg = [g.degree(v) for v in range(g.n)]
    for v, d in enumerate(deg):
        if d > 4:
            raise DegreeTooHigh(f"node {v} has degree {d}")
    if all(d == 4 for d in deg):
        return g
    labels = list(g.labels) if g.labels is not None else [None] * g.n
    edges = list(g.edges)
    elabels = list(g.edge_labels) if g.edge_labels is not None else [None] * len(edges)
    n = g.n

    def add(u, v):
        edges.append((u, v))
        elabels.append(DUMMY)
        deg[u] += 1
        deg[v] += 1

    for v in range(g.n):
        if deg[v] < 4 and not is_dummy(g, v):
            w = n
            n += 1
            labels.append(f"{DUMMY}-of:{v}")
            deg.append(0)
            for _ in range(4 - deg[v]):
                add(v, w)
    dummies = [v for v in range(n) if isinstance(labels[v], str) and labels[v].startswith(DUMMY)]
    for v in dummies:
        while deg[v] <= 2:
            add(v, v)
    odd = [v for v in dummies if deg[v] == 3]
    for a, b in zip(odd[::2], odd[1::2]):
        add(a, b)
    return Multigraph(n, edges, labels, elabels)
