"""Seeded instance families for tests that need a specific structure."""
import random
from itertools import combinations

from obscover.decomposition import chain_decompose, component_degree, corners
from obscover.graph import CoveringInstance, Multigraph, simple_graph
from obscover.randgen import HEX_EDGES, ladder_edges, random_instance, structured_host, valid_after


def low_degree_instances(seed, count, max_n=16):
    """Instances whose components all have degree 1 or 2.

    About a third get free links at component corners and dearer links
    elsewhere, which makes covering both corners internally the cheapest
    option and so exercises the negative gadget edge.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        host = structured_host(rng, rng.randint(6, max_n), extra=rng.randint(1, 6))
        dec = chain_decompose(host)
        if not dec.components or any(component_degree(host, c) not in (1, 2) for c in dec.components):
            continue
        inst = random_instance(rng, host)
        if rng.random() < 0.3:
            cheap = {x for c in dec.components for x in corners(host, c)}
            inner = set().union(*(host.induced_edges(c.nodes) for c in dec.components))
            cost = {e: 0 if e in inner and set(e) & cheap else c + 3 for e, c in inst.cost.items()}
            inst = CoveringInstance(host, 4, inst.links, cost)
        out.append((inst, dec))
    return out


def random_simple(rng, n, p):
    return simple_graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def four_regular(rng, n):
    """Random 4-regular multigraph by pairing four stubs per node; loops and parallels allowed."""
    stubs = [v for v in range(n) for _ in range(4)]
    rng.shuffle(stubs)
    return Multigraph(n, list(zip(stubs[::2], stubs[1::2])))


MIXES = (("sq",), ("sq", "lonely"), ("sq", "hex", "lad", "lonely"), ("sq", "sq", "lad"), ("hex", "sq"))
SIZES = {"sq": 4, "hex": 7, "lonely": 1}


def packed_host(rng, n, kinds):
    """Disjoint squares, ladders and hexagons, then as many valid extra edges as fit."""
    edges, m = [], 0
    while True:
        kind = rng.choice(kinds)
        size = SIZES.get(kind) or 2 * rng.randint(3, 4)
        if m + size > n:
            break
        if kind == "sq":
            edges += ladder_edges(m, 2)
        elif kind == "lad":
            edges += ladder_edges(m, size // 2)
        elif kind == "hex":
            edges += [(m + a, m + b) for a, b in HEX_EDGES]
        m += size
    adj = [set() for _ in range(m)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    for _ in range(60 * m):
        u, v = rng.sample(range(m), 2)
        if valid_after(adj, u, v):
            adj[u].add(v)
            adj[v].add(u)
    return simple_graph(m, [(u, v) for u in range(m) for v in adj[u] if u < v])


def repair_heavy_instances(seed, count, max_n=14):
    """Unit-cost instances with many high-degree squares and sparse links, so EC3 leaves work."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        host = packed_host(rng, rng.randint(8, max_n), rng.choice(MIXES))
        if not host.edges:
            continue
        out.append(random_instance(rng, host, p_link=rng.choice([0.5, 0.6, 0.7, 0.8]), weighted=False))
    return out


def random_3sat22(rng, k=3):
    """k variables, each twice positive and twice negative, dealt into clauses of three."""
    lits = [s * v for v in range(1, k + 1) for s in (1, 1, -1, -1)]
    rng.shuffle(lits)
    return [tuple(lits[i : i + 3]) for i in range(0, len(lits), 3)]


def random_3sat4(rng, k):
    """k variables (a multiple of 3), each occurring four times with random signs."""
    lits = [v * rng.choice((1, -1)) for v in range(1, k + 1) for _ in range(4)]
    rng.shuffle(lits)
    return [tuple(lits[i : i + 3]) for i in range(0, len(lits), 3)]


def random_tree(rng, n):
    return Multigraph(n, [(rng.randrange(v), v) for v in range(1, n)])
