"""Seeded random valid degree-3 hosts and covering instances, for benchmarks and tests."""
import random
from fractions import Fraction

from .graph import CoveringInstance, simple_graph, uncovered

HEX_EDGES = [(0, 1), (1, 2), (2, 3), (0, 3), (2, 4), (4, 5), (3, 5), (5, 6), (6, 0)]


def valid_after(adj, u, v):
    if v in adj[u] or u == v or len(adj[u]) >= 3 or len(adj[v]) >= 3:
        return False
    adj[u].add(v)
    adj[v].add(u)
    ok = all(len(adj[a] & adj[u]) < 3 for a in range(len(adj)) if a != u) and all(
        len(adj[a] & adj[v]) < 3 for a in range(len(adj)) if a != v
    )
    adj[u].discard(v)
    adj[v].discard(u)
    return ok


def random_host(rng, n, m):
    """Random simple graph, max degree 3, no K_{2,3}."""
    adj = [set() for _ in range(n)]
    for _ in range(20 * m):
        if sum(len(a) for a in adj) // 2 >= m:
            break
        u, v = rng.sample(range(n), 2)
        if valid_after(adj, u, v):
            adj[u].add(v)
            adj[v].add(u)
    return simple_graph(n, [(u, v) for u in range(n) for v in adj[u] if u < v])


def ladder_edges(base, c):
    cols = [(base + 2 * i, base + 2 * i + 1) for i in range(c)]
    es = [cols[0]]
    for i in range(c - 1):
        es += [cols[i + 1], (cols[i][0], cols[i + 1][0]), (cols[i][1], cols[i + 1][1])]
    return es


def structured_host(rng, max_n, extra=None):
    """Squares, ladders and hexagons glued by random edges at spare degree."""
    edges, n = [], 0
    while True:
        kind = rng.choice(["sq", "sq", "lad", "hex", "lonely", "lonely"])
        size = {"sq": 4, "lad": 2 * rng.randint(3, 4), "hex": 7, "lonely": 1}[kind]
        if n + size > max_n:
            break
        if kind == "sq":
            edges += ladder_edges(n, 2)
        elif kind == "lad":
            edges += ladder_edges(n, size // 2)
        elif kind == "hex":
            edges += [(n + a, n + b) for a, b in HEX_EDGES]
        n += size
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    extra = rng.randint(n // 2, n) if extra is None else extra
    for _ in range(extra * 6):
        if extra <= 0:
            break
        u, v = rng.sample(range(n), 2) if n >= 2 else (0, 0)
        if u != v and valid_after(adj, u, v):
            adj[u].add(v)
            adj[v].add(u)
            extra -= 1
    return simple_graph(n, [(u, v) for u in range(n) for v in adj[u] if u < v])


def random_instance(rng, host, p_link=0.85, weighted=True, max_tries=50):
    """Links and costs on ``host`` such that every obstruction contains a link."""
    for _ in range(max_tries):
        links = {e for e in host.edges if rng.random() < p_link}
        if weighted:
            cost = {e: Fraction(rng.randint(0, 9), rng.choice([1, 1, 2, 3])) for e in links}
        else:
            cost = {e: 1 for e in links}
        inst = CoveringInstance(host, 4, frozenset(links), cost)
        if not uncovered(inst, links):
            return inst
    links = host.edge_set
    cost = {e: Fraction(rng.randint(1, 9)) if weighted else 1 for e in links}
    return CoveringInstance(host, 4, links, cost)


def instance_stream(seed, count, max_n=14, weighted=True):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(4, max_n)
        if rng.random() < 0.6:
            host = structured_host(rng, n)
        else:
            host = random_host(rng, n, rng.randint(n, 3 * n // 2))
        if not host.edges:
            continue
        out.append(random_instance(rng, host, weighted=weighted))
    return out
