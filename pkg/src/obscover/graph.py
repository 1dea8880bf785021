"""Multigraphs, covering instances, obstructions and feasibility."""
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .errors import InvalidInstance, RejectedD

MAX_D = 8


def norm(u, v):
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True, eq=False)
class Multigraph:
    """Undirected multigraph on nodes 0..n-1; loops and parallel edges allowed.

    Edge indices follow insertion order. Node and edge labels are carried
    along for provenance but do not take part in equality.
    """

    n: int
    edges: tuple = ()
    labels: tuple = None
    edge_labels: tuple = None

    def __post_init__(self):
        edges = tuple(norm(int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInstance(f"edge ({u},{v}) out of range for n={self.n}")
        object.__setattr__(self, "edges", edges)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
        if self.edge_labels is not None:
            object.__setattr__(self, "edge_labels", tuple(self.edge_labels))

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.n == other.n and Counter(self.edges) == Counter(other.edges)

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.edges))))

    def __repr__(self):
        return f"Multigraph(n={self.n}, m={len(self.edges)})"

    @cached_property
    def incidence(self):
        inc = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            if v != u:
                inc[v].append(i)
        return inc

    @cached_property
    def adj(self):
        nbrs = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if u != v:
                nbrs[u].add(v)
                nbrs[v].add(u)
        return [frozenset(s) for s in nbrs]

    @cached_property
    def edge_set(self):
        return frozenset(self.edges)

    def nodes(self):
        return range(self.n)

    def degree(self, v):
        return sum(2 if self.edges[i][0] == self.edges[i][1] else 1 for i in self.incidence[v])

    def neighbors(self, v):
        return self.adj[v]

    def has_edge(self, u, v):
        return norm(u, v) in self.edge_set

    def is_simple(self):
        return all(u != v for u, v in self.edges) and len(self.edge_set) == len(self.edges)

    def label(self, v):
        return None if self.labels is None else self.labels[v]

    def edge_label(self, i):
        return None if self.edge_labels is None else self.edge_labels[i]

    def induced_edges(self, nodes):
        nodes = set(nodes)
        return frozenset(e for e in self.edge_set if e[0] in nodes and e[1] in nodes)

    def boundary(self, nodes):
        """Edges with exactly one endpoint in ``nodes``."""
        nodes = set(nodes)
        return frozenset(e for e in self.edge_set if (e[0] in nodes) != (e[1] in nodes))

    def components(self):
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [s], deque([s])
            while queue:
                x = queue.popleft()
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def without_edges(self, removed):
        removed = {norm(*e) for e in removed}
        return Multigraph(self.n, [e for e in self.edges if e not in removed], self.labels)


def simple_graph(n, edges):
    return Multigraph(n, sorted({norm(u, v) for u, v in edges}))


@dataclass(frozen=True)
class CoveringInstance:
    graph: Multigraph
    d: int
    links: frozenset
    cost: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        links = frozenset(norm(*e) for e in self.links)
        object.__setattr__(self, "links", links)
        cost = {norm(*e): Fraction(c) for e, c in self.cost.items()}
        for e in links:
            cost.setdefault(e, Fraction(1))
        object.__setattr__(self, "cost", cost)

    @property
    def n(self):
        return self.graph.n

    def c(self, e):
        return self.cost[norm(*e)]

    def total(self, links):
        return sum((self.cost[norm(*e)] for e in links), Fraction(0))

    def is_unit(self):
        return all(self.cost[e] == 1 for e in self.links)

    def restricted(self, removed):
        """Delete the given edges from both E and L."""
        removed = {norm(*e) for e in removed}
        g = self.graph.without_edges(removed)
        links = self.links - removed
        return CoveringInstance(g, self.d, links, {e: self.cost[e] for e in links})


def unit_instance(graph, d=4, links=None):
    links = graph.edge_set if links is None else links
    return CoveringInstance(graph, d, frozenset(links), {norm(*e): 1 for e in links})


@dataclass(frozen=True)
class AugmentationInstance:
    graph: Multigraph
    k: int
    links: frozenset
    cost: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        links = frozenset(norm(*e) for e in self.links)
        for u, v in links:
            if u == v or self.graph.has_edge(u, v):
                raise InvalidInstance(f"link ({u},{v}) must join non-adjacent distinct nodes")
        object.__setattr__(self, "links", links)
        cost = {norm(*e): Fraction(c) for e, c in self.cost.items()}
        for e in links:
            cost.setdefault(e, Fraction(1))
        object.__setattr__(self, "cost", cost)

    @property
    def n(self):
        return self.graph.n


@dataclass(frozen=True)
class Obstruction:
    """Edge-induced complete bipartite subgraph; sides stored sorted and canonical."""

    side_x: tuple
    side_y: tuple

    @staticmethod
    def make(a, b):
        a, b = tuple(sorted(a)), tuple(sorted(b))
        if set(a) & set(b):
            raise InvalidInstance("obstruction sides overlap")
        if (len(a), a) > (len(b), b):
            a, b = b, a
        return Obstruction(a, b)

    @property
    def canonical_key(self):
        return (self.side_x, self.side_y)

    @property
    def nodes(self):
        return frozenset(self.side_x) | frozenset(self.side_y)

    @cached_property
    def edges(self):
        return frozenset(norm(x, y) for x in self.side_x for y in self.side_y)

    @property
    def order(self):
        return len(self.side_x) + len(self.side_y)

    def is_square(self):
        return len(self.side_x) == 2 and len(self.side_y) == 2


@dataclass(frozen=True)
class LinkSolution:
    links: frozenset
    total_cost: Fraction
    stage_tags: dict = field(default_factory=dict, compare=False)

    @staticmethod
    def build(inst, links, stage="solution", tags=None):
        links = frozenset(norm(*e) for e in links)
        stage_tags = {e: stage for e in links}
        if tags:
            stage_tags.update({norm(*e): t for e, t in tags.items() if norm(*e) in links})
        return LinkSolution(links, inst.total(links), stage_tags)


def complement(g):
    if not g.is_simple():
        raise InvalidInstance("complement needs a simple graph")
    present = g.edge_set
    return Multigraph(g.n, [e for e in combinations(range(g.n), 2) if e not in present])


def _max_flow_cut(adj, n, s, t, limit):
    """Node-disjoint s-t paths via unit-capacity node splitting.

    Returns (value, cut) where cut is a minimum separating node set when
    value < limit, otherwise None.
    """
    # node v -> in 2v, out 2v+1
    cap = {}

    def arc(a, b, c):
        cap.setdefault(a, {})
        cap.setdefault(b, {})
        cap[a][b] = cap[a].get(b, 0) + c
        cap[b].setdefault(a, 0)

    big = n + 1
    for v in range(n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
        for w in adj[v]:
            arc(2 * v + 1, 2 * w, big)
    src, dst = 2 * s + 1, 2 * t
    flow = 0
    while flow < limit:
        parent = {src: None}
        queue = deque([src])
        while queue and dst not in parent:
            a = queue.popleft()
            for b, c in cap[a].items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if dst not in parent:
            break
        b = dst
        while parent[b] is not None:
            a = parent[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a
        flow += 1
    if flow >= limit:
        return flow, None
    reach = {src}
    queue = deque([src])
    while queue:
        a = queue.popleft()
        for b, c in cap[a].items():
            if c > 0 and b not in reach:
                reach.add(b)
                queue.append(b)
    cut = frozenset(v for v in range(n) if 2 * v in reach and 2 * v + 1 not in reach)
    return flow, cut


def min_vertex_cut(g):
    """Return (kappa, cut); cut is None for complete graphs."""
    n = g.n
    if n < 2:
        return 0, None
    best, best_cut = n - 1, None
    for s in range(n):
        for t in range(s + 1, n):
            if t in g.adj[s]:
                continue
            val, cut = _max_flow_cut(g.adj, n, s, t, best)
            if cut is not None:
                best, best_cut = val, cut
            if best == 0:
                return 0, best_cut
    return best, best_cut


def vertex_connectivity(g):
    if not g.is_simple():
        raise InvalidInstance("vertex connectivity needs a simple graph")
    return min_vertex_cut(g)[0]


def _obstructions_d4(g):
    found = {}
    for v in range(g.n):
        nb = g.adj[v]
        if len(nb) == 3:
            ob = Obstruction.make([v], nb)
            found[ob.canonical_key] = ob
    for a in range(g.n):
        for b in range(a + 1, g.n):
            common = g.adj[a] & g.adj[b]
            if len(common) >= 2:
                for y in combinations(sorted(common), 2):
                    ob = Obstruction.make((a, b), y)
                    found[ob.canonical_key] = ob
    return [found[k] for k in sorted(found)]


def _obstructions_general(g, d):
    found = {}
    for i in range(1, d // 2 + 1):
        j = d - i
        pool = [v for v in range(g.n) if len(g.adj[v]) >= j]

        def grow(chosen, common, start):
            if len(chosen) == i:
                for y in combinations(sorted(common), j):
                    ob = Obstruction.make(chosen, y)
                    found[ob.canonical_key] = ob
                return
            for idx in range(start, len(pool)):
                v = pool[idx]
                nxt = common & g.adj[v] if chosen else set(g.adj[v])
                if len(nxt) >= j:
                    grow(chosen + [v], nxt, idx + 1)

        grow([], set(), 0)
    return [found[k] for k in sorted(found)]


def obstructions_of(g, d):
    if d > MAX_D:
        raise RejectedD(f"d={d} exceeds the supported bound {MAX_D}")
    # the fast path assumes maximum degree 3, which valid d=4 hosts have
    if d == 4 and all(len(a) <= 3 for a in g.adj):
        return _obstructions_d4(g)
    return _obstructions_general(g, d)


def enumerate_obstructions(inst):
    return obstructions_of(inst.graph, inst.d)


def squares_of(g):
    return [ob for ob in _obstructions_d4(g) if ob.is_square()]


@dataclass(frozen=True)
class Validation:
    ok: bool
    reason: str = ""
    witness: object = None

    def __bool__(self):
        return self.ok


def forbidden_witness(g, d):
    """A K_{i,j} with i+j > d in ``g``, found through a small cut of the complement."""
    if g.n < 2:
        return None
    comp = complement(g)
    kappa, cut = min_vertex_cut(comp)
    if cut is None or kappa >= g.n - d:
        return None
    rest = [v for v in range(g.n) if v not in cut]
    sub = set(rest)
    seen, parts = set(), []
    for s in rest:
        if s in seen:
            continue
        part, queue = [s], deque([s])
        seen.add(s)
        while queue:
            x = queue.popleft()
            for y in comp.adj[x]:
                if y in sub and y not in seen:
                    seen.add(y)
                    part.append(y)
                    queue.append(y)
        parts.append(sorted(part))
    parts.sort(key=lambda p: (len(p), p))
    x = parts[0]
    y = sorted(v for v in rest if v not in x)
    return Obstruction.make(x, y)


def validate_instance(inst):
    g = inst.graph
    if not g.is_simple():
        return Validation(False, "graph is not simple")
    if inst.d < 1:
        return Validation(False, "d must be positive")
    stray = sorted(e for e in inst.links if e not in g.edge_set)
    if stray:
        return Validation(False, "link is not an edge", stray[0])
    for e in sorted(inst.links):
        c = inst.cost.get(e)
        if c is None or c < 0:
            return Validation(False, "link cost is negative or missing", e)
    w = forbidden_witness(g, inst.d)
    if w is not None:
        return Validation(False, f"forbidden K_{{{len(w.side_x)},{len(w.side_y)}}}", w)
    return Validation(True)


def link_set(sol):
    if isinstance(sol, LinkSolution):
        return sol.links
    return frozenset(norm(*e) for e in sol)


def uncovered(inst, sol, obstructions=None):
    links = link_set(sol) & inst.links
    obs = enumerate_obstructions(inst) if obstructions is None else obstructions
    return [ob for ob in obs if not (ob.edges & links)]


def is_feasible(inst, sol):
    return not uncovered(inst, sol)
