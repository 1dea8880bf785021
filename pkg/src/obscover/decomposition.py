"""Split a degree-3 host into lonely nodes, maximal ladders and hexagons.

Ladders store c >= 2 columns (v_i, u_i) and hence c - 1 squares; square i
uses the rung v_i u_i, the rails v_i v_{i+1} and u_i u_{i+1}, and the rung
v_{i+1} u_{i+1}.
"""
from dataclasses import dataclass
from itertools import permutations

from .errors import InvalidHost, NotExtendable
from .graph import Validation, norm, squares_of

HEX_NAMES = ("u1", "v1", "v2", "u2", "v3", "u3", "y")
HEX_TEMPLATE = ((0, 1), (1, 2), (2, 3), (0, 3), (2, 4), (4, 5), (3, 5), (5, 6), (6, 0))
HEX_SQUARES = ((0, 1, 2, 3), (3, 2, 4, 5), (0, 3, 5, 6))


@dataclass(frozen=True)
class Ladder:
    columns: tuple

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(tuple(c) for c in self.columns))

    @property
    def nodes(self):
        return frozenset(x for col in self.columns for x in col)

    @property
    def length(self):
        return len(self.columns) - 1

    def rung(self, i):
        v, u = self.columns[i]
        return norm(v, u)

    def top(self, i):
        return norm(self.columns[i][0], self.columns[i + 1][0])

    def bottom(self, i):
        return norm(self.columns[i][1], self.columns[i + 1][1])

    def square_edges(self, i):
        return frozenset((self.rung(i), self.top(i), self.bottom(i), self.rung(i + 1)))

    def square_nodes(self, i):
        return frozenset(self.columns[i]) | frozenset(self.columns[i + 1])

    @property
    def structural_edges(self):
        out = set()
        for i in range(len(self.columns) - 1):
            out |= self.square_edges(i)
        return frozenset(out)

    @property
    def ends(self):
        return frozenset(self.columns[0]) | frozenset(self.columns[-1])

    def reversed(self):
        return Ladder(self.columns[::-1])

    def swapped(self):
        return Ladder(tuple((u, v) for v, u in self.columns))


@dataclass(frozen=True)
class Hexagon:
    """Seven nodes listed in template order u1, v1, v2, u2, v3, u3, y."""

    mapping: tuple

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))

    @property
    def nodes(self):
        return frozenset(self.mapping)

    def node(self, name):
        return self.mapping[HEX_NAMES.index(name)]

    @property
    def structural_edges(self):
        m = self.mapping
        return frozenset(norm(m[a], m[b]) for a, b in HEX_TEMPLATE)

    @property
    def claw(self):
        m = self.mapping
        return (m[3], m[0], m[5], m[2])

    def square_nodes(self, i):
        return frozenset(self.mapping[k] for k in HEX_SQUARES[i])


@dataclass(frozen=True)
class Decomposition:
    lonely: frozenset
    components: tuple

    def owner(self):
        out = {}
        for i, comp in enumerate(self.components):
            for v in comp.nodes:
                out[v] = i
        return out


def component_degree(g, comp):
    return len(g.boundary(comp.nodes))


def corners(g, comp):
    return frozenset(x for e in g.boundary(comp.nodes) for x in e if x in comp.nodes)


def _adjacency(edges):
    adj = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def find_ladder(nodes, edges):
    """Some consistent ladder labelling covering exactly ``nodes``, or None."""
    nodes = frozenset(nodes)
    if len(nodes) < 4 or len(nodes) % 2:
        return None
    adj = _adjacency(e for e in edges if e[0] in nodes and e[1] in nodes)
    target = len(nodes) // 2

    def extend(cols, used):
        if len(cols) == target:
            return cols
        v, u = cols[-1]
        for v2 in sorted(adj.get(v, ()) - used):
            for u2 in sorted(adj.get(u, ()) - used - {v2}):
                if u2 in adj.get(v2, ()):
                    res = extend(cols + [(v2, u2)], used | {v2, u2})
                    if res:
                        return res
        return None

    for v1 in sorted(nodes):
        for u1 in sorted(adj.get(v1, ())):
            res = extend([(v1, u1)], {v1, u1})
            if res:
                return Ladder(res)
    return None


def find_hexagon(nodes, edges):
    nodes = sorted(nodes)
    if len(nodes) != 7:
        return None
    es = {norm(*e) for e in edges}
    deg = {v: sum(1 for e in es if v in e and e[0] in nodes and e[1] in nodes) for v in nodes}
    # u2 is the claw centre; it has template degree 3
    for perm in permutations(nodes):
        if any(deg[perm[k]] < 3 for k in (0, 2, 3, 5)):
            continue
        if all(norm(perm[a], perm[b]) in es for a, b in HEX_TEMPLATE):
            return Hexagon(perm)
    return None


def seed_ladder(square):
    a, b = square.side_x
    p, q = square.side_y
    return Ladder(((a, p), (q, b)))


def extend_component(comp, square):
    union = comp.nodes | square.nodes
    if not (comp.nodes & square.nodes) or union == comp.nodes:
        raise NotExtendable("square must meet the component and add a node")
    edges = comp.structural_edges | square.edges
    if len(union) == 7 and isinstance(comp, Ladder):
        hexagon = find_hexagon(union, edges)
        if hexagon is not None:
            return hexagon
    ladder = find_ladder(union, edges)
    if ladder is not None:
        return ladder
    raise InvalidHost(f"square {square.canonical_key} does not extend the component")


def chain_decompose(g):
    if not g.is_simple():
        raise InvalidHost("host graph must be simple")
    for v in range(g.n):
        if len(g.adj[v]) > 3:
            raise InvalidHost(f"node {v} has degree above 3")
    squares = squares_of(g)
    owner = {}
    comps = []
    for seed in squares:
        hit = seed.nodes & owner.keys()
        if hit:
            if len({owner[v] for v in hit}) > 1 or hit != seed.nodes:
                raise InvalidHost(f"square {seed.canonical_key} straddles components")
            continue
        comp = seed_ladder(seed)
        while True:
            grow = next(
                (s for s in squares if s.nodes & comp.nodes and not s.nodes <= comp.nodes),
                None,
            )
            if grow is None:
                break
            comp = extend_component(comp, grow)
            if comp.nodes & owner.keys():
                raise InvalidHost("component collides with an earlier one")
        for v in comp.nodes:
            owner[v] = len(comps)
        comps.append(comp)
    lonely = frozenset(v for v in range(g.n) if v not in owner)
    return Decomposition(lonely, tuple(comps))


def validate_decomposition(g, dec):
    seen = set()
    for comp in dec.components:
        if seen & comp.nodes:
            return Validation(False, "components overlap", comp)
        seen |= comp.nodes
        if any(not (0 <= v < g.n) for v in comp.nodes):
            return Validation(False, "node out of range", comp)
        if isinstance(comp, Ladder):
            if len(comp.columns) < 2 or len(comp.nodes) != 2 * len(comp.columns):
                return Validation(False, "ladder columns malformed", comp)
            missing = [e for e in comp.structural_edges if not g.has_edge(*e)]
            if missing:
                return Validation(False, "ladder labelling edge missing", missing[0])
        elif isinstance(comp, Hexagon):
            if len(comp.nodes) != 7:
                return Validation(False, "hexagon needs seven distinct nodes", comp)
            missing = [e for e in comp.structural_edges if not g.has_edge(*e)]
            if missing:
                return Validation(False, "hexagon template edge missing", missing[0])
        else:
            return Validation(False, "unknown component type", comp)
        inner = g.induced_edges(comp.nodes)
        for v in comp.nodes:
            if sum(1 for e in inner if v in e) > 3:
                return Validation(False, "component degree above 3", v)
    if set(dec.lonely) != set(range(g.n)) - seen:
        return Validation(False, "lonely set does not complement the components")
    comps = [c.nodes for c in dec.components]
    for sq in squares_of(g):
        if sq.nodes & dec.lonely:
            return Validation(False, "lonely node lies on a square", sq)
        if not any(sq.nodes <= c for c in comps):
            return Validation(False, "square not inside a component", sq)
    return Validation(True)
