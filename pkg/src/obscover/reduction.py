"""Translation between connectivity augmentation and obstruction covering."""
from collections import deque
from dataclasses import dataclass

from .errors import NotACut, NotAnObstruction, NotKConnected
from .graph import (
    AugmentationInstance,
    CoveringInstance,
    Multigraph,
    Obstruction,
    complement,
    vertex_connectivity,
)


@dataclass(frozen=True)
class CutWitness:
    cut_nodes: frozenset
    obstruction: Obstruction


def to_covering(aug):
    g = aug.graph
    if vertex_connectivity(g) < aug.k:
        raise NotKConnected(f"graph is not {aug.k}-connected")
    return CoveringInstance(complement(g), g.n - aug.k, aug.links, dict(aug.cost))


def to_augmentation(inst):
    g = inst.graph
    return AugmentationInstance(complement(g), g.n - inst.d, inst.links, dict(inst.cost))


def augmented(g, links):
    return Multigraph(g.n, list(g.edges) + sorted(links))


def _parts(g, nodes):
    nodes = set(nodes)
    seen, parts = set(), []
    for s in sorted(nodes):
        if s in seen:
            continue
        seen.add(s)
        part, queue = [s], deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if y in nodes and y not in seen:
                    seen.add(y)
                    part.append(y)
                    queue.append(y)
        parts.append(sorted(part))
    return parts


def cut_to_obstruction(g, cut):
    cut = frozenset(cut)
    rest = [v for v in range(g.n) if v not in cut]
    parts = _parts(g, rest)
    if len(parts) < 2:
        raise NotACut("removing the node set leaves the graph connected")
    parts.sort(key=lambda p: (len(p), p))
    x = parts[0]
    y = [v for v in rest if v not in set(x)]
    return CutWitness(cut, Obstruction.make(x, y))


def obstruction_to_cut(g, obs):
    for x in obs.side_x:
        for y in obs.side_y:
            if g.has_edge(x, y):
                raise NotAnObstruction(f"({x},{y}) is an edge of the graph, not of its complement")
    if not obs.side_x or not obs.side_y:
        raise NotAnObstruction("empty side")
    cut = frozenset(range(g.n)) - obs.nodes
    return CutWitness(cut, obs)
