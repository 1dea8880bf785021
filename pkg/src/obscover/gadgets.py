"""Hardness constructions as instance generators: 3-SAT to 4-obstruction
covering, its extension to larger d, and tree augmentation to k-node
connectivity augmentation. Each comes with the certificate maps that carry
solutions across the reduction."""
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import FlavorMismatch, InvalidInstance, NotSatisfying, ParseError, RejectedD, SizeExceeded, WrongSize
from .graph import MAX_D, AugmentationInstance, CoveringInstance, LinkSolution, Multigraph, is_feasible, norm

GENERAL, SAT4, SAT22 = "general", "3sat4", "3sat22"
MAX_TAP_NODES = 2000

# positions of the variable nodes x1..x6 inside one variable gadget
X1, X2, X3, X4, X5, X6 = range(6)
GADGET_EDGES = ((X1, X2), (X2, X3), (X3, X4), (X4, X5), (X5, X6), (X1, X6), (X2, X5))
GADGET_LINKS = ((X1, X2), (X2, X3), (X4, X5), (X5, X6))


def occurrences(clauses):
    """Per variable: (positive count, negative count)."""
    pos, neg = Counter(), Counter()
    for clause in clauses:
        for lit in clause:
            (pos if lit > 0 else neg)[abs(lit)] += 1
    return pos, neg


def detect_flavor(variables, clauses):
    pos, neg = occurrences(clauses)
    ids = range(1, variables + 1)
    if all(pos[v] == 2 and neg[v] == 2 for v in ids):
        return SAT22
    if all(pos[v] + neg[v] == 4 for v in ids):
        return SAT4
    return GENERAL


@dataclass(frozen=True)
class CnfFormula:
    """Clauses are tuples of 1 to 3 non-zero literals over variables 1..variables."""

    variables: int
    clauses: tuple
    flavor: str = GENERAL

    def __post_init__(self):
        clauses = tuple(tuple(c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for c in clauses:
            if not 1 <= len(c) <= 3:
                raise InvalidInstance(f"clause {c} must have 1 to 3 literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.variables:
                    raise InvalidInstance(f"literal {lit} out of range")
        if self.flavor not in (GENERAL, SAT4, SAT22):
            raise InvalidInstance(f"unknown flavor {self.flavor}")
        pos, neg = occurrences(clauses)
        for v in range(1, self.variables + 1):
            if self.flavor == SAT22 and (pos[v], neg[v]) != (2, 2):
                raise FlavorMismatch(f"variable {v} occurs {pos[v]}+/{neg[v]}-, need 2+/2-")
            if self.flavor == SAT4 and pos[v] + neg[v] != 4:
                raise FlavorMismatch(f"variable {v} occurs {pos[v] + neg[v]} times, need 4")

    def satisfied_by(self, assignment):
        """``assignment`` maps variable id to bool (a sequence indexed from 1 also works)."""
        return all(any(assignment[abs(l)] == (l > 0) for l in c) for c in self.clauses)


def brute_force_sat(f):
    """A satisfying assignment as {var: bool}, or None."""
    for bits in product((False, True), repeat=f.variables):
        a = {v + 1: b for v, b in enumerate(bits)}
        if f.satisfied_by(a):
            return a
    return None


def parse_dimacs(text, flavor=None):
    variables = None
    clauses, current = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if variables is not None:
                raise ParseError(lineno, "duplicate p line")
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(lineno, "expected 'p cnf <vars> <clauses>'")
            try:
                variables, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(lineno, "non-integer header field")
            continue
        if variables is None:
            raise ParseError(lineno, "clause before p line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(lineno, f"bad literal {tok!r}")
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > variables:
                raise ParseError(lineno, f"literal {lit} exceeds {variables} variables")
            else:
                current.append(lit)
    if variables is None:
        raise ParseError(0, "missing p line")
    if current:
        clauses.append(tuple(current))
    if len(clauses) != declared:
        raise ParseError(0, f"header declares {declared} clauses, found {len(clauses)}")
    flavor = detect_flavor(variables, clauses) if flavor is None else flavor
    return CnfFormula(variables, tuple(clauses), flavor)


def format_dimacs(f):
    lines = [f"p cnf {f.variables} {len(f.clauses)}"]
    lines += [" ".join(str(l) for l in c) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


def normalize_3sat4(f):
    """Equisatisfiable formula where every variable occurs twice with each sign."""
    if f.flavor == SAT22:
        return f
    if f.flavor != SAT4:
        raise FlavorMismatch(f"expected a 3sat4 formula, got {f.flavor}")
    if detect_flavor(f.variables, f.clauses) == SAT22:
        return CnfFormula(f.variables, f.clauses, SAT22)
    clauses = [list(c) for c in f.clauses]
    count = f.variables

    def fresh():
        nonlocal count
        count += 1
        return count

    # pure variables: fix them, drop their clauses, pad the other literals back with dummies
    while True:
        pos, neg = occurrences(clauses)
        pure = next((v for v in range(1, count + 1) if pos[v] + neg[v] == 4 and not (pos[v] and neg[v])), None)
        if pure is None:
            break
        sign = 1 if pos[pure] else -1
        keep, dropped = [], []
        for c in clauses:
            (dropped if sign * pure in c else keep).append(c)
        clauses = keep
        for c in dropped:
            for lit in c:
                if abs(lit) == pure:
                    continue
                d1, d2 = fresh(), fresh()
                clauses += [[lit, d1, d2], [d1, -d1, -d1], [d2, -d2, -d2]]
    pos, neg = occurrences(clauses)
    for v in range(1, f.variables + 1):
        if sorted((pos[v], neg[v])) != [1, 3]:
            continue
        s = 1 if pos[v] == 3 else -1
        y, z, w = fresh(), fresh(), fresh()
        # y and z stand in for the literal s*v
        swaps = iter((y, z))
        done = 0
        for c in clauses:
            for i, lit in enumerate(c):
                if lit == s * v and done < 2:
                    c[i] = next(swaps)
                    done += 1
        clauses += [[s * v, -y, -y], [y, -z, -z], [z, -w, -w], [w, w, -s * v]]
    # fixed variables no longer occur; renumber the rest densely
    used = sorted({abs(l) for c in clauses for l in c})
    ren = {v: i + 1 for i, v in enumerate(used)}
    out = tuple(tuple(ren[abs(l)] * (1 if l > 0 else -1) for l in c) for c in clauses)
    return CnfFormula(len(used), out, SAT22)


def _positions(f):
    """For variable v: clause index per gadget node x1, x4 (positive) and x3, x6 (negative)."""
    pos, neg = {}, {}
    for ci, c in enumerate(f.clauses):
        for lit in c:
            (pos if lit > 0 else neg).setdefault(abs(lit), []).append(ci)
    out = {}
    for v in range(1, f.variables + 1):
        p, n = pos.get(v, []), neg.get(v, [])
        out[v] = {X1: p[0], X4: p[1], X3: n[0], X6: n[1]}
    return out


def gadget_node(f, v, x):
    return len(f.clauses) + 6 * (v - 1) + x


def clause_links(f, v):
    """The four clause-to-gadget links of variable v keyed by gadget node."""
    at = _positions(f)[v]
    return {x: norm(gadget_node(f, v, x), at[x]) for x in (X1, X3, X4, X6)}


def sat_to_covering(f):
    """Unit-cost 4-obstruction covering instance; a size-4k cover exists iff ``f`` is satisfiable.

    The equivalence relies on every clause having three literals, so that
    clause nodes have degree three.
    """
    if f.flavor != SAT22:
        raise FlavorMismatch(f"expected a 3sat22 formula, got {f.flavor}")
    t = len(f.clauses)
    labels = [f"c{i}" for i in range(t)]
    edges, links = [], set()
    for v in range(1, f.variables + 1):
        labels += [f"v{v}.{x + 1}" for x in range(6)]
        for a, b in GADGET_EDGES:
            edges.append((gadget_node(f, v, a), gadget_node(f, v, b)))
        for a, b in GADGET_LINKS:
            links.add(norm(gadget_node(f, v, a), gadget_node(f, v, b)))
        for e in clause_links(f, v).values():
            edges.append(e)
            links.add(e)
    g = Multigraph(t + 6 * f.variables, edges, labels)
    return CoveringInstance(g, 4, frozenset(links), {e: 1 for e in links})


def assignment_to_solution(f, assignment):
    if not f.satisfied_by(assignment):
        raise NotSatisfying("assignment leaves a clause unsatisfied")
    inst = sat_to_covering(f)
    links = set()
    for v in range(1, f.variables + 1):
        cl = clause_links(f, v)

        def inner(a, b):
            return norm(gadget_node(f, v, a), gadget_node(f, v, b))

        if assignment[v]:
            links |= {cl[X1], cl[X4], inner(X2, X3), inner(X5, X6)}
        else:
            links |= {cl[X3], cl[X6], inner(X1, X2), inner(X4, X5)}
    return LinkSolution.build(inst, links, "sat")


def solution_to_assignment(f, sol):
    """Read an assignment off a feasible cover with exactly four links per variable.

    A variable is true when one of its positive clause links is used, false when
    a negative one is. A gadget using only its four internal links normalizes to
    the false pattern.
    """
    inst = sat_to_covering(f)
    links = sol.links if isinstance(sol, LinkSolution) else frozenset(norm(*e) for e in sol)
    if len(links) != 4 * f.variables:
        raise WrongSize(f"solution has {len(links)} links, expected {4 * f.variables}")
    if not is_feasible(inst, links):
        raise NotSatisfying("solution does not cover every obstruction")
    out = {}
    for v in range(1, f.variables + 1):
        cl = clause_links(f, v)
        positive = cl[X1] in links or cl[X4] in links
        negative = cl[X3] in links or cl[X6] in links
        if positive and negative:
            raise NotSatisfying(f"variable {v} uses clause links of both signs")
        out[v] = positive
    if not f.satisfied_by(out):
        raise NotSatisfying("decoded assignment does not satisfy the formula")
    return out


def sat_layout(inst):
    """(clauses, variables) of a SAT-gadget instance, checked against its edges.

    Labels are used when present; otherwise the layout follows from the counts,
    since every variable contributes six nodes and eight links.
    """
    g = inst.graph
    labels = g.labels or ()
    if any(isinstance(lab, str) and lab.startswith("v") for lab in labels):
        t = sum(1 for lab in labels if isinstance(lab, str) and lab.startswith("c"))
        k = (g.n - t) // 6
    else:
        k, rem = divmod(len(inst.links), 8)
        t = g.n - 6 * k
        if rem or t < 0:
            raise InvalidInstance("instance is not a SAT-gadget instance")
    for j in range(k):
        base = t + 6 * j
        for a, b in GADGET_EDGES:
            if not g.has_edge(base + a, base + b):
                raise InvalidInstance(f"variable gadget {j + 1} lacks edge x{a + 1}x{b + 1}")
    if g.n != t + 6 * k or len(g.edges) != len(GADGET_EDGES) * k + 4 * k:
        raise InvalidInstance("instance is not a SAT-gadget instance")
    return t, k


def extend_to_d(base, d):
    """Pad a SAT-gadget instance so that its obstructions are those of d-obstruction covering."""
    if not isinstance(d, int) or d < 5 or d > MAX_D:
        raise RejectedD(f"d must be an integer in 5..{MAX_D}, got {d}")
    t, k = sat_layout(base)
    g = base.graph
    labels = [f"c{i}" for i in range(t)] + [f"v{j + 1}.{x + 1}" for j in range(k) for x in range(6)]
    edges = list(g.edges)
    extra = d - 4

    def new(label):
        labels.append(label)
        return len(labels) - 1

    for c in range(t):
        for r in range(extra):
            edges.append((c, new(f"dummy-c{c}.{r}")))
    for j in range(k):
        x = {i: t + 6 * j + i - 1 for i in range(1, 7)}
        for i in (3, 6):
            for r in range(extra):
                edges.append((x[i], new(f"dummy-v{j + 1}.{i}.{r}")))
        for r in range(extra):
            y = new(f"y{j + 1}.{r}")
            edges += [(x[1], y), (x[5], y)]
        for r in range(extra):
            z = new(f"z{j + 1}.{r}")
            edges += [(x[2], z), (x[4], z)]
    return CoveringInstance(Multigraph(len(labels), edges, labels), d, base.links, dict(base.cost))


@dataclass(frozen=True)
class TapInstance:
    tree: Multigraph
    links: frozenset
    cost: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        t = self.tree
        if len(t.edges) != t.n - 1 or len(t.components()) != 1:
            raise InvalidInstance("tree must be connected with n-1 edges")
        links = frozenset(norm(*e) for e in self.links)
        if any(u == v for u, v in links):
            raise InvalidInstance("links must join distinct nodes")
        object.__setattr__(self, "links", links)
        cost = {norm(*e): Fraction(c) for e, c in self.cost.items()}
        for e in links:
            cost.setdefault(e, Fraction(1))
        object.__setattr__(self, "cost", cost)


def tree_path(tree, u, v):
    """Tree edges on the path between u and v."""
    parent = {u: None}
    stack = [u]
    while stack:
        x = stack.pop()
        for i in tree.incidence[x]:
            a, b = tree.edges[i]
            y = b if a == x else a
            if y not in parent:
                parent[y] = (x, norm(a, b))
                stack.append(y)
    out = []
    while parent[v] is not None:
        v, e = parent[v]
        out.append(e)
    return out


def tap_feasible(t, links):
    covered = set()
    for u, v in links:
        covered.update(tree_path(t.tree, u, v))
    return covered >= t.tree.edge_set


@dataclass(frozen=True)
class TapReduction:
    instance: AugmentationInstance
    link_map: dict
    node_cliques: tuple
    edge_cliques: tuple

    def to_knca(self, links):
        return frozenset(self.link_map[norm(*e)] for e in links)

    def to_tap(self, links):
        back = {v: k for k, v in self.link_map.items()}
        return frozenset(back[norm(*e)] for e in links)


def tap_to_knca(t, k):
    """k-connected graph whose minimum vertex cuts are the edge cliques, with one link per TAP link."""
    if k < 1:
        raise InvalidInstance("k must be at least 1")
    n = t.tree.n
    size = (k + 1) * n + k * (n - 1)
    if size > MAX_TAP_NODES:
        raise SizeExceeded(f"output would have {size} nodes (limit {MAX_TAP_NODES})")
    node_cliques = tuple(tuple(range(v * (k + 1), (v + 1) * (k + 1))) for v in range(n))
    base = (k + 1) * n
    edge_cliques = tuple(tuple(range(base + i * k, base + (i + 1) * k)) for i in range(n - 1))
    labels = [f"K_v{v}" for v in range(n) for _ in range(k + 1)]
    edges = []

    def clique(nodes):
        edges.extend((a, b) for i, a in enumerate(nodes) for b in nodes[i + 1:])

    for nodes in node_cliques:
        clique(nodes)
    for i, (u, v) in enumerate(t.tree.edges):
        labels += [f"K_e{u}-{v}"] * k
        clique(edge_cliques[i])
        for side in (node_cliques[u], node_cliques[v]):
            edges.extend((a, b) for a in edge_cliques[i] for b in side)
    g = Multigraph(size, edges, labels)
    link_map = {e: norm(node_cliques[e[0]][0], node_cliques[e[1]][0]) for e in sorted(t.links)}
    cost = {link_map[e]: t.cost[e] for e in link_map}
    aug = AugmentationInstance(g, k, frozenset(link_map.values()), cost)
    return TapReduction(aug, link_map, node_cliques, edge_cliques)
