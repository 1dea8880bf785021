"""Line-oriented text formats for instances and solutions."""
from fractions import Fraction

from .errors import InvalidInstance, ParseError
from .graph import AugmentationInstance, CoveringInstance, LinkSolution, Multigraph, norm


def _frac(tok, lineno):
    try:
        value = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, f"bad rational {tok!r}")
    if value < 0:
        raise ParseError(lineno, f"negative cost {tok}")
    return value


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"bad integer {tok!r}")


def parse_instance(text):
    """Parse a ``p ocov`` or ``p nca`` file into an instance."""
    kind = None
    n = param = 0
    edges, links = [], {}
    edge_lines, link_lines = {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if kind is not None:
                raise ParseError(lineno, "duplicate p line")
            if len(tok) != 4 or tok[1] not in ("ocov", "nca"):
                raise ParseError(lineno, "expected 'p ocov <n> <d>' or 'p nca <n> <k>'")
            kind, n, param = tok[1], _int(tok[2], lineno), _int(tok[3], lineno)
            if n < 0:
                raise ParseError(lineno, "negative node count")
            continue
        if kind is None:
            raise ParseError(lineno, "data before p line")
        if tok[0] == "e" and len(tok) == 3:
            u, v = _int(tok[1], lineno), _int(tok[2], lineno)
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ParseError(lineno, f"bad edge {u} {v}")
            e = norm(u, v)
            if e in edge_lines:
                raise ParseError(lineno, f"duplicate edge {u} {v}")
            edge_lines[e] = lineno
            edges.append(e)
        elif tok[0] == "l" and len(tok) == 4:
            u, v = _int(tok[1], lineno), _int(tok[2], lineno)
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ParseError(lineno, f"bad link {u} {v}")
            e = norm(u, v)
            if e in links:
                raise ParseError(lineno, f"duplicate link {u} {v}")
            links[e] = _frac(tok[3], lineno)
            link_lines[e] = lineno
        else:
            raise ParseError(lineno, f"unrecognised line {line!r}")
    if kind is None:
        raise ParseError(0, "missing p line")
    g = Multigraph(n, edges)
    for e, lineno in sorted(link_lines.items(), key=lambda kv: kv[1]):
        present = e in edge_lines
        if kind == "ocov" and not present:
            raise ParseError(lineno, f"link {e[0]} {e[1]} is not an edge")
        if kind == "nca" and present:
            raise ParseError(lineno, f"link {e[0]} {e[1]} is an existing edge")
    try:
        if kind == "ocov":
            return CoveringInstance(g, param, frozenset(links), links)
        return AugmentationInstance(g, param, frozenset(links), links)
    except InvalidInstance as exc:
        raise ParseError(0, str(exc))


def _fmt(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def format_instance(inst, comment=None):
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    if isinstance(inst, CoveringInstance):
        lines.append(f"p ocov {inst.n} {inst.d}")
    else:
        lines.append(f"p nca {inst.n} {inst.k}")
    lines.extend(f"e {u} {v}" for u, v in sorted(inst.graph.edge_set))
    lines.extend(f"l {u} {v} {_fmt(inst.cost[(u, v)])}" for u, v in sorted(inst.links))
    return "\n".join(lines) + "\n"


def parse_solution(text):
    total = None
    links = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "s" and len(tok) == 2:
            if total is not None:
                raise ParseError(lineno, "duplicate s line")
            try:
                total = Fraction(tok[1])
            except (ValueError, ZeroDivisionError):
                raise ParseError(lineno, f"bad rational {tok[1]!r}")
        elif tok[0] == "l" and len(tok) == 3:
            e = norm(_int(tok[1], lineno), _int(tok[2], lineno))
            if e in seen:
                raise ParseError(lineno, f"duplicate link {e[0]} {e[1]}")
            seen.add(e)
            links.append(e)
        else:
            raise ParseError(lineno, f"unrecognised line {line!r}")
    if total is None:
        raise ParseError(0, "missing s line")
    return LinkSolution(frozenset(links), total, {})


def format_solution(sol):
    lines = [f"s {_fmt(sol.total_cost)}"]
    lines.extend(f"l {u} {v}" for u, v in sorted(sol.links))
    return "\n".join(lines) + "\n"
