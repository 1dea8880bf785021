"""Command-line front end.

Exit codes: 0 success, 1 infeasible, 2 parse or validation error, 3 budget exceeded.
"""
import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import partial

from . import errors
from .decomposition import HEX_NAMES, Hexagon, chain_decompose
from .formats import format_instance, format_solution, parse_instance, parse_solution
from .gadgets import SAT4, SAT22, TapInstance, extend_to_d, normalize_3sat4, parse_dimacs, sat_to_covering, tap_to_knca
from .graph import AugmentationInstance, CoveringInstance, uncovered, validate_instance
from .oracle import exact_opt, format_report, ratio_report
from .randgen import instance_stream
from .reduction import to_augmentation, to_covering
from .unweighted import solve_unweighted
from .weighted import solve_weighted

OK, INFEASIBLE, INVALID, BUDGET = 0, 1, 2, 3

VALIDATION_ERRORS = (
    errors.ParseError,
    errors.InvalidInstance,
    errors.RejectedD,
    errors.InvalidHost,
    errors.FlavorMismatch,
    errors.NotKConnected,
    errors.NotSatisfying,
    errors.WrongSize,
)


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def fmt(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def read_text(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(INVALID, f"cannot read {path}: {exc.strerror}")


def write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def load_covering(path, need_d4=False):
    inst = parse_instance(read_text(path))
    if not isinstance(inst, CoveringInstance):
        raise CliError(INVALID, f"{path}: expected a 'p ocov' instance")
    check = validate_instance(inst)
    if not check.ok:
        raise CliError(INVALID, f"{path}: {check.reason}")
    if need_d4 and inst.d != 4:
        raise CliError(INVALID, f"{path}: the approximation algorithms need d=4, got d={inst.d}")
    return inst


def cmd_solve(args):
    inst = load_covering(args.input, need_d4=True)
    trace = []
    solver = solve_weighted if args.weighted else solve_unweighted
    sol = solver(inst, trace)
    if args.trace:
        for row in trace:
            parts = [f"stage={row['stage']}"]
            if "cost" in row:
                parts.append(f"cost={fmt(row['cost'])}")
            if "size" in row:
                parts.append(f"size={row['size']}")
            if row.get("moves"):
                parts.append(f"moves={len(row['moves'])}")
            print("trace " + " ".join(parts), file=sys.stderr)
    write_text(args.output, format_solution(sol))
    return OK


def cmd_oracle(args):
    inst = load_covering(args.input)
    sol = exact_opt(inst, max_nodes=args.max_nodes, time_limit=args.time_limit, max_n=args.max_n)
    write_text(args.output, format_solution(sol))
    return OK


def cmd_reduce(args):
    inst = parse_instance(read_text(args.input))
    if isinstance(inst, AugmentationInstance):
        out = to_covering(inst)
    else:
        out = to_augmentation(inst)
    write_text(args.output, format_instance(out))
    return OK


def component_lines(dec):
    lines = [f"lonely {' '.join(map(str, sorted(dec.lonely)))}".rstrip()]
    for comp in dec.components:
        if isinstance(comp, Hexagon):
            lines.append("hexagon " + " ".join(f"{k}={v}" for k, v in zip(HEX_NAMES, comp.mapping)))
        else:
            lines.append("ladder " + " ".join(f"{a}:{b}" for a, b in comp.columns))
    return lines


def to_dot(g, dec):
    palette = ["lightblue", "palegreen", "orange", "plum", "khaki", "salmon", "cyan", "tan", "pink", "gold"]
    colour = {v: "white" for v in dec.lonely}
    for k, comp in enumerate(dec.components):
        shade = palette[k % len(palette)]
        for v in comp.nodes:
            colour[v] = shade
    hex_nodes = {v for comp in dec.components if isinstance(comp, Hexagon) for v in comp.nodes}
    lines = ["graph decomposition {", "  node [style=filled];"]
    for v in range(g.n):
        shape = "box" if v in hex_nodes else "ellipse"
        lines.append(f'  {v} [fillcolor="{colour.get(v, "white")}", shape={shape}];')
    for u, v in sorted(g.edge_set):
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_decompose(args):
    inst = load_covering(args.input)
    dec = chain_decompose(inst.graph)
    print("\n".join(component_lines(dec)))
    if args.emit_dot is not None:
        write_text(args.emit_dot, to_dot(inst.graph, dec))
    return OK


def cmd_verify(args):
    inst = load_covering(args.input)
    sol = parse_solution(read_text(args.solution))
    extra = sorted(sol.links - inst.links)
    if extra:
        raise CliError(INVALID, f"{args.solution}: ({extra[0][0]},{extra[0][1]}) is not a link")
    cost = inst.total(sol.links)
    if cost != sol.total_cost:
        print(f"warning: declared cost {fmt(sol.total_cost)} differs from {fmt(cost)}", file=sys.stderr)
    bad = uncovered(inst, sol.links)
    if bad:
        print(f"infeasible cost={fmt(cost)} uncovered={bad[0].canonical_key}")
        return INFEASIBLE
    print(f"feasible cost={fmt(cost)}")
    return OK


def cmd_gen(args):
    if args.kind == "sat22":
        f = parse_dimacs(read_text(args.input))
        if f.flavor == SAT4:
            f = normalize_3sat4(f)
        elif f.flavor != SAT22:
            raise CliError(INVALID, f"{args.input}: formula is neither 3sat22 nor 3sat4")
        inst = sat_to_covering(f)
        note = f"sat-gadget clauses={len(f.clauses)} variables={f.variables}"
        write_text(args.output, format_instance(inst, note))
    elif args.kind == "extend-d":
        if args.d is None:
            raise CliError(INVALID, "extend-d needs --d")
        base = parse_instance(read_text(args.input))
        if not isinstance(base, CoveringInstance) or base.d != 4:
            raise CliError(INVALID, f"{args.input}: expected a d=4 'p ocov' instance")
        write_text(args.output, format_instance(extend_to_d(base, args.d)))
    else:
        if args.k is None:
            raise CliError(INVALID, "tap needs --k")
        src = parse_instance(read_text(args.input))
        if not isinstance(src, AugmentationInstance):
            raise CliError(INVALID, f"{args.input}: expected a 'p nca' tree file")
        tap = TapInstance(src.graph, src.links, dict(src.cost))
        write_text(args.output, format_instance(tap_to_knca(tap, args.k).instance))
    return OK


def _bench_row(mode, item):
    key, inst = item
    solver = solve_weighted if mode == "weighted" else solve_unweighted
    return ratio_report([(key, inst)], solver)[0]


def cmd_bench(args):
    stream = instance_stream(args.seed, args.trials, max_n=args.n, weighted=args.mode == "weighted")
    items = list(enumerate(stream))
    run = partial(_bench_row, args.mode)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(run, items))
    else:
        rows = [run(item) for item in items]
    sys.stdout.write(format_report(rows))
    return OK


def build_parser():
    p = argparse.ArgumentParser(prog="obscover", description="Obstruction covering and connectivity augmentation.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="approximate a d=4 covering instance")
    mode = s.add_mutually_exclusive_group(required=True)
    mode.add_argument("--weighted", action="store_true")
    mode.add_argument("--unweighted", action="store_true")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-o", "--output")
    s.add_argument("--trace", action="store_true", help="per-stage costs on stderr")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("oracle", help="exact optimum by branch and bound")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-o", "--output")
    s.add_argument("--max-nodes", type=int, default=2_000_000)
    s.add_argument("--max-n", type=int, default=16)
    s.add_argument("--time-limit", type=float)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("reduce", help="convert between 'p nca' and 'p ocov'")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("decompose", help="list lonely nodes, ladders and hexagons")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("--emit-dot", nargs="?", const="-", metavar="PATH")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("verify", help="check a solution file against an instance")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-s", "--solution", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", help="hardness-gadget instances")
    s.add_argument("kind", choices=["sat22", "extend-d", "tap"])
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-o", "--output")
    s.add_argument("--d", type=int)
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("bench", help="approximation ratios on seeded random instances")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--n", type=int, default=12)
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--mode", choices=["weighted", "unweighted"], default="weighted")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error[{args.command}]: {exc}", file=sys.stderr)
        return exc.code
    except errors.Infeasible as exc:
        print(f"error[{args.command}]: infeasible: {exc}", file=sys.stderr)
        return INFEASIBLE
    except VALIDATION_ERRORS as exc:
        print(f"error[{args.command}]: {exc}", file=sys.stderr)
        return INVALID
    except (errors.BudgetExceeded, errors.SizeExceeded) as exc:
        print(f"error[{args.command}]: budget exceeded: {exc}", file=sys.stderr)
        return BUDGET
    except errors.ObscoverError as exc:
        print(f"error[{args.command}]: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
