"""Exact minimum-cost covering by branch and bound over obstructions."""
import time
from fractions import Fraction

from .errors import BudgetExceeded, Infeasible
from .graph import LinkSolution, enumerate_obstructions, is_feasible

MAX_N = 16
MAX_LINKS = 40
MAX_ENUM_LINKS = 14


def _hitting_sets(inst):
    obs = enumerate_obstructions(inst)
    sets = []
    for ob in obs:
        cand = ob.edges & inst.links
        if not cand:
            raise Infeasible(f"obstruction {ob.canonical_key} contains no link", ob)
        sets.append((ob.canonical_key, frozenset(cand)))
    # identical candidate sets add nothing
    unique = {}
    for key, cand in sets:
        unique.setdefault(cand, key)
    return sorted(((k, c) for c, k in unique.items()))


def exact_opt(inst, max_nodes=2_000_000, time_limit=None, max_n=MAX_N, max_links=MAX_LINKS):
    """Minimum-cost feasible link set; ties go to fewer links, then the least sorted tuple."""
    if inst.n > max_n or len(inst.links) > max_links:
        raise BudgetExceeded(f"instance too large for the oracle (n={inst.n}, |L|={len(inst.links)})")
    sets = _hitting_sets(inst)
    cost = inst.cost
    deadline = None if time_limit is None else time.monotonic() + time_limit
    state = {"best": None, "nodes": 0}

    def bound(chosen, banned):
        used = set()
        total = Fraction(0)
        for _, cand in sets:
            if cand & chosen:
                continue
            avail = cand - banned
            if avail & used:
                continue
            used |= avail
            total += min(cost[e] for e in avail)
        return total

    def branch(chosen, banned, spent):
        state["nodes"] += 1
        if state["nodes"] > max_nodes:
            raise BudgetExceeded(f"branch-and-bound exceeded {max_nodes} nodes")
        if deadline is not None and state["nodes"] % 1024 == 0 and time.monotonic() > deadline:
            raise BudgetExceeded("branch-and-bound exceeded its time limit")
        pick = None
        for key, cand in sets:
            if cand & chosen:
                continue
            avail = cand - banned
            if not avail:
                return
            if pick is None or (len(avail), key) < (len(pick[1]), pick[0]):
                pick = (key, avail)
        if pick is None:
            k = (spent, len(chosen), tuple(sorted(chosen)))
            if state["best"] is None or k < state["best"]:
                state["best"] = k
            return
        best = state["best"]
        if best is not None and spent + bound(chosen, banned) > best[0]:
            return
        banned = set(banned)
        for e in sorted(pick[1], key=lambda e: (cost[e], e)):
            branch(chosen | {e}, frozenset(banned), spent + cost[e])
            banned.add(e)

    branch(frozenset(), frozenset(), Fraction(0))
    if state["best"] is None:
        raise Infeasible("no feasible link set")
    total, _, links = state["best"]
    return LinkSolution(frozenset(links), total, {e: "oracle" for e in links})


def enumerate_optima(inst, max_links=MAX_ENUM_LINKS):
    """Every feasible link set of minimum cost, by exhaustive subset search."""
    if len(inst.links) > max_links:
        raise BudgetExceeded(f"{len(inst.links)} links exceed the enumeration limit {max_links}")
    order = sorted(inst.links)
    index = {e: i for i, e in enumerate(order)}
    masks = []
    for _, cand in _hitting_sets(inst):
        m = 0
        for e in cand:
            m |= 1 << index[e]
        masks.append(m)
    weights = [inst.cost[e] for e in order]
    best, found = None, []
    for mask in range(1 << len(order)):
        if any(not (mask & m) for m in masks):
            continue
        total = sum((weights[i] for i in range(len(order)) if mask >> i & 1), Fraction(0))
        if best is None or total < best:
            best, found = total, [mask]
        elif total == best:
            found.append(mask)
    out = []
    for mask in found:
        links = frozenset(order[i] for i in range(len(order)) if mask >> i & 1)
        out.append(LinkSolution(links, best, {e: "oracle" for e in links}))
    return sorted(out, key=lambda s: (len(s.links), sorted(s.links)))


def ratio_report(instances, solver, oracle=exact_opt):
    """One row per instance: id, opt, apx, ratio, feasible. Accepts instances or (id, instance) pairs."""
    rows = []
    for idx, item in enumerate(instances):
        key, inst = item if isinstance(item, tuple) else (idx, item)
        opt = oracle(inst).total_cost
        sol = solver(inst)
        apx = sol.total_cost
        if opt == 0:
            ratio = Fraction(1) if apx == 0 else None
        else:
            ratio = apx / opt
        rows.append({"id": key, "opt": opt, "apx": apx, "ratio": ratio, "feasible": is_feasible(inst, sol)})
    return rows


def format_report(rows):
    def fmt(q):
        if q is None:
            return "inf"
        q = Fraction(q)
        return f"{q.numerator}/{q.denominator}"

    lines = ["id\topt\tapx\tratio\tfeasible"]
    for r in rows:
        lines.append(f"{r['id']}\t{fmt(r['opt'])}\t{fmt(r['apx'])}\t{fmt(r['ratio'])}\t{str(r['feasible']).lower()}")
    return "\n".join(lines) + "\n"

