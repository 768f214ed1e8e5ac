"""Independent reference implementations used as test oracles.

Each oracle solves its problem the slow, obvious way (enumeration, linear
scans, per-template regular expressions) and shares no code with the
implementation under test beyond plain data types.
"""

from __future__ import annotations

import itertools
import random
import re
from decimal import Decimal

from ontoline.procgraph import Operation, ProcessGraph

# --- EARS template grammar --------------------------------------------------

_I = re.IGNORECASE | re.DOTALL
_MAIN = r"the (?P<system>.+?) shall (?P<response>.+)\."
EARS_TEMPLATES = [
    ("Ubiquitous", re.compile(rf"^{_MAIN}$", _I)),
    ("EventDriven", re.compile(rf"^when (?P<c1>[^,]+), {_MAIN}$", _I)),
    ("StateDriven", re.compile(rf"^while (?P<c1>[^,]+), {_MAIN}$", _I)),
    ("Optional", re.compile(rf"^where (?P<c1>[^,]+), {_MAIN}$", _I)),
    ("Unwanted", re.compile(rf"^if (?P<c1>[^,]+), then {_MAIN}$", _I)),
]
_KW = r"(?P<k{n}>when|while|where|if) (?P<c{n}>[^,]+), "
COMPLEX_TEMPLATE = re.compile(rf"^{_KW.format(n=1)}{_KW.format(n=2)}(?P<then>then )?{_MAIN}$", _I)
KIND = {"when": "trigger", "while": "state", "where": "feature", "if": "condition"}


def ears_oracle(sentence: str):
    """Classify by trying each whole-sentence template.

    Returns ``(label, system, response, clauses)`` where label is a pattern
    name, ``"NoShallClause"`` or ``"MalformedClause"``.
    """
    s = " ".join(sentence.split())
    if not re.search(r"\bshall\b", s, re.IGNORECASE):
        return ("NoShallClause", None, None, None)
    for label, template in EARS_TEMPLATES:
        m = template.match(s)
        if m:
            clauses = []
            if "c1" in m.groupdict():
                kw = s.split(" ", 1)[0].lower()
                clauses = [(KIND[kw], m.group("c1").strip())]
            return (label, m.group("system").strip(), m.group("response").strip(), clauses)
    m = COMPLEX_TEMPLATE.match(s)
    if m:
        kinds = [KIND[m.group("k1").lower()], KIND[m.group("k2").lower()]]
        if ("condition" in kinds) == bool(m.group("then")):
            clauses = [(kinds[0], m.group("c1").strip()), (kinds[1], m.group("c2").strip())]
            return ("Complex", m.group("system").strip(), m.group("response").strip(), clauses)
    return ("MalformedClause", None, None, None)


# --- graphs -------------------------------------------------------------------


def random_dag(rng: random.Random, n: int, p: float = 0.3, lo: int = 1, hi: int = 100,
               demands=None) -> ProcessGraph:
    """Forward-edge sampling over a random permutation of ids."""
    ids = [f"N{i:02d}" for i in range(n)]
    order = ids[:]
    rng.shuffle(order)
    edges = {(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p}
    ops = tuple(
        Operation(op_id, Decimal(rng.randint(lo, hi)), demands=dict(demands(rng)) if demands else {})
        for op_id in ids
    )
    return ProcessGraph(ops, frozenset(edges))


def all_paths(g: ProcessGraph):
    """Every maximal source-to-sink path, by depth-first enumeration."""
    succ = {op.id: [] for op in g.operations}
    has_pred = set()
    for a, b in g.edges:
        succ[a].append(b)
        has_pred.add(b)

    def walk(path):
        nexts = succ[path[-1]]
        if not nexts:
            yield path
        for nxt in nexts:
            yield from walk(path + [nxt])

    for op in g.operations:
        if op.id not in has_pred:
            yield from walk([op.id])


def longest_path_length(g: ProcessGraph) -> Decimal:
    dur = {op.id: op.duration for op in g.operations}
    return max((sum((dur[i] for i in p), Decimal(0)) for p in all_paths(g)), default=Decimal(0))


def is_linear_extension(order, g: ProcessGraph) -> bool:
    pos = {op_id: i for i, op_id in enumerate(order)}
    return sorted(order) == sorted(g.ids) and all(pos[a] < pos[b] for a, b in g.edges)


def linear_extensions(g: ProcessGraph):
    for perm in itertools.permutations(g.ids):
        if is_linear_extension(perm, g):
            yield perm


def serial_schedule(order, g: ProcessGraph, pools) -> dict[str, tuple[int, int]]:
    """Serial schedule generation: each op in turn at its earliest feasible start.

    Times are integer milli-minutes.
    """
    ops = g.by_id()
    preds = g.predecessors()
    placed: dict[str, tuple[int, int]] = {}

    def fits(op, start, end):
        for rtype, count in op.demands.items():
            # Usage only changes at starts of placed intervals, so checking
            # those instants (and the candidate start) covers the window.
            instants = {start} | {s for s, _ in placed.values() if start <= s < end}
            for t in instants:
                used = sum(ops[o].demands.get(rtype, 0) for o, (s, e) in placed.items() if s <= t < e)
                if used + count > pools[rtype]:
                    return False
        return True

    for op_id in order:
        op = ops[op_id]
        dur = int(op.duration * 1000)
        earliest = max((placed[p][1] for p in preds[op_id]), default=0)
        candidates = sorted({earliest} | {e for _, e in placed.values() if e > earliest})
        for t in candidates:
            if dur == 0 or fits(op, t, t + dur):
                placed[op_id] = (t, t + dur)
                break
    return placed


def optimal_makespan(g: ProcessGraph, pools) -> Decimal:
    """Minimum makespan over the serial schedules of every linear extension.

    Serial generation over all orders reaches every active schedule, which
    includes an optimal one.
    """
    best = None
    for order in linear_extensions(g):
        sched = serial_schedule(order, g, pools)
        span = max((e for _, e in sched.values()), default=0)
        best = span if best is None else min(best, span)
    return Decimal(best or 0) / 1000


def bool_matrix_power_is_zero(matrix, n: int) -> bool:
    """M^n == 0 over the boolean semiring, with plain Python lists."""
    rows = [[bool(x) for x in row] for row in matrix]
    size = len(rows)
    power = [[i == j for j in range(size)] for i in range(size)]
    for _ in range(n):
        power = [[any(power[i][k] and rows[k][j] for k in range(size)) for j in range(size)]
                 for i in range(size)]
    return not any(any(row) for row in power)


def scan_query(ont, subject=None, predicate=None, obj=None):
    """Linear scan over all assertions."""
    rows = []
    for a in ont.object_assertions:
        if subject in (None, a.subject) and predicate in (None, a.predicate) and obj in (None, a.object):
            rows.append(a)
    for a in ont.data_assertions:
        if subject in (None, a.subject) and predicate in (None, a.predicate) and obj in (None, a.literal):
            rows.append(a)
    return rows


def peak_usage(intervals, g: ProcessGraph, rtype: str) -> int:
    """Maximum concurrent demand, probing every interval start."""
    ops = g.by_id()
    peak = 0
    for s0, e0 in intervals.values():
        if s0 == e0:
            continue
        used = sum(ops[o].demands.get(rtype, 0) for o, (s, e) in intervals.items() if s <= s0 < e and s < e)
        peak = max(peak, used)
    return peak
