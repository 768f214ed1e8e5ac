"""Operator travel and ergonomic load estimated from a simulated schedule.

Travel uses straight-line distances between consecutive manual operations of
one resource type. Each leg is rounded to ``TRAVEL_QUANTUM`` minutes so that
all later sums are exact fixed-point additions, independent of grouping.

The load score is a deliberately simple linear stand-in,
``mass_kg * duration_min * posture_factor``; it lives in :func:`op_load`
so a standard lifting model can replace it.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Context, Decimal

from ontoline.dessim.engine import SimulationTrace
from ontoline.errors import MissingMass, MissingPosition, MissingPostureFactor, NonPositiveSpeed
from ontoline.procgraph.graph import Operation, ProcessGraph

TRAVEL_QUANTUM = Decimal("1e-9")
_SQRT = Context(prec=50)


@dataclass(frozen=True)
class OpErgo:
    op: str
    travel_in: Decimal
    load: Decimal


@dataclass(frozen=True)
class ErgoReport:
    scenario: str
    travel: dict[str, Decimal]
    ergonomic_score: dict[str, Decimal]
    per_op: tuple[OpErgo, ...]


def distance(a, b) -> Decimal:
    squared = sum((Decimal(p) - Decimal(q)) ** 2 for p, q in zip(a, b))
    return squared.sqrt(_SQRT)


def _manual(graph: ProcessGraph) -> list[Operation]:
    return [op for op in graph.operations if op.mode == "manual"]


def _sequences(trace: SimulationTrace, graph: ProcessGraph) -> dict[str, list[Operation]]:
    """Manual operations per demanded resource type, by (start, id).

    Every type demanded by any operation gets an entry, possibly empty.
    """
    by_type: dict[str, list[Operation]] = {t: [] for op in graph.operations for t in op.demands}
    for op in _manual(graph):
        for rtype in op.demands:
            by_type[rtype].append(op)
    for ops in by_type.values():
        ops.sort(key=lambda op: (trace.intervals[op.id][0], op.id))
    return dict(sorted(by_type.items()))


def _travel_legs(trace: SimulationTrace, graph: ProcessGraph, speed) -> dict[str, dict[str, Decimal]]:
    speed = Decimal(speed)
    if speed <= 0:
        raise NonPositiveSpeed(f"speed must be > 0 m/min, got {speed}")
    for op in _manual(graph):
        if op.position is None:
            raise MissingPosition(f"manual operation {op.id} has no position")
    legs: dict[str, dict[str, Decimal]] = {}
    for rtype, ops in _sequences(trace, graph).items():
        legs[rtype] = {op.id: Decimal(0) for op in ops[:1]}
        for prev, op in zip(ops, ops[1:]):
            minutes = distance(prev.position, op.position) / speed
            legs[rtype][op.id] = minutes.quantize(TRAVEL_QUANTUM, rounding=ROUND_HALF_EVEN)
    return legs


def travel_times(trace: SimulationTrace, graph: ProcessGraph, speed) -> dict[str, Decimal]:
    """Total straight-line travel minutes per resource type; automatic operations excluded."""
    return {rtype: sum(legs.values(), Decimal(0))
            for rtype, legs in _travel_legs(trace, graph, speed).items()}


def op_load(op: Operation, minutes: Decimal) -> Decimal:
    if op.mass is None:
        raise MissingMass(f"manual operation {op.id} has no mass")
    if op.posture_factor is None:
        raise MissingPostureFactor(f"manual operation {op.id} has no posture_factor")
    return op.mass * minutes * op.posture_factor


def _loads(trace: SimulationTrace, graph: ProcessGraph) -> dict[str, Decimal]:
    loads = {}
    for op in _manual(graph):
        start, end = trace.intervals[op.id]
        loads[op.id] = op_load(op, end - start)
    return loads


def ergonomic_score(trace: SimulationTrace, graph: ProcessGraph) -> dict[str, Decimal]:
    """Load per resource type: sum of op_load over the manual operations demanding it."""
    loads = _loads(trace, graph)
    return {rtype: sum((loads[op.id] for op in ops), Decimal(0))
            for rtype, ops in _sequences(trace, graph).items()}


def ergonomic_report(trace: SimulationTrace, graph: ProcessGraph, speed) -> ErgoReport:
    """Travel and load totals plus each manual operation's share.

    An operation demanding several resource types is counted once per type,
    so ``per_op`` sums match the totals summed over types.
    """
    legs = _travel_legs(trace, graph, speed)
    loads = _loads(trace, graph)
    per_op = []
    for op in _manual(graph):
        travel_in = sum((legs[t][op.id] for t in op.demands), Decimal(0))
        per_op.append(OpErgo(op.id, travel_in, loads[op.id] * len(op.demands)))
    return ErgoReport(
        scenario=trace.scenario,
        travel={t: sum(v.values(), Decimal(0)) for t, v in legs.items()},
        ergonomic_score=ergonomic_score(trace, graph),
        per_op=tuple(per_op),
    )
