"""Independent checker for simulation traces.

Shares nothing with the simulator except the data types: it recomputes every
constraint from the process graph and the pools.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Mapping

from ontoline.dessim.engine import EventKind, SimulationTrace
from ontoline.procgraph.graph import ProcessGraph


def validate_trace(trace: SimulationTrace, graph: ProcessGraph, pools: Mapping[str, int]) -> list[str]:
    """Return one message per violated constraint; empty means the trace is valid.

    Checked: every operation scheduled exactly once with end = start + duration,
    successors start no earlier than predecessors end, concurrent demand never
    exceeds capacity, events agree with intervals, makespan = last end.
    """
    violations: list[str] = []
    ops = graph.by_id()
    if set(trace.intervals) != set(ops):
        missing = sorted(set(ops) - set(trace.intervals))
        extra = sorted(set(trace.intervals) - set(ops))
        violations.append(f"scheduled set differs: missing {missing}, unexpected {extra}")

    for op_id, (start, end) in sorted(trace.intervals.items()):
        if start < 0:
            violations.append(f"{op_id} starts before time zero")
        if op_id in ops and end - start != ops[op_id].duration:
            violations.append(f"{op_id}: end - start = {end - start}, duration {ops[op_id].duration}")

    for pred, succ in sorted(graph.edges):
        if pred in trace.intervals and succ in trace.intervals:
            if trace.intervals[succ][0] < trace.intervals[pred][1]:
                violations.append(f"{succ} starts before predecessor {pred} ends")

    # Capacity: sweep interval boundaries; ends free capacity before starts take it.
    deltas: dict[str, list[tuple]] = defaultdict(list)
    for op_id, (start, end) in trace.intervals.items():
        if op_id not in ops or start == end:
            continue
        for rtype, count in ops[op_id].demands.items():
            deltas[rtype] += [(start, 1, count, op_id), (end, 0, -count, op_id)]
    for rtype, points in sorted(deltas.items()):
        cap = pools.get(rtype)
        if cap is None:
            violations.append(f"resource type {rtype} has no capacity")
            continue
        level = 0
        for time, _, delta, op_id in sorted(points):
            level += delta
            if level > cap:
                violations.append(f"{rtype} over capacity ({level} > {cap}) at t={time} when {op_id} starts")

    starts = {e.op: e.time for e in trace.events if e.kind == EventKind.OpStart}
    ends = {e.op: e.time for e in trace.events if e.kind == EventKind.OpEnd}
    for op_id, (start, end) in sorted(trace.intervals.items()):
        if starts.get(op_id) != start or ends.get(op_id) != end:
            violations.append(f"{op_id}: events disagree with interval")
    if list(trace.events) != sorted(trace.events):
        violations.append("events are not in (time, kind, op, resource) order")

    last = max((e for _, e in trace.intervals.values()), default=0)
    if trace.makespan != last:
        violations.append(f"makespan {trace.makespan} != last end {last}")
    return violations
