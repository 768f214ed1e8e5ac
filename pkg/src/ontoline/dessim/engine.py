"""Resource-constrained discrete-event simulation of a process DAG.

Time runs on integer milli-minutes internally, so comparisons are exact.
At each decision point the dispatch policy orders the ready set and every
operation whose full demand fits is started. There is no preemption and
nothing is reconsidered until the next operation ends.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from decimal import Decimal
from enum import IntEnum
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from ontoline.errors import InfeasibleDemand, UnknownResourceType, ZeroMakespan
from ontoline.numbers import from_millis, json_number
from ontoline.procgraph.graph import ProcessGraph, topological_order
from ontoline.procgraph.intermediate import IntermediateModel


class EventKind(IntEnum):
    # Value order is the tie-break order within one instant.
    OpEnd = 0
    Release = 1
    Acquire = 2
    OpStart = 3


@dataclass(frozen=True, order=True)
class Event:
    time: Decimal
    kind: EventKind
    op: str
    resource: str = ""
    count: int = 0


class ResourcePool(dict):
    """Mapping resource type -> non-negative integer capacity."""

    def __init__(self, capacities: Mapping[str, int] | Iterable = (), **kw):
        super().__init__(capacities, **kw)
        for rtype, cap in self.items():
            if isinstance(cap, bool) or not isinstance(cap, int) or cap < 0:
                raise ValueError(f"capacity of {rtype!r} must be a non-negative integer, got {cap!r}")


@dataclass(frozen=True)
class SimulationTrace:
    intervals: dict[str, tuple[Decimal, Decimal]]
    events: tuple[Event, ...]
    makespan: Decimal
    scenario: str = ""

    def order(self) -> list[str]:
        """Operation ids by (start, id)."""
        return sorted(self.intervals, key=lambda i: (self.intervals[i][0], i))

    def to_json(self) -> str:
        doc = {
            "scenario": self.scenario,
            "makespan": json_number(self.makespan),
            "intervals": {
                op: {"start": json_number(s), "end": json_number(e)}
                for op, (s, e) in sorted(self.intervals.items())
            },
            "events": [
                {"time": json_number(ev.time), "kind": ev.kind.name, "op": ev.op,
                 "resource": ev.resource, "count": ev.count}
                for ev in self.events
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> SimulationTrace:
        doc = json.loads(text, parse_float=Decimal, parse_int=Decimal)
        intervals = {op: (Decimal(v["start"]), Decimal(v["end"])) for op, v in doc["intervals"].items()}
        events = tuple(
            Event(Decimal(e["time"]), EventKind[e["kind"]], e["op"], e["resource"], int(e["count"]))
            for e in doc["events"]
        )
        return cls(intervals, events, Decimal(doc["makespan"]), doc.get("scenario", ""))


# A dispatch policy orders the ready operations for one scan.
Policy = Callable[[Iterable[str], ProcessGraph], list[str]]


def lexicographic(ready: Iterable[str], graph: ProcessGraph) -> list[str]:
    return sorted(ready)


def check_demands(graph: ProcessGraph, pools: Mapping[str, int]) -> None:
    for op in graph.operations:
        for rtype, count in op.demands.items():
            if rtype not in pools:
                raise UnknownResourceType(f"{op.id} demands {rtype!r}, which has no pool entry")
            if count > pools[rtype]:
                raise InfeasibleDemand(
                    f"{op.id} demands {count} {rtype} but capacity is {pools[rtype]}"
                )


def simulate(
    model: ProcessGraph | IntermediateModel,
    pools: Mapping[str, int] | None = None,
    policy: Policy = lexicographic,
    scenario: str = "",
) -> SimulationTrace:
    """Run the greedy list-scheduling simulation to completion."""
    if isinstance(model, IntermediateModel):
        graph = model.graph
        pools = model.pools if pools is None else pools
        scenario = scenario or model.scenario
    else:
        graph = model
    pools = ResourcePool(pools or {})
    topological_order(graph)
    check_demands(graph, pools)

    ops = graph.by_id()
    succs = graph.successors()
    waiting = {op_id: 0 for op_id in ops}
    for _, succ in graph.edges:
        waiting[succ] += 1
    ready = {op_id for op_id, n in waiting.items() if n == 0}
    free = dict(pools)
    running: list[tuple[int, str]] = []
    starts: dict[str, int] = {}
    ends: dict[str, int] = {}
    events: list[tuple[int, int, str, str, int]] = []
    clock = 0

    while ready or running:
        for op_id in policy(ready, graph):
            demand = ops[op_id].demands
            if all(free[t] >= c for t, c in demand.items()):
                for t, c in demand.items():
                    free[t] -= c
                    events.append((clock, EventKind.Acquire, op_id, t, c))
                events.append((clock, EventKind.OpStart, op_id, "", 0))
                starts[op_id] = clock
                ready.discard(op_id)
                heapq.heappush(running, (clock + ops[op_id].millis, op_id))
        # Feasibility was checked up front, so an empty running set here means
        # the ready set was also empty.
        if not running:
            break
        clock = running[0][0]
        while running and running[0][0] == clock:
            _, op_id = heapq.heappop(running)
            ends[op_id] = clock
            events.append((clock, EventKind.OpEnd, op_id, "", 0))
            for t, c in ops[op_id].demands.items():
                free[t] += c
                events.append((clock, EventKind.Release, op_id, t, c))
            for succ in succs[op_id]:
                waiting[succ] -= 1
                if waiting[succ] == 0:
                    ready.add(succ)

    events.sort()
    return SimulationTrace(
        intervals={op_id: (from_millis(starts[op_id]), from_millis(ends[op_id])) for op_id in sorted(ops)},
        events=tuple(Event(from_millis(t), EventKind(k), op, r, c) for t, k, op, r, c in events),
        makespan=from_millis(max(ends.values(), default=0)),
        scenario=scenario,
    )


def utilization(trace: SimulationTrace, pools: Mapping[str, int]) -> dict[str, Fraction]:
    """Busy share per resource type: sum(count * duration) / (capacity * makespan).

    Demand counts come from the trace's Acquire events, so the trace alone
    (plus capacities) is enough.
    """
    if trace.makespan <= 0:
        raise ZeroMakespan("utilization is undefined for a zero makespan")
    busy = {rtype: Fraction(0) for rtype in pools}
    for ev in trace.events:
        if ev.kind != EventKind.Acquire:
            continue
        if ev.resource not in busy:
            raise UnknownResourceType(ev.resource)
        start, end = trace.intervals[ev.op]
        busy[ev.resource] += ev.count * Fraction(end - start)
    return {
        rtype: (busy[rtype] / (cap * Fraction(trace.makespan)) if cap else Fraction(0))
        for rtype, cap in sorted(pools.items())
    }
