"""Key performance indicators and requirement verification against them."""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Mapping

from ontoline.dessim.engine import SimulationTrace, utilization
from ontoline.ergosim.estimate import ErgoReport
from ontoline.errors import InconsistentScenario, MetricUnavailable, ZeroMakespan
from ontoline.numbers import fmt_decimal, json_number
from ontoline.procgraph.graph import ProcessGraph
from ontoline.reqmodel.constraint import MetricConstraint, extract_constraint
from ontoline.reqmodel.requirements import RequirementSet, VerificationState

SCALAR_KPIS = ("lead_time", "automation_ratio")
MAPPED_KPIS = ("utilization", "ergonomic_score", "travel", "per_op_durations")


@dataclass(frozen=True)
class KpiSet:
    scenario: str
    lead_time: Decimal
    automation_ratio: Fraction
    utilization: dict[str, Fraction] = field(default_factory=dict)
    ergonomic_score: dict[str, Decimal] = field(default_factory=dict)
    per_op_durations: dict[str, Decimal] = field(default_factory=dict)
    travel: dict[str, Decimal] = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.automation_ratio <= 1:
            raise ValueError(f"automation_ratio {self.automation_ratio} outside [0, 1]")

    def to_dict(self) -> dict:
        doc = {"scenario": self.scenario}
        for name in SCALAR_KPIS:
            doc[name] = json_number(getattr(self, name))
        for name in MAPPED_KPIS:
            doc[name] = {k: json_number(v) for k, v in sorted(getattr(self, name).items())}
        return doc


def automation_ratio(graph: ProcessGraph) -> Fraction:
    """Share of total operation duration performed in automatic mode; 0 for zero total."""
    total = sum((Fraction(op.duration) for op in graph.operations), Fraction(0))
    if total == 0:
        return Fraction(0)
    automatic = sum((Fraction(op.duration) for op in graph.operations if op.mode == "automatic"), Fraction(0))
    return automatic / total


def compute_kpis(
    trace: SimulationTrace,
    graph: ProcessGraph,
    pools: Mapping[str, int],
    ergo: ErgoReport | None = None,
) -> KpiSet:
    """Collect the KPIs of one simulated scenario.

    Utilization is left empty for a zero makespan, where it is undefined.
    """
    if set(trace.intervals) != set(graph.ids):
        raise InconsistentScenario("trace and process graph cover different operations")
    if ergo is not None and trace.scenario and ergo.scenario and ergo.scenario != trace.scenario:
        raise InconsistentScenario(f"trace is for {trace.scenario!r}, ergonomics for {ergo.scenario!r}")
    try:
        util = utilization(trace, pools)
    except ZeroMakespan:
        util = {}
    return KpiSet(
        scenario=trace.scenario,
        lead_time=trace.makespan,
        automation_ratio=automation_ratio(graph),
        utilization=util,
        ergonomic_score=dict(ergo.ergonomic_score) if ergo else {},
        per_op_durations={op_id: end - start for op_id, (start, end) in sorted(trace.intervals.items())},
        travel=dict(ergo.travel) if ergo else {},
    )


@dataclass(frozen=True)
class Outcome:
    req_id: str
    scenario: str
    state: VerificationState
    measured: Decimal | Fraction
    constraint: MetricConstraint

    @property
    def evidence(self) -> str:
        return (f"{self.scenario}: {self.constraint.metric} = {format_measure(self.measured)}"
                f" vs {self.constraint.render()} -> {self.state.value}")

    def to_dict(self) -> dict:
        return {
            "requirement": self.req_id,
            "scenario": self.scenario,
            "state": self.state.value,
            "measured": json_number(self.measured),
            "constraint": self.constraint.render(),
        }


def format_measure(value: Decimal | Fraction) -> str:
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    return fmt_decimal(Decimal(int(value)) if isinstance(value, Fraction) else value)


def measure(kpis: KpiSet, constraint: MetricConstraint) -> Decimal | Fraction:
    """The KPI value a constraint is judged on.

    Per-resource metrics use the worst case for the comparator: the largest
    value for an upper bound, the smallest for a lower bound, and the one
    farthest from the target for equality.
    """
    value = getattr(kpis, constraint.metric)
    if not isinstance(value, dict):
        return value
    if not value:
        raise MetricUnavailable(f"{constraint.metric} is not available for scenario {kpis.scenario!r}")
    ordered = [value[k] for k in sorted(value)]
    if constraint.comparator == "<=":
        return max(ordered)
    if constraint.comparator == ">=":
        return min(ordered)
    target = Fraction(constraint.threshold)
    return max(ordered, key=lambda v: abs(Fraction(v) - target))


def verify_requirements(
    reqs: RequirementSet | Iterable,
    kpis: KpiSet,
    bindings: Mapping[str, Iterable[str]] | None = None,
) -> list[Outcome]:
    """Judge every constrained requirement against one scenario's KPIs.

    ``bindings`` maps requirement id -> scenarios it is traced to; a
    requirement bound elsewhere is skipped, an unbound one is judged
    everywhere. Requirements without a constraint produce no outcome.
    """
    outcomes = []
    for req in reqs:
        constraint = req.constraint or extract_constraint(req)
        if constraint is None:
            continue
        scenarios = list((bindings or {}).get(req.id, ()))
        if scenarios and kpis.scenario not in scenarios:
            continue
        measured = measure(kpis, constraint)
        state = VerificationState.PASSED if constraint.holds(measured) else VerificationState.FAILED
        outcomes.append(Outcome(req.id, kpis.scenario, state, measured, constraint))
    return outcomes
