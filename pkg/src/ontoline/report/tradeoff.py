"""Pairwise scenario comparison."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ontoline.errors import FewerThanTwoScenarios, InconsistentScenario
from ontoline.numbers import json_number
from ontoline.report.kpis import MAPPED_KPIS, SCALAR_KPIS, KpiSet, Outcome


@dataclass(frozen=True)
class ScenarioDelta:
    """KPI differences ``b - a``; per-resource maps cover the union of keys, missing as 0."""

    a: str
    b: str
    scalars: dict[str, Decimal | Fraction]
    mapped: dict[str, dict[str, Decimal | Fraction]]

    def to_dict(self) -> dict:
        doc = {"from": self.a, "to": self.b}
        doc.update({k: json_number(v) for k, v in self.scalars.items()})
        doc.update({k: {r: json_number(x) for r, x in sorted(v.items())} for k, v in self.mapped.items()})
        return doc


@dataclass(frozen=True)
class TradeoffReport:
    scenarios: tuple[KpiSet, ...]
    deltas: tuple[ScenarioDelta, ...]
    verification_outcomes: tuple[Outcome, ...] = field(default=())

    def delta(self, a: str, b: str) -> ScenarioDelta:
        for d in self.deltas:
            if (d.a, d.b) == (a, b):
                return d
        raise KeyError((a, b))

    def to_dict(self) -> dict:
        return {
            "scenarios": [k.to_dict() for k in self.scenarios],
            "deltas": [d.to_dict() for d in self.deltas],
            "verification_outcomes": [o.to_dict() for o in self.verification_outcomes],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _delta(a: KpiSet, b: KpiSet) -> ScenarioDelta:
    scalars = {name: getattr(b, name) - getattr(a, name) for name in SCALAR_KPIS}
    mapped = {}
    for name in MAPPED_KPIS:
        va, vb = getattr(a, name), getattr(b, name)
        mapped[name] = {key: vb.get(key, 0) - va.get(key, 0) for key in sorted(set(va) | set(vb))}
    return ScenarioDelta(a.scenario, b.scenario, scalars, mapped)


def compare_scenarios(kpi_sets: Sequence[KpiSet], outcomes: Sequence[Outcome] = ()) -> TradeoffReport:
    """All pairwise deltas in input order (``b - a`` for ``a`` listed before ``b``)."""
    if len(kpi_sets) < 2:
        raise FewerThanTwoScenarios(f"need at least two scenarios, got {len(kpi_sets)}")
    names = [k.scenario for k in kpi_sets]
    if len(set(names)) != len(names):
        raise InconsistentScenario(f"duplicate scenario names in {names}")
    deltas = tuple(_delta(a, b) for a, b in combinations(kpi_sets, 2))
    return TradeoffReport(tuple(kpi_sets), deltas, tuple(outcomes))
