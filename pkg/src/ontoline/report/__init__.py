"""KPIs, requirement verification, SVG charts and scenario trade-offs."""

from ontoline.report.kpis import (
    KpiSet,
    Outcome,
    automation_ratio,
    compute_kpis,
    measure,
    verify_requirements,
)
from ontoline.report.svg import MODE_COLORS, gantt_svg, leadtime_chart_svg
from ontoline.report.tradeoff import ScenarioDelta, TradeoffReport, compare_scenarios

__all__ = [
    "MODE_COLORS",
    "KpiSet",
    "Outcome",
    "ScenarioDelta",
    "TradeoffReport",
    "automation_ratio",
    "compare_scenarios",
    "compute_kpis",
    "gantt_svg",
    "leadtime_chart_svg",
    "measure",
    "verify_requirements",
]
