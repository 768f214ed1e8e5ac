"""Deterministic SVG 1.1 charts: a Gantt diagram and a lead-time line chart.

Documents are assembled as text with fixed attribute order and coordinates
printed at three decimals, so equal inputs give byte-identical output. In the
Gantt chart the operation bars are the only ``rect`` elements.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape, quoteattr

from ontoline.dessim.engine import SimulationTrace
from ontoline.errors import EmptyInput
from ontoline.numbers import fmt_decimal
from ontoline.procgraph.graph import ProcessGraph
from ontoline.report.kpis import KpiSet

MODE_COLORS = {"manual": "#4e79a7", "automatic": "#f28e2b"}

LEFT, RIGHT, TOP = 120, 30, 40
ROW, BAR = 28, 18
PLOT_WIDTH = 640
AXIS_GAP = 30


def _n(value) -> str:
    """Coordinate formatting: three decimals, trailing zeros dropped."""
    text = f"{float(value):.3f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def tick_step(span) -> Fraction:
    """Smallest 1/2/5 x 10^k step giving at most ten intervals over ``span``."""
    span = Fraction(span)
    if span <= 0:
        return Fraction(1)
    step = Fraction(1, 1000)
    while True:
        for mult in (1, 2, 5):
            if span / (step * mult) <= 10:
                return step * mult
        step *= 10


def _ticks(span) -> list[Fraction]:
    step = tick_step(span)
    ticks, t = [], Fraction(0)
    while t <= Fraction(span):
        ticks.append(t)
        t += step
    return ticks


def _label(value: Fraction) -> str:
    return fmt_decimal(Decimal(value.numerator) / Decimal(value.denominator))


def _document(width, height, title: str, body: list[str]) -> str:
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_n(width)}" height="{_n(height)}"'
        f' viewBox="0 0 {_n(width)} {_n(height)}" font-family="sans-serif" font-size="12">',
        f"  <title>{escape(title)}</title>",
    ]
    return "\n".join(head + ["  " + line for line in body] + ["</svg>", ""])


def gantt_svg(trace: SimulationTrace, graph: ProcessGraph, title: str = "") -> str:
    """One row per operation in id order; bar x is start, width is duration."""
    ops = graph.operations
    span = Fraction(trace.makespan)
    scale = Fraction(PLOT_WIDTH) / span if span > 0 else Fraction(0)
    axis_y = TOP + ROW * len(ops) + 10
    width, height = LEFT + PLOT_WIDTH + RIGHT, axis_y + AXIS_GAP + 30
    body = []
    for row, op in enumerate(ops):
        start, end = trace.intervals[op.id]
        y = TOP + ROW * row
        body.append(f'<text x="{LEFT - 8}" y="{_n(y + BAR - 4)}" text-anchor="end">{escape(op.label)}</text>')
        body.append(
            f'<rect id={quoteattr("bar-" + op.id)} x="{_n(LEFT + Fraction(start) * scale)}" y="{y}"'
            f' width="{_n((Fraction(end) - Fraction(start)) * scale)}" height="{BAR}"'
            f' fill="{MODE_COLORS[op.mode]}" data-op={quoteattr(op.id)} data-mode="{op.mode}"'
            f' data-start="{fmt_decimal(start)}" data-end="{fmt_decimal(end)}"/>'
        )
    body.append(f'<line x1="{LEFT}" y1="{axis_y}" x2="{LEFT + PLOT_WIDTH}" y2="{axis_y}" stroke="#000"/>')
    for t in _ticks(span):
        x = _n(LEFT + t * scale)
        body.append(f'<line x1="{x}" y1="{axis_y}" x2="{x}" y2="{axis_y + 5}" stroke="#000"/>')
        body.append(f'<text x="{x}" y="{axis_y + 18}" text-anchor="middle">{_label(t)}</text>')
    body.append(f'<text x="{LEFT + PLOT_WIDTH // 2}" y="{axis_y + AXIS_GAP + 10}" text-anchor="middle">time [min]</text>')
    legend_x = LEFT
    for mode, color in MODE_COLORS.items():
        body.append(f'<text x="{legend_x}" y="{TOP - 16}" fill="{color}">&#9632; {mode}</text>')
        legend_x += 100
    heading = title or f"Gantt chart {trace.scenario}".strip()
    return _document(width, height, heading, body)


def leadtime_chart_svg(kpi_sets: Sequence[KpiSet], title: str = "Lead time per scenario") -> str:
    """Lead time per scenario in the given order, as a polyline with point markers."""
    if not kpi_sets:
        raise EmptyInput("lead-time chart needs at least one scenario")
    height_plot = 240
    top = TOP + 10
    base_y = top + height_plot
    peak = max(Fraction(k.lead_time) for k in kpi_sets)
    axis_max = tick_step(peak) * len(_ticks(peak)) if peak > 0 else Fraction(1)
    y_scale = Fraction(height_plot) / axis_max
    gap = Fraction(PLOT_WIDTH, len(kpi_sets))
    points = [(LEFT + gap * i + gap / 2, base_y - Fraction(k.lead_time) * y_scale) for i, k in enumerate(kpi_sets)]

    body = [
        f'<line x1="{LEFT}" y1="{base_y}" x2="{LEFT + PLOT_WIDTH}" y2="{base_y}" stroke="#000"/>',
        f'<line x1="{LEFT}" y1="{top}" x2="{LEFT}" y2="{base_y}" stroke="#000"/>',
    ]
    for t in _ticks(axis_max):
        y = _n(base_y - t * y_scale)
        body.append(f'<line x1="{LEFT - 5}" y1="{y}" x2="{LEFT}" y2="{y}" stroke="#000"/>')
        body.append(f'<text x="{LEFT - 8}" y="{y}" text-anchor="end">{_label(t)}</text>')
    body.append(f'<text x="20" y="{top + height_plot // 2}" transform="rotate(-90 20 {top + height_plot // 2})"'
                ' text-anchor="middle">lead time [min]</text>')
    if len(points) > 1:
        coords = " ".join(f"{_n(x)},{_n(y)}" for x, y in points)
        body.append(f'<polyline points="{coords}" fill="none" stroke="#4e79a7" stroke-width="2"/>')
    for (x, y), k in zip(points, kpi_sets):
        body.append(f'<circle cx="{_n(x)}" cy="{_n(y)}" r="4" fill="#4e79a7"'
                    f' data-scenario={quoteattr(k.scenario)} data-lead-time="{fmt_decimal(k.lead_time)}"/>')
        body.append(f'<text x="{_n(x)}" y="{_n(y - 10)}" text-anchor="middle">{fmt_decimal(k.lead_time)}</text>')
        body.append(f'<text x="{_n(x)}" y="{base_y + 18}" text-anchor="middle">{escape(k.scenario)}</text>')
    return _document(LEFT + PLOT_WIDTH + RIGHT, base_y + 40, title, body)
