"""Quantitative constraints embedded in requirement responses.

Grammar (case-insensitive)::

    <achieve|have|keep> a[n] <metric> of <at most|at least|exactly> <number> [<unit>]
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from ontoline.errors import UnknownMetric, UnknownUnit
from ontoline.numbers import fmt_decimal, parse_decimal

METRICS = ("lead_time", "automation_ratio", "utilization", "ergonomic_score")
DURATION_METRICS = frozenset({"lead_time"})

METRIC_SYNONYMS = {
    "lead-time": "lead_time",
    "lead time": "lead_time",
    "leadtime": "lead_time",
    "lead_time": "lead_time",
    "automation ratio": "automation_ratio",
    "automation-ratio": "automation_ratio",
    "automation_ratio": "automation_ratio",
    "utilization": "utilization",
    "utilisation": "utilization",
    "resource utilization": "utilization",
    "ergonomic score": "ergonomic_score",
    "ergonomic load": "ergonomic_score",
    "ergonomic-score": "ergonomic_score",
    "ergonomic_score": "ergonomic_score",
}

COMPARATORS = {"at most": "<=", "at least": ">=", "exactly": "="}

# unit word -> (canonical unit, factor to canonical)
TIME_UNITS = {
    "minutes": ("minutes", Decimal(1)),
    "minute": ("minutes", Decimal(1)),
    "min": ("minutes", Decimal(1)),
    "mins": ("minutes", Decimal(1)),
    "hours": ("minutes", Decimal(60)),
    "hour": ("minutes", Decimal(60)),
    "h": ("minutes", Decimal(60)),
}

_PHRASE = re.compile(
    r"\b(?:achieve|have|keep)\s+an?\s+(?P<metric>[a-z_][a-z_ -]*?)\s+of\s+"
    r"(?P<cmp>at most|at least|exactly)\s+(?P<number>-?\d+(?:\.\d+)?)"
    r"(?:\s+(?P<unit>[a-z_]+))?",
    re.IGNORECASE,
)


@dataclass(frozen=True)
class MetricConstraint:
    metric: str
    comparator: str
    threshold: Decimal
    unit: str = ""

    def render(self) -> str:
        text = f"{self.metric} {self.comparator} {fmt_decimal(self.threshold)}"
        return f"{text} {self.unit}" if self.unit else text

    @classmethod
    def from_text(cls, text: str) -> MetricConstraint:
        """Inverse of :meth:`render`."""
        parts = text.split()
        if len(parts) not in (3, 4):
            raise ValueError(f"malformed constraint {text!r}")
        metric, comparator, threshold = parts[:3]
        if metric not in METRICS:
            raise UnknownMetric(metric)
        if comparator not in COMPARATORS.values():
            raise ValueError(f"unknown comparator {comparator!r}")
        unit = parts[3] if len(parts) == 4 else ""
        return cls(metric, comparator, parse_decimal(threshold), unit)

    def holds(self, measured) -> bool:
        value, bound = Fraction(measured), Fraction(self.threshold)
        if self.comparator == "<=":
            return value <= bound
        if self.comparator == ">=":
            return value >= bound
        return value == bound


def extract_constraint(req) -> MetricConstraint | None:
    """Find the quantitative phrase in a requirement's response, if any.

    ``req`` is a :class:`Requirement` or a bare response string.

    >>> extract_constraint("achieve a lead-time of at most 200 minutes")
    MetricConstraint(metric='lead_time', comparator='<=', threshold=Decimal('200'), unit='minutes')
    """
    response = req if isinstance(req, str) else req.response
    m = _PHRASE.search(response)
    if m is None:
        return None
    name = " ".join(m.group("metric").lower().split())
    metric = METRIC_SYNONYMS.get(name)
    if metric is None:
        raise UnknownMetric(f"{name!r} is not one of {', '.join(METRICS)}")
    threshold = parse_decimal(m.group("number"))
    unit_word = (m.group("unit") or "").lower()

    if metric in DURATION_METRICS:
        if unit_word not in TIME_UNITS:
            raise UnknownUnit(f"{metric} needs a time unit, got {unit_word or 'none'!r}")
        unit, factor = TIME_UNITS[unit_word]
        threshold *= factor
    else:
        if unit_word in TIME_UNITS:
            raise UnknownUnit(f"{metric} is dimensionless, got {unit_word!r}")
        # Trailing words after a dimensionless number are prose, not a unit.
        unit = ""
    return MetricConstraint(metric, COMPARATORS[m.group("cmp").lower()], threshold, unit)
