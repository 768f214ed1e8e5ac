"""Exact decimal helpers shared by the serializers and the simulator."""

from __future__ import annotations

from decimal import Decimal, InvalidOperation
from fractions import Fraction

# Simulation clock resolution: 0.001 minute.
MILLIS = 1000


def parse_decimal(text: str) -> Decimal:
    """Parse a finite decimal literal; raises ValueError otherwise."""
    try:
        value = Decimal(text.strip())
    except (InvalidOperation, AttributeError):
        raise ValueError(f"not a decimal number: {text!r}") from None
    if not value.is_finite():
        raise ValueError(f"not a finite number: {text!r}")
    return value


def fmt_decimal(value: Decimal | int) -> str:
    """Render with the minimal plain representation: 30, 0.5, -12.25."""
    value = Decimal(value)
    if value == value.to_integral_value():
        return str(int(value))
    return format(value.normalize(), "f")


def to_millis(minutes: Decimal) -> int:
    scaled = Decimal(minutes) * MILLIS
    if scaled != scaled.to_integral_value():
        raise ValueError(f"{minutes} is finer than the 0.001-minute resolution")
    return int(scaled)


def from_millis(millis: int) -> Decimal:
    return Decimal(millis) / MILLIS if millis % MILLIS else Decimal(millis // MILLIS)


def json_number(value):
    """Map exact numbers onto JSON-friendly int/float with shortest repr."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (Decimal, Fraction)):
        if value == int(value):
            return int(value)
        return float(value)
    return value
