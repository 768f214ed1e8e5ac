"""Deterministic resource-constrained discrete-event simulation."""

from ontoline.dessim.engine import (
    Event,
    EventKind,
    Policy,
    ResourcePool,
    SimulationTrace,
    check_demands,
    lexicographic,
    simulate,
    utilization,
)
from ontoline.dessim.validate import validate_trace

__all__ = [
    "Event",
    "EventKind",
    "Policy",
    "ResourcePool",
    "SimulationTrace",
    "check_demands",
    "lexicographic",
    "simulate",
    "utilization",
    "validate_trace",
]
