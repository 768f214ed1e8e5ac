"""Travel-time and ergonomic-load estimation over a simulated schedule."""

from ontoline.ergosim.estimate import (
    TRAVEL_QUANTUM,
    ErgoReport,
    OpErgo,
    distance,
    ergonomic_report,
    ergonomic_score,
    op_load,
    travel_times,
)

__all__ = [
    "TRAVEL_QUANTUM",
    "ErgoReport",
    "OpErgo",
    "distance",
    "ergonomic_report",
    "ergonomic_score",
    "op_load",
    "travel_times",
]
