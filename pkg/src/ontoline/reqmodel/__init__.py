"""Requirement management: EARS parsing, CSV/ReqIF exchange, verification states."""

from ontoline.reqmodel.constraint import METRICS, MetricConstraint, extract_constraint
from ontoline.reqmodel.ears import ClauseKind, EarsPattern, parse_ears
from ontoline.reqmodel.reqif import export_reqif, import_reqif
from ontoline.reqmodel.requirements import (
    Requirement,
    RequirementSet,
    VerificationState,
    export_table,
    import_requirements,
    make_requirement,
    read_requirements_csv,
    update_verification_state,
)

__all__ = [
    "METRICS",
    "ClauseKind",
    "EarsPattern",
    "MetricConstraint",
    "Requirement",
    "RequirementSet",
    "VerificationState",
    "export_reqif",
    "export_table",
    "extract_constraint",
    "import_reqif",
    "import_requirements",
    "make_requirement",
    "parse_ears",
    "read_requirements_csv",
    "update_verification_state",
]
