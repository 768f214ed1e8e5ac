"""GOPPRRE-lite architecture definition and its ontology transformation."""

from ontoline.archdef.model import (
    ArchitectureModel,
    Diagnostic,
    Graph,
    ModelObject,
    Point,
    Relationship,
    Role,
    render,
    validate_model,
)
from ontoline.archdef.parser import parse_model
from ontoline.archdef.transform import (
    element_iri,
    link_requirements,
    scenario_iri,
    to_ontology,
    traced_scenarios,
)

__all__ = [
    "ArchitectureModel",
    "Diagnostic",
    "Graph",
    "ModelObject",
    "Point",
    "Relationship",
    "Role",
    "element_iri",
    "link_requirements",
    "parse_model",
    "render",
    "scenario_iri",
    "to_ontology",
    "traced_scenarios",
    "validate_model",
]
