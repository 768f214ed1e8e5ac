"""Application-ontology vocabulary.

The vocabulary is closed: architecture transformation writes only these
names and process extraction reads only these names.
"""

from __future__ import annotations

import os

from ontoline.ontology.store import ClassDecl, Ontology, assert_all, iri, local_name

DEFAULT_NAMESPACE = "http://ontoline.example/app"
NAMESPACE_ENV = "ONTOLINE_NS"

CLASSES = (
    "ProcessPlan",
    "Operation",
    "Resource",
    "ResourceType",
    "Requirement",
    "Scenario",
    "ArchitectureElement",
)
# child -> parent
SUBCLASSES = {
    "Operation": "ArchitectureElement",
    "Resource": "ArchitectureElement",
    "ResourceType": "ArchitectureElement",
}
OBJECT_PREDICATES = (
    "hasOperation",
    "hasPredecessor",
    "requiresResource",
    "realizesRequirement",
    "belongsToScenario",
    "connectsTo",
)
DATA_PREDICATES = {
    "hasDuration": "decimal",
    "hasMode": "string",
    "hasCapacity": "integer",
    "hasDemandCount": "string",
    "hasX": "decimal",
    "hasY": "decimal",
    "hasZ": "decimal",
    "hasMass": "decimal",
    "hasPostureFactor": "decimal",
    "hasLabel": "string",
}


def resolve_namespace(explicit: str | None = None) -> str:
    """Flag beats environment beats default."""
    return explicit or os.environ.get(NAMESPACE_ENV) or DEFAULT_NAMESPACE


class Vocabulary:
    """IRIs of the schema terms within one namespace.

    >>> Vocabulary("http://x").Operation
    'http://x#Operation'
    """

    def __init__(self, namespace: str = DEFAULT_NAMESPACE):
        self.namespace = namespace
        for name in (*CLASSES, *OBJECT_PREDICATES, *DATA_PREDICATES):
            setattr(self, name, iri(namespace, name))

    def term(self, local: str) -> str:
        return iri(self.namespace, local)

    def datatype(self, predicate_iri: str) -> str:
        return DATA_PREDICATES[predicate_iri.rpartition("#")[2]]


def schema_ontology(namespace: str = DEFAULT_NAMESPACE) -> Ontology:
    """The class declarations every application-ontology part starts from."""
    vocab = Vocabulary(namespace)
    decls = [ClassDecl(getattr(vocab, c)) for c in CLASSES]
    decls += [ClassDecl(getattr(vocab, c), getattr(vocab, p)) for c, p in SUBCLASSES.items()]
    return assert_all(Ontology(), decls)


# Individual naming. Elements are scenario-qualified so one object name can
# carry different attributes per scenario in the integrated ontology.


def scenario_iri(namespace: str, scenario: str) -> str:
    return iri(namespace, f"scenario-{scenario}")


def element_iri(namespace: str, scenario: str, name: str) -> str:
    return iri(namespace, f"{scenario}__{name}")


def requirement_iri(namespace: str, req_id: str) -> str:
    return iri(namespace, f"requirement-{req_id}")


def element_name(individual: str, scenario: str) -> str:
    local = local_name(individual)
    prefix = f"{scenario}__"
    if not local.startswith(prefix):
        raise ValueError(f"{individual} is not an element of scenario {scenario}")
    return local[len(prefix):]
