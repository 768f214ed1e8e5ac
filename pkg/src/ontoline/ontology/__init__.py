"""The ontology layer: application-ontology assertion store and OWL exchange."""

from ontoline.ontology.owl import parse_owl, serialize_owl
from ontoline.ontology.schema import (
    DEFAULT_NAMESPACE,
    Vocabulary,
    resolve_namespace,
    schema_ontology,
)
from ontoline.ontology.store import (
    EMPTY,
    ClassDecl,
    DataAssertion,
    IndividualDecl,
    ObjectAssertion,
    Ontology,
    assert_all,
    assert_statement,
    integrate,
    iri,
    local_name,
    query,
    statements,
)

__all__ = [
    "DEFAULT_NAMESPACE",
    "EMPTY",
    "ClassDecl",
    "DataAssertion",
    "IndividualDecl",
    "ObjectAssertion",
    "Ontology",
    "Vocabulary",
    "assert_all",
    "assert_statement",
    "integrate",
    "iri",
    "local_name",
    "parse_owl",
    "query",
    "resolve_namespace",
    "schema_ontology",
    "serialize_owl",
    "statements",
]
