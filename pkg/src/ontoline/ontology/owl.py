"""OWL subset in RDF/XML.

Accepted constructs: ``owl:Class`` with ``rdfs:subClassOf``;
``owl:NamedIndividual`` with ``rdf:type``, object properties as
``rdf:resource`` references and data properties as typed literals.
Everything is emitted sorted by IRI so equal ontologies serialize to equal bytes.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from collections import defaultdict
from xml.sax.saxutils import escape, quoteattr

from ontoline.errors import (
    ConflictingDataAssertion,
    DanglingReference,
    SubclassCycle,
    UnknownElement,
)
from ontoline.ontology.schema import resolve_namespace
from ontoline.ontology.store import (
    DataAssertion,
    ObjectAssertion,
    Ontology,
    ancestors,
    check_iri,
    local_name,
    namespace_of,
)

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"
XSD = "http://www.w3.org/2001/XMLSchema#"
RESERVED = (RDF, RDFS, OWL, XSD)

_TEXT_ENTITIES = {"\r": "&#13;"}
_ATTR_ENTITIES = {"\r": "&#13;", "\n": "&#10;", "\t": "&#9;"}


def _prefixes(ont: Ontology, app_namespace: str) -> dict[str, str]:
    """Namespace URI (with trailing '#') -> prefix, app namespace first."""
    namespaces = {namespace_of(a.predicate) + "#"
                  for a in (*ont.object_assertions, *ont.data_assertions)}
    app = app_namespace + "#"
    for ns in namespaces:
        if ns in RESERVED:
            raise ValueError(f"predicates in reserved namespace {ns} are not supported")
    prefixes = {app: "app"}
    for i, ns in enumerate(sorted(namespaces - {app}), start=1):
        prefixes[ns] = f"app{i}"
    return prefixes


def serialize_owl(ont: Ontology, namespace: str | None = None) -> str:
    prefixes = _prefixes(ont, resolve_namespace(namespace))

    def qname(predicate: str) -> str:
        return f"{prefixes[namespace_of(predicate) + '#']}:{local_name(predicate)}"

    lines = ['<?xml version="1.0" encoding="UTF-8"?>', "<rdf:RDF"]
    ns_decls = [("rdf", RDF), ("rdfs", RDFS), ("owl", OWL)]
    ns_decls += [(p, ns) for ns, p in sorted(prefixes.items(), key=lambda kv: kv[1])]
    lines += [f"    xmlns:{p}={quoteattr(ns)}" for p, ns in ns_decls]
    lines[-1] += ">"

    parents = defaultdict(list)
    for child, parent in ont.subclass_of:
        parents[child].append(parent)
    for cls in sorted(ont.classes):
        if parents[cls]:
            lines.append(f"  <owl:Class rdf:about={quoteattr(cls)}>")
            lines += [f"    <rdfs:subClassOf rdf:resource={quoteattr(p)}/>"
                      for p in sorted(parents[cls])]
            lines.append("  </owl:Class>")
        else:
            lines.append(f"  <owl:Class rdf:about={quoteattr(cls)}/>")

    types = defaultdict(list)
    for ind, cls in ont.individuals:
        types[ind].append(cls)
    objs = defaultdict(list)
    for a in ont.object_assertions:
        objs[a.subject].append(a)
    data = defaultdict(list)
    for d in ont.data_assertions:
        data[d.subject].append(d)

    for ind in sorted(types):
        lines.append(f"  <owl:NamedIndividual rdf:about={quoteattr(ind)}>")
        lines += [f"    <rdf:type rdf:resource={quoteattr(c)}/>" for c in sorted(types[ind])]
        for a in sorted(objs[ind]):
            lines.append(f"    <{qname(a.predicate)} rdf:resource={quoteattr(a.object)}/>")
        for d in sorted(data[ind]):
            tag = qname(d.predicate)
            dt = quoteattr(XSD + d.datatype, _ATTR_ENTITIES)
            lines.append(f"    <{tag} rdf:datatype={dt}>{escape(d.literal, _TEXT_ENTITIES)}</{tag}>")
        lines.append("  </owl:NamedIndividual>")

    lines.append("</rdf:RDF>")
    return "\n".join(lines) + "\n"


def _split_tag(tag: str) -> tuple[str, str]:
    if not tag.startswith("{"):
        raise UnknownElement(f"un-namespaced element <{tag}>")
    ns, _, local = tag[1:].partition("}")
    return ns, local


def _about(el: ET.Element) -> str:
    value = el.get(f"{{{RDF}}}about")
    if not value:
        raise UnknownElement(f"<{_split_tag(el.tag)[1]}> without rdf:about")
    return check_iri(value)


def _resource(el: ET.Element) -> str | None:
    value = el.get(f"{{{RDF}}}resource")
    return check_iri(value) if value is not None else None


def parse_owl(doc: str | bytes) -> Ontology:
    """Inverse of :func:`serialize_owl`; rejects constructs outside the subset."""
    try:
        root = ET.fromstring(doc)
    except ET.ParseError as exc:
        raise UnknownElement(f"not well-formed XML: {exc}") from None
    if root.tag != f"{{{RDF}}}RDF":
        raise UnknownElement(f"root element {root.tag}")

    classes: set[str] = set()
    subclass_of: set[tuple[str, str]] = set()
    individuals: set[tuple[str, str]] = set()
    object_assertions: set[ObjectAssertion] = set()
    data_assertions: set[DataAssertion] = set()

    for el in root:
        if el.tag == f"{{{OWL}}}Class":
            cls = _about(el)
            classes.add(cls)
            for child in el:
                if child.tag != f"{{{RDFS}}}subClassOf" or _resource(child) is None:
                    raise UnknownElement(f"<{_split_tag(child.tag)[1]}> inside owl:Class")
                subclass_of.add((cls, _resource(child)))
        elif el.tag == f"{{{OWL}}}NamedIndividual":
            ind = _about(el)
            typed = False
            for child in el:
                ns, local = _split_tag(child.tag)
                resource = _resource(child)
                if child.tag == f"{{{RDF}}}type":
                    if resource is None:
                        raise UnknownElement(f"rdf:type without rdf:resource on {ind}")
                    individuals.add((ind, resource))
                    typed = True
                    continue
                if ns in RESERVED or not ns.endswith("#"):
                    raise UnknownElement(f"property element {child.tag}")
                predicate = check_iri(ns + local)
                if resource is not None:
                    object_assertions.add(ObjectAssertion(ind, predicate, resource))
                    continue
                datatype = child.get(f"{{{RDF}}}datatype", "")
                if not datatype.startswith(XSD) or datatype[len(XSD):] not in ("string", "decimal", "integer"):
                    raise UnknownElement(f"literal on {ind} has unsupported datatype {datatype!r}")
                data_assertions.add(DataAssertion(ind, predicate, child.text or "", datatype[len(XSD):]))
            if not typed:
                raise UnknownElement(f"individual {ind} has no rdf:type")
        else:
            raise UnknownElement(f"element {el.tag}")

    for child, parent in subclass_of:
        if parent not in classes:
            raise DanglingReference(f"{child} subClassOf undeclared {parent}")
    for ind, cls in individuals:
        if cls not in classes:
            raise DanglingReference(f"{ind} typed by undeclared class {cls}")
    declared = {ind for ind, _ in individuals}
    for a in object_assertions:
        if a.object not in declared:
            raise DanglingReference(f"{a.subject} {local_name(a.predicate)} -> undeclared {a.object}")
    for child, _ in subclass_of:
        if child in ancestors(subclass_of, child):
            raise SubclassCycle(child)
    seen: dict[tuple[str, str], DataAssertion] = {}
    for d in sorted(data_assertions):
        key = (d.subject, d.predicate)
        if key in seen:
            raise ConflictingDataAssertion(f"{d.subject} {local_name(d.predicate)}")
        seen[key] = d

    return Ontology(
        frozenset(classes),
        frozenset(subclass_of),
        frozenset(individuals),
        frozenset(object_assertions),
        frozenset(data_assertions),
    )
