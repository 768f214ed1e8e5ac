"""Architecture model -> application ontology.

Individuals are scenario-qualified (``<scenario>__<object>``) so that the
same operation name can carry different attributes in different scenarios
once all parts are integrated into one ontology.
"""

from __future__ import annotations

from decimal import Decimal, InvalidOperation

from ontoline.archdef.model import ArchitectureModel, Graph, ModelObject, validate_model
from ontoline.errors import (
    DanglingTraceLink,
    InvalidModel,
    InvalidPropertyValue,
    MissingRequiredProperty,
    NonNumericLiteral,
    UnknownScenario,
)
from ontoline.numbers import MILLIS, fmt_decimal
from ontoline.ontology.schema import (
    Vocabulary,
    element_iri,
    requirement_iri,
    resolve_namespace,
    scenario_iri,
    schema_ontology,
)
from ontoline.ontology.store import (
    DataAssertion,
    IndividualDecl,
    ObjectAssertion,
    Ontology,
    Statement,
    assert_all,
    local_name,
)

MODES = ("manual", "automatic")
MAPPED_TYPES = ("Operation", "Resource", "ResourceType")

# model property key -> (ontology predicate, lower bound)
_OPTIONAL_NUMERIC = {
    "x": ("hasX", None),
    "y": ("hasY", None),
    "z": ("hasZ", None),
    "mass": ("hasMass", Decimal(0)),
    "posture_factor": ("hasPostureFactor", Decimal(1)),
}


def _numeric(obj: ModelObject, key: str) -> Decimal | None:
    value = obj.properties.get(key)
    if value is None:
        return None
    try:
        number = value if isinstance(value, Decimal) else Decimal(value)
    except InvalidOperation:
        raise NonNumericLiteral(f"{obj.name}.{key} = {value!r}") from None
    if not number.is_finite():
        raise NonNumericLiteral(f"{obj.name}.{key} = {value!r}")
    return number


def parse_demands(obj: ModelObject) -> dict[str, int]:
    """``"operator:1; lft_robot:2"`` -> ``{"lft_robot": 2, "operator": 1}``; a bare type means 1."""
    raw = obj.properties.get("demands", "")
    if isinstance(raw, Decimal):
        raise InvalidPropertyValue(f"{obj.name}.demands must name resource types, got {raw}")
    demands: dict[str, int] = {}
    for entry in filter(None, (e.strip() for e in raw.split(";"))):
        rtype, sep, count_text = (part.strip() for part in entry.partition(":"))
        try:
            count = int(count_text) if sep else 1
        except ValueError:
            raise NonNumericLiteral(f"{obj.name}.demands count {count_text!r}") from None
        if count < 1 or rtype in demands:
            raise InvalidPropertyValue(f"{obj.name}.demands entry {entry!r}")
        demands[rtype] = count
    return dict(sorted(demands.items()))


def format_demands(demands: dict[str, int]) -> str:
    return ";".join(f"{t}:{c}" for t, c in sorted(demands.items()))


def _label(obj: ModelObject) -> str:
    label = obj.properties.get("label", obj.name)
    return label if isinstance(label, str) else fmt_decimal(label)


def _operation_statements(v: Vocabulary, scenario: str, obj: ModelObject, ind: str) -> list[Statement]:
    for key in ("duration", "mode"):
        if key not in obj.properties:
            raise MissingRequiredProperty(f"operation {obj.name} in {scenario} lacks {key!r}")
    duration = _numeric(obj, "duration")
    if duration < 0 or (duration * MILLIS) != (duration * MILLIS).to_integral_value():
        raise InvalidPropertyValue(
            f"{obj.name}.duration = {duration}: must be >= 0 at 0.001-minute resolution"
        )
    mode = obj.properties["mode"]
    if mode not in MODES:
        raise InvalidPropertyValue(f"{obj.name}.mode = {mode!r}; expected one of {MODES}")

    out: list[Statement] = [
        DataAssertion(ind, v.hasDuration, fmt_decimal(duration), "decimal"),
        DataAssertion(ind, v.hasMode, mode, "string"),
    ]
    for key, (predicate, lower) in _OPTIONAL_NUMERIC.items():
        number = _numeric(obj, key)
        if number is None:
            continue
        if lower is not None and number < lower:
            raise InvalidPropertyValue(f"{obj.name}.{key} = {number}; must be >= {lower}")
        out.append(DataAssertion(ind, getattr(v, predicate), fmt_decimal(number), "decimal"))
    demands = parse_demands(obj)
    if demands:
        out.append(DataAssertion(ind, v.hasDemandCount, format_demands(demands), "string"))
        out += [ObjectAssertion(ind, v.requiresResource, element_iri(v.namespace, scenario, t))
                for t in demands]
    return out


def _graph(m: ArchitectureModel, scenario: str) -> Graph:
    diagnostics = validate_model(m)
    if diagnostics:
        raise InvalidModel(diagnostics)
    graph = m.graph(scenario)
    if graph is None:
        known = ", ".join(g.name for g in m.graphs) or "none"
        raise UnknownScenario(f"no graph named {scenario!r} (known: {known})")
    return graph


def to_ontology(m: ArchitectureModel, scenario: str, namespace: str | None = None) -> Ontology:
    """Map one scenario graph onto application-ontology individuals.

    Operation, Resource and ResourceType objects become individuals; a
    ``precedes`` relationship ``A -> B`` becomes ``B hasPredecessor A``;
    other relationships between mapped objects become ``connectsTo``.
    """
    v = Vocabulary(resolve_namespace(namespace))
    graph = _graph(m, scenario)
    scen = scenario_iri(v.namespace, scenario)
    stmts: list[Statement] = [
        IndividualDecl(scen, v.Scenario),
        DataAssertion(scen, v.hasLabel, scenario, "string"),
    ]

    mapped = {o.name: o for o in graph.objects if o.meta_type in MAPPED_TYPES}
    # Declare every individual first so later assertions can reference any of them.
    for obj in mapped.values():
        ind = element_iri(v.namespace, scenario, obj.name)
        stmts += [
            IndividualDecl(ind, getattr(v, obj.meta_type)),
            ObjectAssertion(ind, v.belongsToScenario, scen),
            DataAssertion(ind, v.hasLabel, _label(obj), "string"),
        ]

    for obj in mapped.values():
        ind = element_iri(v.namespace, scenario, obj.name)
        if obj.meta_type == "Operation":
            stmts += _operation_statements(v, scenario, obj, ind)
        elif obj.meta_type == "ResourceType":
            capacity = _numeric(obj, "capacity")
            if capacity is not None:
                if capacity < 0 or capacity != capacity.to_integral_value():
                    raise InvalidPropertyValue(f"{obj.name}.capacity = {capacity}")
                stmts.append(DataAssertion(ind, v.hasCapacity, str(int(capacity)), "integer"))
        else:
            rtype = obj.properties.get("type")
            if rtype is not None:
                target = mapped.get(rtype) if isinstance(rtype, str) else None
                if target is None or target.meta_type != "ResourceType":
                    raise InvalidPropertyValue(f"resource {obj.name}.type = {rtype!r} is not a ResourceType")
                stmts.append(ObjectAssertion(ind, v.connectsTo, element_iri(v.namespace, scenario, rtype)))

    for rel in graph.relationships:
        src, dst = mapped.get(rel.source.object), mapped.get(rel.target.object)
        if rel.is_precedence:
            if src is None or dst is None or "Operation" != src.meta_type or "Operation" != dst.meta_type:
                raise InvalidPropertyValue(f"precedence {rel.name} must connect two operations")
            stmts.append(ObjectAssertion(element_iri(v.namespace, scenario, dst.name), v.hasPredecessor,
                                         element_iri(v.namespace, scenario, src.name)))
        elif src is not None and dst is not None:
            stmts.append(ObjectAssertion(element_iri(v.namespace, scenario, src.name), v.connectsTo,
                                         element_iri(v.namespace, scenario, dst.name)))

    return assert_all(schema_ontology(v.namespace), stmts)


def _resolve_link(m: ArchitectureModel, link: str) -> list[tuple[Graph, ModelObject | None]]:
    graph_name, dot, obj_name = link.partition(".")
    if dot:
        graph = m.graph(graph_name)
        obj = graph.object(obj_name) if graph else None
        return [(graph, obj)] if obj else []
    graph = m.graph(link)
    if graph is not None:
        return [(graph, None)]
    return [(g, g.object(link)) for g in m.graphs if g.object(link) is not None]


def link_requirements(reqs, m: ArchitectureModel, namespace: str | None = None) -> Ontology:
    """Requirement individuals plus ``realizesRequirement`` trace assertions.

    A trace link names an object (in every graph that has it), a
    ``graph.object`` pair, or a whole graph (the scenario realizes it).
    """
    v = Vocabulary(resolve_namespace(namespace))
    stmts: list[Statement] = []
    for req in reqs:
        req_ind = requirement_iri(v.namespace, req.id)
        stmts += [IndividualDecl(req_ind, v.Requirement),
                  DataAssertion(req_ind, v.hasLabel, req.raw_text, "string")]
        for link in req.trace_links:
            targets = _resolve_link(m, link)
            if not targets:
                raise DanglingTraceLink(f"requirement {req.id} traces to unknown element {link!r}")
            for graph, obj in targets:
                scen = scenario_iri(v.namespace, graph.name)
                stmts += [IndividualDecl(scen, v.Scenario),
                          DataAssertion(scen, v.hasLabel, graph.name, "string")]
                if obj is None:
                    source = scen
                else:
                    source = element_iri(v.namespace, graph.name, obj.name)
                    cls = obj.meta_type if obj.meta_type in MAPPED_TYPES else "ArchitectureElement"
                    stmts += [IndividualDecl(source, getattr(v, cls)),
                              ObjectAssertion(source, v.belongsToScenario, scen)]
                stmts.append(ObjectAssertion(source, v.realizesRequirement, req_ind))
    return assert_all(schema_ontology(v.namespace), stmts)


def traced_scenarios(ont: Ontology, req_id: str, namespace: str | None = None) -> list[str]:
    """Scenario names whose elements realize ``req_id``; empty when untraced."""
    v = Vocabulary(resolve_namespace(namespace))
    req_ind = requirement_iri(v.namespace, req_id)
    scenarios: set[str] = set()
    for a in ont.object_assertions:
        if a.predicate != v.realizesRequirement or a.object != req_ind:
            continue
        if v.Scenario in ont.types_of(a.subject):
            owners = [a.subject]
        else:
            owners = ont.objects(a.subject, v.belongsToScenario)
        for scen in owners:
            label = ont.data_value(scen, v.hasLabel)
            scenarios.add(label.literal if label else local_name(scen))
    return sorted(scenarios)
