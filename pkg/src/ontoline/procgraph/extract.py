"""Locate a scenario's process information in the ontology and extract it."""

from __future__ import annotations

from decimal import Decimal

from ontoline.errors import (
    MalformedLiteral,
    MissingAttribute,
    UnknownScenario,
    ValidationError,
)
from ontoline.numbers import parse_decimal
from ontoline.ontology.schema import Vocabulary, element_name, resolve_namespace, scenario_iri
from ontoline.ontology.store import Ontology
from ontoline.procgraph.graph import Operation, ProcessGraph, topological_order


def _literal(ont: Ontology, ind: str, predicate: str) -> str | None:
    a = ont.data_value(ind, predicate)
    return a.literal if a else None


def _decimal(ont: Ontology, ind: str, predicate: str, op_id: str) -> Decimal | None:
    text = _literal(ont, ind, predicate)
    if text is None:
        return None
    try:
        return parse_decimal(text)
    except ValueError:
        raise MalformedLiteral(f"{op_id}: {predicate.rpartition('#')[2]} = {text!r}") from None


def _demands(text: str, op_id: str) -> dict[str, int]:
    demands: dict[str, int] = {}
    for entry in filter(None, text.split(";")):
        rtype, sep, count = entry.partition(":")
        if not sep or not rtype or not count.isdigit() or int(count) < 1:
            raise MalformedLiteral(f"{op_id}: hasDemandCount entry {entry!r}")
        demands[rtype] = int(count)
    return demands


def _scenario(ont: Ontology, v: Vocabulary, scenario: str) -> str:
    scen = scenario_iri(v.namespace, scenario)
    if scen not in ont.instances_of(v.Scenario):
        known = sorted(
            (_literal(ont, s, v.hasLabel) or s) for s in ont.instances_of(v.Scenario)
        )
        raise UnknownScenario(f"{scenario!r} (known: {', '.join(known) or 'none'})")
    return scen


def _members(ont: Ontology, v: Vocabulary, scen: str, cls: str) -> list[str]:
    return [ind for ind in ont.instances_of(cls) if scen in ont.objects(ind, v.belongsToScenario)]


def extract_process(ont: Ontology, scenario: str, namespace: str | None = None) -> ProcessGraph:
    """Build the scenario's process DAG from Operation individuals.

    Raises CycleDetected if the extracted precedence relation is cyclic.
    """
    v = Vocabulary(resolve_namespace(namespace))
    scen = _scenario(ont, v, scenario)
    individuals = _members(ont, v, scen, v.Operation)
    ids = {ind: element_name(ind, scenario) for ind in individuals}

    operations = []
    for ind in individuals:
        op_id = ids[ind]
        duration = _decimal(ont, ind, v.hasDuration, op_id)
        if duration is None:
            raise MissingAttribute(f"{op_id}: hasDuration")
        mode = _literal(ont, ind, v.hasMode)
        if mode is None:
            raise MissingAttribute(f"{op_id}: hasMode")
        coords = [_decimal(ont, ind, p, op_id) for p in (v.hasX, v.hasY, v.hasZ)]
        if any(c is None for c in coords) and any(c is not None for c in coords):
            raise MissingAttribute(f"{op_id}: position needs all of hasX, hasY, hasZ")
        demands = _demands(_literal(ont, ind, v.hasDemandCount) or "", op_id)
        required = {element_name(r, scenario) for r in ont.objects(ind, v.requiresResource)}
        if required != set(demands):
            raise MalformedLiteral(f"{op_id}: hasDemandCount disagrees with requiresResource")
        try:
            operations.append(Operation(
                id=op_id,
                label=_literal(ont, ind, v.hasLabel) or op_id,
                duration=duration,
                mode=mode,
                demands=demands,
                position=tuple(coords) if coords[0] is not None else None,
                mass=_decimal(ont, ind, v.hasMass, op_id),
                posture_factor=_decimal(ont, ind, v.hasPostureFactor, op_id),
            ))
        except ValidationError as exc:
            raise MalformedLiteral(str(exc)) from None

    edges = set()
    for ind in individuals:
        for pred in ont.objects(ind, v.hasPredecessor):
            if pred not in ids:
                raise ValidationError(f"{ids[ind]} hasPredecessor {pred} outside scenario {scenario}")
            edges.add((ids[pred], ids[ind]))

    graph = ProcessGraph(tuple(operations), frozenset(edges))
    topological_order(graph)
    return graph


def extract_pools(ont: Ontology, scenario: str, namespace: str | None = None) -> dict[str, int]:
    """Resource capacities declared for a scenario.

    A ResourceType's capacity is its hasCapacity value, else the number of
    Resource individuals connected to it.
    """
    v = Vocabulary(resolve_namespace(namespace))
    scen = _scenario(ont, v, scenario)
    pools: dict[str, int] = {}
    units = _members(ont, v, scen, v.Resource)
    for ind in _members(ont, v, scen, v.ResourceType):
        name = element_name(ind, scenario)
        capacity = _literal(ont, ind, v.hasCapacity)
        if capacity is not None:
            if not capacity.isdigit():
                raise MalformedLiteral(f"{name}: hasCapacity = {capacity!r}")
            pools[name] = int(capacity)
        else:
            pools[name] = sum(1 for u in units if ind in ont.objects(u, v.connectsTo))
    return dict(sorted(pools.items()))
