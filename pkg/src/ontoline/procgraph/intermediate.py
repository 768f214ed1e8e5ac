"""Tool-agnostic intermediate model: a versioned JSON cache of one scenario."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path
from typing import Mapping

from ontoline.errors import SchemaVersionMismatch, ValidationError
from ontoline.numbers import json_number
from ontoline.procgraph.graph import Operation, ProcessGraph, topological_order

SCHEMA_VERSION = 1

_OP_KEYS = {"id", "label", "duration_min", "mode", "demands", "x", "y", "z", "mass_kg", "posture_factor"}
_TOP_KEYS = {"schema_version", "scenario", "resources", "operations", "edges"}


@dataclass(frozen=True)
class IntermediateModel:
    scenario: str
    graph: ProcessGraph
    pools: dict[str, int] = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION


def _op_record(op: Operation) -> dict:
    x, y, z = op.position if op.position is not None else (None, None, None)
    return {
        "id": op.id,
        "label": op.label,
        "duration_min": json_number(op.duration),
        "mode": op.mode,
        "demands": dict(op.demands),
        "x": json_number(x),
        "y": json_number(y),
        "z": json_number(z),
        "mass_kg": json_number(op.mass),
        "posture_factor": json_number(op.posture_factor),
    }


def dumps_intermediate(model: IntermediateModel) -> str:
    doc = {
        "schema_version": model.schema_version,
        "scenario": model.scenario,
        "resources": [{"type": t, "capacity": c} for t, c in sorted(model.pools.items())],
        "operations": [_op_record(op) for op in model.graph.operations],
        "edges": [list(e) for e in sorted(model.graph.edges)],
    }
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def to_intermediate(g: ProcessGraph, pools: Mapping[str, int], scenario: str = "") -> IntermediateModel:
    topological_order(g)
    return IntermediateModel(scenario, g, dict(sorted(pools.items())))


def _number(value, what: str) -> Decimal | None:
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (Decimal, int)):
        raise ValidationError(f"{what}: expected a number, got {value!r}")
    return Decimal(value)


def loads_intermediate(text: str) -> IntermediateModel:
    try:
        doc = json.loads(text, parse_float=Decimal, parse_int=Decimal)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"intermediate model is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ValidationError("intermediate model must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(f"schema_version {version}, expected {SCHEMA_VERSION}")
    if set(doc) != _TOP_KEYS:
        raise ValidationError(f"top-level keys {sorted(doc)}, expected {sorted(_TOP_KEYS)}")

    pools: dict[str, int] = {}
    for res in doc["resources"]:
        if set(res) != {"type", "capacity"}:
            raise ValidationError(f"resource entry {res!r}")
        capacity = _number(res["capacity"], f"capacity of {res['type']}")
        if capacity is None or capacity < 0 or capacity != int(capacity):
            raise ValidationError(f"capacity of {res['type']} must be a non-negative integer")
        pools[str(res["type"])] = int(capacity)

    ops = []
    for rec in doc["operations"]:
        if set(rec) != _OP_KEYS:
            raise ValidationError(f"operation keys {sorted(rec)}, expected {sorted(_OP_KEYS)}")
        coords = [_number(rec[k], f"{rec['id']}.{k}") for k in ("x", "y", "z")]
        if any(c is None for c in coords) and any(c is not None for c in coords):
            raise ValidationError(f"{rec['id']}: position needs x, y and z")
        demands = {}
        for rtype, count in rec["demands"].items():
            count = _number(count, f"{rec['id']}.demands.{rtype}")
            if count is None or count != int(count):
                raise ValidationError(f"{rec['id']}: demand count for {rtype} must be an integer")
            demands[rtype] = int(count)
        duration = _number(rec["duration_min"], f"{rec['id']}.duration_min")
        if duration is None:
            raise ValidationError(f"{rec['id']}: duration_min is required")
        ops.append(Operation(
            id=rec["id"],
            label=rec["label"],
            duration=duration,
            mode=rec["mode"],
            demands=demands,
            position=tuple(coords) if coords[0] is not None else None,
            mass=_number(rec["mass_kg"], f"{rec['id']}.mass_kg"),
            posture_factor=_number(rec["posture_factor"], f"{rec['id']}.posture_factor"),
        ))

    edges = set()
    for edge in doc["edges"]:
        if not isinstance(edge, list) or len(edge) != 2:
            raise ValidationError(f"edge {edge!r} must be [pred, succ]")
        edges.add((edge[0], edge[1]))
    graph = ProcessGraph(tuple(ops), frozenset(edges))
    topological_order(graph)
    return IntermediateModel(str(doc["scenario"]), graph, pools)


def load_intermediate(path: str | Path) -> tuple[ProcessGraph, dict[str, int]]:
    model = loads_intermediate(Path(path).read_text(encoding="utf-8"))
    return model.graph, model.pools


def write_intermediate(model: IntermediateModel, path: str | Path) -> None:
    Path(path).write_text(dumps_intermediate(model), encoding="utf-8")
