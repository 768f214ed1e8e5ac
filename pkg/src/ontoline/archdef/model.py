"""GOPPRRE-lite architecture model.

Graphs hold objects and relationships. Objects own points (ports).
Relationships connect two roles, each an object with an optional point.
Any element can carry properties and an extension map. Points and roles
are kept as metadata only; nothing downstream simulates them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Union

from ontoline.numbers import fmt_decimal

Literal = Union[str, Decimal]

WORD = re.compile(r"[A-Za-z_](?:[A-Za-z0-9_]|-(?!>))*")

META_KINDS = ("Graph", "Object", "Point", "Property", "Role", "Relationship", "Extension")
PRECEDENCE = "precedes"


@dataclass
class Point:
    name: str
    properties: dict[str, Literal] = field(default_factory=dict)
    extension: dict[str, Literal] = field(default_factory=dict)
    line: int = field(default=0, compare=False)

    meta_kind = "Point"


@dataclass
class ModelObject:
    name: str
    meta_type: str
    points: list[Point] = field(default_factory=list)
    properties: dict[str, Literal] = field(default_factory=dict)
    extension: dict[str, Literal] = field(default_factory=dict)
    line: int = field(default=0, compare=False)

    meta_kind = "Object"

    def point(self, name: str) -> Point | None:
        return next((p for p in self.points if p.name == name), None)


@dataclass(frozen=True)
class Role:
    object: str
    point: str | None = None

    meta_kind = "Role"

    def __str__(self) -> str:
        return f"{self.object}.{self.point}" if self.point else self.object


@dataclass
class Relationship:
    name: str
    rel_type: str
    source: Role
    target: Role
    properties: dict[str, Literal] = field(default_factory=dict)
    extension: dict[str, Literal] = field(default_factory=dict)
    line: int = field(default=0, compare=False)

    meta_kind = "Relationship"

    @property
    def is_precedence(self) -> bool:
        return self.rel_type == PRECEDENCE


@dataclass
class Graph:
    name: str
    objects: list[ModelObject] = field(default_factory=list)
    relationships: list[Relationship] = field(default_factory=list)
    properties: dict[str, Literal] = field(default_factory=dict)
    extension: dict[str, Literal] = field(default_factory=dict)
    line: int = field(default=0, compare=False)

    meta_kind = "Graph"

    def object(self, name: str) -> ModelObject | None:
        return next((o for o in self.objects if o.name == name), None)

    def objects_of(self, meta_type: str) -> list[ModelObject]:
        return [o for o in self.objects if o.meta_type == meta_type]


@dataclass
class ArchitectureModel:
    graphs: list[Graph] = field(default_factory=list)

    def graph(self, name: str) -> Graph | None:
        return next((g for g in self.graphs if g.name == name), None)


@dataclass(frozen=True)
class Diagnostic:
    path: str
    message: str
    line: int = 0

    def __str__(self) -> str:
        where = f" (line {self.line})" if self.line else ""
        return f"{self.path}: {self.message}{where}"


# rendering -----------------------------------------------------------------


def _render_value(value: Literal) -> str:
    if isinstance(value, Decimal):
        return fmt_decimal(value)
    if WORD.fullmatch(value):
        return value
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _render_block(props: dict[str, Literal]) -> str:
    if not props:
        return ""
    body = "; ".join(f"{k} = {_render_value(v)}" for k, v in props.items())
    return f" {{ {body} }}"


def _render_tail(props: dict[str, Literal], extension: dict[str, Literal]) -> str:
    tail = _render_block(props)
    if extension:
        tail = (tail or " {}") + " ext" + _render_block(extension)
    return tail


def render(model: ArchitectureModel) -> str:
    """Deterministic pretty-printer; ``parse_model(render(m)) == m``."""
    lines: list[str] = []
    for g in model.graphs:
        lines.append(f"graph {g.name}{_render_tail(g.properties, g.extension)}")
        for o in g.objects:
            lines.append(f"  object {o.name} : {o.meta_type}{_render_tail(o.properties, o.extension)}")
        for o in g.objects:
            for p in o.points:
                lines.append(f"  point {p.name} on {o.name}{_render_tail(p.properties, p.extension)}")
        for r in g.relationships:
            lines.append(
                f"  rel {r.name} : {r.rel_type} {r.source} -> {r.target}"
                f"{_render_tail(r.properties, r.extension)}"
            )
    return "\n".join(lines) + ("\n" if lines else "")


# validation ----------------------------------------------------------------


def validate_model(model: ArchitectureModel) -> list[Diagnostic]:
    """Check structural invariants; an empty list means the model is valid."""
    out: list[Diagnostic] = []
    seen_graphs: set[str] = set()
    for g in model.graphs:
        if g.name in seen_graphs:
            out.append(Diagnostic(f"graph {g.name}", "duplicate graph name", g.line))
        seen_graphs.add(g.name)

        names: set[str] = set()
        for o in g.objects:
            if o.name in names:
                out.append(Diagnostic(f"graph {g.name}", f"duplicate object name {o.name!r}", o.line))
            names.add(o.name)
            points: set[str] = set()
            for p in o.points:
                if p.name in points:
                    out.append(Diagnostic(f"{g.name}/{o.name}", f"duplicate point {p.name!r}", p.line))
                points.add(p.name)

        resource_types = {o.name for o in g.objects_of("ResourceType")}
        for o in g.objects_of("Operation"):
            demands = o.properties.get("demands")
            if isinstance(demands, str):
                for entry in filter(None, (e.strip() for e in demands.split(";"))):
                    rtype = entry.partition(":")[0].strip()
                    if rtype not in resource_types:
                        out.append(Diagnostic(f"{g.name}/{o.name}",
                                              f"demand on undeclared ResourceType {rtype!r}", o.line))

        rel_names: set[str] = set()
        for r in g.relationships:
            path = f"{g.name}/rel {r.name}"
            if r.name in rel_names:
                out.append(Diagnostic(path, "duplicate relationship name", r.line))
            rel_names.add(r.name)
            for end in (r.source, r.target):
                obj = g.object(end.object)
                if obj is None:
                    out.append(Diagnostic(path, f"role references unknown object {end.object!r}", r.line))
                elif end.point is not None and obj.point(end.point) is None:
                    out.append(Diagnostic(path, f"role references undeclared point {end}", r.line))
            if r.is_precedence:
                if r.properties:
                    out.append(Diagnostic(path, "precedence relationships cannot carry attributes", r.line))
                if r.source.object == r.target.object:
                    out.append(Diagnostic(path, "operation cannot precede itself", r.line))
    return out
