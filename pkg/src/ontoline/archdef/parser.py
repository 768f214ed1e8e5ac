"""Parser for the line-based architecture model format.

::

    # comment
    graph manual
      object OP1 : Operation { duration = 30; mode = manual; demands = "operator:1" }
      object operator : ResourceType { capacity = 1 }
      point in on OP1
      rel r1 : precedes OP1 -> OP2
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal

from ontoline.archdef.model import (
    WORD,
    ArchitectureModel,
    Graph,
    Literal,
    ModelObject,
    Point,
    Relationship,
    Role,
)
from ontoline.errors import ModelSyntaxError, UnknownObjectReference

_TOKEN = re.compile(
    rf"""
    (?P<ws>[ \t]+)
  | (?P<comment>\#.*)
  | (?P<number>-?\d+(?:\.\d+)?(?![A-Za-z0-9_]))
  | (?P<word>{WORD.pattern})
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<arrow>->)
  | (?P<punct>[:{{}};=.])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    column: int


def _tokenize(line: str, line_no: int) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if m is None:
            raise ModelSyntaxError(line_no, pos + 1, "a token", line[pos])
        kind = m.lastgroup
        if kind == "comment":
            break
        if kind != "ws":
            text = m.group()
            if kind == "punct" or kind == "arrow":
                kind = text
            tokens.append(Token(kind, text, pos + 1))
        pos = m.end()
    return tokens


class _Line:
    def __init__(self, tokens: list[Token], line_no: int, length: int):
        self.tokens = tokens
        self.pos = 0
        self.line_no = line_no
        self.end_column = length + 1

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def fail(self, expected: str):
        tok = self.peek()
        column = tok.column if tok else self.end_column
        raise ModelSyntaxError(self.line_no, column, expected, tok.text if tok else "end of line")

    def take(self, kind: str, expected: str | None = None) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            self.fail(expected or repr(kind))
        self.pos += 1
        return tok

    def keyword(self, word: str) -> None:
        tok = self.peek()
        if tok is None or tok.kind != "word" or tok.text != word:
            self.fail(repr(word))
        self.pos += 1

    def accept(self, kind: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.kind == kind:
            self.pos += 1
            return True
        return False

    def name(self, what: str) -> str:
        return self.take("word", what).text

    def value(self) -> Literal:
        tok = self.peek()
        if tok is None or tok.kind not in ("word", "number", "string"):
            self.fail("a value (word, number or quoted string)")
        self.pos += 1
        if tok.kind == "number":
            return Decimal(tok.text)
        if tok.kind == "string":
            return re.sub(r"\\(.)", r"\1", tok.text[1:-1])
        return tok.text

    def block(self) -> dict[str, Literal]:
        props: dict[str, Literal] = {}
        self.take("{")
        while not self.accept("}"):
            key_tok = self.peek()
            key = self.name("a property key or '}'")
            self.take("=")
            if key in props:
                raise ModelSyntaxError(self.line_no, key_tok.column, "a new property key", key)
            props[key] = self.value()
            if not self.accept(";"):
                self.take("}", "';' or '}'")
                break
        return props

    def tail(self) -> tuple[dict[str, Literal], dict[str, Literal]]:
        props: dict[str, Literal] = {}
        extension: dict[str, Literal] = {}
        tok = self.peek()
        if tok is not None and tok.kind == "{":
            props = self.block()
        tok = self.peek()
        if tok is not None and tok.kind == "word" and tok.text == "ext":
            self.pos += 1
            extension = self.block()
        if self.peek() is not None:
            self.fail("end of line")
        return props, extension

    def role(self) -> Role:
        obj = self.name("an object name")
        point = self.name("a point name") if self.accept(".") else None
        return Role(obj, point)


def parse_model(text: str) -> ArchitectureModel:
    """Parse model text; raises ModelSyntaxError or UnknownObjectReference."""
    model = ArchitectureModel()
    graph: Graph | None = None
    pending_points: list[tuple[str, Point, int]] = []

    def close_graph() -> None:
        if graph is None:
            return
        for obj_name, point, line_no in pending_points:
            obj = graph.object(obj_name)
            if obj is None:
                raise UnknownObjectReference(
                    f"line {line_no}: point {point.name!r} on unknown object {obj_name!r} in graph {graph.name}"
                )
            obj.points.append(point)
        pending_points.clear()
        for rel in graph.relationships:
            for end in (rel.source, rel.target):
                if graph.object(end.object) is None:
                    raise UnknownObjectReference(
                        f"line {rel.line}: relationship {rel.name!r} references unknown object "
                        f"{end.object!r} in graph {graph.name}"
                    )

    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw, line_no)
        if not tokens:
            continue
        indented = raw[:1] in (" ", "\t")
        ln = _Line(tokens, line_no, len(raw))
        head = ln.name("'graph', 'object', 'point' or 'rel'")

        if head == "graph":
            if indented:
                raise ModelSyntaxError(line_no, 1, "'graph' at column 1")
            close_graph()
            name = ln.name("a graph name")
            props, ext = ln.tail()
            graph = Graph(name, properties=props, extension=ext, line=line_no)
            model.graphs.append(graph)
            continue

        if head not in ("object", "point", "rel"):
            raise ModelSyntaxError(line_no, tokens[0].column, "'graph', 'object', 'point' or 'rel'", head)
        if graph is None:
            raise ModelSyntaxError(line_no, tokens[0].column, "'graph' before any member", head)
        if not indented:
            raise ModelSyntaxError(line_no, 1, f"indented {head!r} inside graph {graph.name}")

        if head == "object":
            name = ln.name("an object name")
            ln.take(":")
            meta_type = ln.name("a meta type")
            props, ext = ln.tail()
            graph.objects.append(ModelObject(name, meta_type, properties=props, extension=ext, line=line_no))
        elif head == "point":
            name = ln.name("a point name")
            ln.keyword("on")
            owner = ln.name("an object name")
            props, ext = ln.tail()
            pending_points.append((owner, Point(name, props, ext, line=line_no), line_no))
        else:
            name = ln.name("a relationship name")
            ln.take(":")
            rel_type = ln.name("a relationship type")
            source = ln.role()
            ln.take("->", "'->'")
            target = ln.role()
            props, ext = ln.tail()
            graph.relationships.append(
                Relationship(name, rel_type, source, target, props, ext, line=line_no)
            )

    close_graph()
    return model
