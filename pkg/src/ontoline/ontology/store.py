"""Validated assertion store.

An :class:`Ontology` is an immutable value. :func:`assert_statement` and
:func:`integrate` return new ontologies and never mutate their inputs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

from ontoline.errors import (
    ConflictingDataAssertion,
    InvalidIri,
    SubclassCycle,
    UndeclaredEntity,
)

DATATYPES = ("string", "decimal", "integer")

_LOCAL = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*")


def check_iri(value: str) -> str:
    namespace, sep, local = value.rpartition("#")
    if not sep or not namespace or not _LOCAL.fullmatch(local):
        raise InvalidIri(value)
    return value


def iri(namespace: str, local: str) -> str:
    return check_iri(f"{namespace}#{local}")


def local_name(value: str) -> str:
    return value.rpartition("#")[2]


def namespace_of(value: str) -> str:
    return value.rpartition("#")[0]


@dataclass(frozen=True, order=True)
class ClassDecl:
    iri: str
    parent: str | None = None


@dataclass(frozen=True, order=True)
class IndividualDecl:
    iri: str
    cls: str


@dataclass(frozen=True, order=True)
class ObjectAssertion:
    subject: str
    predicate: str
    object: str


@dataclass(frozen=True, order=True)
class DataAssertion:
    subject: str
    predicate: str
    literal: str
    datatype: str = "string"


Statement = Union[ClassDecl, IndividualDecl, ObjectAssertion, DataAssertion]


@dataclass(frozen=True)
class Ontology:
    classes: frozenset[str] = frozenset()
    subclass_of: frozenset[tuple[str, str]] = frozenset()
    individuals: frozenset[tuple[str, str]] = frozenset()
    object_assertions: frozenset[ObjectAssertion] = frozenset()
    data_assertions: frozenset[DataAssertion] = frozenset()

    def individual_iris(self) -> set[str]:
        return {ind for ind, _ in self.individuals}

    def types_of(self, individual: str) -> set[str]:
        return {cls for ind, cls in self.individuals if ind == individual}

    def instances_of(self, cls: str) -> list[str]:
        return sorted(ind for ind, c in self.individuals if c == cls)

    def data_value(self, subject: str, predicate: str) -> DataAssertion | None:
        for a in self.data_assertions:
            if a.subject == subject and a.predicate == predicate:
                return a
        return None

    def objects(self, subject: str, predicate: str) -> list[str]:
        return sorted(a.object for a in self.object_assertions
                      if a.subject == subject and a.predicate == predicate)

    def __len__(self) -> int:
        return len(self.object_assertions) + len(self.data_assertions)


EMPTY = Ontology()


class _Builder:
    """Mutable working copy used to apply a batch of statements."""

    def __init__(self, ont: Ontology):
        self.classes = set(ont.classes)
        self.subclass_of = set(ont.subclass_of)
        self.individuals = set(ont.individuals)
        self.individual_iris = {ind for ind, _ in ont.individuals}
        self.object_assertions = set(ont.object_assertions)
        self.data_assertions = set(ont.data_assertions)
        self.data_index = {(a.subject, a.predicate): a for a in ont.data_assertions}

    def add(self, stmt: Statement) -> None:
        if isinstance(stmt, ClassDecl):
            check_iri(stmt.iri)
            if stmt.parent is None:
                self.classes.add(stmt.iri)
                return
            if stmt.parent not in self.classes:
                raise UndeclaredEntity(f"superclass {stmt.parent}")
            if stmt.parent == stmt.iri or stmt.iri in ancestors(self.subclass_of, stmt.parent):
                raise SubclassCycle(f"{stmt.iri} subClassOf {stmt.parent}")
            self.classes.add(stmt.iri)
            self.subclass_of.add((stmt.iri, stmt.parent))
        elif isinstance(stmt, IndividualDecl):
            check_iri(stmt.iri)
            if stmt.cls not in self.classes:
                raise UndeclaredEntity(f"class {stmt.cls}")
            self.individuals.add((stmt.iri, stmt.cls))
            self.individual_iris.add(stmt.iri)
        elif isinstance(stmt, ObjectAssertion):
            check_iri(stmt.predicate)
            for end in (stmt.subject, stmt.object):
                if end not in self.individual_iris:
                    raise UndeclaredEntity(f"individual {end}")
            self.object_assertions.add(stmt)
        elif isinstance(stmt, DataAssertion):
            check_iri(stmt.predicate)
            if stmt.subject not in self.individual_iris:
                raise UndeclaredEntity(f"individual {stmt.subject}")
            if stmt.datatype not in DATATYPES:
                raise ValueError(f"unsupported datatype {stmt.datatype!r}")
            self._add_data(stmt)
        else:
            raise TypeError(f"not a statement: {stmt!r}")

    def _add_data(self, stmt: DataAssertion) -> None:
        key = (stmt.subject, stmt.predicate)
        existing = self.data_index.get(key)
        if existing is not None and existing != stmt:
            raise ConflictingDataAssertion(
                f"{stmt.subject} {local_name(stmt.predicate)}: "
                f"{existing.literal!r} vs {stmt.literal!r}"
            )
        self.data_index[key] = stmt
        self.data_assertions.add(stmt)

    def freeze(self) -> Ontology:
        return Ontology(
            frozenset(self.classes),
            frozenset(self.subclass_of),
            frozenset(self.individuals),
            frozenset(self.object_assertions),
            frozenset(self.data_assertions),
        )


def ancestors(subclass_of: Iterable[tuple[str, str]], cls: str) -> set[str]:
    parents: dict[str, set[str]] = {}
    for child, parent in subclass_of:
        parents.setdefault(child, set()).add(parent)
    seen: set[str] = set()
    stack = [cls]
    while stack:
        for p in parents.get(stack.pop(), ()):
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def assert_statement(ont: Ontology, statement: Statement) -> Ontology:
    """Add one statement (set semantics: re-asserting is a no-op)."""
    return assert_all(ont, [statement])


def assert_all(ont: Ontology, statements: Iterable[Statement]) -> Ontology:
    """Apply statements in order; all-or-nothing."""
    builder = _Builder(ont)
    for stmt in statements:
        builder.add(stmt)
    return builder.freeze()


def _check_acyclic(subclass_of: set[tuple[str, str]]) -> None:
    for child, _ in subclass_of:
        if child in ancestors(subclass_of, child):
            raise SubclassCycle(f"{child} is its own ancestor")


def integrate(parts: Iterable[Ontology]) -> Ontology:
    """Union of ontologies; conflicting data literals are rejected."""
    builder = _Builder(EMPTY)
    for part in parts:
        builder.classes |= part.classes
        builder.subclass_of |= part.subclass_of
        builder.individuals |= part.individuals
        builder.individual_iris |= {ind for ind, _ in part.individuals}
        builder.object_assertions |= part.object_assertions
        for stmt in sorted(part.data_assertions):
            builder._add_data(stmt)
    _check_acyclic(builder.subclass_of)
    return builder.freeze()


def statements(ont: Ontology) -> list[Statement]:
    """Statements that rebuild ``ont`` when replayed in order."""
    out: list[Statement] = []
    parents: dict[str, list[str]] = {}
    for child, parent in ont.subclass_of:
        parents.setdefault(child, []).append(parent)
    done: set[str] = set()

    def emit(cls: str) -> None:
        if cls in done:
            return
        done.add(cls)
        out.append(ClassDecl(cls))
        for parent in sorted(parents.get(cls, ())):
            emit(parent)
            out.append(ClassDecl(cls, parent))

    for cls in sorted(ont.classes):
        emit(cls)
    out.extend(IndividualDecl(i, c) for i, c in sorted(ont.individuals))
    out.extend(sorted(ont.object_assertions))
    out.extend(sorted(ont.data_assertions))
    return out


def _assertion_key(a: ObjectAssertion | DataAssertion) -> tuple:
    if isinstance(a, ObjectAssertion):
        return (a.subject, a.predicate, a.object, "")
    return (a.subject, a.predicate, a.literal, a.datatype)


def query(
    ont: Ontology,
    subject: str | None = None,
    predicate: str | None = None,
    obj: str | None = None,
) -> list[ObjectAssertion | DataAssertion]:
    """Match object and data assertions; ``None`` is a wildcard.

    For data assertions the object position matches the literal. Results are
    sorted lexicographically by (subject, predicate, object/literal).
    """
    hits: list[ObjectAssertion | DataAssertion] = []
    for a in ont.object_assertions:
        if ((subject is None or a.subject == subject)
                and (predicate is None or a.predicate == predicate)
                and (obj is None or a.object == obj)):
            hits.append(a)
    for d in ont.data_assertions:
        if ((subject is None or d.subject == subject)
                and (predicate is None or d.predicate == predicate)
                and (obj is None or d.literal == obj)):
            hits.append(d)
    return sorted(hits, key=_assertion_key)
