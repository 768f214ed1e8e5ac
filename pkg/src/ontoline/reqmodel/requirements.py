"""Requirement items, CSV import/export and verification-state tracking."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable

from ontoline.errors import DuplicateId, ParseError, ReqModelError, UnknownRequirementId
from ontoline.reqmodel.constraint import MetricConstraint, extract_constraint
from ontoline.reqmodel.ears import Clause, EarsPattern, parse_ears

CSV_HEADER = ("id", "text", "trace_links")
TABLE_HEADER = ("id", "pattern", "system", "response", "constraint", "verification", "trace_links")

DEFAULT_TITLE = "Requirements"
DEFAULT_CREATION_TIME = "1970-01-01T00:00:00Z"


class VerificationState(str, Enum):
    UNVERIFIED = "Unverified"
    PASSED = "Passed"
    FAILED = "Failed"


@dataclass(frozen=True)
class Requirement:
    id: str
    raw_text: str
    pattern: EarsPattern
    system_name: str
    response: str
    clauses: tuple[Clause, ...] = ()
    constraint: MetricConstraint | None = None
    verification: VerificationState = VerificationState.UNVERIFIED
    trace_links: tuple[str, ...] = ()
    audit: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.id:
            raise ReqModelError("requirement id must be non-empty")
        if self.pattern is EarsPattern.UBIQUITOUS and self.clauses:
            raise ReqModelError(f"{self.id}: ubiquitous requirement cannot carry clauses")
        if self.pattern is EarsPattern.COMPLEX and len(self.clauses) < 2:
            raise ReqModelError(f"{self.id}: complex requirement needs at least two clauses")


def make_requirement(req_id: str, text: str, trace_links: Iterable[str] = ()) -> Requirement:
    """Parse ``text`` and build an unverified requirement."""
    pattern, system_name, response, clauses = parse_ears(text)
    links = tuple(dict.fromkeys(link for link in trace_links if link))
    return Requirement(
        id=req_id,
        raw_text=text.strip(),
        pattern=pattern,
        system_name=system_name,
        response=response,
        clauses=tuple(clauses),
        constraint=extract_constraint(response),
        trace_links=links,
    )


@dataclass(frozen=True)
class RequirementSet:
    requirements: tuple[Requirement, ...] = ()
    title: str = DEFAULT_TITLE
    creation_time: str = DEFAULT_CREATION_TIME
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {}
        for req in self.requirements:
            if req.id in index:
                raise DuplicateId(req.id)
            index[req.id] = req
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.requirements)

    def __iter__(self):
        return iter(self.requirements)

    def __getitem__(self, req_id: str) -> Requirement:
        try:
            return self._index[req_id]
        except KeyError:
            raise UnknownRequirementId(req_id) from None

    def __contains__(self, req_id: str) -> bool:
        return req_id in self._index

    @property
    def ids(self) -> list[str]:
        return [r.id for r in self.requirements]


def split_links(cell: str) -> list[str]:
    return [part.strip() for part in cell.split(";") if part.strip()]


def read_requirements_csv(text: str, *, title: str = DEFAULT_TITLE,
                          creation_time: str = DEFAULT_CREATION_TIME) -> RequirementSet:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ReqModelError("requirements CSV is empty (missing header)") from None
    if tuple(h.strip().lstrip("﻿") for h in header) != CSV_HEADER:
        raise ReqModelError(f"expected header {','.join(CSV_HEADER)}, got {','.join(header)}")

    seen: set[str] = set()
    reqs = []
    for row_no, row in enumerate(reader, start=2):
        if not any(cell.strip() for cell in row):
            continue
        if len(row) == 2:
            row = [*row, ""]
        if len(row) != 3:
            raise ParseError(row_no, ReqModelError(f"expected 3 columns, got {len(row)}"))
        req_id, text, links = (cell.strip() for cell in row)
        if req_id in seen:
            raise DuplicateId(f"{req_id} (row {row_no})")
        seen.add(req_id)
        try:
            reqs.append(make_requirement(req_id, text, split_links(links)))
        except ReqModelError as exc:
            raise ParseError(row_no, exc) from exc
    return RequirementSet(tuple(reqs), title=title, creation_time=creation_time)


def import_requirements(path: str | Path, **meta) -> RequirementSet:
    """Import a ``id,text,trace_links`` CSV file; row order is preserved."""
    return read_requirements_csv(Path(path).read_text(encoding="utf-8"), **meta)


def export_table(reqs: RequirementSet) -> str:
    """Tabular CSV export including parse results and verification states."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_HEADER)
    for r in reqs:
        writer.writerow([
            r.id,
            r.pattern.value,
            r.system_name,
            r.response,
            r.constraint.render() if r.constraint else "",
            r.verification.value,
            ";".join(r.trace_links),
        ])
    return buf.getvalue()


def update_verification_state(
    reqs: RequirementSet,
    outcomes: Iterable[tuple[str, VerificationState | str, str]],
) -> RequirementSet:
    """Apply verification outcomes, appending each piece of evidence to the audit trail.

    States only move to Passed or Failed; nothing returns to Unverified.
    """
    outcomes = list(outcomes)
    updated = {r.id: r for r in reqs}
    for req_id, state, evidence in outcomes:
        if req_id not in updated:
            raise UnknownRequirementId(req_id)
        state = VerificationState(state)
        if state is VerificationState.UNVERIFIED:
            raise ReqModelError(f"{req_id}: cannot retract to Unverified")
        req = updated[req_id]
        updated[req_id] = replace(req, verification=state, audit=req.audit + (evidence,))
    if not outcomes:
        return reqs
    return replace(reqs, requirements=tuple(updated[r.id] for r in reqs))
