"""EARS sentence classification.

The parser walks leading keyword clauses (``When``/``While``/``Where``/``If``)
left to right and then expects the main clause ``the <system> shall
<response>.``. ``If`` clauses require ``then`` before the main clause.
"""

from __future__ import annotations

import re
from enum import Enum

from ontoline.errors import MalformedClause, NoShallClause


class EarsPattern(str, Enum):
    UBIQUITOUS = "Ubiquitous"
    EVENT_DRIVEN = "EventDriven"
    STATE_DRIVEN = "StateDriven"
    OPTIONAL = "Optional"
    UNWANTED = "Unwanted"
    COMPLEX = "Complex"


class ClauseKind(str, Enum):
    TRIGGER = "trigger"
    STATE = "state"
    FEATURE = "feature"
    CONDITION = "condition"


KEYWORD_CLAUSES = {
    "when": ClauseKind.TRIGGER,
    "while": ClauseKind.STATE,
    "where": ClauseKind.FEATURE,
    "if": ClauseKind.CONDITION,
}

_SINGLE_PATTERN = {
    ClauseKind.TRIGGER: EarsPattern.EVENT_DRIVEN,
    ClauseKind.STATE: EarsPattern.STATE_DRIVEN,
    ClauseKind.FEATURE: EarsPattern.OPTIONAL,
    ClauseKind.CONDITION: EarsPattern.UNWANTED,
}

MAX_CLAUSES = 2

_SHALL = re.compile(r"\bshall\b", re.IGNORECASE)
_KEYWORD = re.compile(r"(when|while|where|if)\s+", re.IGNORECASE)
_THEN = re.compile(r"then\s+", re.IGNORECASE)
_MAIN = re.compile(r"the\s+(?P<system>.+?)\s+shall\s+(?P<response>.+)", re.IGNORECASE | re.DOTALL)

Clause = tuple[ClauseKind, str]


def parse_ears(text: str) -> tuple[EarsPattern, str, str, list[Clause]]:
    """Classify one requirement sentence.

    Returns ``(pattern, system_name, response, clauses)``.

    >>> parse_ears("The assembly line shall produce one shipset per day.")[:3]
    (<EarsPattern.UBIQUITOUS: 'Ubiquitous'>, 'assembly line', 'produce one shipset per day')
    """
    sentence = text.strip()
    if not _SHALL.search(sentence):
        raise NoShallClause(f"no 'shall' in {sentence!r}")
    if not sentence.endswith("."):
        raise MalformedClause(f"sentence must end with '.': {sentence!r}")
    rest = sentence[:-1].strip()

    clauses: list[Clause] = []
    while m := _KEYWORD.match(rest):
        kind = KEYWORD_CLAUSES[m.group(1).lower()]
        body = rest[m.end():]
        comma = body.find(",")
        if comma < 0:
            raise MalformedClause(f"{m.group(1)!r} clause lacks a terminating comma")
        clause_text = body[:comma].strip()
        if not clause_text:
            raise MalformedClause(f"empty {m.group(1)!r} clause")
        clauses.append((kind, clause_text))
        rest = body[comma + 1:].strip()

    if len(clauses) > MAX_CLAUSES:
        raise MalformedClause(f"{len(clauses)} leading clauses; at most {MAX_CLAUSES} supported")

    has_condition = any(kind is ClauseKind.CONDITION for kind, _ in clauses)
    if m := _THEN.match(rest):
        if not has_condition:
            raise MalformedClause("'then' without a preceding 'If' clause")
        rest = rest[m.end():]
    elif has_condition:
        raise MalformedClause("'If' clause must be followed by 'then'")

    main = _MAIN.fullmatch(rest)
    if main is None:
        raise MalformedClause(f"expected 'the <system> shall <response>', got {rest!r}")
    system_name = main.group("system").strip()
    response = main.group("response").strip()

    if not clauses:
        pattern = EarsPattern.UBIQUITOUS
    elif len(clauses) == 1:
        pattern = _SINGLE_PATTERN[clauses[0][0]]
    else:
        pattern = EarsPattern.COMPLEX
    return pattern, system_name, response, clauses
