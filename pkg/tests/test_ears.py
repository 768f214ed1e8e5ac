from __future__ import annotations

import csv
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ontoline.errors import MalformedClause, NoShallClause, ReqModelError
from ontoline.reqmodel import ClauseKind, EarsPattern, parse_ears
from oracles import ears_oracle

CORPUS = Path(__file__).parent / "data" / "ears_corpus.csv"


def load_corpus() -> list[tuple[str, str]]:
    with open(CORPUS, newline="", encoding="utf-8") as fh:
        return [(row["expected"], row["sentence"]) for row in csv.DictReader(fh)]


def classify(sentence: str):
    """parse_ears result in the oracle's shape."""
    try:
        pattern, system, response, clauses = parse_ears(sentence)
    except NoShallClause:
        return ("NoShallClause", None, None, None)
    except MalformedClause:
        return ("MalformedClause", None, None, None)
    return (pattern.value, system, response, [(k.value, t) for k, t in clauses])


def test_pattern_examples():
    assert parse_ears("The assembly line shall produce one shipset per day.") == (
        EarsPattern.UBIQUITOUS, "assembly line", "produce one shipset per day", [])
    assert parse_ears("When the panel is positioned, the drilling station shall start external drilling.") == (
        EarsPattern.EVENT_DRIVEN, "drilling station", "start external drilling",
        [(ClauseKind.TRIGGER, "the panel is positioned")])
    assert parse_ears("While the LFT robot is active, when a misfeed occurs, the cell shall halt.") == (
        EarsPattern.COMPLEX, "cell", "halt",
        [(ClauseKind.STATE, "the LFT robot is active"), (ClauseKind.TRIGGER, "a misfeed occurs")])
    with pytest.raises(NoShallClause):
        parse_ears("The line runs fast.")


def test_corpus_shape():
    corpus = load_corpus()
    counts = {}
    for label, _ in corpus:
        counts[label] = counts.get(label, 0) + 1
    for simple in ("Ubiquitous", "EventDriven", "StateDriven", "Optional", "Unwanted"):
        assert counts[simple] == 10
    assert sum(n for k, n in counts.items() if k in ("Complex", "NoShallClause", "MalformedClause")) == 10


@pytest.mark.parametrize("expected,sentence", load_corpus())
def test_corpus_agrees_with_grammar_oracle(expected, sentence):
    oracle = ears_oracle(sentence)
    assert oracle[0] == expected
    assert classify(sentence) == oracle


def test_unwanted_needs_then_and_then_needs_if():
    with pytest.raises(MalformedClause):
        parse_ears("If the clamp opens, the robot shall stop.")
    with pytest.raises(MalformedClause):
        parse_ears("When the clamp opens, then the robot shall stop.")


def test_keywords_case_insensitive_and_clauses_trimmed():
    pattern, system, _, clauses = parse_ears("wHeRe   the option is fitted  , the cell shall drill.")
    assert pattern is EarsPattern.OPTIONAL
    assert system == "cell"
    assert clauses == [(ClauseKind.FEATURE, "the option is fitted")]


def test_three_leading_clauses_rejected():
    with pytest.raises(MalformedClause):
        parse_ears("While a, when b, where c, the cell shall halt.")


def test_errors_are_reqmodel_errors():
    with pytest.raises(ReqModelError) as info:
        parse_ears("nothing here")
    assert info.value.module == "reqmodel"


# --- generated sentences ------------------------------------------------------

words = st.sampled_from(["panel", "robot", "jig", "line", "cell", "operator", "drill", "red", "fast", "LFT"])
phrase = st.lists(words, min_size=1, max_size=4).map(" ".join)
keyword = st.sampled_from(["When", "While", "Where", "If", "when", "IF"])


@st.composite
def ears_sentences(draw):
    n = draw(st.integers(0, 3))
    kws = [draw(keyword) for _ in range(n)]
    lead = "".join(f"{k} {draw(phrase)}, " for k in kws)
    then = "then " if draw(st.booleans()) else ""
    modal = draw(st.sampled_from(["shall", "SHALL", "will"]))
    end = draw(st.sampled_from([".", ".", ""]))
    return f"{lead}{then}the {draw(phrase)} {modal} {draw(phrase)}{end}"


@given(ears_sentences())
def test_generated_sentences_agree_with_oracle(sentence):
    assert classify(sentence) == ears_oracle(sentence)


@given(ears_sentences())
def test_classification_partition(sentence):
    """Every sentence gets exactly one outcome: one pattern or one error."""
    try:
        pattern, _, _, clauses = parse_ears(sentence)
    except ReqModelError:
        return
    assert pattern in EarsPattern
    assert (pattern is EarsPattern.UBIQUITOUS) == (not clauses)
    assert (pattern is EarsPattern.COMPLEX) == (len(clauses) >= 2)
