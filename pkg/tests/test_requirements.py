from __future__ import annotations

import re
from decimal import Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ontoline.errors import DuplicateId, ParseError, ReqModelError, UnknownMetric, UnknownRequirementId, UnknownUnit
from ontoline.reqmodel import (
    EarsPattern,
    MetricConstraint,
    VerificationState,
    export_table,
    extract_constraint,
    import_requirements,
    make_requirement,
    read_requirements_csv,
    update_verification_state,
)

HEADER = "id,text,trace_links\n"


# --- constraints --------------------------------------------------------------


def test_constraint_examples():
    assert extract_constraint("achieve a lead-time of at most 200 minutes") == MetricConstraint(
        "lead_time", "<=", Decimal(200), "minutes")
    assert extract_constraint("start external drilling") is None
    with pytest.raises(UnknownMetric):
        extract_constraint("achieve a throughput of at most 5 parts")


def test_constraint_units():
    c = extract_constraint("keep a lead time of exactly 2.5 hours")
    assert (c.metric, c.comparator, c.threshold, c.unit) == ("lead_time", "=", Decimal(150), "minutes")
    with pytest.raises(UnknownUnit):
        extract_constraint("achieve a lead-time of at most 200")
    with pytest.raises(UnknownUnit):
        extract_constraint("keep an automation ratio of at least 0.3 minutes")
    assert extract_constraint("keep an automation ratio of at least 0.3 overall").unit == ""


# Oracle: the grammar restated as one whole-phrase regular expression.
_PHRASE_ORACLE = re.compile(
    r"(achieve|have|keep) an? (lead-time|automation ratio|utilization) of (at most|at least|exactly) (\d+) ?(minutes)?")


@given(st.sampled_from(["achieve", "have", "keep"]),
       st.sampled_from(["lead-time", "automation ratio", "utilization"]),
       st.sampled_from(["at most", "at least", "exactly"]),
       st.integers(0, 10_000))
def test_constraint_matches_phrase_oracle(verb, metric, cmp, number):
    unit = " minutes" if metric == "lead-time" else ""
    article = "an" if metric[0] in "aeiou" else "a"
    text = f"{verb} {article} {metric} of {cmp} {number}{unit}"
    m = _PHRASE_ORACLE.fullmatch(text)
    assert m is not None
    c = extract_constraint(text)
    assert c.threshold == Decimal(m.group(4))
    assert c.comparator == {"at most": "<=", "at least": ">=", "exactly": "="}[m.group(3)]
    assert MetricConstraint.from_text(c.render()) == c


def test_holds_is_exact():
    c = MetricConstraint("automation_ratio", ">=", Decimal("0.375"))
    from fractions import Fraction

    assert c.holds(Fraction(3, 8))
    assert not c.holds(Fraction(3, 8) - Fraction(1, 10**30))


# --- CSV import -----------------------------------------------------------------


def test_two_row_csv():
    reqs = read_requirements_csv(
        HEADER + "R1,The line shall run.,\nR2,\"When a, the cell shall stop.\",OP1;OP2\n")
    assert reqs.ids == ["R1", "R2"]
    assert all(r.verification is VerificationState.UNVERIFIED for r in reqs)
    assert reqs["R2"].trace_links == ("OP1", "OP2")
    assert reqs["R2"].pattern is EarsPattern.EVENT_DRIVEN


def test_duplicate_id():
    with pytest.raises(DuplicateId):
        read_requirements_csv(HEADER + "R1,The line shall run.,\nR1,The cell shall stop.,\n")


def test_header_only_is_empty():
    assert len(read_requirements_csv(HEADER)) == 0


def test_parse_error_carries_row():
    with pytest.raises(ParseError) as info:
        read_requirements_csv(HEADER + "R1,The line shall run.,\nR2,The line runs.,\n")
    assert info.value.row == 3


def test_bad_header():
    with pytest.raises(ReqModelError):
        read_requirements_csv("identifier,text\nR1,The line shall run.\n")


def test_fixture_import(fixture_requirements):
    reqs = fixture_requirements
    assert reqs.ids == ["R1", "R2", "R3", "R4", "R5"]
    assert [r.pattern for r in reqs] == [EarsPattern.UBIQUITOUS, EarsPattern.EVENT_DRIVEN, EarsPattern.OPTIONAL,
                                         EarsPattern.UNWANTED, EarsPattern.STATE_DRIVEN]
    assert reqs["R1"].constraint.render() == "lead_time <= 200 minutes"
    assert reqs["R3"].constraint.render() == "automation_ratio >= 0.3"
    assert reqs["R2"].constraint is None


@given(st.lists(st.integers(0, 999), unique=True, max_size=20))
def test_import_preserves_cardinality_and_order(numbers):
    ids = [f"Q{n}" for n in numbers]
    text = HEADER + "".join(f"{i},The line shall run step {i}.,\n" for i in ids)
    assert read_requirements_csv(text).ids == ids


def test_import_from_path(tmp_path):
    path = tmp_path / "r.csv"
    path.write_text(HEADER + "R1,The line shall run.,\n", encoding="utf-8")
    assert import_requirements(path, title="T").title == "T"


def test_export_table(fixture_requirements):
    lines = export_table(fixture_requirements).splitlines()
    assert lines[0] == "id,pattern,system,response,constraint,verification,trace_links"
    assert lines[1].startswith("R1,Ubiquitous,assembly line,")
    assert len(lines) == 6


# --- verification state -----------------------------------------------------------


def test_update_verification_state(fixture_requirements):
    reqs = update_verification_state(fixture_requirements, [("R1", VerificationState.PASSED, "lead 150")])
    assert reqs["R1"].verification is VerificationState.PASSED
    assert reqs["R1"].audit == ("lead 150",)
    # frame property: everything else untouched
    for req_id in ["R2", "R3", "R4", "R5"]:
        assert reqs[req_id] == fixture_requirements[req_id]
    assert update_verification_state(fixture_requirements, []) is fixture_requirements
    with pytest.raises(UnknownRequirementId):
        update_verification_state(fixture_requirements, [("R9", "Failed", "")])
    with pytest.raises(ReqModelError):
        update_verification_state(fixture_requirements, [("R1", "Unverified", "")])


def test_audit_accumulates():
    reqs = read_requirements_csv(HEADER + "R1,The line shall run.,\n")
    reqs = update_verification_state(reqs, [("R1", "Passed", "a")])
    reqs = update_verification_state(reqs, [("R1", "Failed", "b")])
    assert reqs["R1"].verification is VerificationState.FAILED
    assert reqs["R1"].audit == ("a", "b")


def test_requirement_invariants():
    with pytest.raises(ReqModelError):
        make_requirement("", "The line shall run.")
