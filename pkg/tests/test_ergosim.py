from __future__ import annotations

import math
import random
from decimal import Decimal

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ontoline.dessim import simulate
from ontoline.ergosim import (
    TRAVEL_QUANTUM,
    ergonomic_report,
    ergonomic_score,
    op_load,
    travel_times,
)
from ontoline.errors import MissingMass, MissingPosition, MissingPostureFactor, NonPositiveSpeed
from ontoline.procgraph import Operation, ProcessGraph


def manual(op_id, duration, pos, mass=1, posture=1, **demands):
    return Operation(op_id, Decimal(duration), "manual", "", demands or {"operator": 1},
                     tuple(Decimal(str(v)) for v in pos) if pos is not None else None,
                     None if mass is None else Decimal(str(mass)),
                     None if posture is None else Decimal(str(posture)))


def chain(*ops) -> ProcessGraph:
    return ProcessGraph(tuple(ops), frozenset((a.id, b.id) for a, b in zip(ops, ops[1:])))


def run(g, pools=None, speed=1):
    trace = simulate(g, pools or {"operator": 1})
    return trace, ergonomic_report(trace, g, speed)


# --- examples ------------------------------------------------------------------------


def test_three_four_five_leg():
    g = chain(manual("A", 1, (0, 0, 0)), manual("B", 1, (3, 4, 0)))
    _, rep = run(g, speed=5)
    assert rep.travel == {"operator": Decimal(1)}
    assert [(o.op, o.travel_in) for o in rep.per_op] == [("A", 0), ("B", 1)]


def test_single_and_colocated():
    assert run(chain(manual("A", 4, (1, 2, 3))))[1].travel == {"operator": 0}
    g = chain(manual("A", 1, (1, 1, 1)), manual("B", 1, (1, 1, 1)), manual("C", 1, (1, 1, 1)))
    assert run(g)[1].travel == {"operator": 0}


def test_load_examples():
    assert op_load(manual("A", 10, (0, 0, 0), mass=2, posture="1.5"), Decimal(10)) == 30
    trace, rep = run(chain(manual("A", 1, (0, 0, 0), mass=1, posture=1)))
    assert rep.ergonomic_score == {"operator": 1}


def test_no_manual_operations():
    g = ProcessGraph((Operation("A", Decimal(5), "automatic", demands={"robot": 1}),))
    trace = simulate(g, {"robot": 1})
    rep = ergonomic_report(trace, g, 1)
    assert rep.travel == {"robot": 0} and rep.ergonomic_score == {"robot": 0} and rep.per_op == ()


def test_fixture_manual(manual_graph):
    trace = simulate(manual_graph, {"operator": 1})
    score = ergonomic_score(trace, manual_graph)
    # 25*30*1.2 + 3.5*120*1.5 + 3.5*100*1.8 + 1.5*20*1.3
    assert score == {"operator": Decimal(900) + 630 + 630 + 39}
    travel = travel_times(trace, manual_graph, 50)["operator"]
    # float oracle over the visiting order OP1, OP2, OP3, OP4
    pts = [(0, 0, 0), (4, 0, 1.5), (4, 3, 1.2), (0, 3, 0)]
    expected = sum(math.dist(p, q) for p, q in zip(pts, pts[1:])) / 50
    assert abs(float(travel) - expected) < 1e-8


def test_fixture_semi_excludes_automatic(semi_graph):
    trace = simulate(semi_graph, {"operator": 1, "lft_robot": 1})
    rep = ergonomic_report(trace, semi_graph, 50)
    assert rep.travel["lft_robot"] == 0 and rep.ergonomic_score["lft_robot"] == 0
    assert {o.op for o in rep.per_op} == {"OP1", "OP3", "OP4"}
    assert rep.ergonomic_score["operator"] == Decimal(900) + 630 + 39


# --- errors --------------------------------------------------------------------------------


def test_errors():
    with pytest.raises(MissingPosition):
        run(chain(manual("A", 1, None)))
    with pytest.raises(NonPositiveSpeed):
        run(chain(manual("A", 1, (0, 0, 0))), speed=0)
    with pytest.raises(NonPositiveSpeed):
        run(chain(manual("A", 1, (0, 0, 0))), speed=-2)
    with pytest.raises(MissingMass):
        run(chain(manual("A", 1, (0, 0, 0), mass=None)))
    with pytest.raises(MissingPostureFactor):
        run(chain(manual("A", 1, (0, 0, 0), posture=None)))


# --- properties ------------------------------------------------------------------------------

coord = st.decimals(-20, 20, places=2)


@st.composite
def manual_chains(draw):
    n = draw(st.integers(1, 6))
    ops = []
    for i in range(n):
        ops.append(manual(f"OP{i}", draw(st.integers(0, 60)), tuple(draw(coord) for _ in range(3)),
                          mass=draw(st.decimals(0, 50, places=2)), posture=draw(st.decimals(1, 3, places=1))))
    seed = draw(st.integers(0, 2**16))
    edges = {(ops[i].id, ops[j].id) for i in range(n) for j in range(i + 1, n) if random.Random(seed + i * n + j).random() < 0.4}
    return ProcessGraph(tuple(ops), frozenset(edges))


@settings(max_examples=100)
@given(manual_chains(), st.integers(1, 5))
def test_mass_scaling_is_linear(g, factor):
    scaled = ProcessGraph(tuple(
        Operation(o.id, o.duration, o.mode, o.label, o.demands, o.position, o.mass * factor, o.posture_factor)
        for o in g.operations), g.edges)
    trace = simulate(g, {"operator": 1})
    assert ergonomic_score(trace, scaled)["operator"] == factor * ergonomic_score(trace, g)["operator"]


@settings(max_examples=100)
@given(manual_chains(), st.sampled_from([1, 2, 50]))
def test_per_op_sums_match_totals(g, speed):
    trace = simulate(g, {"operator": 1})
    rep = ergonomic_report(trace, g, speed)
    assert sum(o.travel_in for o in rep.per_op) == sum(rep.travel.values())
    assert sum(o.load for o in rep.per_op) == sum(rep.ergonomic_score.values())
    assert all(o.travel_in == o.travel_in.quantize(TRAVEL_QUANTUM) for o in rep.per_op)
    # every leg is a straight line, so the path is at least the direct hop from first to last
    order = sorted(g.operations, key=lambda o: (trace.intervals[o.id][0], o.id))
    hop = math.dist([float(v) for v in order[0].position], [float(v) for v in order[-1].position]) / speed
    assert float(rep.travel["operator"]) >= hop - 1e-6


@settings(max_examples=100)
@given(manual_chains(), manual_chains())
def test_score_is_additive_over_disjoint_processes(a, b):
    renamed = ProcessGraph(
        tuple(Operation("X" + o.id, o.duration, o.mode, o.label, o.demands, o.position, o.mass, o.posture_factor)
              for o in b.operations),
        frozenset(("X" + s, "X" + t) for s, t in b.edges))
    union = ProcessGraph(a.operations + renamed.operations, a.edges | renamed.edges)
    pools = {"operator": 2}
    total = ergonomic_score(simulate(union, pools), union)["operator"]
    assert total == ergonomic_score(simulate(a, pools), a)["operator"] + \
        ergonomic_score(simulate(renamed, pools), renamed)["operator"]


@settings(max_examples=100)
@given(manual_chains())
def test_zero_duration_colocated_op_is_neutral(g):
    """A zero-length operation appended at the last visited spot changes nothing."""
    trace = simulate(g, {"operator": 1})
    last = max(g.operations, key=lambda o: (trace.intervals[o.id][1], trace.intervals[o.id][0], o.id))
    extra = manual("ZZ", 0, [float(v) for v in last.position], mass=9, posture=2)
    extended = ProcessGraph(g.operations + (extra,), g.edges | {(o.id, "ZZ") for o in g.operations})
    before = ergonomic_report(trace, g, 3)
    after = ergonomic_report(simulate(extended, {"operator": 1}), extended, 3)
    assert after.travel == before.travel
    assert after.ergonomic_score == before.ergonomic_score
