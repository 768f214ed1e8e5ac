from __future__ import annotations

from pathlib import Path

import pytest

import ontoline.dessim
import ontoline.dessim.engine
from ontoline.archdef import link_requirements, parse_model, to_ontology
from ontoline.dessim.validate import validate_trace
from ontoline.ontology import integrate
from ontoline.procgraph import IntermediateModel
from ontoline.reqmodel import import_requirements

FIXTURE_DIR = Path(__file__).resolve().parents[1] / "src" / "ontoline" / "data" / "lft_tradeoff"

# Every trace produced anywhere in the test session goes through the
# independent validator. The wrapper is installed before any test module,
# the pipeline or the CLI binds the name, so all call sites see it.
SIMULATE_AUDIT = {"traces": 0, "violations": []}
_simulate = ontoline.dessim.engine.simulate


def _validated_simulate(model, pools=None, *args, **kwargs):
    trace = _simulate(model, pools, *args, **kwargs)
    if isinstance(model, IntermediateModel):
        graph, effective = model.graph, model.pools if pools is None else pools
    else:
        graph, effective = model, pools or {}
    violations = validate_trace(trace, graph, effective)
    SIMULATE_AUDIT["traces"] += 1
    SIMULATE_AUDIT["violations"] += violations
    assert not violations, violations
    return trace


ontoline.dessim.engine.simulate = _validated_simulate
ontoline.dessim.simulate = _validated_simulate


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURE_DIR


@pytest.fixture(scope="session")
def fixture_model():
    return parse_model((FIXTURE_DIR / "assembly.model").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def fixture_requirements():
    return import_requirements(FIXTURE_DIR / "requirements.csv")


@pytest.fixture(scope="session")
def fixture_ontology(fixture_model, fixture_requirements):
    return integrate([
        to_ontology(fixture_model, "manual"),
        to_ontology(fixture_model, "semi_auto"),
        link_requirements(fixture_requirements, fixture_model),
    ])


@pytest.fixture(scope="session")
def manual_graph(fixture_ontology):
    from ontoline.procgraph import extract_process

    return extract_process(fixture_ontology, "manual")


@pytest.fixture(scope="session")
def semi_graph(fixture_ontology):
    from ontoline.procgraph import extract_process

    return extract_process(fixture_ontology, "semi_auto")
