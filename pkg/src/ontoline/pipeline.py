"""End-to-end pipeline: requirements + model -> ontology -> simulation -> verified report.

Every stage reads from the previous stage's artifact, and every artifact is
written deterministically, so two runs over equal inputs produce identical
output trees.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from decimal import Decimal
from importlib import resources
from pathlib import Path
from typing import Iterator, Mapping

from ontoline.archdef import link_requirements, parse_model, to_ontology
from ontoline.archdef.transform import traced_scenarios
from ontoline.dessim import SimulationTrace, simulate, validate_trace
from ontoline.ergosim import ErgoReport, ergonomic_report
from ontoline.errors import OntolineError, PipelineError
from ontoline.numbers import parse_decimal
from ontoline.ontology import integrate, parse_owl, resolve_namespace, serialize_owl
from ontoline.ontology.schema import NAMESPACE_ENV
from ontoline.procgraph import ProcessGraph, dumps_intermediate, extract_pools, extract_process, to_intermediate
from ontoline.reqmodel import (
    RequirementSet,
    VerificationState,
    export_reqif,
    export_table,
    import_requirements,
    update_verification_state,
)
from ontoline.report import (
    KpiSet,
    Outcome,
    compare_scenarios,
    compute_kpis,
    gantt_svg,
    leadtime_chart_svg,
    verify_requirements,
)

EXIT_OK, EXIT_ERROR, EXIT_FAILED = 0, 1, 2
DEMO_DIR = "data/lft_tradeoff"


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    pool: dict[str, int] | None = None  # None: capacities come from the model


@dataclass(frozen=True)
class PipelineConfig:
    requirements: Path
    model: Path
    output_dir: Path
    scenarios: tuple[ScenarioSpec, ...]
    namespace: str | None = None
    speed: Decimal = Decimal(50)
    title: str = "Requirements"
    creation_time: str = "1970-01-01T00:00:00Z"
    emit_gantt: bool = True
    emit_owl: bool = True
    emit_reqif: bool = True

    def __post_init__(self):
        for key in ("requirements", "model", "output_dir"):
            if not str(getattr(self, key)).strip():
                raise PipelineError("cli", f"config path {key!r} is empty")
        names = [s.name for s in self.scenarios]
        if not names:
            raise PipelineError("cli", "config lists no scenarios")
        if len(set(names)) != len(names):
            raise PipelineError("cli", f"duplicate scenario names in {names}")


def _pool(raw, where: str) -> dict[str, int] | None:
    if raw is None:
        return None
    if not isinstance(raw, dict) or not all(
        isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in raw.values()
    ):
        raise PipelineError("cli", f"{where}: pool must map resource types to non-negative integers")
    return dict(sorted(raw.items()))


def config_from_dict(doc: Mapping, base: Path = Path(".")) -> PipelineConfig:
    """Build a config from parsed JSON; relative paths resolve against ``base``."""
    known = {f for f in PipelineConfig.__dataclass_fields__}
    unknown = sorted(set(doc) - known)
    if unknown:
        raise PipelineError("cli", f"unknown config keys: {', '.join(unknown)}")
    try:
        scenarios = tuple(
            ScenarioSpec(s["name"], _pool(s.get("pool"), f"scenario {s['name']}")) if isinstance(s, dict)
            else ScenarioSpec(str(s))
            for s in doc.get("scenarios", ())
        )
        values = dict(doc, scenarios=scenarios)
        for key in ("requirements", "model", "output_dir"):
            if key not in values:
                raise PipelineError("cli", f"config lacks {key!r}")
            values[key] = base / values[key] if str(values[key]).strip() else Path("")
        if "speed" in values:
            values["speed"] = parse_decimal(str(values["speed"]))
        return PipelineConfig(**values)
    except (KeyError, TypeError, ValueError) as exc:
        raise PipelineError("cli", f"invalid config: {exc}") from None


def load_config(path: str | Path) -> PipelineConfig:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise PipelineError("cli", f"cannot read config {path}: {exc}") from None
    return config_from_dict(doc, path.parent)


def demo_config(output_dir: str | Path) -> PipelineConfig:
    """The bundled manual vs. LFT-robot drilling fixture."""
    base = Path(str(resources.files("ontoline") / DEMO_DIR))
    return replace(load_config(base / "pipeline.json"), output_dir=Path(output_dir))


@contextmanager
def stage(module: str) -> Iterator[None]:
    """Re-raise failures as ``[module] message`` pipeline errors."""
    try:
        yield
    except PipelineError:
        raise
    except OntolineError as exc:
        raise PipelineError(exc.module, f"{type(exc).__name__}: {exc}") from exc
    except OSError as exc:
        raise PipelineError(module, f"{exc.strerror or exc}: {exc.filename}") from exc


def write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


@dataclass(frozen=True)
class ScenarioResult:
    name: str
    graph: ProcessGraph
    pools: dict[str, int]
    trace: SimulationTrace
    ergo: ErgoReport
    kpis: KpiSet


@dataclass
class PipelineResult:
    exit_code: int
    requirements: RequirementSet
    scenarios: list[ScenarioResult]
    outcomes: list[Outcome]
    artifacts: list[Path] = field(default_factory=list)


def run_scenario(ont, spec: ScenarioSpec, speed: Decimal, namespace: str) -> ScenarioResult:
    with stage("procgraph"):
        graph = extract_process(ont, spec.name, namespace)
        pools = spec.pool if spec.pool is not None else extract_pools(ont, spec.name, namespace)
    with stage("dessim"):
        trace = simulate(graph, pools, scenario=spec.name)
        violations = validate_trace(trace, graph, pools)
        if violations:
            raise PipelineError("dessim", f"invalid trace for {spec.name}: {violations[0]}")
    with stage("ergosim"):
        ergo = ergonomic_report(trace, graph, speed)
    with stage("report"):
        kpis = compute_kpis(trace, graph, pools, ergo)
    return ScenarioResult(spec.name, graph, dict(pools), trace, ergo, kpis)


def aggregate(reqs: RequirementSet, outcomes: list[Outcome]) -> RequirementSet:
    """A requirement fails if it fails in any scenario it was judged in."""
    by_req: dict[str, list[Outcome]] = {}
    for o in outcomes:
        by_req.setdefault(o.req_id, []).append(o)
    updates = []
    for req_id in reqs.ids:
        if req_id not in by_req:
            continue
        group = by_req[req_id]
        failed = any(o.state is VerificationState.FAILED for o in group)
        state = VerificationState.FAILED if failed else VerificationState.PASSED
        updates.append((req_id, state, "; ".join(o.evidence for o in group)))
    return update_verification_state(reqs, updates)


def run_pipeline(config: PipelineConfig, namespace: str | None = None) -> PipelineResult:
    """Run every stage; ``namespace`` (a command-line flag) beats ONTOLINE_NS, which beats the config."""
    namespace = namespace or os.environ.get(NAMESPACE_ENV) or resolve_namespace(config.namespace)
    out = config.output_dir
    artifacts: list[Path] = []

    with stage("reqmodel"):
        reqs = import_requirements(config.requirements, title=config.title, creation_time=config.creation_time)
    with stage("archdef"):
        model = parse_model(Path(config.model).read_text(encoding="utf-8"))
        parts = [to_ontology(model, s.name, namespace) for s in config.scenarios]
        parts.append(link_requirements(reqs, model, namespace))
    with stage("ontology"):
        owl = serialize_owl(integrate(parts), namespace)
        # Downstream stages read the serialized ontology, not the in-memory parts.
        ont = parse_owl(owl)
    with stage("cli"):
        if config.emit_owl:
            artifacts.append(write_text(out / "application.owl", owl))

    with ThreadPoolExecutor() as pool:
        futures = [pool.submit(run_scenario, ont, s, config.speed, namespace) for s in config.scenarios]
        results = [f.result() for f in futures]

    with stage("report"):
        bindings = {rid: traced_scenarios(ont, rid, namespace) for rid in reqs.ids}
        outcomes = [o for r in results for o in verify_requirements(reqs, r.kpis, bindings)]
        outcomes.sort(key=lambda o: (o.req_id, o.scenario))
        verified = aggregate(reqs, outcomes)
        chart = leadtime_chart_svg([r.kpis for r in results])
        tradeoff = compare_scenarios([r.kpis for r in results], outcomes) if len(results) > 1 else None

    with stage("cli"):
        for r in results:
            sdir = out / r.name
            artifacts.append(write_text(sdir / "intermediate.json",
                                        dumps_intermediate(to_intermediate(r.graph, r.pools, r.name))))
            artifacts.append(write_text(sdir / "trace.json", r.trace.to_json()))
            artifacts.append(write_text(sdir / "kpis.json", dump_json(r.kpis.to_dict())))
            if config.emit_gantt:
                artifacts.append(write_text(sdir / "gantt.svg", gantt_svg(r.trace, r.graph)))
        artifacts.append(write_text(out / "leadtime.svg", chart))
        if tradeoff is not None:
            artifacts.append(write_text(out / "tradeoff.json", tradeoff.to_json()))
        artifacts.append(write_text(out / "verification.json",
                                    dump_json({"outcomes": [o.to_dict() for o in outcomes],
                                               "requirements": {q.id: q.verification.value for q in verified}})))
        artifacts.append(write_text(out / "requirements.csv", export_table(verified)))
        if config.emit_reqif:
            artifacts.append(write_text(out / "requirements.reqif", export_reqif(verified)))

    failed = any(o.state is VerificationState.FAILED for o in outcomes)
    return PipelineResult(EXIT_FAILED if failed else EXIT_OK, verified, results, outcomes, sorted(artifacts))
