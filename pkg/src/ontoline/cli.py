"""Command-line interface.

Exit codes: 0 success (all verified requirements Passed), 1 error (including
usage errors), 2 at least one requirement Failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

from ontoline import __version__
from ontoline.archdef import link_requirements, parse_model, render, to_ontology, validate_model
from ontoline.archdef.transform import traced_scenarios
from ontoline.dessim import SimulationTrace, simulate, validate_trace
from ontoline.ergosim import ergonomic_report
from ontoline.errors import OntolineError, PipelineError
from ontoline.numbers import fmt_decimal, parse_decimal
from ontoline.ontology import integrate, parse_owl, resolve_namespace, serialize_owl
from ontoline.pipeline import (
    EXIT_ERROR,
    EXIT_FAILED,
    EXIT_OK,
    ScenarioSpec,
    aggregate,
    demo_config,
    dump_json,
    load_config,
    run_pipeline,
    stage,
    write_text,
)
from ontoline.procgraph import (
    dumps_intermediate,
    extract_pools,
    extract_process,
    loads_intermediate,
    to_intermediate,
)
from ontoline.reqmodel import (
    VerificationState,
    export_reqif,
    export_table,
    import_reqif,
    import_requirements,
)
from ontoline.report import (
    KpiSet,
    compare_scenarios,
    compute_kpis,
    gantt_svg,
    leadtime_chart_svg,
    verify_requirements,
)


class _Parser(argparse.ArgumentParser):
    # Exit code 2 is reserved for failed verifications.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _pool_entry(text: str) -> tuple[str, int]:
    rtype, sep, cap = text.partition("=")
    if not sep or not rtype or not cap.isdigit():
        raise argparse.ArgumentTypeError(f"expected TYPE=CAPACITY, got {text!r}")
    return rtype, int(cap)


def _decimal(text: str) -> Decimal:
    try:
        return parse_decimal(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _read(path: str, module: str) -> str:
    with stage(module):
        return Path(path).read_text(encoding="utf-8")


def _emit(text: str, out: str | None) -> None:
    if out:
        with stage("cli"):
            write_text(Path(out), text)
    else:
        sys.stdout.write(text)


def _load_requirements(path: str, args):
    with stage("reqmodel"):
        if path.endswith(".reqif"):
            return import_reqif(Path(path).read_bytes())
        return import_requirements(path, title=args.title, creation_time=args.creation_time)


def _load_model(path: str, args):
    with stage("archdef"):
        return parse_model(Path(path).read_text(encoding="utf-8"))


# --- subcommands -------------------------------------------------------------


def cmd_import_req(args) -> int:
    reqs = _load_requirements(args.requirements, args)
    _emit(export_table(reqs), args.out)
    return EXIT_OK


def cmd_export_reqif(args) -> int:
    reqs = _load_requirements(args.requirements, args)
    _emit(export_reqif(reqs), args.out)
    return EXIT_OK


def cmd_model_check(args) -> int:
    model = _load_model(args.model, args)
    diagnostics = validate_model(model)
    for d in diagnostics:
        print(f"{args.model}:{d.line}: {d.path}: {d.message}", file=sys.stderr)
    if diagnostics:
        return EXIT_ERROR
    if args.render:
        sys.stdout.write(render(model))
    else:
        for g in model.graphs:
            print(f"{g.name}: {len(g.objects)} objects, {len(g.relationships)} relationships")
    return EXIT_OK


def cmd_integrate(args) -> int:
    namespace = resolve_namespace(args.namespace)
    model = _load_model(args.model, args)
    scenarios = args.scenario or [g.name for g in model.graphs]
    with stage("archdef"):
        parts = [to_ontology(model, s, namespace) for s in scenarios]
        if args.requirements:
            parts.append(link_requirements(_load_requirements(args.requirements, args), model, namespace))
    with stage("ontology"):
        owl = serialize_owl(integrate(parts), namespace)
    _emit(owl, args.out)
    return EXIT_OK


def cmd_extract(args) -> int:
    with stage("ontology"):
        ont = parse_owl(_read(args.owl, "ontology"))
    with stage("procgraph"):
        graph = extract_process(ont, args.scenario, args.namespace)
        pools = {**extract_pools(ont, args.scenario, args.namespace), **dict(args.pool or ())}
        text = dumps_intermediate(to_intermediate(graph, pools, args.scenario))
    _emit(text, args.out)
    return EXIT_OK


def _load_intermediate(path: str):
    with stage("procgraph"):
        return loads_intermediate(_read(path, "procgraph"))


def _simulate(path: str, pool_override):
    model = _load_intermediate(path)
    pools = {**model.pools, **dict(pool_override or ())}
    with stage("dessim"):
        trace = simulate(model.graph, pools, scenario=model.scenario)
        violations = validate_trace(trace, model.graph, pools)
    if violations:
        raise PipelineError("dessim", f"invalid trace: {violations[0]}")
    return model, pools, trace


def cmd_simulate(args) -> int:
    model, _, trace = _simulate(args.input, args.pool)
    _emit(trace.to_json(), args.out)
    if args.gantt:
        with stage("report"):
            svg = gantt_svg(trace, model.graph)
        _emit(svg, args.gantt)
    print(f"makespan {fmt_decimal(trace.makespan)} min", file=sys.stderr)
    return EXIT_OK


def _kpis(path: str, pool_override, speed, trace_path=None) -> tuple[KpiSet, object, SimulationTrace]:
    if trace_path:
        model = _load_intermediate(path)
        pools = {**model.pools, **dict(pool_override or ())}
        with stage("dessim"):
            trace = SimulationTrace.from_json(_read(trace_path, "dessim"))
            violations = validate_trace(trace, model.graph, pools)
        if violations:
            raise PipelineError("dessim", f"trace does not fit {path}: {violations[0]}")
    else:
        model, pools, trace = _simulate(path, pool_override)
    ergo = None
    if speed is not None:
        with stage("ergosim"):
            ergo = ergonomic_report(trace, model.graph, speed)
    with stage("report"):
        return compute_kpis(trace, model.graph, pools, ergo), model, trace


def cmd_report(args) -> int:
    kpis, model, trace = _kpis(args.input, args.pool, args.speed, args.trace)
    out = Path(args.out_dir)
    with stage("cli"):
        write_text(out / "kpis.json", dump_json(kpis.to_dict()))
        with stage("report"):
            write_text(out / "gantt.svg", gantt_svg(trace, model.graph))
    print(f"{kpis.scenario or args.input}: lead time {fmt_decimal(kpis.lead_time)} min", file=sys.stderr)
    return EXIT_OK


def cmd_tradeoff(args) -> int:
    with ThreadPoolExecutor() as pool:
        futures = [pool.submit(_kpis, path, None, args.speed) for path in args.input]
        kpi_sets = [f.result()[0] for f in futures]
    with stage("report"):
        report = compare_scenarios(kpi_sets)
        if args.chart:
            _emit(leadtime_chart_svg(kpi_sets), args.chart)
    _emit(report.to_json(), args.out)
    return EXIT_OK


def kpis_from_dict(doc) -> KpiSet:
    """Inverse of ``KpiSet.to_dict`` up to float rounding of ratios."""
    def dec(v):
        return Decimal(str(v))

    def frac(v):
        return Fraction(Decimal(str(v)))

    return KpiSet(
        scenario=doc["scenario"],
        lead_time=dec(doc["lead_time"]),
        automation_ratio=frac(doc["automation_ratio"]),
        utilization={k: frac(v) for k, v in doc.get("utilization", {}).items()},
        ergonomic_score={k: dec(v) for k, v in doc.get("ergonomic_score", {}).items()},
        per_op_durations={k: dec(v) for k, v in doc.get("per_op_durations", {}).items()},
        travel={k: dec(v) for k, v in doc.get("travel", {}).items()},
    )


def cmd_verify(args) -> int:
    reqs = _load_requirements(args.requirements, args)
    with stage("report"):
        try:
            kpi_sets = [kpis_from_dict(json.loads(_read(p, "report"))) for p in args.kpis]
        except (KeyError, ValueError, ArithmeticError) as exc:
            raise PipelineError("report", f"malformed KPI file: {exc}") from None
    bindings = None
    if args.owl:
        with stage("ontology"):
            ont = parse_owl(_read(args.owl, "ontology"))
            bindings = {rid: traced_scenarios(ont, rid, args.namespace) for rid in reqs.ids}
    with stage("report"):
        outcomes = [o for k in kpi_sets for o in verify_requirements(reqs, k, bindings)]
    outcomes.sort(key=lambda o: (o.req_id, o.scenario))
    with stage("reqmodel"):
        verified = aggregate(reqs, outcomes)
    for o in outcomes:
        print(f"{o.req_id}: {o.evidence}")
    if args.out:
        _emit(export_reqif(verified), args.out)
    failed = any(o.state is VerificationState.FAILED for o in outcomes)
    return EXIT_FAILED if failed else EXIT_OK


def cmd_run(args) -> int:
    if args.demo:
        config = demo_config(args.out or "ontoline-demo")
    else:
        config = load_config(args.config)
    overrides = {}
    for key in ("requirements", "model"):
        if getattr(args, key):
            overrides[key] = Path(getattr(args, key))
    if args.out:
        overrides["output_dir"] = Path(args.out)
    if args.speed is not None:
        overrides["speed"] = args.speed
    if args.title is not None:
        overrides["title"] = args.title
    if args.creation_time is not None:
        overrides["creation_time"] = args.creation_time
    if args.scenario:
        known = {s.name: s for s in config.scenarios}
        overrides["scenarios"] = tuple(known.get(name, ScenarioSpec(name)) for name in args.scenario)
    for flag in ("gantt", "owl", "reqif"):
        if getattr(args, f"no_{flag}"):
            overrides[f"emit_{flag}"] = False
    config = replace(config, **overrides)

    result = run_pipeline(config, args.namespace)
    for r in result.scenarios:
        print(f"{r.name}: lead time {fmt_decimal(r.kpis.lead_time)} min, "
              f"automation ratio {float(r.kpis.automation_ratio):.3f}")
    for o in result.outcomes:
        print(f"{o.req_id}: {o.evidence}")
    print(f"artifacts written to {config.output_dir}")
    return result.exit_code


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ontoline", description="Requirements-to-KPI pipeline for assembly-line design.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def req_meta(p):
        p.add_argument("--title", default="Requirements", help="ReqIF header title")
        p.add_argument("--creation-time", default="1970-01-01T00:00:00Z", help="fixed ReqIF timestamp")

    p = sub.add_parser("import-req", help="parse a requirements CSV and print the classified table")
    p.add_argument("requirements")
    p.add_argument("--out")
    req_meta(p)
    p.set_defaults(func=cmd_import_req)

    p = sub.add_parser("export-reqif", help="convert requirements CSV to ReqIF")
    p.add_argument("requirements")
    p.add_argument("--out")
    req_meta(p)
    p.set_defaults(func=cmd_export_reqif)

    p = sub.add_parser("model-check", help="parse and validate an architecture model")
    p.add_argument("model")
    p.add_argument("--render", action="store_true", help="print the canonical form")
    p.set_defaults(func=cmd_model_check)

    p = sub.add_parser("integrate", help="model (+ requirements) -> application ontology (OWL)")
    p.add_argument("--model", required=True)
    p.add_argument("--requirements")
    p.add_argument("--scenario", action="append", help="graph to include (repeatable; default all)")
    p.add_argument("--namespace")
    p.add_argument("--out")
    req_meta(p)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("extract", help="ontology -> intermediate process model for one scenario")
    p.add_argument("--owl", required=True)
    p.add_argument("--scenario", required=True)
    p.add_argument("--namespace")
    p.add_argument("--pool", action="append", type=_pool_entry, metavar="TYPE=CAPACITY",
                   help="override one pool capacity (repeatable)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("simulate", help="simulate an intermediate model and write the trace")
    p.add_argument("--input", required=True)
    p.add_argument("--pool", action="append", type=_pool_entry, metavar="TYPE=CAPACITY",
                   help="override one pool capacity (repeatable)")
    p.add_argument("--gantt", help="also write a Gantt SVG here")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("report", help="KPIs and Gantt chart for one scenario")
    p.add_argument("--input", required=True, help="intermediate model")
    p.add_argument("--trace", help="existing trace; simulated afresh when omitted")
    p.add_argument("--pool", action="append", type=_pool_entry, metavar="TYPE=CAPACITY",
                   help="override one pool capacity (repeatable)")
    p.add_argument("--speed", type=_decimal, help="walking speed in m/min; enables ergonomics")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("tradeoff", help="simulate several scenarios and compare their KPIs")
    p.add_argument("--input", action="append", required=True, help="intermediate model (repeatable)")
    p.add_argument("--speed", type=_decimal)
    p.add_argument("--chart", help="also write the lead-time chart here")
    p.add_argument("--out")
    p.set_defaults(func=cmd_tradeoff)

    p = sub.add_parser("verify", help="judge requirements against KPI files; exit 2 on failure")
    p.add_argument("--requirements", required=True, help="CSV or .reqif")
    p.add_argument("--kpis", action="append", required=True)
    p.add_argument("--owl", help="ontology carrying trace links (binds requirements to scenarios)")
    p.add_argument("--namespace")
    p.add_argument("--out", help="write the updated ReqIF here")
    req_meta(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("run", help="full pipeline from a config file")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--config")
    source.add_argument("--demo", action="store_true", help="use the bundled drilling fixture")
    p.add_argument("--requirements")
    p.add_argument("--model")
    p.add_argument("--out", help="output directory")
    p.add_argument("--namespace")
    p.add_argument("--speed", type=_decimal)
    p.add_argument("--title")
    p.add_argument("--creation-time")
    p.add_argument("--scenario", action="append")
    p.add_argument("--no-gantt", action="store_true")
    p.add_argument("--no-owl", action="store_true")
    p.add_argument("--no-reqif", action="store_true")
    p.set_defaults(func=cmd_run)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OntolineError as exc:
        print(f"error: [{exc.module}] {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
