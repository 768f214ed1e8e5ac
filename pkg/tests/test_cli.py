from __future__ import annotations

import filecmp
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from ontoline.cli import main
from ontoline.ontology import parse_owl
from ontoline.reqmodel import VerificationState, import_reqif

ARTIFACTS = {
    "application.owl", "leadtime.svg", "tradeoff.json", "verification.json", "requirements.csv",
    "requirements.reqif",
    "manual/intermediate.json", "manual/trace.json", "manual/kpis.json", "manual/gantt.svg",
    "semi_auto/intermediate.json", "semi_auto/trace.json", "semi_auto/kpis.json", "semi_auto/gantt.svg",
}


def files(root: Path) -> set[str]:
    return {p.relative_to(root).as_posix() for p in root.rglob("*") if p.is_file()}


def tight_requirements(fixture_dir: Path, tmp_path: Path, bound: int) -> Path:
    text = (fixture_dir / "requirements.csv").read_text(encoding="utf-8")
    path = tmp_path / f"req_{bound}.csv"
    path.write_text(text.replace("at most 200 minutes", f"at most {bound} minutes"), encoding="utf-8")
    return path


# --- full pipeline -------------------------------------------------------------------


def test_demo_pipeline_passes(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["run", "--demo", "--out", str(out)]) == 0
    assert files(out) == ARTIFACTS
    reqs = import_reqif((out / "requirements.reqif").read_bytes())
    assert reqs["R1"].verification is VerificationState.PASSED
    assert reqs["R3"].verification is VerificationState.PASSED
    assert reqs["R2"].verification is VerificationState.UNVERIFIED
    assert "semi_auto: lead_time = 150" in reqs["R1"].audit[-1]
    tradeoff = json.loads((out / "tradeoff.json").read_text())
    assert tradeoff["deltas"][0]["lead_time"] == -20
    stdout = capsys.readouterr().out
    assert "semi_auto: lead time 150 min" in stdout


def test_pipeline_fails_on_tight_bound(tmp_path, fixture_dir):
    req = tight_requirements(fixture_dir, tmp_path, 100)
    out = tmp_path / "out"
    assert main(["run", "--demo", "--requirements", str(req), "--out", str(out)]) == 2
    reqs = import_reqif((out / "requirements.reqif").read_bytes())
    assert reqs["R1"].verification is VerificationState.FAILED
    assert reqs["R3"].verification is VerificationState.PASSED


def test_missing_model_names_stage(tmp_path, capsys):
    code = main(["run", "--demo", "--model", str(tmp_path / "nope.model"), "--out", str(tmp_path / "o")])
    assert code == 1
    assert "[archdef]" in capsys.readouterr().err


def test_usage_error_names_flag(capsys):
    with pytest.raises(SystemExit) as info:
        main(["run", "--demo", "--bogus-flag"])
    assert info.value.code == 1
    assert "--bogus-flag" in capsys.readouterr().err


def test_pipeline_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["run", "--demo", "--out", str(a)]) == 0
    assert main(["run", "--demo", "--out", str(b)]) == 0
    cmp = filecmp.dircmp(a, b)
    assert files(a) == files(b)
    for rel in files(a):
        assert (a / rel).read_bytes() == (b / rel).read_bytes(), rel
    assert not cmp.diff_files


def test_namespace_precedence(tmp_path, monkeypatch):
    monkeypatch.setenv("ONTOLINE_NS", "http://env.example/ns")
    assert main(["run", "--demo", "--out", str(tmp_path / "env"), "--no-gantt"]) == 0
    assert "http://env.example/ns#scenario-manual" in (tmp_path / "env" / "application.owl").read_text()
    assert main(["run", "--demo", "--out", str(tmp_path / "flag"), "--namespace", "http://flag.example/ns"]) == 0
    owl = (tmp_path / "flag" / "application.owl").read_text()
    assert "http://flag.example/ns#scenario-manual" in owl and "env.example" not in owl
    assert not (tmp_path / "env" / "manual" / "gantt.svg").exists()


def test_config_relative_paths(tmp_path, fixture_dir):
    cfg_dir = tmp_path / "cfg"
    cfg_dir.mkdir()
    for name in ("requirements.csv", "assembly.model"):
        (cfg_dir / name).write_bytes((fixture_dir / name).read_bytes())
    config = json.loads((fixture_dir / "pipeline.json").read_text())
    config["scenarios"] = [{"name": "semi_auto", "pool": {"operator": 1, "lft_robot": 1}}]
    (cfg_dir / "pipeline.json").write_text(json.dumps(config))
    assert main(["run", "--config", str(cfg_dir / "pipeline.json")]) == 0
    out = cfg_dir / "out"
    assert (out / "semi_auto" / "trace.json").exists()
    assert not (out / "tradeoff.json").exists()


def test_config_rejects_unknown_key(tmp_path, fixture_dir, capsys):
    config = json.loads((fixture_dir / "pipeline.json").read_text())
    config["colour"] = "red"
    path = tmp_path / "p.json"
    path.write_text(json.dumps(config))
    assert main(["run", "--config", str(path)]) == 1
    assert "colour" in capsys.readouterr().err


# --- composable subcommands ----------------------------------------------------------------


def test_subcommand_chain(tmp_path, fixture_dir, capsys):
    req = str(fixture_dir / "requirements.csv")
    model = str(fixture_dir / "assembly.model")
    t = tmp_path

    assert main(["import-req", req, "--out", str(t / "table.csv")]) == 0
    assert (t / "table.csv").read_text().startswith("id,pattern,")
    assert main(["export-reqif", req, "--out", str(t / "r.reqif")]) == 0
    assert len(import_reqif((t / "r.reqif").read_bytes())) == 5
    assert main(["model-check", model]) == 0

    assert main(["integrate", "--model", model, "--requirements", req, "--out", str(t / "app.owl")]) == 0
    parse_owl((t / "app.owl").read_text())
    for name, pools in (("manual", ["--pool", "operator=10"]), ("semi_auto", ["--pool", "operator=1"])):
        assert main(["extract", "--owl", str(t / "app.owl"), "--scenario", name, *pools,
                     "--out", str(t / f"{name}.json")]) == 0
        assert main(["simulate", "--input", str(t / f"{name}.json"), "--out", str(t / f"{name}.trace.json"),
                     "--gantt", str(t / f"{name}.svg")]) == 0
        assert main(["report", "--input", str(t / f"{name}.json"), "--trace", str(t / f"{name}.trace.json"),
                     "--speed", "50", "--out-dir", str(t / name)]) == 0
    semi_trace = json.loads((t / "semi_auto.trace.json").read_text())
    assert semi_trace["makespan"] == 150
    assert json.loads((t / "manual.trace.json").read_text())["makespan"] == 170

    kpis = [str(t / n / "kpis.json") for n in ("manual", "semi_auto")]
    capsys.readouterr()
    assert main(["verify", "--requirements", str(t / "r.reqif"), *sum((["--kpis", k] for k in kpis), []),
                 "--owl", str(t / "app.owl"), "--out", str(t / "verified.reqif")]) == 0
    verified = import_reqif((t / "verified.reqif").read_bytes())
    assert verified["R1"].verification is VerificationState.PASSED
    assert "R1: semi_auto: lead_time = 150" in capsys.readouterr().out

    assert main(["tradeoff", "--input", str(t / "manual.json"), "--input", str(t / "semi_auto.json"),
                 "--speed", "50", "--chart", str(t / "lead.svg"), "--out", str(t / "tradeoff.json")]) == 0
    assert json.loads((t / "tradeoff.json").read_text())["deltas"][0]["lead_time"] == -20
    assert (t / "lead.svg").read_text().count("<circle") == 2


def test_verify_without_bindings_fails_manual(tmp_path):
    # Without trace links, R1 is judged in every scenario; manual with one operator takes 270.
    t = tmp_path
    assert main(["integrate", "--model", str(Path(__file__).parents[1] / "src/ontoline/data/lft_tradeoff/assembly.model"),
                 "--out", str(t / "app.owl")]) == 0
    assert main(["extract", "--owl", str(t / "app.owl"), "--scenario", "manual", "--pool", "operator=1",
                 "--out", str(t / "m.json")]) == 0
    assert main(["report", "--input", str(t / "m.json"), "--out-dir", str(t / "m")]) == 0
    req = Path(__file__).parents[1] / "src/ontoline/data/lft_tradeoff/requirements.csv"
    assert main(["verify", "--requirements", str(req), "--kpis", str(t / "m" / "kpis.json")]) == 2


def test_tradeoff_needs_two(tmp_path, fixture_dir, capsys):
    t = tmp_path
    main(["integrate", "--model", str(fixture_dir / "assembly.model"), "--out", str(t / "app.owl")])
    main(["extract", "--owl", str(t / "app.owl"), "--scenario", "semi_auto", "--pool", "operator=1",
          "--out", str(t / "s.json")])
    assert main(["tradeoff", "--input", str(t / "s.json")]) == 1
    assert "FewerThanTwoScenarios" in capsys.readouterr().err


def test_extract_unknown_scenario(tmp_path, fixture_dir, capsys):
    main(["integrate", "--model", str(fixture_dir / "assembly.model"), "--out", str(tmp_path / "app.owl")])
    assert main(["extract", "--owl", str(tmp_path / "app.owl"), "--scenario", "ghost"]) == 1
    assert "[procgraph]" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    env = dict(os.environ)
    env.pop("ONTOLINE_NS", None)
    proc = subprocess.run([sys.executable, "-m", "ontoline", "run", "--demo", "--out", str(tmp_path / "o")],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0, proc.stderr
    assert "R1: semi_auto" in proc.stdout
