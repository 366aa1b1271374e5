"""End-to-end CLI tests: exit codes, determinism, exports."""

import json
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("BRANCHLAB_CLI")
SOURCE_DIR = Path(os.environ.get("BRANCHLAB_SOURCE_DIR", Path(__file__).resolve().parents[2]))
SCENARIOS = SOURCE_DIR / "scenarios"

pytestmark = pytest.mark.skipif(CLI is None, reason="BRANCHLAB_CLI not set")


def run_cli(*args, cwd=None):
    return subprocess.run([CLI, *args], capture_output=True, text=False, cwd=cwd)


def test_run_outputs_schema_valid_json():
    result = run_cli("run", str(SCENARIOS / "forced_branch.qpd"))
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    assert payload["scenario"] == "forced_branch"
    assert payload["steps"][0]["realized_label"] == "phi3"
    assert payload["steps"][0]["possible_labels"] == ["phi1", "phi2", "phi4", "phi5"]

    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads((SOURCE_DIR / "schema" / "run_report.schema.json").read_text())
    jsonschema.validate(payload, schema)


@pytest.mark.parametrize("scenario", ["forced_branch", "measurement_chain", "rain_desert",
                                      "algebra_carriers"])
def test_every_shipped_scenario_runs_deterministically(scenario):
    path = str(SCENARIOS / f"{scenario}.qpd")
    first = run_cli("run", path)
    second = run_cli("run", path)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    table_first = run_cli("run", path, "--table")
    table_second = run_cli("run", path, "--table")
    assert table_first.returncode == 0
    assert table_first.stdout == table_second.stdout


def test_seed_override_is_byte_identical():
    path = str(SCENARIOS / "measurement_chain.qpd")
    first = run_cli("run", path, "--seed-override", "42")
    second = run_cli("run", path, "--seed-override", "42")
    assert first.returncode == 0
    assert first.stdout == second.stdout
    assert json.loads(first.stdout)["steps"][1]["seed_used"] == 43


def test_rain_desert_queries():
    result = run_cli("run", str(SCENARIOS / "rain_desert.qpd"))
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    outcomes = {q["name"]: q["result"] for q in payload["queries"]}
    assert outcomes["rain_possible"]["value"] is True
    assert outcomes["rain_necessary"]["value"] is False
    assert outcomes["rain_deterministic_here"]["value"] is True
    assert outcomes["rain_absurd_somewhere"]["value"] is True


def test_verify_subcommand_and_unknown_state():
    result = run_cli("verify", str(SCENARIOS / "algebra_carriers.qpd"), "two_point")
    assert result.returncode == 0
    claims = {c["claim"]: c for c in json.loads(result.stdout)}
    assert all(c["verdict"] == "holds" for c in claims.values())

    generic = run_cli("verify", str(SCENARIOS / "algebra_carriers.qpd"), "generic")
    assert generic.returncode == 0  # verdicts are data, not errors
    claims = {c["claim"]: c for c in json.loads(generic.stdout)}
    assert claims["orthocomplemented"]["verdict"] == "fails"
    assert abs(claims["orthocomplemented"]["counterexample"] - 0.3) < 1e-9

    missing = run_cli("verify", str(SCENARIOS / "algebra_carriers.qpd"), "ghost")
    assert missing.returncode == 1
    assert b"UnknownState" in missing.stderr


def test_grade_subcommand():
    result = run_cli("grade", str(SCENARIOS / "forced_branch.qpd"), "m1")
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    assert payload["realized_label"] == "phi3"
    assert [c["labels"] for c in payload["classes"]] == [["phi4"], ["phi5"], ["phi2"], ["phi1"]]


def test_graph_exports(tmp_path):
    dot = run_cli("graph", str(SCENARIOS / "measurement_chain.qpd"), "--format", "dot")
    assert dot.returncode == 0
    assert b"digraph" in dot.stdout

    json_out = run_cli("graph", str(SCENARIOS / "measurement_chain.qpd"))
    payload = json.loads(json_out.stdout)
    assert payload["roots"] == ["m1:coin"]
    assert any(e["from"] == "m1:tails" for e in payload["edges"])

    target = tmp_path / "graph.json"
    exported = run_cli("run", str(SCENARIOS / "measurement_chain.qpd"),
                       "--export-graph", str(target))
    assert exported.returncode == 0
    assert json.loads(target.read_text()) == payload


def test_fmt_is_idempotent(tmp_path):
    first = run_cli("fmt", str(SCENARIOS / "measurement_chain.qpd"))
    assert first.returncode == 0
    reprinted = tmp_path / "canonical.qpd"
    reprinted.write_bytes(first.stdout)
    second = run_cli("fmt", str(reprinted))
    assert second.stdout == first.stdout


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.qpd"
    bad.write_text("state w { a: 1 @ }\n")
    result = run_cli("run", str(bad))
    assert result.returncode == 1
    assert b"ParseError" in result.stderr
    assert b"1:18" in result.stderr

    absurd = tmp_path / "absurd.qpd"
    absurd.write_text("state w { a: 1 @ 0; dead: 0 @ 1 }\nmeasure m1 on w force dead\n")
    result = run_cli("run", str(absurd))
    assert result.returncode == 2
    assert b"ZeroProbabilityOutcome" in result.stderr

    missing = run_cli("run", str(tmp_path / "nope.qpd"))
    assert missing.returncode == 1


def test_config_file_tolerances(tmp_path):
    # A coarse eps_grade collapses 0.25 and 0.2 into one class.
    scenario = tmp_path / "s.qpd"
    scenario.write_text(
        "state w { a: 0.5 @ 0; b: 0.5477225575051661 @ 1; c: 0.4472135954999579 @ 2;"
        " r: 0.5 @ 3 }\n"
        "measure m1 on w force r\n"
    )
    config = tmp_path / ".branchlab.toml"
    config.write_text("# knobs\neps_grade = 0.06\n")

    fine = run_cli("grade", str(scenario), "m1")
    assert len(json.loads(fine.stdout)["classes"]) == 3

    coarse = run_cli("grade", str(scenario), "m1", "--config", str(config))
    assert coarse.returncode == 0
    classes = json.loads(coarse.stdout)["classes"]
    assert len(classes) == 2
    assert classes[0]["labels"] == ["b", "a"]
    assert classes[1]["labels"] == ["c"]

    flag_wins = run_cli("grade", str(scenario), "m1", "--config", str(config),
                        "--eps-grade", "1e-9")
    assert len(json.loads(flag_wins.stdout)["classes"]) == 3

    bad_config = tmp_path / "bad.toml"
    bad_config.write_text("nonsense == 3\n")
    broken = run_cli("grade", str(scenario), "m1", "--config", str(bad_config))
    assert broken.returncode == 1
    assert b"ConfigError" in broken.stderr
