import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from hidsym.cli import ExperimentConfig, UsageError, main, run_experiment, trial_seeds
from hidsym.records import (CSV_COLUMNS, INSTANCE_SCHEMA, REPORT_SCHEMAS, RUN_RECORD_SCHEMA,
                            RunRecord, emit_report)
from hidsym.instances import instance_from_json
from hidsym.errors import InvalidParameter


def run(capsysbinary, *argv):
    code = main(list(argv))
    out = capsysbinary.readouterr().out
    return code, out


@pytest.mark.parametrize("argv", [
    ["run-simon", "--n", "8", "--seed", "1", "--trials", "3"],
    ["run-simon", "--kind", "linear", "--n", "5"],
    ["run-shor", "--n", "12", "--p", "7", "--q", "3", "--seed", "1"],
    ["run-selfsim", "--n", "12", "--p", "5", "--q", "2", "--g", "10"],
    ["baseline", "--n", "8", "--strategy", "birthday"],
    ["baseline", "--kind", "shor", "--n", "12", "--p", "7", "--q", "3"],
])
def test_reports_validate_against_schema(capsysbinary, argv):
    code, out = run(capsysbinary, *argv, "--no-timing")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, RUN_RECORD_SCHEMA)
    assert "wall_time" not in doc
    for rep in doc["report"]["trials"]:
        jsonschema.validate(rep, REPORT_SCHEMAS[argv[0]])
    assert doc["report"]["summary"]["success_rate"] == 1.0


def test_timing_present_by_default(capsysbinary):
    _, out = run(capsysbinary, "run-simon", "--n", "4")
    assert json.loads(out)["wall_time"] >= 0


@pytest.mark.parametrize("argv", [
    ["run-simon", "--n", "8", "--seed", "4", "--trials", "5"],
    ["run-shor", "--n", "16", "--p", "13", "--q", "3", "--seed", "1"],
    ["compare", "--n", "8", "--trials", "4"],
])
def test_byte_identical(capsysbinary, argv):
    a = run(capsysbinary, *argv, "--no-timing")[1]
    b = run(capsysbinary, *argv, "--no-timing")[1]
    assert a == b and a


def test_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "hidsym.cli", "run-selfsim", "--n", "10", "--p", "5", "--q", "2",
           "--trials", "2", "--no-timing", "--format", "csv"]
    a, b = (subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2))
    assert a == b and a.startswith(b"trial,")


@pytest.mark.parametrize("command, argv", [
    ("run-simon", ["--n", "6", "--trials", "2"]),
    ("run-shor", ["--n", "10", "--p", "5", "--q", "2"]),
    ("run-selfsim", ["--n", "10", "--p", "5", "--q", "2"]),
    ("baseline", ["--n", "6"]),
    ("compare", ["--n", "6", "--trials", "2"]),
    ("selftest", ["--n", "2"]),
])
def test_csv_headers(capsysbinary, command, argv):
    code, out = run(capsysbinary, command, *argv, "--format", "csv", "--no-timing")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.decode())))
    assert rows[0] == CSV_COLUMNS[command]
    assert len(rows) > 1


def test_compare_table_columns(capsysbinary):
    _, out = run(capsysbinary, "compare", "--sizes", "6", "8", "--trials", "3", "--no-timing")
    rows = list(csv.DictReader(io.StringIO(out.decode())))
    assert [(r["n"], r["strategy"]) for r in rows] == [
        ("6", "quantum"), ("6", "scan"), ("6", "birthday"),
        ("8", "quantum"), ("8", "scan"), ("8", "birthday")]


def test_gen_roundtrip(capsysbinary, tmp_path):
    code, out = run(capsysbinary, "gen", "--kind", "simon", "--n", "6", "--p", "5", "--q", "3",
                    "--table", "--seed", "2")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, INSTANCE_SCHEMA)
    inst = instance_from_json(doc)
    assert inst.satisfies(5, 3)
    path = tmp_path / "inst.json"
    path.write_bytes(out)
    code, out = run(capsysbinary, "run-simon", "--instance", str(path), "--no-timing")
    rep = json.loads(out)["report"]["trials"][0]
    assert (rep["p"], rep["q"]) == (5, 3)


def test_gen_csv(capsysbinary):
    code, out = run(capsysbinary, "gen", "--kind", "shor", "--n", "6", "--p", "4", "--q", "2",
                    "--epsilon", "0.5", "--format", "csv")
    lines = out.decode().splitlines()
    assert lines[0] == "x,f" and len(lines) == 65


def test_output_env_dir(capsysbinary, tmp_path, monkeypatch):
    monkeypatch.setenv("HIDSYM_OUTPUT_DIR", str(tmp_path))
    code, out = run(capsysbinary, "run-simon", "--n", "4", "--output", "sub/r.json", "--no-timing")
    assert code == 0 and out == b""
    assert json.loads((tmp_path / "sub" / "r.json").read_text())["config"]["n"] == 4


def test_selftest_passes(capsysbinary):
    code, out = run(capsysbinary, "selftest", "--no-timing")
    assert code == 0 and json.loads(out)["report"]["passed"]


@pytest.mark.parametrize("argv", [
    ["run-simon", "--engine", "dense", "--n", "14"],
    ["run-shor", "--n", "8", "--p", "9", "--q", "2"],
    ["run-simon", "--n", "6", "--trials", "0"],
    ["baseline", "--kind", "shor", "--n", "12", "--p", "7", "--q", "3", "--strategy", "birthday"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_argparse_rejects_unknown_format():
    with pytest.raises(SystemExit) as exc:
        main(["run-simon", "--format", "xml"])
    assert exc.value.code == 2


def test_config_and_seeds():
    with pytest.raises(UsageError):
        ExperimentConfig("nope").validate()
    assert trial_seeds(3, 4) == trial_seeds(3, 4)
    assert len(set(trial_seeds(3, 50))) == 50
    rec = run_experiment(ExperimentConfig("run-simon", n=4, timing=False))
    with pytest.raises(InvalidParameter):
        emit_report(rec, "xml")
    assert isinstance(rec, RunRecord)
