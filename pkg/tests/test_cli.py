from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from transpension import zoo
from transpension.cli import REPORT_SCHEMA, RunConfig, dumps, main, run, validate_report

FIXTURES = Path(__file__).parent / "fixtures" / "expected"


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_zoo_list(capsys):
    code, out, _ = _run(capsys, "zoo", "list")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == zoo.names()


def test_zoo_describe_json(capsys):
    code, out, _ = _run(capsys, "zoo", "describe", "clocks", "--params", "K=2,k=1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["params"] == {"K": 2, "k": 1}


def test_schema_is_valid_json_schema(capsys):
    code, out, _ = _run(capsys, "schema")
    assert code == 0
    jsonschema.Draft202012Validator.check_schema(json.loads(out))


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.json")), ids=lambda p: p.stem)
def test_check_multiplier_against_fixtures(capsys, path):
    # [PAPER] classification fixtures
    spec = json.loads(path.read_text(encoding="utf-8"))
    params = ",".join(f"{k}={v}" for k, v in spec["params"].items())
    argv = ["check", "multiplier", "--zoo", spec["zoo"], "--expect", str(path)]
    if params:
        argv += ["--params", params]
    code, out, _ = _run(capsys, *argv)
    report = json.loads(out)
    validate_report(report)
    assert code == 0, [e for r in report["reports"] for e in r["entries"] if e["status"] == "fail"]


def test_check_multiplier_mismatch_exits_1(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"affine": False}))
    code, out, _ = _run(capsys, "check", "multiplier", "--zoo", "affine-cubes", "--params", "k=2",
                        "--expect", str(bad))
    assert code == 1
    failed = [e for r in json.loads(out)["reports"] for e in r["entries"] if e["status"] == "fail"]
    assert [e["check"] for e in failed] == ["affine"]


def test_verify_boundary_example(capsys):
    code, out, _ = _run(capsys, "verify", "--suite", "boundary", "--zoo", "affine-cubes",
                        "--params", "k=2", "--window", "3")
    assert code == 0
    data = json.loads(out)
    validate_report(data)
    sizes = next(r for r in data["reports"] if r["name"].startswith("boundary/boundary-sizes"))
    assert {e["detail"] for e in sizes["entries"]} == {"2"}


def test_verify_text_format(capsys):
    code, out, _ = _run(capsys, "verify", "--suite", "kernel", "--zoo", "twisted-cubes", "--format", "text")
    assert code == 0
    assert out.startswith("transpension ") and "[pass]" in out


def test_config_errors_exit_2(capsys):
    assert _run(capsys, "verify", "--suite", "nope", "--zoo", "identity")[0] == 2
    assert _run(capsys, "verify", "--suite", "kernel")[0] == 2
    assert _run(capsys, "verify", "--suite", "kernel", "--zoo", "nowhere")[0] == 2
    assert _run(capsys, "verify", "--suite", "kernel", "--zoo", "affine-cubes", "--params", "k")[0] == 2
    assert _run(capsys, "check", "multiplier", "--zoo", "affine-cubes", "--params", "q=1")[0] == 2
    assert _run(capsys, "frobnicate")[0] == 2


def test_caps_env(capsys, monkeypatch):
    monkeypatch.setenv("TRANSPENSION_CAPS", "objects=2")
    assert _run(capsys, "verify", "--suite", "kernel", "--zoo", "affine-cubes")[0] == 3
    monkeypatch.setenv("TRANSPENSION_CAPS", "bogus=1")
    assert _run(capsys, "verify", "--suite", "kernel", "--zoo", "affine-cubes")[0] == 2


def test_unmet_hypotheses_are_information(capsys):
    # the kernel theorem assumes affineness; cartesian cubes report, but do not fail
    code, out, _ = _run(capsys, "verify", "--suite", "kernel", "--zoo", "cartesian-cubes")
    data = json.loads(out)
    assert code == 0
    infos = [e for r in data["reports"] for e in r["entries"] if e["status"] == "info"]
    assert any("hypothesis not met" in e["detail"] for e in infos)


def test_run_report_deterministic():
    cfg = dict(suites=("poles", "kernel"), zoo="twisted-cubes", seed=3)
    a = dumps(run(RunConfig(**cfg)).to_json())
    b = dumps(run(RunConfig(**cfg)).to_json())
    assert a == b
    jsonschema.validate(json.loads(a), REPORT_SCHEMA)


def test_subprocess_byte_identical(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        subprocess.run([sys.executable, "-m", "transpension.cli", "verify", "--suite", "poles",
                        "--zoo", "affine-cubes", "--params", "k=1", "--output", str(path)],
                       check=True, env={**os.environ, "PYTHONHASHSEED": str(i)})
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
