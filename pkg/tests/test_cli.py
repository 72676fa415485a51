import csv
import io
import json
import subprocess
import sys

import pytest

from sniep5.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_OUT_OF_REGION, RunConfig, UsageError, parse_args, run


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_check_reports_lambda3_failure():
    code, out, _ = _run("check", "1,0.7,0.7,-0.9,-0.9")
    assert code == EXIT_FAIL
    assert json.loads(out)["failed_condition"] == "lambda3"


def test_check_out_of_region():
    code, out, _ = _run("check", "1, 0.35, 0.34, -0.72, -0.72")
    assert code == EXIT_OUT_OF_REGION
    assert json.loads(out)["kind"] == "OutOfRegion"


def test_realize_emits_certificate():
    code, out, _ = _run("realize", "1,1,1,-1,-1")
    assert code == EXIT_OK
    cert = json.loads(out)["certificate"]
    assert len(cert["matrix"]) == 5


@pytest.mark.parametrize(
    "argv",
    [
        ("check", "1,2,3"),
        ("check", "1,a,0,0,0"),
        ("roots", ""),
        ("roots", "0,0"),
        ("verify", "appendix-z"),
        ("frobnicate",),
        ("roots", "1,0,-2", "--digits", "13"),
        ("roots", "1,0,-2", "--digits", "0"),
        ("sample", "--count", "0"),
        ("tables", "--jobs", "0"),
    ],
)
def test_malformed_input_exits_3(argv):
    code, _, err = _run(*argv)
    assert code == EXIT_INPUT
    assert err


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig("roots", digits=20)
    assert parse_args(["roots", "-24,12,78,-3"]).values.strip() == "-24,12,78,-3"


def test_roots_highest_degree_first():
    code, out, _ = _run("roots", "-24,12,78,-3")
    assert code == EXIT_OK
    roots = [r["root"] for r in json.loads(out)["roots"]]
    assert roots == ["-1.5914785672", "0.0382536332", "2.0532249340"]


def test_roots_digits_and_csv():
    code, out, _ = _run("roots", "1,0,-2", "--digits", "4", "--emit", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["root"] for r in rows] == ["-1.4142", "1.4142"]


def test_verify_appendix_d_text():
    code, out, _ = _run("verify", "appendix-d")
    assert code == EXIT_OK
    assert out.startswith("appendix-d: OK (19/19)")
    assert out.count("\n  ok   case ") == 19


@pytest.mark.parametrize("target", ["appendix-a", "appendix-b", "identities-h", "identities-c"])
def test_verify_targets_pass(target):
    code, out, _ = _run("verify", target, "--emit", "json")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["steps"] and all(s["status"] == "pass" for s in report["steps"])


def test_verify_identities_combines_both_suites():
    code, out, _ = _run("verify", "identities", "--emit", "json")
    assert code == EXIT_OK
    assert len(json.loads(out)) == 2


def test_tables_csv_columns():
    code, out, _ = _run("tables", "--emit", "csv")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 20
    assert rows[0][:3] == ["case", "sub_range", "given"]


def test_same_argv_same_bytes():
    for argv in (("tables", "--emit", "json"), ("sample", "--count", "200", "--seed", "4"), ("verify", "appendix-d", "--emit", "json")):
        assert _run(*argv)[1] == _run(*argv)[1]


def test_tables_parallel_matches_serial():
    assert _run("tables", "--jobs", "2")[1] == _run("tables")[1]


def test_out_writes_file(tmp_path):
    target = tmp_path / "roots.json"
    code, out, _ = _run("roots", "1,0,-2", "--out", str(target))
    assert code == EXIT_OK and out == ""
    assert len(json.loads(target.read_text())["roots"]) == 2


@pytest.mark.parametrize("pattern", ["full", "h", "c"])
def test_sample_patterns(pattern):
    code, out, _ = _run("sample", "--count", "500", "--pattern", pattern)
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["violations"] == 0 and obj["count"] == 500


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sniep5", "check", "1,0.7,0.7,-0.9,-0.9"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == EXIT_FAIL
    assert json.loads(proc.stdout)["failed_condition"] == "lambda3"
