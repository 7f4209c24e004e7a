import json

import pytest

from sliceinv.cli import main
from sliceinv.exactring import from_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_describe_text(capsys):
    code, out, _ = run(capsys, "describe", "--l", "3", "--lprime", "3")
    assert code == 0
    assert out.splitlines()[0] == "l=3 l'=3 case iii D=1"
    assert "Delta_s: a(1,2) a(2,2) a(2,3)" in out


def test_describe_json(capsys):
    code, out, _ = run(capsys, "describe", "--l", "4", "--lprime", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "slice-invariants/1"
    assert {row["class"] for row in doc["strata"]} <= {"C", "R", "O1", "O2", "O3"}
    assert all(row["root"].startswith("a(") for row in doc["strata"])


def test_dump_matrices(capsys):
    code, out, _ = run(capsys, "describe", "--l", "3", "--lprime", "2", "--dump-matrices")
    assert code == 0 and "slice (sample seed 0) =" in out


def test_invariants_json(capsys):
    code, out, _ = run(capsys, "invariants", "--l", "3", "--lprime", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and len(doc["generators"]) == 3
    for rec in doc["generators"]:
        assert str(from_json(rec["poly"])) == rec["text"]


def test_invariants_trace(capsys):
    code, out, _ = run(capsys, "invariants", "--l", "4", "--lprime", "3", "--trace")
    assert code == 0 and "v(2,2) =" in out


def test_output_is_stable(capsys):
    first = run(capsys, "invariants", "--l", "5", "--lprime", "3")
    assert run(capsys, "invariants", "--l", "5", "--lprime", "3") == first


@pytest.mark.parametrize("argv", [
    ["describe", "--l", "2", "--lprime", "3"],
    ["describe", "--l", "2"],
    ["invariants", "--l", "3", "--lprime", "0"],
    ["verify", "--suite", "bogus"],
    ["verify", "--l-max", "0"],
    ["frobnicate"],
    ["describe", "--l", "3", "--lprime", "2", "--unknown"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_verify_passing_suite(capsys):
    code, out, err = run(capsys, "verify", "--suite", "prop58", "--l-max", "4", "--trials", "3")
    doc = json.loads(out)
    assert code == 0 and doc["summary"]["fail"] == 0
    assert all("seconds" in v for v in doc["verdicts"])
    assert "0 fail" in err


def test_verify_reports_lemma_failures(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--l-max", "4", "--trials", "5", "--seed", "1")
    doc = json.loads(out)
    failed = {v["check_id"] for v in doc["verdicts"] if v["status"] == "fail"}
    assert code == 1
    assert failed == {"lemma.layer-partner-orbits", "lemma.mixed-orbits"}


def test_verify_output_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--suite", "appendix", "--l-max", "3", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["suite"] == "appendix"
