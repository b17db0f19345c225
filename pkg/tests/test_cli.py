import json
import subprocess
import sys

import pytest

from frozen import PAIRED_MATRIX
from qgfusion.cli import main, parse_range
from qgfusion.notation import format_weight, parse_weight
from qgfusion.reports import SCHEMA_VERSION
from qgfusion.rootsystem import build_root_system


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.mark.parametrize("text,expected", [("1,0,0,0", (1, 0, 0, 0)), ("0", (0, 0, 0, 0)), ("L1", (1, 0, 0, 0)),
                                           ("Λ2", (0, 1, 0, 0)), ("2L1+L4", (2, 0, 0, 1)),
                                           ("λ3 + 2λ3", (0, 0, 3, 0))])
def test_parse_weight(text, expected):
    assert parse_weight(text, build_root_system("F4")) == expected


@pytest.mark.parametrize("text", ["L5", "1,0", "x1", "L0"])
def test_parse_weight_errors(text):
    with pytest.raises(ValueError):
        parse_weight(text, build_root_system("F4"))


def test_format_weight():
    assert format_weight((2, 0, 0, 1)) == "2L1+L4"
    assert format_weight((0, 0)) == "0"
    assert format_weight(((1,), (0,))) == "(L1, 0)"


def test_parse_range():
    assert parse_range("16:20") == [16, 17, 18, 19, 20]
    assert parse_range("19:25:2") == [19, 21, 23, 25]
    assert parse_range("9,11") == [9, 11]


def test_fusion_json_reproduces_paired_matrix(capsys):
    for argv in (["fusion", "F4", "17", "L1"], ["fusion", "E8", "34", "λ8"]):
        code, out = run(capsys, *argv, "--order", "paired", "--format", "json")
        doc = json.loads(out)
        assert code == 0 and doc["format_version"] == SCHEMA_VERSION
        assert [r["lhs"] for r in doc["records"]] == PAIRED_MATRIX


def test_labels_and_dims(capsys):
    code, out = run(capsys, "labels", "G2", "11", "--format", "jsonl")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and lines[0]["kind"] == "header" and lines[-1]["kind"] == "summary"
    assert len(lines) == 2 + 5
    code, out = run(capsys, "dims", "G2", "11", "2", "--format", "json")
    doc = json.loads(out)
    dims = [r for r in doc["records"] if r["case"] == "dim"]
    assert len(dims) == 5 and all(r["lhs"] > 0 for r in dims)
    assert all(set(r) >= {"params", "lhs", "rhs", "margin", "verdict", "tolerance"} for r in doc["records"])


def test_reports_are_deterministic(capsys):
    _, a = run(capsys, "verify-g2", "--levels", "14:20", "--format", "json")
    _, b = run(capsys, "verify-g2", "--levels", "14:20", "--format", "json")
    assert a == b


def test_verify_g2_skips_carry_reasons(capsys):
    code, out = run(capsys, "verify-g2", "--levels", "9:17", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    by_l = {}
    for r in doc["records"]:
        if "l" in r["params"]:
            by_l.setdefault(r["params"]["l"], set()).add(r["verdict"])
    assert by_l[9] == {"skip"} and by_l[12] == {"skip"} and by_l[15] == {"skip"}
    assert by_l[11] == {"context"} and by_l[16] == {"pass"} and by_l[17] == {"pass"}
    skip = next(r for r in doc["records"] if r["params"].get("l") == 12)
    assert "3 ∤ l" in skip["reason"]
    assert doc["summary"]["all_pass"]


def test_verify_bc_equality_cases(capsys):
    code, out = run(capsys, "verify-bc", "--k", "1", "--levels", "7,9", "--format", "json")
    doc = json.loads(out)
    eq = [(r["params"]["l"], r["params"]["z"]) for r in doc["records"] if r["verdict"] == "equality"]
    assert code == 0 and sorted(eq) == [(7, 1), (7, 6), (9, 1), (9, 8)]


def test_exit_status_on_failure(capsys):
    # a negative tolerance makes equal dimensions fail the Perron-bound check
    code, _ = run(capsys, "dims", "A1", "5", "1", "--tol", "-1")
    assert code == 1


def test_usage_errors(capsys):
    assert main(["labels", "F4", "5"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["labels", "Q7", "5"])
    assert exc.value.code == 2
    assert main(["dims", "G2", "14", "2"]) == 2  # gcd(z, l) != 1


def test_equivalences_subset(capsys):
    code, out = run(capsys, "equivalences", "--case", "G2@8 ~ sl2@3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["records"][0]["verdict"] == "pass"
    assert doc["records"][0]["witness"] == [["0", "0"], ["L1", "L1"]]


def test_console_script_runs():
    out = subprocess.run([sys.executable, "-m", "qgfusion.cli", "scan", "B2", "9"], capture_output=True, text=True)
    assert out.returncode == 0 and "ALL PASS" in out.stdout


def test_precision_flag(capsys, monkeypatch):
    monkeypatch.setenv("QGFUSION_DPS", "")  # restored after the test; --dps writes it
    code, plain = run(capsys, "dims", "F4", "17", "3", "--format", "json")
    code2, precise = run(capsys, "dims", "F4", "17", "3", "--format", "json", "--dps", "40")
    a = [r["lhs"] for r in json.loads(plain)["records"]]
    b = [r["lhs"] for r in json.loads(precise)["records"]]
    assert code == code2 == 0 and a == pytest.approx(b, abs=1e-12)
