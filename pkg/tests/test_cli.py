import json
import subprocess
import sys

import pytest

from rootlattice.cli import DescribeRecord, describe, main, parse_label


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def matrix_file(tmp_path):
    def make(text):
        p = tmp_path / "m.txt"
        p.write_text(text)
        return str(p)
    return make


def test_describe_e6_json(capsys):
    code, out, _ = run(capsys, "describe", "E6", "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec["delta"] == [3]
    assert rec["induced_pairing"] == [["1/3"]]
    assert rec["delta_dual_generators"] == ["f1v"]
    assert rec["rho_class"] == "iso"
    assert list(rec) == [
        "type", "rank", "cartan", "root_count", "delta", "delta_dual",
        "delta_generators", "delta_dual_generators", "rho", "rho_class",
        "induced_pairing", "pi_r", "pi_prime", "components"]


def test_describe_g2(capsys):
    code, out, _ = run(capsys, "describe", "g2", "--json")
    rec = json.loads(out)
    assert code == 0
    assert rec["delta"] == [] and rec["induced_pairing"] == []
    assert rec["rho_class"] == "trivial-center"
    assert rec["pi_r"] == [1, 2] and rec["components"] == []


def test_describe_d6(capsys):
    _, out, _ = run(capsys, "describe", "D6", "--json")
    assert json.loads(out)["induced_pairing"] == [["1/2", "0"], ["0", "1/2"]]


def test_describe_text(capsys):
    code, out, _ = run(capsys, "describe", "E6")
    assert code == 0
    assert "Delta: Z/3<f1>" in out
    assert "Delta_dual: Z/3<f1v>" in out
    assert "[1/3]" in out


@pytest.mark.parametrize("label", ["A1", "B3", "C4", "D4", "E7", "F4", "A3"])
def test_json_round_trip(label):
    rec = describe(parse_label(label))
    text = rec.to_json()
    again = DescribeRecord.from_json(text)
    assert again == rec
    assert again.to_json() == text
    assert describe(parse_label(label)).to_json() == text


def test_describe_deterministic_across_processes():
    cmd = [sys.executable, "-m", "rootlattice", "describe", "D8", "--json"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b


@pytest.mark.parametrize("label,expected", [
    ("A3", [["3/4"]]),
    ("B9", [["0"]]),
    ("C7", [["1/2"]]),
])
def test_pairing(capsys, label, expected):
    code, out, _ = run(capsys, "pairing", label, "--json")
    assert code == 0
    assert json.loads(out)["pairing"] == expected


def test_pairing_text_has_generator_names(capsys):
    _, out, _ = run(capsys, "pairing", "D4")
    assert "f3v" in out and "f4v" in out and "1/2" in out


@pytest.mark.parametrize("text", ["B1", "X4", "E9", "", "A-3", "A99"])
def test_bad_labels_exit_2(capsys, text):
    code, out, err = run(capsys, "describe", text)
    assert code == 2
    assert out == ""
    assert "error" in err


def test_rank_ceiling(capsys):
    assert run(capsys, "--rank-ceiling", "10", "describe", "A11")[0] == 2
    assert run(capsys, "--rank-ceiling", "10", "describe", "A10")[0] == 0
    assert run(capsys, "verify", "--max-rank", "0")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "verify", "--scope", "bogus")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--scope", "table91", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["overall"] == "pass"
    assert rep["types_checked"] == 33
    assert list(rep) == ["overall", "types_checked", "checks", "records"]


def test_verify_lemma2_with_fault(capsys):
    code, out, _ = run(capsys, "verify", "--scope", "lemma2", "--max-rank", "4",
                       "--inject-fault", "t-no-multiplier", "--json")
    assert code == 1
    rep = json.loads(out)
    assert rep["overall"] == "fail"
    failing = [r for r in rep["records"] if r["verdict"] == "fail"]
    assert any(r["type"] == "B3" and r["check"] == "lemma2.inclusion" and r["witness"]
               for r in failing)


def test_verify_text_no_color(capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    code, out, _ = run(capsys, "verify", "--scope", "phi", "--max-rank", "2")
    assert code == 0
    assert "\033[" not in out
    assert out.strip().splitlines()[-1].startswith("overall: PASS")


def test_snf_a2(capsys, matrix_file):
    code, out, _ = run(capsys, "snf", matrix_file("2 2\n2 -1\n-1 2\n"), "--json")
    assert code == 0
    assert json.loads(out)["S"] == [[1, 0], [0, 3]]


def test_snf_identity_and_zero(capsys, matrix_file):
    _, out, _ = run(capsys, "snf", matrix_file("3 3\n1 0 0\n0 1 0\n0 0 1\n"), "--json")
    assert json.loads(out)["S"] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    _, out, _ = run(capsys, "snf", matrix_file("1 1\n0\n"), "--json")
    assert json.loads(out)["S"] == [[0]]


def test_snf_text(capsys, matrix_file):
    code, out, _ = run(capsys, "snf", matrix_file("2 2\n2 -1\n-1 2\n"))
    assert code == 0
    assert out.startswith("S =\n  [1 0]\n  [0 3]")


@pytest.mark.parametrize("text,where", [
    ("2 2\n2 x\n-1 2\n", ":2:3:"),
    ("2 2\n2 -1\n-1\n", ":3:1:"),
    ("", ":1:1:"),
    ("0 2\n", ":1:1:"),
])
def test_snf_malformed(capsys, matrix_file, text, where):
    code, out, err = run(capsys, "snf", matrix_file(text))
    assert code == 2
    assert where in err


def test_snf_missing_file(capsys, tmp_path):
    assert run(capsys, "snf", str(tmp_path / "nope"))[0] == 2
