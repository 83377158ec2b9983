import json
import subprocess
import sys
from pathlib import Path

import pytest

from sigmarad.cli import main, parse_int

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_1782(capsys):
    code, out, _ = run(capsys, "analyze", "1782")
    assert code == 0
    assert "h(n) = 1 (1)" in out
    assert "known solution" in out
    assert "3 -> 11 x2" in out


def test_analyze_prints_fraction_and_decimal(capsys):
    _, out, _ = run(capsys, "analyze", "12")
    assert "h(n) = 7/9 (0.777778)" in out


def test_analyze_2(capsys):
    code, out, _ = run(capsys, "analyze", "2")
    assert code == 0
    assert "2 -> 3" in out and "L = []" in out


def test_analyze_1_is_friendly(capsys):
    code, out, _ = run(capsys, "analyze", "1")
    assert code == 0 and "trivial solution" in out


def test_analyze_30758_exponent_violation(capsys):
    code, out, _ = run(capsys, "analyze", "30758", "--structured")
    assert code == 0
    doc = json.loads(out)
    checks = {c["id"]: c for c in doc["literature"]["checks"]}
    assert checks["ed-no-exponent-3-mod-4"]["verdict"] == "violated"
    assert checks["ed-no-exponent-3-mod-4"]["witness"] == ["13^3"]


def test_analyze_dot_matches_golden(capsys, tmp_path):
    path = tmp_path / "g.dot"
    run(capsys, "analyze", "1782", "--dot", str(path))
    assert path.read_text() == (GOLDEN / "g1782.dot").read_text()


def test_analyze_chain_exponent_flag(capsys):
    n = str(2 * 3 * 13**2 * 61)
    _, out2, _ = run(capsys, "analyze", n, "--structured")
    _, out1, _ = run(capsys, "analyze", n, "--structured", "--chain-exponent", "1")
    assert json.loads(out2)["chain_exponent"] == 2
    assert "3 -> 13 -> 61" in json.loads(out2)["chains"]
    assert "3 -> 13 -> 61" not in json.loads(out1)["chains"]


@pytest.mark.parametrize("argv", [
    ["analyze", "1782", "--structured"],
    ["analyze", str(2 * 3**2 * 13**2 * 61**2 * 97), "--structured"],
    ["facts", "--structured"],
    ["pairs", "--bound", "100", "--structured"],
    ["identity", "--graphs", "20", "--seed", "1", "--structured"],
    ["luca", "--k", "2", "--l", "3", "--t", "2", "--structured"],
])
def test_structured_round_trip(capsys, argv):
    _, out, _ = run(capsys, *argv)
    assert json.dumps(json.loads(out), sort_keys=True, indent=2) + "\n" == out


def test_search(capsys):
    code, out, err = run(capsys, "search", "--limit", "2000")
    assert code == 0 and out == "1\n1782\n"
    assert "solution(s)" in err
    _, out, _ = run(capsys, "search", "--limit", "1")
    assert out == "1\n"


def test_search_workers_env(capsys, monkeypatch):
    monkeypatch.setenv("SIGMARAD_WORKERS", "2")
    _, out, err = run(capsys, "search", "--limit", "10^4", "--block", "2000")
    assert out == "1\n1782\n" and "2 worker(s)" in err


def test_pairs(capsys):
    _, out, _ = run(capsys, "pairs", "--bound", "100")
    assert out == "(3,13)\n(13,61)\n"


def test_identity(capsys):
    code, out, _ = run(capsys, "identity", "--graphs", "1000", "--max-vertices", "12", "--seed", "7")
    assert code == 0
    assert out == "1000/1000 identities hold\nseed 7\n"


def test_identity_random_seed_is_printed(capsys):
    _, out, _ = run(capsys, "identity", "--graphs", "5")
    seed = int(out.splitlines()[1].split()[1])
    _, again, _ = run(capsys, "identity", "--graphs", "5", "--seed", str(seed), "--structured")
    assert json.loads(again)["seed"] == seed


def test_facts_exit_zero_with_corrected_331(capsys):
    code, out, _ = run(capsys, "facts")
    assert code == 0
    line = next(ln for ln in out.splitlines() if "L5.3-II5-sigma-331p4" in ln)
    assert line.startswith("corrected")
    assert "0 refuted" in out


def test_luca(capsys):
    code, out, _ = run(capsys, "luca", "--k", "3", "--l", "5", "--t", "4")
    assert code == 0 and out.startswith("log n < ")


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["search", "--limit", "abc"],
    ["search"],
    ["analyze", "x12"],
    ["analyze", "0"],
    ["analyze", "12", "--chain-exponent", "3"],
    ["luca", "--k", "0", "--l", "1", "--t", "1"],
    ["search", "--limit", "10", "--frobnicate"],
])
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1


def test_parse_int_forms():
    assert parse_int("10^8") == parse_int("10**8") == parse_int("1e8") == 10**8
    assert parse_int("1_000") == 1000


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sigmarad.cli", "pairs", "--bound", "20"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "(3,13)\n"
