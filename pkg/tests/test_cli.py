import io
import json
import subprocess
import sys

import pytest

from decayideal.cli import main
from decayideal.decay_construction import build, validate_sequence
from decayideal.monomial_core import Ring, ideal_from_dict, ideal_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.fixture
def triangle_file(tmp_path):
    R = Ring(("x", "y", "z"))
    path = tmp_path / "triangle.json"
    path.write_text(ideal_to_json(R.ideal("x*y", "x*z", "y*z")))
    return str(path)


# -- construct ---------------------------------------------------------------------

def test_construct_text(capsys):
    code, out, _ = run(capsys, "construct", "--q", "1", "--m", "1")
    assert code == 0
    lines = [line.strip() for line in out.splitlines()]
    assert "variables: a b" in lines
    gens = lines[lines.index("generators (4):") + 1:]
    assert sorted(gens) == sorted(["a^3", "a^2*b", "a*b^2", "b^3"])


def test_construct_json_round_trip(capsys):
    code, doc = run_json(capsys, "construct", "--q", "6,5,5,4,2,1", "--m", "6")
    assert code == 0
    assert doc["meta"] == {"q": [6, 5, 5, 4, 2, 1], "n": 6, "m": 6,
                           "t": [0, -1, 0, 1, 0, 0], "J": [1, 3, 4, 5], "K": [4]}
    ideal = ideal_from_dict(doc)
    assert ideal == build(validate_sequence([6, 5, 5, 4, 2, 1]), 6).ideal
    assert len(doc["generators"]) == 8


def test_construct_default_m_and_explicit_n(capsys):
    _, doc = run_json(capsys, "construct", "--q", "3,3")
    assert doc["meta"]["n"] == 1 and doc["meta"]["m"] == 1
    _, doc = run_json(capsys, "construct", "--q", "3,3", "--n", "2")
    assert doc["meta"]["n"] == 2 and doc["meta"]["m"] == 2


def test_construct_errors(capsys):
    code, out, err = run(capsys, "construct", "--q", "1,2", "--m", "2")
    assert code == 2
    assert "sequence not non-increasing" in err
    record = json.loads(out)
    assert record["ok"] is False and "sequence not non-increasing" in record["message"]
    code, out, _ = run(capsys, "construct", "--q", "3,2,1", "--m", "2")
    assert code == 2 and json.loads(out)["error"] == "construction"


# -- ass ---------------------------------------------------------------------------

def test_ass_from_file(capsys, triangle_file):
    code, doc = run_json(capsys, "ass", "--ideal", triangle_file)
    assert code == 0 and doc["count"] == 3
    assert doc["primes"] == [["x", "y"], ["x", "z"], ["y", "z"]]
    code, doc = run_json(capsys, "ass", "--ideal", triangle_file, "--e", "2", "--algorithm", "both")
    assert code == 0 and doc["count"] == 4 and doc["agree"] is True
    assert ["x", "y", "z"] in doc["primes"]


def test_ass_from_stdin(capsys, monkeypatch, triangle_file):
    with open(triangle_file) as fh:
        monkeypatch.setattr(sys, "stdin", io.StringIO(fh.read()))
    code, out, _ = run(capsys, "ass", "--ideal", "-", "--e", "2")
    assert code == 0
    assert out.splitlines()[0] == "4 associated primes of I^2:"
    assert "  (x, y, z)" in out.splitlines()


def test_ass_from_sequence_both(capsys):
    code, doc = run_json(capsys, "ass", "--q", "3,2,1", "--m", "3", "--e", "2", "--algorithm", "both")
    assert code == 0
    assert doc["primes"] == [["a", "b"], ["a", "b", "x2"]]
    assert doc["agree"] is True and doc["split_only"] == [] and doc["witness_only"] == []


def test_ass_errors(capsys, tmp_path, triangle_file):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out, _ = run(capsys, "ass", "--ideal", str(bad))
    assert code == 2 and json.loads(out)["error"] == "input"
    code, out, _ = run(capsys, "ass", "--ideal", triangle_file, "--e", "2",
                       "--algorithm", "witness", "--witness-budget", "5")
    assert code == 2 and json.loads(out)["error"] == "budget"
    code, _, _ = run(capsys, "ass", "--ideal", triangle_file, "--e", "0")
    assert code == 2
    code, _, _ = run(capsys, "ass")
    assert code == 2


# -- verify ------------------------------------------------------------------------

@pytest.mark.parametrize(
    "q, m, max_e, counts",
    [("1", "1", "5", [1] * 5), ("3,2,1", "3", "5", [3, 2, 1, 1, 1]),
     ("6,5,5,4,2,1", "6", "7", [6, 5, 5, 4, 2, 1, 1])],
)
def test_verify_examples(capsys, q, m, max_e, counts):
    code, doc = run_json(capsys, "verify", "--q", q, "--m", m, "--max-e", max_e, "--stable")
    assert code == 0 and doc["overall"] is True
    assert [p["computed_count"] for p in doc["powers"]] == counts
    assert [p["predicted_count"] for p in doc["powers"]] == counts
    for p in doc["powers"]:
        assert p["match"] and p["missing"] == [] and p["extra"] == []
        assert len(p["computed_primes"]) == p["computed_count"]
        assert "wall_time_ms" not in p


def test_verify_cross_check_and_timings(capsys):
    code, doc = run_json(capsys, "verify", "--q", "3,2,1", "--m", "3", "--cross-check")
    assert code == 0
    assert len(doc["powers"]) == 5
    assert all(p["cross_check"] == "agree" for p in doc["powers"])
    assert all("wall_time_ms" in p for p in doc["powers"])


def test_verify_over_budget(capsys):
    argv = ["verify", "--q", "3,2,1", "--m", "3", "--max-e", "2", "--cross-check", "--witness-budget", "100"]
    code, out, _ = run(capsys, *argv)
    assert code == 2 and json.loads(out)["error"] == "budget"
    code, doc = run_json(capsys, *argv, "--skip-over-budget")
    assert code == 0 and {p["cross_check"] for p in doc["powers"]} == {"skipped"}


def test_verify_stable_is_byte_identical(capsys):
    argv = ["verify", "--q", "4,2", "--m", "3", "--stable", "--json"]
    first = run(capsys, *argv)[1]
    assert first == run(capsys, *argv)[1]
    text = run(capsys, "verify", "--q", "4,2", "--m", "3", "--stable")[1]
    assert "ms)" not in text and text.rstrip().endswith("overall: PASS")


# -- fuzz --------------------------------------------------------------------------

def test_fuzz_deterministic(capsys):
    argv = ["fuzz", "--seed", "7", "--cases", "6", "--json"]
    code, first, _ = run(capsys, *argv)
    assert code == 0
    assert first == run(capsys, *argv)[1]
    doc = json.loads(first)
    assert doc["cases"] == 6 and doc["passed"] == 6 and doc["first_failure"] is None
    for case in doc["results"]:
        assert 1 <= case["n"] <= 4 and case["n"] <= case["m"] <= case["n"] + 1
        assert max(case["q"]) <= 5


def test_fuzz_zero_cases(capsys):
    code, doc = run_json(capsys, "fuzz", "--cases", "0")
    assert code == 0 and doc["passed"] == 0 and doc["results"] == []
    code, out, _ = run(capsys, "fuzz", "--cases", "0")
    assert code == 0 and "0/0 passed" in out


def test_fuzz_rejects_bad_bounds(capsys):
    code, _, _ = run(capsys, "fuzz", "--max-q1", "0")
    assert code == 2


def test_env_budget_reaches_cli(capsys, monkeypatch, triangle_file):
    monkeypatch.setenv("DECAYIDEAL_WITNESS_BUDGET", "5")
    code, out, _ = run(capsys, "ass", "--ideal", triangle_file, "--algorithm", "witness")
    assert code == 2 and json.loads(out)["error"] == "budget"
    # fuzz skips over-budget powers rather than failing
    code, doc = run_json(capsys, "fuzz", "--seed", "1", "--cases", "2")
    assert code == 0 and all(c["cross_checked"] == 0 for c in doc["results"])


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "decayideal", "construct", "--q", "1", "--m", "1", "--json"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["generators"] == [[0, 3], [1, 2], [2, 1], [3, 0]]


def test_verify_reports_mismatch(capsys, monkeypatch):
    import decayideal.harness as harness

    real = harness.predicted_ass
    monkeypatch.setattr(harness, "predicted_ass", lambda q, m, e: real(q, m, e)[:-1] if e == 1 else real(q, m, e))
    code, out, _ = run(capsys, "verify", "--q", "3,2,1", "--m", "3", "--max-e", "2", "--stable")
    assert code == 1
    assert "MISMATCH" in out and "overall: FAIL" in out
    record = json.loads(out[out.index("{"):])
    assert record["ok"] is False
    first = record["report"]["powers"][0]
    assert first["match"] is False and len(first["extra"]) == 1 and first["missing"] == []
    code, doc = run_json(capsys, "verify", "--q", "3,2,1", "--m", "3", "--max-e", "2")
    assert code == 1 and doc["overall"] is False
