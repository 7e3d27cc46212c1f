import json
import os
import subprocess
import sys

import pytest

from theta_forge.cli import dumps, main, run_cli


def run(*argv):
    return run_cli(list(argv))


def test_curve_command():
    rep = run("curve", "--n", "1", "--theta", "-1/2")
    assert rep["exit_code"] == 0
    assert rep["result"]["curve"]["coefficients"] == ["0/1", "-3/1", "-2/1", "1/1"]
    assert rep["result"]["exceptional"] is True


def test_curve_twist():
    rep = run("curve", "--n", "6", "--theta", "1/2", "--twist", "5")
    assert rep["result"]["twist"]["coefficients"] == ["0/1", "-2700/1", "60/1", "1/1"]


def test_curve_over_quadratic_field():
    rep = run("curve", "--n", "6", "--theta", "1/2", "--d", "20")
    assert rep["result"]["curve"]["A"] == ["12/1", "0/1"]
    assert rep["result"]["curve"]["field"] == "Q(sqrt 5)"


def test_torsion_command():
    rep = run("torsion", "--n", "1", "--theta=-1/2", "--d", "3")
    tors = rep["result"]["torsion"]
    assert tors["group"] == "Z2xZ4"
    assert tors["witnesses"] == [{"x": ["3/1", "2/1"], "y": ["6/1", "4/1"]}]


def test_classify_command():
    rep = run("classify", "--n", "6", "--theta", "1/2", "--d", "5")
    v = rep["result"]["verdict"]
    assert rep["exit_code"] == 0
    assert v["status"] == "ProperlyCongruent"
    assert v["witness_triangle"] == {"u": ["0/1", "3/1"], "v": ["0/1", "8/5"], "w": ["0/1", "13/5"]}


def test_classify_unknown_exit_code():
    rep = run("classify", "--n", "1", "--theta", "0", "--e-max", "4", "--numer-bound", "1000")
    assert rep["result"]["verdict"]["status"] == "Unknown"
    assert rep["exit_code"] == 2


def test_triangle_from_point():
    rep = run("triangle-from-point", "--n", "6", "--theta", "1/2", "--d", "5", "--x", "-3", "--y", "0,9")
    assert rep["result"]["triangle"] == {"u": ["0/1", "3/1"], "v": ["0/1", "8/5"], "w": ["0/1", "13/5"]}


def test_point_from_triangle():
    rep = run("point-from-triangle", "--n", "6", "--theta", "0", "--u", "3", "--v", "4", "--w", "5")
    assert rep["result"]["point"] == {"x": "25/4", "y": "35/8"}
    bad = run("point-from-triangle", "--n", "6", "--theta", "0", "--u", "3", "--v", "4", "--w", "6")
    assert bad["exit_code"] == 1


def test_quartic_command():
    rep = run("quartic", "--r", "2", "--s", "1")
    res = rep["result"]
    assert res["polynomial"] == ["-507/1", "280/1", "-78/1", "0/1", "1/1"]
    assert res["report"]["irreducible_over_Q"] is True
    assert res["report"]["rational_roots"] == []
    assert res["obstruction"] == "ObstructionProven"


def test_quartic_coeffs():
    rep = run("quartic", "--coeffs", "1,0,0,0,1")
    assert rep["result"]["report"]["galois_type"] == "V4"
    assert run("quartic", "--coeffs", "1,x")["exit_code"] == 1


def test_oracle_command():
    rep = run("oracle", "--n", "6", "--theta", "0")
    assert rep["result"]["triangle"] == {"u": "4/1", "v": "3/1", "w": "5/1"}
    rep = run("oracle", "--n", "7", "--theta", "0", "--height", "5")
    assert rep["result"]["triangle"] is None and rep["exit_code"] == 2


def test_twist_evidence_command():
    rep = run("twist-evidence", "--n", "1", "--theta", "0", "--d", "6", "--e-max", "4", "--numer-bound", "1000")
    ev = rep["result"]["evidence"]
    assert {"x": "-3/1", "y": "9/1"} in ev["twist_points"]
    assert {"x": ["-1/2", "0/1"], "y": ["0/1", "1/4"]} in ev["transported"]
    assert run("twist-evidence", "--n", "1", "--theta", "0")["exit_code"] == 1


def test_verify_paper_command():
    rep = run("verify-paper")
    assert rep["exit_code"] == 0
    items = rep["result"]["items"]
    assert [items[k]["status"] for k in ("i", "ii", "iii", "iv")] == ["PASS"] * 4
    assert len(rep["warnings"]) == 1 and "(3√5, 8√5/5, 13√5/5) verifies" in rep["warnings"][0]


@pytest.mark.parametrize(
    "argv",
    [
        ("curve", "--n", "6", "--theta", "2/1"),
        ("curve", "--n", "6", "--theta", "half"),
        ("curve", "--n", "6", "--theta", "2/4x"),
        ("curve", "--n", "12", "--theta", "1/2"),
        ("curve", "--n", "0", "--theta", "1/2"),
        ("curve", "--theta", "1/2"),
        ("bogus",),
        ("curve", "--n", "6", "--theta", "1/2", "--d", "4"),
        ("triangle-from-point", "--n", "6", "--theta", "0", "--x", "1", "--y", "1"),
        ("triangle-from-point", "--n", "6", "--theta", "0", "--x", "1", "--y", "0,1"),
    ],
)
def test_input_errors(argv):
    rep = run(*argv)
    assert rep["exit_code"] == 1
    assert "error" in rep["result"]


def test_non_squarefree_message():
    rep = run("classify", "--n", "12", "--theta", "1/2")
    assert "square-free" in rep["result"]["error"]


def _floats(obj):
    if isinstance(obj, float):
        return True
    if isinstance(obj, dict):
        return any(_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return any(_floats(v) for v in obj)
    return False


@pytest.mark.parametrize(
    "argv",
    [
        ("verify-paper",),
        ("torsion", "--n", "1", "--theta", "-1/2", "--d", "3"),
        ("quartic", "--r", "5", "--s", "2"),
        ("classify", "--n", "6", "--theta", "1/2", "--d", "5", "--e-max", "4", "--numer-bound", "1000"),
    ],
)
def test_json_round_trip_and_determinism(argv):
    first = dumps(run(*argv))
    assert dumps(json.loads(first)) == first
    assert dumps(run(*argv)) == first
    assert not _floats(json.loads(first))


def test_main_text_output(capsys):
    assert main(["curve", "--n", "1", "--theta", "-1/2", "--output", "text"]) == 0
    out = capsys.readouterr().out
    assert "curve.coefficients" in out and "exit_code: 0" in out


def test_console_entry_point_and_thread_cap():
    env = dict(os.environ, THETA_FORGE_THREADS="1")
    argv = ["oracle", "--n", "5", "--theta", "0"]
    proc = subprocess.run([sys.executable, "-m", "theta_forge", *argv], capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == json.loads(dumps(run_cli(argv)))
