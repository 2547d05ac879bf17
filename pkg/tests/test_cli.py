import json
import math
import subprocess
import sys

import pytest

from spectral_phase import cli


def run(argv, env=None):
    import os

    full_env = dict(os.environ, **(env or {}))
    proc = subprocess.run(
        [sys.executable, "-m", "spectral_phase", *argv], capture_output=True, text=True, env=full_env
    )
    return proc.returncode, proc.stdout, proc.stderr


def run_inproc(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify(capsys):
    code, out, _ = run_inproc(["classify", "--c1", "0.3", "--c2", "0.7"], capsys)
    rec = json.loads(out)
    assert code == 0 and rec["region"] == "critical-c" and rec["d0"] == pytest.approx(2)
    assert list(rec) == ["region", "d0", "a0", "bands", "ac_interval", "pp_interval"]
    assert rec["pp_interval"] == [None, 0.5]
    assert json.loads(run_inproc(["classify", "--c1", "1", "--c2", "1"], capsys)[1])["region"] == "pure-ac"
    rec = json.loads(run_inproc(["classify", "--c1", "1", "--c2", "0"], capsys)[1])
    assert rec["region"] == "degenerate" and rec["d0"] is None


def test_parse_failure_exit_2():
    code, out, err = run(["classify", "--c1", "abc", "--c2", "1"])
    assert code == 2 and out == ""


def test_solve(capsys):
    code, out, _ = run_inproc(["solve", "--c1", "3", "--c2", "1", "--lam", "0", "--n", "10"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,sign,log10_abs" and len(lines) == 11
    odd = [float(l.split(",")[2]) for l in lines[1::2]]
    assert all(b > a for a, b in zip(odd, odd[1:]))
    code, out, _ = run_inproc(["solve", "--c1", "3", "--c2", "1", "--lam", "0", "--n", "10", "--mode", "backward"], capsys)
    odd = [float(l.split(",")[2]) for l in out.splitlines()[1::2]]
    assert code == 0 and all(b < a for a, b in zip(odd, odd[1:]))


def test_solve_backward_ac_exit_3(capsys):
    code, out, err = run_inproc(["solve", "--c1", "1", "--c2", "1", "--lam", "0", "--n", "20", "--mode", "backward"], capsys)
    assert code == 3 and out == "" and "absolutely continuous" in err


def test_asym(capsys):
    rec = json.loads(run_inproc(["asym", "--c1", "1.5", "--c2", "0.5", "--lam", "1"], capsys)[1])
    assert rec["variant"] == "exp-sqrt" and rec["delta_plus"][0] == pytest.approx(1.63299, rel=1e-5)
    rec = json.loads(run_inproc(["asym", "--c1", "3", "--c2", "1", "--lam", "0"], capsys)[1])
    assert rec["variant"] == "power-law" and rec["alpha_minus"][0] == pytest.approx(-0.381966, rel=1e-6)
    assert rec["delta_plus"] is None
    assert run_inproc(["asym", "--c1", "0.3", "--c2", "0.7", "--lam", "0.5"], capsys)[0] == 4


def test_spectrum(capsys):
    code, out, _ = run_inproc(["spectrum", "--c1", "0.3", "--c2", "0.7", "--size", "400", "--lo", "0", "--hi", "0.5"], capsys)
    assert code == 0 and out.splitlines()[0] == "eigenvalue"
    assert all(float(v) >= 0.3 for v in out.splitlines()[1:])
    code, out, _ = run_inproc(["spectrum", "--c1", "1", "--c2", "0", "--size", "2", "--lo", "0", "--hi", "3"], capsys)
    vals = [float(v) for v in out.splitlines()[1:]]
    assert vals == pytest.approx([(3 - math.sqrt(5)) / 2, (3 + math.sqrt(5)) / 2], abs=1e-9)
    code, out, _ = run_inproc(["spectrum", "--c1", "1", "--c2", "1", "--size", "5", "--lo", "5", "--hi", "5"], capsys)
    assert code == 0 and out == "eigenvalue\n"
    assert run_inproc(["spectrum", "--c1", "1", "--c2", "1", "--size", "5", "--lo", "5", "--hi", "1"], capsys)[0] == 2
    assert run_inproc(["spectrum", "--c1", "1", "--c2", "1", "--size", "0", "--lo", "0", "--hi", "1"], capsys)[0] == 2


def test_spectrum_thread_count_independent():
    args = ["spectrum", "--c1", "1.5", "--c2", "0.5", "--size", "500", "--lo", "-100", "--hi", "100"]
    outs = {run(args + ["--threads", k])[1] for k in ("1", "3", "8")}
    outs.add(run(args + ["--threads", "1"], env={"SPECTRAL_PHASE_THREADS": "5"})[1])
    assert len(outs) == 1


def test_phase_diagram(capsys):
    code, out, _ = run_inproc(["phase-diagram", "--min", "-2", "--max", "2", "--step", "0.05"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "c1,c2,region_code" and len(lines) == 81 * 81 + 1
    cells = {}
    for l in lines[1:]:
        a, b, r = l.split(",")
        cells[(float(a), float(b))] = r
    assert cells[(0.25, 0.25)] == "d"
    assert all(r == "x" for (a, b), r in cells.items() if b == 0)
    assert all(cells[(a, b)] == cells[(-a, b)] == cells[(a, -b)] for a, b in cells)


def test_phase_diagram_bad_grid(capsys):
    assert run_inproc(["phase-diagram", "--step", "0"], capsys)[0] == 2
    assert run_inproc(["phase-diagram", "--min", "1", "--max", "0", "--step", "0.1"], capsys)[0] == 2


def test_witness_count_degenerate(capsys):
    rec = json.loads(run_inproc(["witness", "--c1", "0.7", "--c2", "0.3", "--n-max", "4096"], capsys)[1])
    assert rec["found_n"] <= 1024 and rec["lhs"] < rec["rhs"]
    rec = json.loads(run_inproc(["count", "--c1", "0.3", "--c2", "0.7", "--eps", "0.1", "--size", "2000"], capsys)[1])
    assert rec["count"] <= 10 and rec["bound"] == 10 and rec["ok"] is True
    code, out, _ = run_inproc(["degenerate", "--c", "0.5", "--zero", "c1", "--n-max", "2"], capsys)
    vals = [float(v) for v in out.splitlines()[1:]]
    assert vals == pytest.approx([1, 1.381966, 3.618034], abs=1e-6)
    assert run_inproc(["witness", "--c1", "0.5", "--c2", "0.5"], capsys)[0] == 2
    assert run_inproc(["count", "--c1", "0.3", "--c2", "0.7", "--eps", "0.6"], capsys)[0] == 2


def test_semibounded_and_subordinacy(capsys):
    rec = json.loads(run_inproc(["semibounded", "--c1", "3", "--c2", "1", "--sizes", "100,200,400"], capsys)[1])
    assert rec["verdict"] == "not-semibounded"
    rec = json.loads(run_inproc(["subordinacy", "--c1", "3", "--c2", "1", "--lam", "0", "--n", "32"], capsys)[1])
    assert rec["label"] == "heuristic" and rec["decreasing"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--c1", "0.3", "--c2", "0.7"],
        ["asym", "--c1", "3", "--c2", "1", "--lam", "0"],
        ["asym", "--c1", "0.3", "--c2", "0.7", "--lam", "1"],
        ["witness", "--c1", "0.7", "--c2", "0.3", "--n-max", "512"],
        ["semibounded", "--c1", "0.3", "--c2", "0.7", "--sizes", "50,100"],
    ],
)
def test_json_round_trip_and_determinism(argv, capsys):
    _, first, _ = run_inproc(argv, capsys)
    _, second, _ = run_inproc(argv, capsys)
    assert first == second
    assert cli.dumps(json.loads(first)) + "\n" == first


def test_dumps_formatting():
    assert cli.dumps({"a": 0.1, "b": -0.0, "c": math.inf, "d": 1 + 2j, "e": [True, None]}) == (
        '{"a": 0.10000000000000001, "b": 0, "c": null, "d": [1, 2], "e": [true, null]}'
    )
