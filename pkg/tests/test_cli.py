import json
import subprocess
import sys

import pytest

from ttgs import cli
from ttgs.algebra import INF, weighted, weighted_sum
from ttgs.graph import generate_random, parse_network, scalarize

from .conftest import FIXTURES

GOLDEN = FIXTURES.parent / "golden" / "diamond_solve.json"
DIAMOND_ARGS = [
    "solve",
    "--input",
    str(FIXTURES / "diamond.ttgn"),
    "--gamma",
    "linear",
    "--eval",
    "sum:1,0,0",
    "--schedule",
    "synchronous",
]


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_diamond_solve(capsys):
    code, out, _ = run(DIAMOND_ARGS, capsys)
    assert code == 0
    assert '"distances": [0.000000000, 1.000000000, 4.000000000, 3.000000000]' in out
    data = json.loads(out)
    assert data["converged_at"] == 2 and data["improving_cycle"] is False
    keys = list(data)
    assert keys[:15] == [
        "format_version", "command", "n", "m", "source", "gamma", "eval", "schedule",
        "iterations_run", "converged_at", "improving_cycle", "relaxations_total",
        "relaxations_per_iteration", "distances", "witnesses",
    ]


def test_diamond_matches_golden_bytes(capsys):
    _, first, _ = run(DIAMOND_ARGS, capsys)
    _, second, _ = run(DIAMOND_ARGS, capsys)
    assert first == second
    assert first == GOLDEN.read_text(encoding="utf-8")


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(DIAMOND_ARGS + ["--output", str(target)], capsys)
    assert code == 0 and out == ""
    assert target.read_text(encoding="utf-8") == GOLDEN.read_text(encoding="utf-8")


def test_infinity_sentinel(tmp_path, capsys):
    p = tmp_path / "g.ttgn"
    p.write_text("ttgn 1\nn 3\ns 0\ne 0 1 1 1 1\n")
    code, out, _ = run(["solve", "--input", str(p)], capsys)
    assert code == 0
    assert '"distances": [0.000000000, 3.000000000, "inf"]' in out


def test_trace(capsys):
    code, out, _ = run(DIAMOND_ARGS + ["--trace"], capsys)
    trace = json.loads(out)["trace"]
    assert trace[0] == [0.0, "inf", "inf", "inf"]
    assert trace[2] == [0.0, 1.0, 4.0, 3.0]


def test_in_place_schedule(capsys):
    code, out, _ = run(DIAMOND_ARGS[:-1] + ["in-place"], capsys)
    assert code == 0 and json.loads(out)["schedule"] == "in_place"


class TestExitCodes:
    def test_cycle_without_flag_is_ok(self, capsys):
        argv = ["solve", "--input", str(FIXTURES / "negative_cycle.ttgn"), "--eval", "sum:1,0,0", "--allow-negative"]
        code, out, _ = run(argv, capsys)
        assert code == 0 and json.loads(out)["improving_cycle"] is True

    def test_cycle_with_flag(self, capsys):
        argv = [
            "solve", "--input", str(FIXTURES / "negative_cycle.ttgn"),
            "--eval", "sum:1,0,0", "--allow-negative", "--fail-on-cycle",
        ]
        code, out, err = run(argv, capsys)
        assert code == 2
        assert json.loads(out)["improving_cycle"] is True

    def test_negative_without_flag_is_input_error(self, capsys):
        code, out, err = run(["solve", "--input", str(FIXTURES / "negative_cycle.ttgn")], capsys)
        assert code == 1 and "line" in err

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = run(["solve", "--input", str(tmp_path / "nope.ttgn")], capsys)
        assert code == 1 and err

    @pytest.mark.parametrize("flag,value", [("--gamma", "weighted:1"), ("--eval", "sum:x"), ("--schedule", "async")])
    def test_bad_specs(self, flag, value, capsys):
        code, _, _ = run(DIAMOND_ARGS + [flag, value], capsys)
        assert code == 1

    def test_no_command(self, capsys):
        assert run([], capsys)[0] == 1

    def test_verify_mixing(self, capsys):
        argv = ["verify", "--input", str(FIXTURES / "mixing.ttgn"), "--eval", "sum:1,0,0"]
        code, out, _ = run(argv, capsys)
        assert code == 0
        data = json.loads(out)
        v = data["vertices"][4]
        assert (v["label"], v["oracle"], v["equal"], v["strict"]) == (5.0, 10.0, False, True)
        assert data["lower_bound_ok"] is True
        assert run(argv + ["--strict-lemma"], capsys)[0] == 3

    def test_verify_out_tree(self, capsys):
        argv = ["verify", "--input", str(FIXTURES / "out_tree.ttgn"), "--strict-lemma"]
        code, out, _ = run(argv, capsys)
        assert code == 0 and json.loads(out)["n_strict"] == 0

    def test_verify_injected_violation(self, monkeypatch, capsys):
        real_solve = cli.solve

        def inflated(*args, **kwargs):
            rep = real_solve(*args, **kwargs)
            rep.final.labels[3] += 1.0
            return rep

        monkeypatch.setattr(cli, "solve", inflated)
        argv = ["verify", "--input", str(FIXTURES / "diamond.ttgn")]
        code, out, err = run(argv, capsys)
        assert code == 3
        assert json.loads(out)["violations"] == [3]

    def test_verify_too_large(self, tmp_path, capsys):
        p = tmp_path / "big.ttgn"
        p.write_text("ttgn 1\nn 9\ns 0\n")
        argv = ["verify", "--input", str(p)]
        assert run(argv, capsys)[0] == 1
        assert run(argv + ["--force"], capsys)[0] == 0


def test_probe_grid_contains_known_counterexample(capsys):
    code, out, _ = run(["probe", "--gamma", "weighted:1,2,3", "--law", "associative", "--grid"], capsys)
    assert code == 0
    rep = json.loads(out)["reports"][0]
    assert rep["violated"] is True
    assert any(c["args"] == [0, 0, 1, 0, 0] and c["lhs"] == 3 and c["rhs"] == 4 for c in rep["counterexamples"])


def test_probe_all_laws_linear(capsys):
    code, out, _ = run(["probe", "--gamma", "linear", "--samples", "2000"], capsys)
    reps = json.loads(out)["reports"]
    assert [r["law"] for r in reps] == ["monotone", "distributive", "associative"]
    assert not any(r["violated"] for r in reps)


def test_gen_round_trip(tmp_path, capsys):
    target = tmp_path / "g.ttgn"
    code, _, _ = run(["gen", "--n", "12", "--p", "0.3", "--seed", "5", "--integer", "--output", str(target)], capsys)
    assert code == 0
    net = parse_network(target.read_text())
    assert net == generate_random(12, 0.3, ((0, 100),) * 3, seed=5, integer=True)
    code, out, _ = run(["gen", "--n", "12", "--p", "0.3", "--seed", "5", "--integer"], capsys)
    assert out == target.read_text()


def test_gen_bad_args(capsys):
    assert run(["gen", "--n", "0", "--p", "0.3"], capsys)[0] == 1
    assert run(["gen", "--n", "3", "--p", "0.3", "--ranges", "1,2"], capsys)[0] == 1


def test_bench_accounting(capsys):
    code, out, _ = run(["bench", "--sizes", "50", "--probs", "0.1", "--seed", "0"], capsys)
    assert code == 0
    row = json.loads(out)["runs"][0]
    net = scalarize(generate_random(50, 0.1, seed=0), weighted_sum(1, 1, 1))
    # independent recount from the raw edge list
    expected = 0
    for e in net.edges:
        preds = {x.u for x in net.edges if x.v == e.u}
        expected += len(preds) + (e.u == 0)
    assert row["sum_preds"] == expected
    assert set(row["relaxations_per_iteration"]) == {expected}
    assert row["relaxations_total"] <= 49 * 50 * row["m"]


def test_bench_zero_probability(capsys):
    code, out, _ = run(["bench", "--sizes", "10,20", "--probs", "0"], capsys)
    assert code == 0
    for row in json.loads(out)["runs"]:
        assert row["m"] == 0 and set(row["relaxations_per_iteration"]) <= {0}


def test_bench_bad_sweep(capsys):
    assert run(["bench", "--sizes", "a,b"], capsys)[0] == 1
    assert run(["bench", "--probs", "1.5"], capsys)[0] == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ttgs", *DIAMOND_ARGS], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout == GOLDEN.read_text(encoding="utf-8")


def test_fmt_float():
    assert cli.fmt_float(-0.0) == "0.000000000"
    assert cli.fmt_float(INF) == '"inf"'
    assert cli.fmt_float(1 / 3) == "0.333333333"
    assert weighted(0, 1, 1).spec == "weighted:0,1,1"
