import json

import pytest

from seqweight.cli import run
from seqweight.formats import emit_lists
from seqweight.generators import cycle, petersen, random_connected_nice, random_regular
from seqweight.graph_io import emit_edge_list
from seqweight.weighting import ListAssignment


@pytest.fixture
def c5(tmp_path):
    p = tmp_path / "c5.el"
    p.write_text(emit_edge_list(cycle(5)))
    return str(p)


def _run(capsys, argv):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_matches_generator(capsys):
    code, out, _ = _run(capsys, ["gen", "cycle", "--n", "5"])
    assert code == 0 and out == emit_edge_list(cycle(5))
    code, out, _ = _run(capsys, ["gen", "petersen", "--graph-format", "graph6"])
    assert code == 0 and out.strip() == "IheA@GUAo"


def test_oracle_chi_sigma_c5(capsys, c5):
    code, out, _ = _run(capsys, ["oracle", "--graph", c5, "--param", "chi-sigma", "--max-k", "4"])
    assert code == 0
    assert "value: 3" in out and "counterexample ordering" in out


def test_oracle_unknown_exit_code(capsys, tmp_path):
    p = tmp_path / "k2.el"
    p.write_text("2 1\n0 1\n")
    code, out, _ = _run(capsys, ["oracle", "--graph", str(p), "--param", "s-sigma-star", "--max-k", "3"])
    assert code == 2 and "unknown" in out


def test_oracle_feasible_interleaved_order(capsys, c5, tmp_path):
    o = tmp_path / "o.txt"
    o.write_text("0 2 4 1 3\n")
    code, out, _ = _run(capsys, ["oracle", "--graph", c5, "--param", "feasible", "--k", "2", "--ordering", str(o)])
    assert code == 1 and "infeasible" in out


def test_bounds(capsys):
    code, out, _ = _run(capsys, ["bounds", "--task", "3.4", "--n", "20", "--d", "5"])
    assert code == 0 and out.strip() == "5"


def test_hypothesis_exit_codes(capsys):
    assert _run(capsys, ["hypothesis", "--theorem", "2.7", "--n", "50", "--delta", "6", "--Delta", "6", "--k", "3"])[0] == 0
    assert _run(capsys, ["hypothesis", "--theorem", "2.7", "--n", "50", "--delta", "5", "--Delta", "5", "--k", "3"])[0] == 1
    code, out, _ = _run(capsys, ["hypothesis", "--theorem", "2.9", "--n", "50", "--delta", "9", "--Delta", "9",
                                 "--k", "2", "--format", "structured"])
    data = json.loads(out)
    assert code == 0 and data["satisfied"] and data["lhs"] == "512"


def test_weight_then_verify_round_trip(capsys, tmp_path):
    G = random_connected_nice(15, seed=2)
    g, l, o, w = (tmp_path / x for x in ("g.el", "l.txt", "o.txt", "w.txt"))
    g.write_text(emit_edge_list(G))
    l.write_text(emit_lists(ListAssignment(tuple((i, i + 7) for i in range(G.m)))))
    code, out, _ = _run(capsys, ["weight", "--graph", str(g), "--lists", str(l),
                                 "--ordering-out", str(o), "--weighting-out", str(w)])
    assert code == 0
    code, out, _ = _run(capsys, ["verify", "--graph", str(g), "--ordering", str(o), "--weighting", str(w),
                                 "--lists", str(l), "--criterion", "proper", "--criterion", "prefix"])
    assert code == 0 and "proper: True" in out and "prefix: True" in out


def test_total_weight_round_trip(capsys, tmp_path):
    g, o, w = (tmp_path / x for x in ("g.el", "o.txt", "w.txt"))
    g.write_text("4 1\n0 1\n")
    assert _run(capsys, ["total-weight", "--graph", str(g), "--ordering-out", str(o), "--weighting-out", str(w)])[0] == 0
    code, out, _ = _run(capsys, ["verify", "--graph", str(g), "--ordering", str(o), "--weighting", str(w),
                                 "--mode", "total"])
    assert code == 0


def test_verify_detects_violation(capsys, c5, tmp_path):
    w = tmp_path / "w.txt"
    w.write_text("".join(f"{i} 1\n" for i in range(5)))
    code, out, _ = _run(capsys, ["verify", "--graph", c5, "--weighting", str(w)])
    assert code == 1 and "proper_violations" in out


def test_resample_deterministic_and_verifiable(capsys, tmp_path):
    g, o, w = (tmp_path / x for x in ("g.el", "o.txt", "w.txt"))
    g.write_text(emit_edge_list(random_regular(50, 6, seed=1)))
    argv = ["resample", "--graph", str(g), "--k", "3", "--seed", "7", "--ordering-out", str(o), "--weighting-out", str(w)]
    code1, out1, _ = _run(capsys, argv)
    code2, out2, _ = _run(capsys, argv)
    assert code1 == code2 == 0 and out1 == out2
    assert _run(capsys, ["verify", "--graph", str(g), "--ordering", str(o), "--weighting", str(w)])[0] == 0


def test_resample_trials_with_jobs(capsys, tmp_path):
    g = tmp_path / "g.el"
    g.write_text(emit_edge_list(random_regular(20, 5, seed=3)))
    base = ["resample", "--graph", str(g), "--k", "5", "--scope", "all-pairs", "--trials", "3"]
    code1, out1, _ = _run(capsys, base)
    code2, out2, _ = _run(capsys, base + ["--jobs", "2"])
    assert code1 == code2 == 0 and out1 == out2


def test_resample_max_rounds_exit(capsys, tmp_path):
    g = tmp_path / "k2.el"
    g.write_text("2 1\n0 1\n")
    code, out, _ = _run(capsys, ["resample", "--graph", str(g), "--k", "3", "--max-rounds", "5"])
    assert code == 2 and "max_rounds_exceeded" in out


def test_independence_cli(capsys, tmp_path):
    g = tmp_path / "p.el"
    g.write_text(emit_edge_list(petersen()))
    code, out, _ = _run(capsys, ["independence", "--graph", str(g), "--u", "1", "--v", "2"])
    assert code == 0 and "equal: True" in out
    code, out, _ = _run(capsys, ["independence", "--graph", str(g), "--u", "1", "--v", "2", "--rule", "complement"])
    assert code == 1


def test_usage_and_input_errors(capsys, tmp_path):
    assert _run(capsys, ["nonsense"])[0] == 64
    assert _run(capsys, ["oracle"])[0] == 64
    bad = tmp_path / "bad.el"
    bad.write_text("3 1\n0 0\n")
    code, _, err = _run(capsys, ["oracle", "--graph", str(bad), "--param", "mg"])
    assert code == 64 and "loop" in err


def test_mg_structured(capsys, c5):
    code, out, _ = _run(capsys, ["oracle", "--graph", c5, "--param", "mg", "--format", "structured"])
    assert code == 0 and json.loads(out)["value"] == 3


def test_out_file(capsys, c5, tmp_path):
    dest = tmp_path / "report.txt"
    code, out, _ = _run(capsys, ["oracle", "--graph", c5, "--param", "chi-multiset", "--out", str(dest)])
    assert code == 0 and out == "" and "value: 3" in dest.read_text()
