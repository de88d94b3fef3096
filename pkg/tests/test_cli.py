import csv
import json
import subprocess
import sys

import pytest

from graphlimits import Graph, Seed, grow_uniform
from graphlimits.cli import CSV_HEADER, main
from graphlimits.graphs import load, save
from graphlimits.viz import read_pgm


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, err = run(capsys, "--json", *argv)
    assert code == 0, err
    return json.loads(out)


def test_generate_uniform(tmp_path, capsys):
    rep = report(capsys, "generate", "uniform", 100, "--seed", 7, "--out", tmp_path / "u.el")
    g = load(tmp_path / "u.el")
    assert rep["edges"] == g.num_edges and g.n == 100
    assert abs(g.num_edges - 1666.5) < 200


def test_generate_pag_and_single_prefix(tmp_path, capsys):
    rep = report(capsys, "generate", "pag", 50, 1000, "--seed", 1, "--out", tmp_path / "p.el")
    assert rep["edges"] == 1000 and "loops" in rep
    rep = report(capsys, "generate", "prefix", 1, "--out", tmp_path / "one.el")
    assert rep["n"] == 1 and rep["edges"] == 0


@pytest.mark.parametrize("model,param", [("ranked", None), ("spag", 0.5), ("wrandom:prefix-limit", None),
                                         ("prescribed:ranked-limit", None), ("homogeneous:1.5", None),
                                         ("homogeneous:1:max", None), ("wrandom:spag-limit:0.3", None)])
def test_generate_other_models(tmp_path, capsys, model, param):
    argv = ["generate", model, 30] + ([param] if param is not None else []) + ["--out", tmp_path / "g.el"]
    rep = report(capsys, *argv)
    assert rep["n"] == 30


def test_generate_usage_errors(tmp_path, capsys):
    assert run(capsys, "generate", "pag", 10, "--out", tmp_path / "x.el")[0] == 2
    assert run(capsys, "generate", "nope", 10, "--out", tmp_path / "x.el")[0] == 2
    assert run(capsys, "generate", "uniform", 0, "--out", tmp_path / "x.el")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["generate", "spag", "10"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_density_commands(tmp_path, capsys):
    save(Graph.empty(5), tmp_path / "empty.el")
    assert report(capsys, "density", "K2", f"graph:{tmp_path / 'empty.el'}")["value"] == 0.0
    rep = report(capsys, "density", "K3", "kernel:prefix-ratio", "--method", "quad", "--grid", 128)
    assert abs(rep["value"] - 5 / 36) < 1e-3
    rep = report(capsys, "density", "K3", "kernel:prefix-limit", "--method", "mc", "--samples", "2e5", "--seed", 3)
    assert abs(rep["value"] - 1 / 6) < 4 * rep["stderr"]
    assert report(capsys, "density", "P3", "kernel:pref-log:1", "--method", "closed")["value"] == 2.0
    assert report(capsys, "density", "K2", "named:petersen", "--method", "inj")["value"] == pytest.approx(30 / 90)


def test_density_multigraph_target(tmp_path, capsys):
    report(capsys, "generate", "pag", 6, 20, "--out", tmp_path / "p.el")
    rep = report(capsys, "density", "K2(2)", tmp_path / "p.el", "--method", "inj")
    assert 0 <= rep["value"]
    assert report(capsys, "density", "K2(2)", tmp_path / "p.el")["value"] > 0


def test_density_errors(tmp_path, capsys):
    assert run(capsys, "density", "K11", "named:petersen")[0] == 3
    assert run(capsys, "density", "K4", "kernel:prefix-limit", "--method", "quad", "--grid", 64)[0] == 3
    assert run(capsys, "density", "K2", "kernel:uniform-limit", "--method", "exact")[0] == 2
    assert run(capsys, "density", "K2", "graph:/no/such/file.el")[0] == 4
    assert run(capsys, "density", "K3", "kernel:ranked-limit", "--method", "closed")[0] == 2


def test_distance_commands(tmp_path, capsys):
    save(grow_uniform(8, Seed(1)), tmp_path / "g.el")
    save(Graph.empty(8), tmp_path / "e.el")
    save(Graph.complete(8), tmp_path / "c.el")
    save(Graph.empty(9), tmp_path / "e9.el")
    g = f"graph:{tmp_path / 'g.el'}"
    assert report(capsys, "distance", "cut", g, g)["estimate"] == 0.0
    rep = report(capsys, "distance", "edit", tmp_path / "e.el", tmp_path / "c.el", "--mode", "exact")
    assert rep["estimate"] == pytest.approx(7 / 8) and rep["exact"] is True
    rep = report(capsys, "distance", "cut", g, "kernel:uniform-limit")
    assert rep["estimate"] >= rep["dyadic_lower_bound"]
    assert run(capsys, "distance", "cut", g, tmp_path / "e9.el")[0] == 2
    assert run(capsys, "distance", "cut", tmp_path / "e9.el", tmp_path / "e9.el", "--mode", "exact")[0] == 3


def test_converge_csv(tmp_path, capsys):
    out = tmp_path / "c.csv"
    report(capsys, "converge", "prefix", "--n", 20, 40, "--reps", 3, "--stat", "t:K3", "--stat", "edges",
           "--out", out)
    rows = list(csv.reader(open(out)))
    assert rows[0] == CSV_HEADER
    data = [r for r in rows[1:] if r[2] not in ("mean", "stderr")]
    assert len(data) == 2 * 3 * 2
    assert {r[2] for r in rows[1:]} == {"0", "1", "2", "mean", "stderr"}


def test_converge_pag_uses_c(tmp_path, capsys):
    out = tmp_path / "c.csv"
    rep = report(capsys, "converge", "pag", "--n", 20, "--reps", 2, "--c", 0.5, "--stat", "edges", "--out", out)
    assert rep["means"]["edges@20"] == 100.0
    assert run(capsys, "converge", "pag", "--n", 20, "--stat", "edges", "--out", out)[0] == 2


def test_converge_reps_zero_header_only(tmp_path, capsys):
    out = tmp_path / "z.csv"
    report(capsys, "converge", "uniform", "--n", 10, "--reps", 0, "--stat", "edges", "--out", out)
    assert out.read_text() == ",".join(CSV_HEADER) + "\n"


def test_converge_descending_n_rejected(tmp_path, capsys):
    assert run(capsys, "converge", "uniform", "--n", 20, 10, "--stat", "edges", "--out", tmp_path / "x.csv")[0] == 2


def test_converge_cut_statistic(tmp_path, capsys):
    out = tmp_path / "c.csv"
    report(capsys, "converge", "spag", "--n", 30, "--c", 0.5, "--reps", 2, "--stat", "cut", "--out", out)
    report(capsys, "converge", "ranked", "--n", 30, "--reps", 2, "--stat", "cut", "--out", out)
    assert run(capsys, "converge", "pag", "--n", 10, "--c", 0.5, "--reps", 1, "--stat", "cut", "--out", out)[0] == 2


def test_render(tmp_path, capsys):
    report(capsys, "render", "named:chessboard:8", "--res", 16, "--out", tmp_path / "a.pgm")
    report(capsys, "render", "named:chessboard-grouped:8", "--res", 16, "--out", tmp_path / "b.pgm")
    a, b = read_pgm(tmp_path / "a.pgm"), read_pgm(tmp_path / "b.pgm")
    assert a.shape == (16, 16) and not (a == b).all()
    assert (b[:8, 8:] == 0).all()
    report(capsys, "render", "kernel:prefix-limit", "--res", 64, "--out", tmp_path / "k.pgm")
    assert run(capsys, "render", "named:petersen", "--res", 8, "--out", tmp_path / "x.pgm")[0] == 2
    assert run(capsys, "render", "named:petersen", "--out", tmp_path / "no" / "dir" / "x.pgm")[0] == 4


def test_plain_text_report(tmp_path, capsys):
    code, out, _ = run(capsys, "generate", "uniform", 10, "--out", tmp_path / "u.el")
    assert code == 0 and "edges: " in out


def test_env_output_dir(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("GRAPHLIMITS_OUTPUT_DIR", str(tmp_path))
    rep = report(capsys, "generate", "uniform", 12, "--seed", 2)
    assert rep["path"].startswith(str(tmp_path)) and load(rep["path"]).n == 12


def test_byte_identical_runs(tmp_path, capsys):
    for tag in ("a", "b"):
        report(capsys, "generate", "pag", 20, 50, "--seed", 4, "--out", tmp_path / f"{tag}.el")
        report(capsys, "converge", "ranked", "--n", 10, 20, "--reps", 3, "--stat", "t:K3", "--stat", "cut",
               "--seed", 4, "--out", tmp_path / f"{tag}.csv")
        report(capsys, "render", f"graph:{tmp_path / 'a.el'}", "--res", 32, "--out", tmp_path / f"{tag}.pgm")
    for ext in ("el", "csv", "pgm"):
        assert (tmp_path / f"a.{ext}").read_bytes() == (tmp_path / f"b.{ext}").read_bytes()


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "graphlimits", "--json", "generate", "ranked", "9",
                          "--out", str(tmp_path / "r.el")], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["n"] == 9
