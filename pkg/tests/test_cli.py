import json

import pytest

from ramseykit.arrowing import read_colouring
from ramseykit.cli import main
from ramseykit.formats import graph6_encode, read_hypergraph
from ramseykit.gadgets import blockgraph_from_json
from ramseykit.graphs import Graph, hyper_alpha, hyper_girth


@pytest.fixture
def files(tmp_path):
    for name, g in {
        "K2": Graph.complete(2),
        "K5": Graph.complete(5),
        "K6": Graph.complete(6),
        "C5": Graph.cycle(5),
    }.items():
        (tmp_path / f"{name}.g6").write_text(graph6_encode(g) + "\n")
    return tmp_path


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


class TestArrowCommand:
    def test_arrow(self, files, capsys):
        code, out = run(capsys, ["arrow", str(files / "K6.g6"), "--red", "K3", "--blue", "K3", "--no-timing"])
        assert code == 0
        assert json.loads(out) == {"result": "arrow"}

    def test_not_arrow_with_witness_file(self, files, capsys):
        wit = files / "w.txt"
        code, out = run(
            capsys,
            ["arrow", str(files / "K5.g6"), "--red", "K3", "--blue", "K3",
             "--witness", str(wit), "--no-timing"],
        )
        assert code == 0
        assert json.loads(out)["result"] == "not-arrow"
        chi = read_colouring(wit.read_text())
        assert chi.graph == Graph.complete(5)

    def test_undecided_exit_code(self, files, capsys):
        code, out = run(
            capsys,
            ["arrow", str(files / "K6.g6"), "--red", "K3", "--blue", "K3",
             "--max-nodes", "3", "--no-timing"],
        )
        assert code == 10
        assert json.loads(out)["result"] == "undecided"

    def test_missing_file_is_input_error(self, files, capsys):
        code = main(["arrow", str(files / "nope.g6"), "--red", "K3", "--blue", "K3"])
        assert code == 3

    def test_bad_pattern_is_input_error(self, files, capsys):
        code = main(["arrow", str(files / "K6.g6"), "--red", "Q3", "--blue", "K3"])
        assert code == 3

    def test_byte_identical_output(self, files, capsys):
        argv = ["arrow", str(files / "K5.g6"), "--red", "K3", "--blue", "K3", "--no-timing"]
        _, first = run(capsys, argv)
        _, second = run(capsys, argv)
        assert first == second


class TestRamseyCommand:
    def test_triangles(self, files, capsys):
        code, out = run(capsys, ["ramsey", "--red", "K3", "--blue", "K3", "--no-timing"])
        assert code == 0
        doc = json.loads(out)
        assert doc["n"] == 6 and doc["decided"]

    def test_env_var_budget(self, files, capsys, monkeypatch):
        monkeypatch.setenv("RAMSEYKIT_BUDGET", "0.0")
        code, out = run(capsys, ["ramsey", "--red", "K4", "--blue", "K4", "--no-timing"])
        assert code == 10
        assert json.loads(out)["decided"] is False


class TestFilePatterns:
    def test_arbitrary_pattern_from_file(self, files, capsys):
        path3 = files / "P3.g6"
        path3.write_text(graph6_encode(Graph.path(3)) + "\n")
        code, out = run(
            capsys,
            ["arrow", str(files / "C5.g6"), "--red", f"file:{path3}",
             "--blue", f"file:{path3}", "--no-timing"],
        )
        assert code == 0
        assert json.loads(out)["result"] == "arrow"


class TestMinimalCommand:
    def test_k6(self, files, capsys):
        code, out = run(
            capsys, ["minimal", str(files / "K6.g6"), "--pattern", "K3", "--no-timing"]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["is_ramsey"] and doc["is_minimal"]


class TestSurveyCommand:
    def test_single_edge(self, files, capsys):
        code, out = run(capsys, ["survey", "--pattern", "K2", "--nmax", "3"])
        assert code == 0
        lines = [json.loads(ln) for ln in out.splitlines()]
        assert lines[0]["graph6"] == "A_"
        assert lines[-1]["summary"] and lines[-1]["min_delta"] == 1


class TestDistinguishCommand:
    def test_edge_vs_triangle(self, files, capsys):
        code, out = run(
            capsys, ["distinguish", "--h1", "K2", "--h2", "K3", "--nmax", "2", "--no-timing"]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["found"] and doc["graph6"] == "A_"


class TestGadgetCommands:
    def test_g0_and_colour_and_check(self, files, capsys):
        out_json = files / "g0.json"
        code, _ = run(
            capsys,
            ["gadget", "g0", "--k", "3", "--block", str(files / "C5.g6"),
             "-o", str(out_json), "--no-timing"],
        )
        assert code == 0
        bg = blockgraph_from_json(out_json.read_text())
        assert bg.graph.n == 8
        col = files / "col.txt"
        code, out = run(
            capsys,
            ["colour", str(out_json), "--kind", "g0-prop1", "-o", str(col), "--check",
             "--no-timing"],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["clean"] is True
        assert read_colouring(col.read_text()).graph == bg.graph

    def test_product_focus_pipeline(self, files, capsys):
        prod = files / "prod.json"
        blocks = [str(files / "C5.g6")] * 5
        code, out = run(
            capsys,
            ["gadget", "product", "--k", "4", "--t", "3", "--r-value", "4",
             "--g0", str(files / "C5.g6"), "--blocks", *blocks,
             "-o", str(prod), "--no-timing"],
        )
        assert code == 0
        assert json.loads(out)["h"] == 7
        col = files / "g2.txt"
        code, _ = run(
            capsys,
            ["colour", str(prod), "--kind", "g2", "-o", str(col), "--no-timing"],
        )
        assert code == 0
        code, out = run(capsys, ["focus", str(prod), str(col), "--no-timing"])
        assert code == 0
        doc = json.loads(out)
        assert doc["status"] == "ok" and doc["verified"]
        assert doc["J"] == [1, 2, 3, 4, 5]

    def test_hypergraph_success(self, files, capsys):
        out_file = files / "h.txt"
        code, out = run(
            capsys,
            ["gadget", "hypergraph", "--u", "3", "--girth-min", "4", "--eps", "4/5",
             "--n", "15", "--seed", "1", "-o", str(out_file), "--no-timing"],
        )
        assert code == 0
        h = read_hypergraph(out_file.read_text())
        assert hyper_girth(h) >= 4
        assert hyper_alpha(h) < 12

    def test_hypergraph_infeasible_exit_code(self, files, capsys):
        code = main(
            ["gadget", "hypergraph", "--u", "3", "--girth-min", "6", "--eps", "1/10",
             "--n", "9", "--seed", "1", "-o", str(files / "h2.txt")]
        )
        assert code == 11

    def test_colour_kind_mismatch(self, files, capsys):
        out_json = files / "g0b.json"
        run(
            capsys,
            ["gadget", "g0", "--k", "3", "--block", str(files / "C5.g6"),
             "-o", str(out_json), "--no-timing"],
        )
        code = main(["colour", str(out_json), "--kind", "g2"])
        assert code == 3


class TestCnfCommand:
    def test_export_and_solve(self, files, capsys):
        out_file = files / "k6.cnf"
        code, out = run(
            capsys,
            ["cnf", str(files / "K6.g6"), "--red", "K3", "--blue", "K3",
             "-o", str(out_file), "--solve", "--no-timing"],
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["vars"] == 15 and doc["clauses"] == 40
        assert doc["satisfiable"] is False
        assert out_file.read_text().startswith("p cnf 15 40\n")

    def test_witness_decoded(self, files, capsys):
        out_file = files / "k5.cnf"
        wit = files / "k5w.txt"
        code, out = run(
            capsys,
            ["cnf", str(files / "K5.g6"), "--red", "K3", "--blue", "K3",
             "-o", str(out_file), "--solve", "--witness", str(wit), "--no-timing"],
        )
        assert code == 0
        assert json.loads(out)["satisfiable"] is True
        assert read_colouring(wit.read_text()).graph == Graph.complete(5)
