import json
import shutil
import subprocess

import pytest

from cyclicfci.cli import main
from cyclicfci.fixtures import example_dpag_text, example_graph_text
from cyclicfci.generators import random_dmg
from cyclicfci.graphs import build_dmg
from cyclicfci.io import dump_graph, load_graph_document, parse_dpag

from oracles import parse_dot_edges


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "example.json"
    path.write_text(example_graph_text())
    return path


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_fci_matches_fixture(example_file, tmp_path, capsys):
    dot = tmp_path / "out.dot"
    code, out, _ = run(["fci", "--in", example_file, "--dot", dot], capsys)
    assert code == 0
    assert out == example_dpag_text()
    nodes, edges = parse_dot_edges(dot.read_text())
    assert len(nodes) == 10 and len(edges) == 18


def test_output_is_byte_identical(example_file, tmp_path, capsys):
    outs = []
    for k in range(2):
        path = tmp_path / f"run{k}.json"
        assert run(["identify", "--in", example_file, "--out", path], capsys)[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_oracle(example_file, capsys):
    code, out, _ = run(["oracle", "--in", example_file, "--i", "X10", "--j", "X8", "--given", "", "--criterion", "sigma"], capsys)
    assert (code, out) == (0, "separated\n")
    code, out, _ = run(["oracle", "--in", example_file, "--i", "X3", "--j", "X4", "--given", "X5,X6"], capsys)
    assert (code, out) == (0, "connected\n")


def test_equiv(capsys):
    code, out, _ = run(["equiv", "--n", "3", "--criterion", "sigma"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and rep["graphs"] == 512 and rep["counterexamples"] == []


def test_equiv_soundness(capsys):
    code, out, _ = run(["equiv", "--n", "3", "--check", "soundness", "--contexts", "1", "--algorithm", "fci_jci"], capsys)
    assert code == 0 and json.loads(out)["ok"]


def test_equiv_cap_is_validation_error(capsys):
    code, _, err = run(["equiv", "--n", "4"], capsys)
    assert code == 2 and "sample" in err


def test_pc_and_jci(tmp_path, capsys):
    G = build_dmg(["k1", "k2", "x"], [("k1", "x")], [("k1", "k2")])
    path = tmp_path / "g.json"
    path.write_text(dump_graph(G, [0, 1]))
    code, out, _ = run(["jci", "--in", path], capsys)
    P = parse_dpag(out)
    assert code == 0 and P.is_bidirected("k1", "k2")
    code, out, _ = run(["pc", "--in", path], capsys)
    assert code == 0 and parse_dpag(out).adjacent("k1", "x")


def test_identify_with_dpag_file(example_file, tmp_path, capsys):
    dpag = tmp_path / "p.json"
    dpag.write_text(example_dpag_text())
    code, out, _ = run(["identify", "--in", example_file, "--dpag", dpag], capsys)
    claims = json.loads(out)
    assert code == 0
    assert {"kind": "direct_cause", "pair": ["X6", "X7"], "rule": "condition-i", "witness": []} in claims


def test_acyclify(example_file, capsys):
    code, out, _ = run(["acyclify", "--in", example_file], capsys)
    H = load_graph_document(out).graph
    assert code == 0 and H.is_acyclic()
    a = run(["acyclify", "--in", example_file, "--seed", "3", "--density", "0.5"], capsys)[1]
    b = run(["acyclify", "--in", example_file, "--seed", "3", "--density", "0.5"], capsys)[1]
    assert a == b


def test_usage_errors(example_file, capsys):
    assert run([], capsys)[0] == 1
    assert run(["bogus"], capsys)[0] == 1
    assert run(["fci"], capsys)[0] == 1
    assert run(["fci", "--in", example_file, "--criterion", "x"], capsys)[0] == 1
    assert run(["fci", "--in", "/nonexistent/g.json"], capsys)[0] == 1


def test_validation_errors(example_file, tmp_path, capsys):
    code, _, err = run(["oracle", "--in", example_file, "--i", "X99", "--j", "X1"], capsys)
    assert code == 2 and "X99" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(["fci", "--in", bad], capsys)[0] == 2
    assert run(["jci", "--in", example_file, "--context", "X10", "--jci", "1,3"], capsys)[0] == 2


def test_inconsistent_oracle_exit(tmp_path, capsys):
    G = build_dmg(["X1", "X2", "X3", "X4"], [("X1", "X4"), ("X2", "X3")], [("X1", "X2"), ("X3", "X4")])
    path = tmp_path / "g.json"
    path.write_text(dump_graph(G))
    code, _, err = run(["pc", "--in", path], capsys)
    assert code == 3 and "inconsistent" in err


def test_large_graph_guard(tmp_path, capsys):
    path = tmp_path / "big.json"
    path.write_text(dump_graph(random_dmg(26, 0.02, 0.0, seed=0)))
    code, _, err = run(["fci", "--in", path], capsys)
    assert code == 1 and "--force" in err
    assert run(["oracle", "--in", path, "--i", "X1", "--j", "X2"], capsys)[0] == 0
    assert run(["fci", "--in", path, "--force"], capsys)[0] == 0


@pytest.mark.skipif(shutil.which("cyclicfci") is None, reason="console script not installed")
def test_console_script(example_file):
    res = subprocess.run(["cyclicfci", "fci", "--in", str(example_file)], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == example_dpag_text()
