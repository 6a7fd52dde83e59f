from __future__ import annotations

import json

import pytest

from rcgraph.cli import main
from rcgraph.errors import InputError
from rcgraph.formats import (build_report, emit_dot, emit_edge_list, emit_json,
                             parse_edge_list)
from rcgraph.generators import generate
from rcgraph.graph import is_connected, make_graph
from rcgraph.verify import EdgeColoring


def test_parse_plain_document():
    g, coloring = parse_edge_list("3 3\n0 1\n1 2\n0 2\n")
    assert g.edges == ((0, 1), (0, 2), (1, 2))
    assert coloring is None


def test_parse_colored_document():
    g, coloring = parse_edge_list("3 2\n0 1 1\n1 2 2\n")
    assert coloring is not None
    assert coloring.color_of(0, 1) == 1 and coloring.color_of(1, 2) == 2


@pytest.mark.parametrize("doc,fragment", [
    ("3 2\n0 1 1\n1 2\n", "line 3"),
    ("3\n0 1\n", "header"),
    ("3 2\n0 1\n", "promises 2"),
    ("2 1\n0 5\n", "edge section"),
    ("2 1\n0 x\n", "integers"),
    ("2 1\n0 1 0\n", "1-based"),
])
def test_parse_errors_carry_line_numbers(doc, fragment):
    with pytest.raises(InputError, match=fragment):
        parse_edge_list(doc)


def test_edge_list_round_trip():
    g = generate("lollipop", [6, 3])
    text = emit_edge_list(g)
    g2, _ = parse_edge_list(text)
    assert g2 == g

    coloring = EdgeColoring.from_sequence(g, [1 + i % 3 for i in range(g.m)])
    text = emit_edge_list(g, coloring)
    g3, c3 = parse_edge_list(text)
    assert g3 == g and c3.colors == coloring.colors


def test_emit_dot():
    k3 = make_graph(3, [(0, 1), (1, 2), (0, 2)])
    plain = emit_dot(k3)
    assert plain.startswith("graph G {") and "0 -- 1;" in plain

    c = EdgeColoring.from_sequence(k3, [1, 1, 1])
    colored = emit_dot(k3, c)
    assert colored.count('color="red"') == 3

    c2 = EdgeColoring.from_sequence(make_graph(3, [(0, 1), (1, 2)]), [1, 2])
    two = emit_dot(c2.graph, c2)
    assert 'color="red"' in two and 'color="blue"' in two


def test_json_round_trip():
    doc = build_report("sweep", None, {"failures": []}, timing=0.25, seed=7)
    text = emit_json(doc)
    back = json.loads(text)
    assert back == doc
    assert back["schema_version"] == 1


def test_generate_examples():
    assert generate("complete", [4]).m == 6
    lp = generate("lollipop", [5, 2])
    assert lp.m == 7
    r1 = generate("random", [6, 11], seed=7)
    r2 = generate("random", [6, 11], seed=7)
    assert r1 == r2 and is_connected(r1)
    with pytest.raises(InputError):
        generate("random", [6, 3])
    with pytest.raises(InputError):
        generate("moebius", [5])
    with pytest.raises(InputError):
        generate("cycle", [5, 9])


# --- command line ----------------------------------------------------------


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_cli_verify(tmp_path, capsys):
    good = _write(tmp_path, "good.txt", "3 2\n0 1 1\n1 2 2\n")
    assert main(["verify", good]) == 0
    assert capsys.readouterr().out.strip() == "true"

    bad = _write(tmp_path, "bad.txt", "3 2\n0 1 1\n1 2 1\n")
    assert main(["verify", bad]) == 1
    assert capsys.readouterr().out.strip() == "false"

    plain = _write(tmp_path, "plain.txt", "3 2\n0 1\n1 2\n")
    assert main(["verify", plain]) == 2


def test_cli_exact(tmp_path, capsys):
    p4 = _write(tmp_path, "p4.txt", "4 3\n0 1\n1 2\n2 3\n")
    assert main(["exact", p4]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"]["value"] == 3
    assert doc["schema_version"] == 1

    assert main(["exact", p4, "--kmax", "2"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"]["proven_lower_bound"] == 3


def test_cli_color(tmp_path, capsys):
    k5e = make_graph(5, [(u, v) for u in range(5) for v in range(u + 1, 5)][:-1])
    f = _write(tmp_path, "k5e.txt", emit_edge_list(k5e))
    assert main(["color", f, "--colors", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"]["verified"] is True
    assert doc["result"]["colors_used"] <= 2

    c6 = _write(tmp_path, "c6.txt", "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n")
    assert main(["color", c6, "--colors", "3"]) == 2  # below the threshold


def test_cli_color_writes_dot(tmp_path, capsys):
    k4 = _write(tmp_path, "k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    dot = tmp_path / "out.dot"
    assert main(["color", k4, "--colors", "2", "--dot", str(dot)]) == 0
    capsys.readouterr()
    assert dot.read_text().startswith("graph G {")


def test_cli_threshold(capsys):
    assert main(["threshold", "10", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"]["value"] == 30 and doc["result"]["status"] == "exact"

    assert main(["threshold", "5", "9"]) == 2


def test_cli_sharpness(capsys):
    assert main(["sharpness", "4", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"]["witness"]["edges"] == [[0, 1], [1, 2], [2, 3]]


def test_cli_sweep(capsys):
    assert main(["sweep", "5", "2", "--mode", "exhaustive"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"]["failures"] == []
    assert doc["result"]["instances_checked"] == 176

    assert main(["sweep", "9", "3", "--mode", "exhaustive"]) == 2


def test_cli_gen(capsys):
    assert main(["gen", "lollipop", "5", "2"]) == 0
    out = capsys.readouterr().out
    g, _ = parse_edge_list(out)
    assert g.m == 7

    assert main(["gen", "random", "6", "11", "--seed", "7"]) == 0
    first = capsys.readouterr().out
    assert main(["gen", "random", "6", "11", "--seed", "7"]) == 0
    assert capsys.readouterr().out == first

    assert main(["gen", "random", "6", "2"]) == 2
