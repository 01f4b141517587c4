import json

import pytest

from graphminor.cli import main, run
from graphminor.graphs import standard_graph


def write_graph(tmp_path, name, g):
    p = tmp_path / name
    p.write_text(json.dumps(g.to_json()))
    return str(p)


def report(argv):
    status, text = run(argv)
    return status, json.loads(text)


def test_homology_k5(tmp_path):
    k5 = write_graph(tmp_path, "K5.json", standard_graph("complete", 5))
    status, rep = report(["homology", "--graph", k5, "--kind", "matching", "--degrees", "0..2", "--coeff", "Z"])
    assert status == 0
    h1 = rep["result"]["homology"][1]
    assert (h1["degree"], h1["free_rank"], h1["torsion"]) == (1, 6, [])
    assert rep["version"] and rep["config"]["coeff"] == "Z"


def test_homology_from_complex_file(tmp_path):
    c = tmp_path / "c.json"
    c.write_text(json.dumps({"ground": ["a", "b", "c"], "facets": [["a", "b"], ["b", "c"], ["a", "c"]]}))
    status, rep = report(["homology", "--complex", str(c), "--degrees", "1", "--check-uct"])
    assert status == 0 and rep["result"]["homology"][0]["free_rank"] == 1


def test_scan_torsion_complete(tmp_path):
    status, rep = report(["scan", "torsion", "--i", "1", "--max-edges", "7", "--only", "complete"])
    assert status == 0
    assert rep["result"]["records"][-1]["torsion"] == [3]


def test_betti_oracle(tmp_path):
    p3 = write_graph(tmp_path, "P3.json", standard_graph("path", 3))
    status, rep = report(["betti", "--graph", p3, "--max-i", "1", "--oracle"])
    assert status == 0 and rep["result"]["agree"]
    assert rep["result"]["hochster"]["rows"] == rep["result"]["koszul"]["rows"]


def test_conf_and_presentation(tmp_path):
    g = write_graph(tmp_path, "c6.json", standard_graph("cycle", 6))
    status, rep = report(["conf", "--graph", g, "--d", "2", "--max-degree", "9", "--presentation", "--check"])
    assert status == 0
    assert rep["result"]["rank_check"]["ok"]
    assert rep["result"]["poincare"]["ranks"]["3"] == 9


def test_morphisms(tmp_path):
    k4 = write_graph(tmp_path, "K4.json", standard_graph("complete", 4))
    pt = tmp_path / "pt.json"
    pt.write_text(json.dumps({"vertices": ["v"], "edges": []}))
    status, rep = report(["morphisms", "count", "--source", k4, "--target", str(pt)])
    assert status == 0 and rep["result"]["count"] == 16
    status, rep = report(["morphisms", "enumerate", "--source", k4, "--target", str(pt)])
    m = tmp_path / "m.json"
    m.write_text(json.dumps(rep["result"]["morphisms"][0]))
    status, rep = report(["morphisms", "validate", "--source", k4, "--target", str(pt), "--morphism", str(m)])
    assert status == 0 and rep["result"]["valid"]
    bad = json.loads(m.read_text())
    bad["edge_map"] = {e: "*" for e in bad["edge_map"]}
    m.write_text(json.dumps(bad))
    status, rep = report(["morphisms", "validate", "--source", k4, "--target", str(pt), "--morphism", str(m)])
    assert status == 1 and not rep["result"]["valid"]


def test_scans_run(tmp_path):
    assert report(["scan", "generation", "--module", "edge", "--N", "1", "--max-edges", "3"])[0] == 0
    assert report(["scan", "bound", "--max-edges", "3"])[0] == 0
    assert report(["scan", "betti", "--max-edges", "3", "--max-i", "1"])[0] == 0
    base = write_graph(tmp_path, "p1.json", standard_graph("path", 1))
    status, rep = report(["scan", "growth", "--base", base, "--sprout", "v0,v1", "--window", "2..5", "--module", "matching-h1"])
    assert status == 0 and rep["result"]["fit"]["coefficients"] == ["1", "-2", "1"]


def test_convert(tmp_path):
    src = tmp_path / "g.txt"
    src.write_text("a b\nb b\n")
    status, text = run(["convert", "--input", str(src)])
    assert status == 0 and json.loads(text)["edges"][1]["ends"] == ["b", "b"]


def test_exit_codes(tmp_path, capsys):
    assert main(["homology", "--graph", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"vertices": ["a", "b"], "edges": []}))
    assert main(["homology", "--graph", str(bad)]) == 2
    k5 = write_graph(tmp_path, "K5.json", standard_graph("complete", 5))
    assert main(["morphisms", "count", "--source", k5, "--target", k5, "--limit", "5"]) == 3
    assert main(["homology", "--graph", k5, "--degrees", "x..y"]) == 2


def test_byte_identical_reports(tmp_path):
    k4 = write_graph(tmp_path, "K4.json", standard_graph("complete", 4))
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for out in (out1, out2):
        assert main(["homology", "--graph", k4, "--degrees", "0..1", "--seed", "5", "-o", str(out)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert json.loads(out1.read_text())["seed"] == 5


@pytest.mark.parametrize("cmd", ["complex", "homology", "morphisms", "betti", "conf", "scan", "convert"])
def test_help(cmd, capsys):
    with pytest.raises(SystemExit) as exc:
        main([cmd, "--help"])
    assert exc.value.code == 0
    assert "usage" in capsys.readouterr().out
