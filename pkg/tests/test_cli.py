import json
import subprocess
import sys

import pytest

from sepgraph import __version__
from sepgraph.cli import main
from sepgraph.complexes import build_dw_graph
from sepgraph.mcg import apply, point_push


def test_version(capsys):
    assert main(["--version"]) == 0
    assert __version__ in capsys.readouterr().out


def test_enumerate(tmp_path, capsys):
    assert main(["enumerate", "--surface", "1,1", "--max-weight", "1", "--out", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "enumerate_curves_g1b1_w1.json").read_text())
    assert len(doc["items"]) == 3
    assert main(["enumerate", "--surface", "2,1", "--max-weight", "4", "--kind", "separating",
                 "--cap", "5", "--out", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "enumerate_separating_g2b1_w4.json").read_text())
    assert len(doc["items"]) == 5 and doc["truncation"]["truncated"]


def test_usage_errors_exit_one(tmp_path):
    assert main(["enumerate", "--surface", "x", "--max-weight", "1"]) == 1
    assert main(["enumerate", "--surface", "2,1"]) == 1
    assert main(["graph", "sep", "--surface", "1,1", "--max-weight", "3", "--out", str(tmp_path)]) == 1
    assert main(["check", "putman", "--surface", "1,1", "--max-weight", "3", "--out", str(tmp_path)]) == 1
    assert main(["nonsense"]) == 1


def test_graph_sep_json_and_dot(tmp_path):
    assert main(["graph", "sep", "--surface", "2,1", "--max-weight", "4", "--out", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "sep_k0_g2b1_w4.json").read_text())
    assert doc["kind"] == "SepK" and len(doc["vertices"]) == 114
    assert main(["graph", "sep", "--surface", "2,1", "--max-weight", "4", "--emit", "dot", "--out", str(tmp_path)]) == 0
    dot = (tmp_path / "sep_k0_g2b1_w4.dot").read_text()
    assert dot.startswith('graph "SepK"')
    assert main(["export", str(tmp_path / "sep_k0_g2b1_w4.json"), "--emit", "dot", "--out", str(tmp_path / "x")]) == 0
    assert (tmp_path / "x" / "sep_k0_g2b1_w4.dot").read_text() == dot
    assert main(["export", str(tmp_path / "sep_k0_g2b1_w4.dot")]) == 1


def test_out_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("SEPGRAPH_OUT", str(tmp_path))
    assert main(["enumerate", "--surface", "1,1", "--max-weight", "1"]) == 0
    assert (tmp_path / "enumerate_curves_g1b1_w1.json").exists()


def test_config_file(tmp_path):
    conf = tmp_path / "conf.json"
    conf.write_text(json.dumps({"max-weight": 1, "kind": "separating", "out": str(tmp_path)}))
    assert main(["--config", str(conf), "enumerate", "--surface", "2,1"]) == 0
    assert (tmp_path / "enumerate_separating_g2b1_w1.json").exists()
    bad = tmp_path / "bad.json"
    bad.write_text("[1]")
    assert main(["--config", str(bad), "enumerate", "--surface", "2,1"]) == 1


def test_graph_k_dw_f(tmp_path):
    assert main(["graph", "k", "--surface", "2,1", "--max-weight", "2", "--out", str(tmp_path)]) == 0
    assert main(["graph", "dw", "--surface", "3,1", "--max-weight", "2", "--grow", "0", "--out", str(tmp_path)]) == 0
    assert main(["graph", "f", "--surface", "3,1", "--max-weight", "2", "--out", str(tmp_path)]) == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert len(names) == 3


def test_checks_and_validate(tmp_path, capsys):
    assert main(["check", "no-double-intersection", "--surface", "2,1", "--max-weight", "4", "--out", str(tmp_path)]) == 0
    assert main(["check", "putman", "--surface", "2,1", "--max-weight", "4", "--k", "4", "--out", str(tmp_path)]) == 0
    for p in tmp_path.glob("*.json"):
        assert main(["validate", str(p)]) == 0
    cert = tmp_path / "putman_k4_g2b1_w4.json"
    doc = json.loads(cert.read_text())
    doc["generatorCondition"] = doc["generatorCondition"][2:]
    bad = tmp_path / "tampered.json"
    bad.write_text(json.dumps(doc))
    assert main(["validate", str(bad)]) == 2
    doc["schema"] = 7
    bad.write_text(json.dumps(doc))
    assert main(["validate", str(bad)]) == 1
    bad.write_text("{")
    assert main(["validate", str(bad)]) == 1


def test_no_double_wrong_surface(tmp_path):
    assert main(["check", "no-double-intersection", "--surface", "3,1", "--max-weight", "2", "--out", str(tmp_path)]) == 1


def test_witness_pairs_and_fgen(tmp_path):
    assert main(["check", "witness-pairs", "--surface", "2,1", "--max-weight", "3", "--out", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "witness_pairs_g2b1_w3.json").read_text())
    assert doc["pairs"] == [] and doc["rank"] == 1
    assert main(["check", "f-generators", "--out", str(tmp_path)]) == 0
    assert main(["check", "f-generators", "--genus", "2", "--out", str(tmp_path)]) == 1


def test_project(tmp_path, s31):
    v = build_dw_graph(s31, 2).vertices[0]
    assert main(["project", "--multicurve", "3,1:2,2,2,2,2,0,2,2,0,0,2,2,2,2,2", "--definer", v.text,
                 "--out", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "projection.json").read_text())
    assert "curves" in doc
    assert main(["project", "--multicurve", v.text, "--definer", v.text, "--component", "9",
                 "--out", str(tmp_path)]) == 1


def test_fiber_path_and_chain(tmp_path, s31):
    dw = build_dw_graph(s31, 2, grow=1)
    w = point_push("L2", s31)
    m = next(v for v in dw.vertices if apply(w, v) != v)
    assert main(["fiber-path", "--m", m.text, "--push", "L2", "--out", str(tmp_path)]) == 0
    assert main(["validate", str(tmp_path / "fiber_path.json")]) == 0
    assert main(["fiber-path", "--m", m.text, "--out", str(tmp_path)]) == 1
    assert main(["chain", "--max-weight", "2", "--edge", "0", "--out", str(tmp_path)]) == 0
    assert main(["validate", str(tmp_path / "thick_chain.json")]) == 0
    assert main(["chain", "--max-weight", "2", "--out", str(tmp_path)]) == 1


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "sepgraph", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and __version__ in out.stdout
