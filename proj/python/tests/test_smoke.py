import json
import pathlib

import pytest

import pseudoexp as pe

DATA = pathlib.Path(__file__).resolve().parents[2] / "tests" / "data"


def test_catalog_has_fixtures():
    names = pe.catalog_names()
    for n in ("graph", "line", "square", "graph2"):
        assert n in names


def test_classify_graph():
    r = pe.classify("graph", bound=3, kummer=2)
    for flag in ("rotund", "absolutely_free", "simple", "perfectly_rotund"):
        assert r[flag]["status"] in ("exact", "holds-up-to-bound")
    assert r["kummer_generic"] == {"q": 2, "holds": True}


def test_classify_square_not_kummer_generic():
    assert pe.classify("square", kummer=2)["kummer_generic"]["holds"] is False


def test_classify_spec_dict():
    spec = json.loads((DATA / "line.json").read_text())
    assert pe.classify(spec)["dim"] == 1


def test_decompose_and_reduce_checks():
    d = pe.decompose([[1, 1]], [[1, 0]])
    assert all(d["checks"].values())
    r = pe.reduce("[[1,2,0,1],[0,1,1,0]]")
    assert all(r["checks"].values())
    assert r["k"] + r["l"] + r["m"] == 2


def test_act_composition():
    z, w = pe.act([[2, 1]], ["x", "1"], ["y", "y"])
    assert len(z) == 1 and len(w) == 1
    assert pe.act([[3]], *pe.act([[2]], ["x"], ["y"])) == pe.act([[6]], ["x"], ["y"])


def test_realize_witness():
    r = pe.realize("graph")
    assert r["checks"] == {"witness_identity": True, "sigma": True}


def test_divide_graph():
    ds = pe.divide("graph", 2)
    assert len(ds) >= 1


def test_run_script_deterministic():
    script = json.loads((DATA / "pipeline.json").read_text())
    a = pe.run_script(script)
    b = pe.run_script(json.dumps(script))
    assert a["ok"] is True
    assert a == b
    assert all(c["ok"] for c in a["certificates"])
    assert pe.audit(a["final_state"])["ok"] is True


def test_errors_are_typed():
    with pytest.raises(pe.ParseError):
        pe.run_script("{not json")
    with pytest.raises(pe.ParseError):
        pe.decompose("[[1,", "[[1]]")
    red = pe.run_script((DATA / "not_simple.json").read_text())
    assert red["ok"] is False
    assert red["failure"]["reason"] == "math"
    assert issubclass(pe.UnsupportedError, ValueError)
