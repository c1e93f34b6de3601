import json
import pathlib

import pytest

import cwkit

CORPUS = pathlib.Path(__file__).resolve().parents[2] / "corpus"


def test_theta_signs():
    a = cwkit.theta(["x", "y"], ["x", "y"])
    b = cwkit.theta(["y", "x"], ["x", "y"])
    assert a.ok and b.ok
    assert a.result["cycle"]["terms"][0]["gw"]["class"] == "<1>"
    assert b.result["cycle"]["terms"][0]["gw"]["class"] == "<-1>"
    assert not cwkit.decide_isometry("QQ", ["1"], ["-1"])


def test_validate_rejects_height_one():
    r = cwkit.validate(["x", "x"], ["x", "y"])
    assert r.status == "rejected"
    assert r.exit_code == 2
    assert r.result["reason"] == "height 1 < n = 2"


def test_homotopy_check():
    r = cwkit.homotopy_check(["x", "y - T"], ["x", "y", "T"])
    assert r.ok
    assert r.result["det"] == "1"
    assert r.result["equal_in_chow_witt"] is True


def test_d1_two_points():
    r = cwkit.d1(["x"], "y^2 - y", ["x", "y"])
    classes = [t["gw"]["class"] for t in r.result["cycle"]["terms"]]
    assert classes == ["<-1>", "<1>"]


def test_verify_difference_refusal():
    cycles = [[{"point": ["x", "y"], "form": ["1"]}], [{"point": ["x", "y"], "form": ["-1"]}]]
    r = cwkit.verify_difference(cycles, [], ["x", "y"], 2)
    assert r.status == "falsified"
    assert r.exit_code == 4


def test_witt_and_groebner():
    assert cwkit.groebner_basis("QQ", ["x", "y"], ["x^2 + y^2", "x*y"]) == ["x*y", "x^2 + y^2", "y^3"]
    assert cwkit.witt_class("GF(5)", ["1", "4"]) == []
    assert cwkit.hilbert_symbol(-1, -1, 0) == -1
    r = cwkit.witt(forms=[["1", "1"], ["2", "2"]])
    assert r.result["isometric"] is True


def test_errors_map_to_exceptions():
    with pytest.raises(cwkit.InvalidArgument):
        cwkit.groebner_basis("QQ", ["x"], ["x + z"])
    with pytest.raises(cwkit.CwkitError):
        cwkit.decide_isometry("GF(5)", ["0"], ["1"])


def test_corpus_document_matches_golden():
    doc = CORPUS / "theta_xy.json"
    report = cwkit.run("", doc.read_text())
    report.pop("timing")
    golden = json.loads((CORPUS / "golden" / "theta_xy.json").read_text())
    assert report == golden
