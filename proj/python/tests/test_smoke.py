import json

import pytest

import rcvf


def test_parse_and_evaluate():
    assert rcvf.kind("1 - eps*x^2") == "polynomial"
    assert rcvf.kind("(x+eps)/x") == "rational_function"
    assert rcvf.canonical("(x - 1)^2") == "1 - 2*x + x^2"
    assert rcvf.evaluate("1/(1-eps)", trunc=5)["value"] == "1 + eps + eps^2 + eps^3 + eps^4 + O(eps^5)"
    assert rcvf.evaluate("x^2 + 1", at={"x": "eps"})["value"] == "1 + eps^2"
    assert rcvf.valuation("eps^(3/2) + eps^2")["valuation"] == "3/2"


def test_parse_error_is_raised():
    with pytest.raises(rcvf.RcvfError):
        rcvf.canonical("eps^(3/2")


def test_falsify_and_divergence():
    code, out = rcvf.falsify("eps - x^2", seed=7, set_spec="ball:1")
    assert code == 1
    assert out["point"] == {"x": "1"}
    code, out = rcvf.integral("(x+eps)/x", seed=7, set_spec="ball:1")
    assert code == 1
    assert out["gauss"]["integral"] is True
    assert out["pointwise"]["point"] == {"x": "eps^2"}


def test_certificate_round_trip():
    doc = rcvf.find_certificate("1 - eps*x^2", seed=1)
    assert doc["r"] == ["1"] and doc["m"] == "eps"
    assert rcvf.verify_certificate(json.dumps(doc, separators=(",", ":"))) == (True, "")
    doc["m"] = "1"
    ok, reason = rcvf.verify_certificate(json.dumps(doc))
    assert not ok and reason


def test_sos_and_seed_requirement():
    assert rcvf.sos_decompose("x^2 - 2*x*y + 2*y^2") == ["x - y", "y"]
    assert rcvf.sos_decompose("x^4*y^2 + x^2*y^4 - 3*x^2*y^2 + 1") is None
    assert rcvf.run("psd", "--p", "x^2", "--falsify")[0] == 2
