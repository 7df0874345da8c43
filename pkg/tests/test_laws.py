from __future__ import annotations

import pytest

from mhc_ore import kernel as K
from mhc_ore.kernel import Const, PowerRule
from mhc_ore.laws import Checker, LawResult, Poly, SuiteReport, first_mismatch
from mhc_ore.scalar import ONE, as_scalar

from conftest import algebra


def test_poly_drops_zero_terms_and_checks_shapes():
    P = Poly(1, {(0,): K.zero(1), (2,): Const(1, ONE)})
    assert list(P.terms) == [(2,)] and P.degree() == 2
    assert Poly(1).degree() == -1
    with pytest.raises(ValueError):
        Poly(2, {(1,): Const(2, ONE)})


def test_first_mismatch_reports_smallest_component():
    A = algebra("C2")
    w = A.window(2)
    f = K.add(A.basis(2, "g"), A.basis(1, "e", 3))
    g = A.basis(2, "g")
    comp, deg, lv, rv = first_mismatch(f, g, w)
    assert (A.fmt(comp[0]), deg, lv, rv) == ("(1,e)", (0,), as_scalar(3), as_scalar(0))
    assert first_mismatch(PowerRule(["2"]), PowerRule(["2"]), w) is None
    with pytest.raises(ValueError):
        first_mismatch(f, Const(2, ONE), w)


def test_first_mismatch_compares_each_degree():
    A = algebra("C2")
    w = A.window(1)
    P = Poly(1, {(1,): Const(1, ONE)})
    Q = Poly(1, {(1,): Const(1, ONE), (0,): A.basis(0, "e")})
    comp, deg, lv, rv = first_mismatch(P, Q, w)
    assert deg == (0,) and (str(lv), str(rv)) == ("0", "1")


def test_checker_and_report_json():
    A = algebra("C2")
    ch = Checker(A.space, A.window(1))
    ok = ch.law("id", [A.basis(0, "e")], lambda a: (a, a), A.fmt_element)
    bad = ch.law("double", [A.basis(0, "e"), A.basis(1, "g")], lambda a: (K.scale(2, a), a), A.fmt_element)
    assert ok.ok and ok.checked == 1
    assert bad.status == "fail" and bad.checked == 1
    js = bad.witness.to_json()
    assert js == {"law": "double", "input": ["e(0,e)"], "component": ["(0,e)"], "lhs": "2", "rhs": "1"}
    assert bad.witness.refails()
    rep = SuiteReport("demo")
    rep.add(ok)
    rep.add(bad)
    rep.add(LawResult("later", "refused", note="why"))
    out = rep.to_json()
    assert out["status"] == "fail" and rep.failed() == ["double"]
    assert [l["status"] for l in out["laws"]] == ["pass", "fail", "refused"]
    with pytest.raises(KeyError):
        rep.law("absent")


def test_scalar_law_witness():
    A = algebra("C2")
    ch = Checker(A.space, [])
    res = ch.scalar_law("square", [1, 2, 3], lambda n: (n * n, n + n), describe=str, where=lambda n: [str(n)])
    assert res.witness.input == ["1"] and res.witness.component == ["1"]
    assert res.witness.text() == "square: 1 != 2 at 1 [1]"
