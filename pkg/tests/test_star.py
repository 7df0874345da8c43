from __future__ import annotations

from mhc_ore import Extension
from mhc_ore import kernel as K
from mhc_ore.scalar import I, ONE, ZERO, as_scalar
from mhc_ore.star import check_prop38, check_thm39, star, star_suite, verify_star_extension

from conftest import algebra, ore_data, twisted


def by_name(results):
    return {r.law: r for r in results}


def test_star_conjugates_coefficients():
    A = algebra("S3")
    a = A.basis(2, "(12)", "1+i")
    assert star(a) == A.basis(2, "(12)", "1-i")
    assert A.counit(star(A.basis(0, "e", I))) == -I == A.counit(A.basis(0, "e", I)).conj()


def test_prop38_holds_on_ip_loops():
    for name in ("C2", "S3", "M12"):
        assert all(r.ok for r in check_prop38(algebra(name), 1))


def test_thm39_trivial_shift_passes():
    assert all(r.ok for r in check_thm39(ore_data(p0=0), 2))


def test_thm39_shifted_data_fails_first_condition():
    res = by_name(check_thm39(ore_data(p0=-2), 2))
    w = res["Thm3.9(1)"].witness
    assert w.component == ["(0,e)"] and w.input == ["e(0,e)"]
    assert w.note == "(*tau)^2(e(0,e)) = e(4,e)"
    assert w.refails()
    assert res["Thm3.9(3)"].ok and res["Thm3.9(2) delta(tau+id)=0"].ok


def test_thm39_imaginary_lambda_fails_third_condition():
    res = by_name(check_thm39(ore_data(p0=0, lam="i"), 2))
    w = res["Thm3.9(3)"].witness
    assert (w.lhs, w.rhs, w.component) == ("0-1i", "0+1i", ["(1,e)"])
    assert w.note == "r* != r at (1,e)"
    assert res["Thm3.9(1)"].ok


def test_thm39_second_condition_with_derivation():
    # with a shifted character delta = h(tau - id) is nonzero and breaks delta(tau + id) = 0
    res = by_name(check_thm39(ore_data(p0=-2, delta=twisted()), 1))
    assert not res["Thm3.9(2) delta(tau+id)=0"].ok


def test_star_extension_passes_for_trivial_shift():
    D = ore_data(p0=0)
    E = Extension(D)
    res = verify_star_extension(E, 2, 2)
    assert [r.status for r in res] == ["pass"] * 5
    # (y e)* = e y when tau = id and delta = 0
    A = D.A
    ye = E.mul(E.y(), E.lift(A.basis(1, "g")))
    assert E.star(ye).terms == {(1,): A.basis(1, "g")}
    assert E.counit(E.star(E.y())) == ZERO


def test_star_extension_refused_when_conditions_fail():
    E = Extension(ore_data(p0=-2))
    res = verify_star_extension(E, 2, 2)
    assert len(res) == 1 and res[0].status == "refused"
    assert "Thm3.9(1)" in res[0].note


def test_star_suite_statuses():
    assert star_suite(ore_data(p0=0), 1, 1, Extension(ore_data(p0=0))).ok
    rep = star_suite(ore_data(p0=0, lam="i"), 1, 1, Extension(ore_data(p0=0, lam="i")))
    assert rep.status == "fail" and rep.failed() == ["Thm3.9(3)"]
    assert rep.law("star extension").status == "refused"


def test_star_is_antimultiplicative_with_complex_coefficients():
    D = ore_data(p0=0)
    E, A = Extension(D), D.A
    P = E.monomial(A.basis(1, "e", as_scalar("1/2-3i")), 1)
    Q = E.monomial(A.basis(1, "e", I), 2)
    lhs = E.star(E.mul(P, Q))
    rhs = E.mul(E.star(Q), E.star(P))
    assert lhs.terms.keys() == rhs.terms.keys()
    for d in lhs.terms:
        assert K.materialize(lhs.terms[d]) == K.materialize(rhs.terms[d])
    assert E.star(E.star(P)).terms == P.terms
    assert ONE == E.counit(E.star(E.lift(A.basis(0, "e"))))
