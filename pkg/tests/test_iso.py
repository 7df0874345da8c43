from __future__ import annotations

import pytest

from mhc_ore import Extension
from mhc_ore import kernel as K
from mhc_ore.iso import BaseIso, IsoRefused, build_phi_hat, check_hypotheses, verify_iso
from mhc_ore.laws import first_mismatch

from conftest import algebra, ore_data, shift_multiplier, twisted


def conj12(A):
    G = A.loop
    t = G.index("(12)")
    return [G.mul(G.mul(t, a), G.inv[t]) for a in range(G.order)]


def setup(src, tgt, sigma=None, d=None):
    A, A2 = src.A, tgt.A
    phi = BaseIso(A, A2, sigma if sigma is not None else list(range(A.loop.order)))
    d = d if d is not None else K.zero(1)
    return phi, d


def test_base_iso_maps_basis():
    A = algebra("S3")
    phi = BaseIso(A, A, conj12(A))
    assert phi(A.basis(2, "(13)", 5)) == A.basis(2, "(23)", 5)
    assert phi.inverse()(phi(A.basis(1, "(123)"))) == A.basis(1, "(123)")
    assert phi.check().ok
    names = BaseIso.from_names(A, A, {"e": "e", "(12)": "(12)", "(13)": "(23)", "(23)": "(13)",
                                      "(123)": "(132)", "(132)": "(123)"})
    assert names.sigma == phi.sigma


def test_base_iso_rejects_bad_maps():
    A = algebra("S3")
    with pytest.raises(ValueError):
        BaseIso(A, A, [0, 0, 1, 2, 3, 4])
    with pytest.raises(ValueError):
        BaseIso.from_names(A, A, {"e": "e"})
    with pytest.raises(ValueError):
        BaseIso(A, algebra("C2"), [0, 1])
    G = A.loop
    swap = list(range(6))
    i, j = G.index("(12)"), G.index("(123)")
    swap[i], swap[j] = j, i
    res = BaseIso(A, A, swap).check()
    assert not res.ok and res.witness.refails()


def test_identity_iso():
    D = ore_data("C2")
    phi, d = setup(D, D)
    hyp = check_hypotheses(phi, D, D, d, 2)
    assert hyp.ok
    E = Extension(D)
    ph = build_phi_hat(phi, E, E, d, hyp)
    y = E.y()
    assert ph(y).terms.keys() == y.terms.keys()
    assert verify_iso(ph, 1, 2).ok


def test_s3_conjugation_iso():
    D = ore_data("S3", -2)
    A = D.A
    phi, d = setup(D, D, conj12(A))
    hyp = check_hypotheses(phi, D, D, d, 2)
    assert hyp.ok
    ph = build_phi_hat(phi, Extension(D), Extension(D), d, hyp)
    rep = verify_iso(ph, 1, 2)
    assert rep.ok
    assert rep.law("psi(phi(P))=P").checked == len(A.window(1)) * 3


def test_mismatched_lambda_is_rejected():
    D, D2 = ore_data("S3", -2), ore_data("S3", -2, lam="3")
    phi, d = setup(D, D2, conj12(D.A))
    hyp = check_hypotheses(phi, D, D2, d, 2)
    assert hyp.failed() == ["phi(r)=r'"]
    w = hyp.law("phi(r)=r'").witness
    assert (w.component, w.lhs, w.rhs) == (["(1,e)"], "2", "3")
    with pytest.raises(IsoRefused):
        build_phi_hat(phi, Extension(D), Extension(D2), d, hyp)


def test_character_not_fixed_by_sigma():
    D, D2 = ore_data("S3", -2, elem="(12)"), ore_data("S3", -2, elem="(12)")
    A = D.A
    G = A.loop
    t = G.index("(13)")
    sigma = [G.mul(G.mul(t, a), G.inv[t]) for a in range(G.order)]
    phi, d = setup(D, D2, sigma)
    assert "tau'(phi(a))=phi(tau(a))" in check_hypotheses(phi, D, D2, d, 1).failed()


def test_nonzero_skew_primitive_shift():
    D = ore_data("C2", -2)
    D2 = ore_data("C2", -2, delta=twisted())
    d = shift_multiplier()
    phi, _ = setup(D, D2)
    hyp = check_hypotheses(phi, D, D2, d, 2)
    assert hyp.ok
    ph = build_phi_hat(phi, Extension(D), Extension(D2), d, hyp)
    img = ph(Extension(D).y())
    w = D.A.window(2)
    # phi(y) = y' + d' exactly, coefficientwise
    assert first_mismatch(img.terms[(0,)], d, w) is None
    assert set(img.terms) == {(0,), (1,)}
    assert verify_iso(ph, 1, 2).ok


def test_shift_without_matching_derivation_fails():
    D = ore_data("C2", -2)
    d = shift_multiplier()
    phi, _ = setup(D, D)
    failed = check_hypotheses(phi, D, D, d, 1).failed()
    assert failed == ["delta'(phi(a))=phi(delta(a))+phi(tau(a))d'-d'phi(a)"]


def test_non_primitive_shift_fails_its_laws():
    D = ore_data("C2", -2)
    A = D.A
    d = A.basis(0, "e")
    phi, _ = setup(D, D)
    failed = check_hypotheses(phi, D, D, d, 1).failed()
    assert "d' skew-primitive" in failed and "eps(d')=0" in failed


def test_star_variant():
    D = ore_data("S3", 0)
    phi, d = setup(D, D, conj12(D.A))
    hyp = check_hypotheses(phi, D, D, d, 1)
    ph = build_phi_hat(phi, Extension(D), Extension(D), d, hyp)
    rep = verify_iso(ph, 1, 2, star=True)
    assert rep.ok
    assert rep.law("phi(P*)=phi(P)*").ok and rep.law("Cor4.3 source Thm3.9(3)").ok
