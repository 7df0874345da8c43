from __future__ import annotations

from itertools import product

import pytest

from mhc_ore.algebra import table_rule, unit_rule
from mhc_ore.kernel import PowerRule
from mhc_ore.scalar import ONE, ZERO, as_scalar

from conftest import algebra


def brute_T1(A, a, b, window):
    """Delta(a)(1 (x) b) from coproduct_component, pair by pair."""
    data = {}
    for (y,), cb in b.data.items():
        for x in window:
            v = A.coproduct_component(a, x, y) * cb
            if not v.is_zero():
                data[(x, y)] = data.get((x, y), ZERO) + v
    return data


def test_t1_example_on_c2():
    A = algebra("C2")
    got = A.cover("T1", A.basis(0, "g"), A.basis(1, "g"))
    assert A.fmt_element(got) == "e(-1,e) (x) e(1,g)"


@pytest.mark.parametrize("name", ["C2", "S3"])
def test_t1_against_component_oracle(name):
    A = algebra(name)
    big = A.window(2)
    for a, b in product(A.window_basis(1), repeat=2):
        assert A.cover("T1", a, b).data == brute_T1(A, a, b, big)


def test_other_covers_against_components():
    A = algebra("S3")
    a, b = A.basis(1, "(12)"), A.basis(-1, "(123)")
    t2 = A.cover("T2", a, b)
    assert all(len(A.cover(k, a, b).data) == 1 for k in ("T1", "T2", "T1L", "T2L"))
    for (x, y), v in t2.data.items():
        assert v == a.at((x,)) * A.coproduct_component(b, x, y)
    for (x, y), v in A.cover("T1L", a, b).data.items():
        assert v == b.at((x,)) * A.coproduct_component(a, x, y)
    for (x, y), v in A.cover("T2L", a, b).data.items():
        assert v == A.coproduct_component(b, x, y) * a.at((y,))
    with pytest.raises(ValueError):
        A.cover("T3", a, b)


def test_counit_and_antipode_on_basis():
    A = algebra("S3")
    assert A.counit(A.basis(0, "e")) == ONE
    assert A.counit(A.basis(0, "(12)")) == ZERO
    assert A.counit(A.basis(1, "e")) == ZERO
    s = A.antipode(A.basis(2, "(123)", "1+i"))
    assert s == A.basis(-2, "(132)", "1+i")
    assert A.antipode(s, direction="inv") == A.basis(2, "(123)", "1+i")
    with pytest.raises(ValueError):
        A.antipode(s, direction="sideways")


def test_coproduct_of_multiplier_is_pointwise():
    A = algebra("C2")
    r = PowerRule(["3"])
    d = A.coproduct(r)
    x, y = A.point(2, "g"), A.point(-5, "g")
    assert d.at((x, y)) == as_scalar(3) ** -3


@pytest.mark.parametrize("name,radius", [("C2", 3), ("S3", 2)])
def test_groups_satisfy_everything(name, radius):
    A = algebra(name)
    assert A.check_mhc_axioms(radius).ok
    assert A.check_coassociativity(radius).ok


def test_moufang_loop_is_coquasi_but_not_coassociative():
    A = algebra("M12")
    assert A.check_mhc_axioms(1).ok
    rep = A.check_coassociativity(1)
    assert not rep.ok
    w = rep.witnesses[0]
    assert w.law == "coassociativity" and len(w.component) == 3
    assert w.refails()


def test_non_ip_loop_breaks_antipode_laws():
    A = algebra("nonIP")
    assert A.warnings
    rep = A.check_mhc_axioms(1)
    assert rep.failed() == ["Eq2.1a", "Eq2.1b", "Eq2.2a", "Eq2.2b", "S anticomultiplicative"]
    assert all(w.refails() for w in rep.witnesses)


def test_grouplike_checks():
    A = algebra("C2")
    assert A.check_grouplike(PowerRule(["2"]), 2).ok
    assert A.check_grouplike(unit_rule(), 2).ok
    bad = A.check_grouplike(table_rule({A.point(1, "e"): 1}, 2), 2)
    assert bad.law == "grouplike Delta(r)=r(x)r"
    assert bad.witness.text() == "grouplike Delta(r)=r(x)r: 2 != 4 at (0,e) (0,e) [r]"
    # multiplicative but with a zero value
    zero_at = table_rule({A.point(0, "g"): 0}, 1)
    assert not A.check_grouplike(zero_at, 0).ok


def test_rank_two_grading():
    A = algebra("C2", 2)
    x = A.point((1, -1), "g")
    assert A.fmt(x) == "(1,-1,g)"
    assert A.check_mhc_axioms(1).ok
