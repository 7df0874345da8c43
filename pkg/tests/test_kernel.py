from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from mhc_ore import kernel as K
from mhc_ore.kernel import Const, Finite, InfiniteSupport, PowerRule, Space, TableRule
from mhc_ore.scalar import ONE, ZERO, Scalar, as_scalar

from conftest import loop

SP = Space(loop("S3"), 1)
W1 = SP.window(1)
W2 = SP.window(2)

coeffs = st.builds(Scalar, st.integers(-3, 3), st.integers(-2, 2), st.integers(1, 3))
elements = st.dictionaries(st.sampled_from(W1), coeffs, max_size=5).map(K.element)


def brute_split(f: Finite, window):
    """Delta(f) by summing over all pairs that multiply into the support."""
    data = {}
    for x, y in product(window, repeat=2):
        v = f.at((SP.mul(x, y),))
        if not v.is_zero():
            data[(x, y)] = v
    return data


def test_space_basics():
    x, y = SP.point([1], "(12)"), SP.point([-2], "(123)")
    assert SP.mul(x, SP.ldiv(x, y)) == y
    assert SP.mul(SP.rdiv(x, y), x) == y
    assert SP.mul(x, SP.inv(x)) == SP.e
    assert SP.fmt(x) == "(1,(12))"
    assert SP.to_json(y) == {"grade": [-2], "elem": "(123)"}
    with pytest.raises(ValueError):
        SP.point([1, 2], "e")
    with pytest.raises(ValueError):
        SP.window(-1)


def test_window_is_center_out():
    w = SP.window(2)
    assert len(w) == 5 * 6
    assert w[0] == SP.e
    assert [SP.fmt(x) for x in w[6:8]] == ["(1,e)", "(1,(23))"]
    assert SP.fmt(w[12]) == "(-1,e)"
    norms = [abs(x[0][0]) for x in w]
    assert norms == sorted(norms)


@settings(max_examples=40, deadline=None)
@given(elements)
def test_split_support_equals_brute_force(f):
    # every pair multiplying into W1 lies in W2 x W2 once one leg is in W1
    lazy = K.split(f, 0, SP)
    got = {p: lazy.at(p) for p in K.components([lazy], W2, 2)}
    got = {p: v for p, v in got.items() if not v.is_zero()}
    want = {p: v for p, v in brute_split(f, W2).items()}
    assert got == want


@settings(max_examples=40, deadline=None)
@given(elements, elements)
def test_pointwise_algebra(f, g):
    s, m = K.add(f, g), K.mul(f, g)
    for x in W1:
        assert s.at((x,)) == f.at((x,)) + g.at((x,))
        assert m.at((x,)) == f.at((x,)) * g.at((x,))
    assert K.scale(ZERO, f).is_zero()
    assert K.add(f, K.scale(-1, f)).is_zero()


@settings(max_examples=30, deadline=None)
@given(elements)
def test_legmap_merge_restrict_permute(f):
    inv = SP.inv
    assert K.legmap(K.legmap(f, 0, inv, inv), 0, inv, inv) == f
    t = K.mul(K.embed(f, [0], 2), K.embed(f, [1], 2))
    tm = K.materialize(t)
    assert K.merge(tm, 0) == K.mul(f, f)
    flipped = K.permute(tm, (1, 0))
    for (x, y), v in tm.data.items():
        assert flipped.at((y, x)) == v
    for x in W1:
        assert K.restrict(tm, 0, x) == K.scale(f.at((x,)), f)


def test_power_and_table_rules():
    r = PowerRule(["2"])
    x = SP.point([-3], "(13)")
    assert r.at((x,)) == as_scalar("1/8")
    assert K.recip(r).at((x,)) == as_scalar(8)
    assert r.conj().at((x,)) == r.at((x,))
    t = TableRule({SP.e: 5}, default=ONE)
    assert t.at((SP.e,)) == 5 and t.at((x,)) == ONE
    assert t.inverse().at((SP.e,)) == as_scalar("1/5")
    with pytest.raises(ValueError):
        PowerRule(["0"])


def test_lazy_products_with_multipliers_stay_exact():
    r = PowerRule(["2"])
    e = K.basis(SP.point([3], "e"), as_scalar("1+i"))
    prod = K.mul(r, e)
    assert isinstance(prod, Finite)
    assert prod.at((SP.point([3], "e"),)) == as_scalar("8+8i")
    assert K.mul(Const(1, as_scalar(2)), Const(1, as_scalar(3))).at((SP.e,)) == 6


def test_materialize_refuses_infinite_support():
    with pytest.raises(InfiniteSupport):
        K.materialize(Const(1, ONE))
    with pytest.raises(InfiniteSupport):
        K.materialize(K.add(PowerRule(["2"]), Const(1, ONE)))
    assert K.materialize(Const(2, ZERO)).is_zero()


def test_add_and_mul_check_arity():
    with pytest.raises(ValueError):
        K.add()
    with pytest.raises(ValueError):
        K.add(K.zero(1), K.zero(2))
    assert K.add(K.zero(2), K.zero(2)).arity == 2
    with pytest.raises(ZeroDivisionError):
        K.recip(K.basis(SP.e))


def test_components_cover_finite_support_outside_window():
    far = SP.point([9], "e")
    f = K.basis(far)
    assert K.components([f], W1, 1) == [(far,)]
