"""The function-algebra coquasigroup A = F(Z^m x G).

Basis e_x for x = (p, alpha) in L = Z^m x G, orthogonal idempotents.  With
Delta(f)(x, y) = f(xy) the structure maps are

* Delta(e_{p,a}) = sum over k+q = p, b*c = a of e_{k,b} (x) e_{q,c}
* eps(e_x) = [x = (0, e)]
* S(e_{p,a}) = e_{-p, a^-1}

Everything multiplier-valued is an :class:`~mhc_ore.kernel.Fn`, so the axioms
are checked pointwise on window components (see :mod:`mhc_ore.laws`).
"""

from __future__ import annotations

from itertools import product

from . import kernel as K
from .kernel import Const, Finite, Fn, PowerRule, Space, TableRule
from .laws import Checker, LawResult, SuiteReport
from .loop import Loop
from .scalar import ONE, ZERO, as_scalar

__all__ = ["FunctionAlgebra", "Multiplier", "power_rule", "table_rule", "unit_rule"]

Multiplier = Fn


def power_rule(lambdas) -> PowerRule:
    return PowerRule(lambdas)


def table_rule(entries: dict, default=ONE) -> TableRule:
    return TableRule(entries, default)


def unit_rule() -> Const:
    return Const(1, ONE)


class FunctionAlgebra:
    """A = F(Z^rank x G) with its multiplier-level structure maps."""

    def __init__(self, loop: Loop, rank: int = 1):
        self.loop = loop
        self.rank = rank
        self.space = Space(loop, rank)
        self.e = self.space.e
        ip = loop.check_ip()
        self.warnings = [] if ip else [f"loop fails {ip.law} at {ip.pair}; antipode laws are expected to fail"]

    # -- points and elements ------------------------------------------------

    def point(self, grade, elem):
        if isinstance(grade, int):
            grade = (grade,)
        return self.space.point(grade, elem)

    def basis(self, grade, elem="e", coeff=ONE) -> Finite:
        return K.basis(self.point(grade, elem), as_scalar(coeff))

    def window(self, radius: int) -> list:
        return self.space.window(radius)

    def window_basis(self, radius: int) -> list:
        return [K.basis(x) for x in self.window(radius)]

    def fmt(self, x) -> str:
        return self.space.fmt(x)

    def fmt_element(self, f: Fn) -> str:
        if not isinstance(f, Finite):
            return repr(f)
        if f.is_zero():
            return "0"
        parts = []
        for pt, c in sorted(f.data.items()):
            e = " (x) ".join(f"e{self.fmt(x)}" for x in pt)
            parts.append(e if c == ONE else f"({c}){e}")
        return " + ".join(parts)

    # -- algebra ------------------------------------------------------------

    def mul(self, a: Fn, b: Fn) -> Fn:
        return K.mul(a, b)

    def coproduct(self, a: Fn, leg: int = 0) -> Fn:
        """Delta on one leg of a function (a multiplier in general)."""
        return K.split(a, leg, self.space)

    def coproduct_component(self, a: Finite, out1, out2):
        """Coefficient of Delta(a) at e_{out1} (x) e_{out2}, by direct summation."""
        total = ZERO
        for (x,), c in a.data.items():
            k, q = out1[0], out2[0]
            if all(i + j == p for i, j, p in zip(k, q, x[0])) and self.loop.mul(out1[1], out2[1]) == x[1]:
                total = total + c
        return total

    def cover(self, kind: str, a: Fn, b: Fn) -> Finite:
        """Galois-map covers; each is a finite tensor."""
        if kind == "T1":
            f = K.mul(self.coproduct(a), K.embed(b, [1], 2))
        elif kind == "T2":
            f = K.mul(K.embed(a, [0], 2), self.coproduct(b))
        elif kind == "T1L":
            f = K.mul(K.embed(b, [0], 2), self.coproduct(a))
        elif kind == "T2L":
            f = K.mul(self.coproduct(b), K.embed(a, [1], 2))
        else:
            raise ValueError(f"unknown cover kind {kind!r}")
        return K.materialize(f)

    def counit(self, a: Fn):
        return a.at((self.e,))

    def counit_leg(self, f: Fn, leg: int) -> Fn:
        return K.restrict(f, leg, self.e)

    def antipode(self, a: Fn, direction: str = "fwd", leg: int = 0) -> Fn:
        if direction not in ("fwd", "inv"):
            raise ValueError(f"unknown direction {direction!r}")
        # inv is an involution on any loop with two-sided inverses, so S^-1 = S
        inv = self.space.inv
        return K.legmap(a, leg, inv, inv)

    def mult_apply(self, f: Fn, a: Fn, side: str = "left") -> Fn:
        if side not in ("left", "right"):
            raise ValueError(f"unknown side {side!r}")
        return K.mul(f, a)

    def on_leg(self, f: Fn, leg: int, arity: int) -> Fn:
        return K.embed(f, [leg], arity)

    def merge(self, f: Fn, leg: int = 0) -> Fn:
        return K.merge(f, leg)

    def flip(self, f: Fn) -> Fn:
        return K.permute(f, (1, 0))

    # -- checks -------------------------------------------------------------

    def check_grouplike(self, r: Fn, radius: int) -> LawResult:
        """r(xy) = r(x) r(y) on window pairs, r nowhere zero, eps(r) = 1."""
        w = self.window(radius)
        sp = self.space
        ch = Checker(sp, w)
        res = ch.scalar_law(
            "grouplike Delta(r)=r(x)r",
            list(product(w, repeat=2)),
            lambda xy: (r.at((sp.mul(*xy),)), r.at((xy[0],)) * r.at((xy[1],))),
            describe=lambda xy: "r",
            where=lambda xy: [self.fmt(xy[0]), self.fmt(xy[1])],
        )
        if not res.ok:
            return res
        res = ch.scalar_law(
            "grouplike r invertible", w, lambda x: (r.at((x,)).is_zero(), False),
            describe=lambda x: "r", where=lambda x: [self.fmt(x)],
        )
        if not res.ok:
            return res
        return ch.scalar_law(
            "grouplike eps(r)=1", [self.e], lambda x: (r.at((x,)), ONE),
            describe=lambda x: "r", where=lambda x: [self.fmt(x)],
        )

    def _eq21a(self, a):
        t = self.coproduct(self.coproduct(a), 1)
        return self.merge(self.antipode(t, leg=0)), K.embed(a, [1], 2)

    def _eq21b(self, a):
        t = self.coproduct(self.coproduct(a), 1)
        return self.merge(self.antipode(t, leg=1)), K.embed(a, [1], 2)

    def _eq22a(self, a):
        t = self.coproduct(self.coproduct(a), 0)
        return self.merge(self.antipode(t, leg=2), 1), K.embed(a, [0], 2)

    def _eq22b(self, a):
        t = self.coproduct(self.coproduct(a), 0)
        return self.merge(self.antipode(t, leg=1), 1), K.embed(a, [0], 2)

    def check_mhc_axioms(self, radius: int) -> SuiteReport:
        w = self.window(radius)
        basis = [K.basis(x) for x in w]
        pairs = list(product(basis, repeat=2))
        ch = Checker(self.space, w)
        one = self.fmt_element
        two = lambda ab: [one(ab[0]), one(ab[1])]
        rep = SuiteReport("mhc", notes=list(self.warnings))

        def counit_t1(ab):
            return self.counit_leg(self.cover("T1", *ab), 0), K.mul(*ab)

        def counit_t2(ab):
            return self.counit_leg(self.cover("T2", *ab), 1), K.mul(*ab)

        rep.add(ch.law("counit (eps(x)id)T1(a(x)b)=ab", pairs, counit_t1, two))
        rep.add(ch.law("counit (id(x)eps)T2(a(x)b)=ab", pairs, counit_t2, two))
        rep.add(ch.law("Eq2.1a", basis, self._eq21a, one))
        rep.add(ch.law("Eq2.1b", basis, self._eq21b, one))
        rep.add(ch.law("Eq2.2a", basis, self._eq22a, one))
        rep.add(ch.law("Eq2.2b", basis, self._eq22b, one))
        rep.add(ch.law(
            "Delta multiplicative",
            pairs,
            lambda ab: (self.coproduct(K.mul(*ab)), K.mul(self.coproduct(ab[0]), self.coproduct(ab[1]))),
            two,
        ))
        rep.add(ch.law(
            "S antimultiplicative",
            pairs,
            lambda ab: (self.antipode(K.mul(*ab)), K.mul(self.antipode(ab[1]), self.antipode(ab[0]))),
            two,
        ))
        rep.add(ch.law(
            "S anticomultiplicative",
            basis,
            lambda a: (self.flip(self.antipode(self.antipode(self.coproduct(a), leg=0), leg=1)),
                       self.coproduct(self.antipode(a))),
            one,
        ))
        return rep.finish()

    def check_coassociativity(self, radius: int) -> SuiteReport:
        w = self.window(radius)
        ch = Checker(self.space, w)
        rep = SuiteReport("coassoc")
        rep.add(ch.law(
            "coassociativity",
            [K.basis(x) for x in w],
            lambda a: (self.coproduct(self.coproduct(a), 0), self.coproduct(self.coproduct(a), 1)),
            self.fmt_element,
        ))
        return rep.finish()
