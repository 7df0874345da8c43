"""Ore extensions A[y; tau, delta] of the function algebra and their checks.

Elements of the extension (and of its tensor powers) are :class:`Poly`
objects in normal form: functions on the left, powers of y on the right,
one power per tensor leg.  Products are normalized with the rewriting rule
y f = tau(f) y + delta(f), applied legwise; for a multiplier f the same
reindexing formulas give the unique extensions of tau and delta.

The coalgebra structure is determined by Delta(y) = y (x) 1 + r (x) y,
eps(y) = 0 and S(y) = -r^-1 y.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from . import kernel as K
from .algebra import FunctionAlgebra
from .kernel import Const, Finite, Fn
from .laws import Checker, LawResult, Poly, SuiteReport, Witness
from .scalar import ONE, ZERO, as_scalar

__all__ = [
    "Character",
    "Derivation",
    "OreData",
    "Extension",
    "check_conditions",
    "verify_extension",
    "derived_identities",
    "check_ext_coassociativity",
    "monomials",
]


class NotAPointCharacter(ValueError):
    """Raised when an operation needs tau to be a basis bijection."""


@dataclass(frozen=True)
class Character:
    """A functional on A given by its values on finitely many basis points.

    A genuine character of A is evaluation at one point; other functionals
    are accepted only so that the condition checks can reject them.
    """

    entries: tuple  # ((point, Scalar), ...), sorted

    @classmethod
    def at(cls, point) -> "Character":
        return cls(((point, ONE),))

    @classmethod
    def functional(cls, values: dict) -> "Character":
        items = tuple(sorted((x, as_scalar(v)) for x, v in values.items() if not as_scalar(v).is_zero()))
        return cls(items)

    @property
    def is_point(self) -> bool:
        return len(self.entries) == 1 and self.entries[0][1] == ONE

    @property
    def point(self):
        if not self.is_point:
            raise NotAPointCharacter("this functional is not evaluation at a point")
        return self.entries[0][0]

    def __call__(self, f: Fn):
        out = ZERO
        for x, c in self.entries:
            out = out + c * f.at((x,))
        return out


@dataclass(frozen=True)
class Derivation:
    """delta = 0, delta(a) = h (tau(a) - a), or a finite basis table."""

    kind: str
    h: Fn | None = None
    table: dict | None = field(default=None, hash=False, compare=False)

    @classmethod
    def zero(cls) -> "Derivation":
        return cls("zero")

    @classmethod
    def twisted(cls, h: Fn) -> "Derivation":
        return cls("twisted", h=h)

    @classmethod
    def from_table(cls, table: dict) -> "Derivation":
        clean = {x: f for x, f in table.items() if not f.is_zero()}
        return cls("table", table=clean)

    def reverse_index(self) -> dict:
        rev = {}
        for x, f in sorted((self.table or {}).items()):
            for (z,), c in f.data.items():
                rev.setdefault(z, []).append((x, c))
        return rev


class OreData:
    """(chi, r, delta) over a function algebra, with the derived tau."""

    def __init__(self, algebra: FunctionAlgebra, chi: Character, r: Fn, delta: Derivation | None = None):
        self.A = algebra
        self.space = algebra.space
        self.chi = chi
        self.r = r
        self.rinv = K.recip(r)
        self.delta = delta or Derivation.zero()
        self._rev = self.delta.reverse_index() if self.delta.kind == "table" else None

    @property
    def is_point(self) -> bool:
        return self.chi.is_point

    # -- tau ----------------------------------------------------------------

    def tau_point(self, x):
        """Basis bijection e_x -> e_{x0 \\ x} for a point character at x0."""
        return self.space.ldiv(self.chi.point, x)

    def tau_closed(self, a: Finite) -> Finite:
        """tau on elements from the closed-form reindexing rule."""
        data = {}
        for (x,), c in a.data.items():
            for x0, w in self.chi.entries:
                key = (self.space.ldiv(x0, x),)
                data[key] = data.get(key, ZERO) + w * c
        return Finite(1, data)

    def tau_apply(self, a: Fn) -> Fn:
        """(chi (x) id) Delta(a), contracting coproduct components."""
        d = self.A.coproduct(a)
        return K.add(K.zero(1), *[c * K.restrict(d, 0, x0) for x0, c in self.chi.entries])

    def tau_leg(self, f: Fn, leg: int) -> Fn:
        """tau (or its multiplier extension) on one leg: f(z) -> sum_c chi_c f(c z)."""
        sp = self.space
        terms = []
        for x0, c in self.chi.entries:
            terms.append(c * K.legmap(f, leg, lambda z, x0=x0: sp.mul(x0, z), lambda w, x0=x0: sp.ldiv(x0, w)))
        return K.add(*terms) if terms else K.zero(f.arity)

    def tau(self, f: Fn) -> Fn:
        return self.tau_leg(f, 0)

    # -- delta --------------------------------------------------------------

    def delta_leg(self, f: Fn, leg: int) -> Fn:
        kind = self.delta.kind
        if kind == "zero" or f.is_zero():
            return K.zero(f.arity)
        if kind == "twisted":
            return K.mul(K.embed(self.delta.h, [leg], f.arity), K.add(self.tau_leg(f, leg), -f))
        return K.delta_table(f, leg, self.delta.table, self._rev)

    def delta_apply(self, f: Fn) -> Fn:
        return self.delta_leg(f, 0)

    def ad_r(self, f: Fn, leg: int = 0) -> Fn:
        k = f.arity
        return K.mul(K.embed(self.r, [leg], k), f, K.embed(self.rinv, [leg], k))

    def chi_leg(self, f: Fn, leg: int) -> Fn:
        """Contract one leg against chi."""
        return K.add(K.zero(f.arity - 1), *[c * K.restrict(f, leg, x0) for x0, c in self.chi.entries])


def monomials(window, maxdeg: int):
    return [(x, i) for i in range(maxdeg + 1) for x in window]


class Extension:
    """Arithmetic and structure maps of A[y; tau, delta] and its tensor powers."""

    def __init__(self, data: OreData, antipode_y: Poly | None = None):
        if not data.is_point:
            raise NotAPointCharacter("the extension needs tau to be a basis bijection; chi must be a point evaluation")
        self.data = data
        self.A = data.A
        self.space = data.space
        self.S_y = antipode_y if antipode_y is not None else Poly(1, {(1,): -data.rinv})
        self.Delta_y = Poly(2, {(1, 0): Const(2, ONE), (0, 1): K.embed(data.r, [0], 2)})
        self._dy = {0: Poly(2, {(0, 0): Const(2, ONE)})}
        self._sy = {0: Poly(1, {(0,): Const(1, ONE)})}

    # -- construction ---------------------------------------------------------

    def lift(self, f: Fn) -> Poly:
        return Poly.of(f)

    def monomial(self, a: Fn, i: int = 0) -> Poly:
        return Poly(1, {(i,): a})

    def y(self) -> Poly:
        return Poly(1, {(1,): Const(1, ONE)})

    def Y(self, degs) -> Poly:
        degs = tuple(degs)
        return Poly(len(degs), {degs: Const(len(degs), ONE)})

    def embed(self, P: Poly, legs, arity: int) -> Poly:
        legs = tuple(legs)
        out = {}
        for d, f in P.terms.items():
            deg = [0] * arity
            for l, v in zip(legs, d):
                deg[l] = v
            out[tuple(deg)] = K.embed(f, legs, arity)
        return Poly(arity, out)

    def tensor(self, P: Poly, Q: Poly) -> Poly:
        k = P.arity + Q.arity
        return self.mul(self.embed(P, range(P.arity), k), self.embed(Q, range(P.arity, k), k))

    # -- linear structure -----------------------------------------------------

    @staticmethod
    def _acc(out: dict, deg, f: Fn):
        if f.is_zero():
            return
        deg = tuple(deg)
        out[deg] = K.add(out[deg], f) if deg in out else f

    def add(self, *ps: Poly) -> Poly:
        out = {}
        for P in ps:
            for d, f in P.terms.items():
                self._acc(out, d, f)
        return Poly(ps[0].arity, out)

    def scale(self, c, P: Poly) -> Poly:
        return Poly(P.arity, {d: K.scale(c, f) for d, f in P.terms.items()})

    def neg(self, P: Poly) -> Poly:
        return self.scale(-ONE, P)

    def sub(self, P: Poly, Q: Poly) -> Poly:
        return self.add(P, self.neg(Q))

    # -- products -------------------------------------------------------------

    def push(self, g: Fn, leg: int, i: int) -> dict:
        """y^i g on one leg as {j: g_j} with y^i g = sum_j g_j y^j."""
        cur = {0: g}
        D = self.data
        for _ in range(i):
            nxt = {}
            for j, h in cur.items():
                self._acc(nxt, (j + 1,), D.tau_leg(h, leg))
                self._acc(nxt, (j,), D.delta_leg(h, leg))
            cur = {j: f for (j,), f in nxt.items()}
        return cur

    def mul(self, P: Poly, Q: Poly) -> Poly:
        if P.arity != Q.arity:
            raise ValueError("arity mismatch in product")
        k = P.arity
        out = {}
        for I, f in P.terms.items():
            for J, g in Q.terms.items():
                parts = {(0,) * k: g}
                for l in range(k):
                    if not I[l]:
                        continue
                    nxt = {}
                    for D, h in parts.items():
                        for j, h2 in self.push(h, l, I[l]).items():
                            self._acc(nxt, D[:l] + (j,) + D[l + 1:], h2)
                    parts = nxt
                for D, h in parts.items():
                    self._acc(out, tuple(a + b for a, b in zip(D, J)), K.mul(f, h))
        return Poly(k, out)

    def power(self, P: Poly, n: int, cache: dict | None = None) -> Poly:
        if cache is not None and n in cache:
            return cache[n]
        out = self.Y((0,) * P.arity)
        for _ in range(n):
            out = self.mul(out, P)
        if cache is not None:
            cache[n] = out
        return out

    def delta_y_power(self, n: int) -> Poly:
        if n not in self._dy:
            self._dy[n] = self.mul(self.delta_y_power(n - 1), self.Delta_y)
        return self._dy[n]

    def antipode_y_power(self, n: int) -> Poly:
        if n not in self._sy:
            self._sy[n] = self.mul(self.antipode_y_power(n - 1), self.S_y)
        return self._sy[n]

    # -- coalgebra maps on one leg ----------------------------------------------

    def coproduct(self, P: Poly, leg: int = 0) -> Poly:
        k = P.arity
        parts = []
        for I, f in P.terms.items():
            base = Poly.of(self.A.coproduct(f, leg))
            dy = self.embed(self.delta_y_power(I[leg]), (leg, leg + 1), k + 1)
            rest = I[:leg] + (0, 0) + I[leg + 1:]
            parts.append(self.mul(self.mul(base, dy), self.Y(rest)))
        return self.add(*parts) if parts else Poly(k + 1)

    def antipode(self, P: Poly, leg: int = 0) -> Poly:
        """S on one leg: S(f y^i) = S(y)^i S(f)."""
        k = P.arity
        parts = []
        for I, f in P.terms.items():
            sy = self.embed(self.antipode_y_power(I[leg]), (leg,), k)
            rest = I[:leg] + (0,) + I[leg + 1:]
            parts.append(self.mul(self.mul(sy, Poly.of(self.A.antipode(f, leg=leg))), self.Y(rest)))
        return self.add(*parts) if parts else Poly(k)

    def merge(self, P: Poly, leg: int = 0) -> Poly:
        """Multiply legs ``leg`` and ``leg + 1``."""
        out = {}
        for I, f in P.terms.items():
            for j, g in self.push(f, leg + 1, I[leg]).items():
                deg = I[:leg] + (j + I[leg + 1],) + I[leg + 2:]
                self._acc(out, deg, K.merge(g, leg))
        return Poly(P.arity - 1, out)

    def counit_leg(self, P: Poly, leg: int) -> Poly:
        out = {}
        for I, f in P.terms.items():
            if I[leg] == 0:
                self._acc(out, I[:leg] + I[leg + 1:], K.restrict(f, leg, self.space.e))
        return Poly(P.arity - 1, out)

    def counit(self, P: Poly):
        f = P.terms.get((0,))
        return f.at((self.space.e,)) if f is not None else ZERO

    def flip(self, P: Poly) -> Poly:
        return Poly(2, {(d[1], d[0]): K.permute(f, (1, 0)) for d, f in P.terms.items()})

    def star(self, P: Poly) -> Poly:
        """(f y^I)* = y^I f*, with y* = y and e_x* = e_x."""
        parts = [self.mul(self.Y(I), Poly.of(f.conj())) for I, f in P.terms.items()]
        return self.add(*parts) if parts else Poly(P.arity)

    def coeff_rendering(self, P: Poly, window) -> dict:
        """Coefficient table of P on the window, keyed by degree."""
        out = {}
        for d, f in sorted(P.terms.items()):
            vals = {}
            for comp in K.components([f], window, P.arity):
                v = f.at(comp)
                if not v.is_zero():
                    vals[tuple(self.space.fmt(x) for x in comp)] = str(v)
            if vals:
                out[d] = vals
        return out


# -- condition checks ---------------------------------------------------------


def _fmt_mono(A: FunctionAlgebra):
    def describe(m):
        x, i = m
        return f"e{A.fmt(x)}" + (f" y^{i}" if i > 1 else " y" if i == 1 else "")

    return describe


def check_conditions(D: OreData, radius: int) -> SuiteReport:
    """Preconditions, then C1 (Eq3.2), C2 (Eq3.3, Eq3.5, Eq3.6) and C3 (Eq3.4)."""
    A, sp = D.A, D.space
    w = A.window(radius)
    ch = Checker(sp, w)
    basis = [K.basis(x) for x in w]
    one = A.fmt_element
    two = lambda ab: [one(ab[0]), one(ab[1])]
    rep = SuiteReport("ore-conditions")

    g = A.check_grouplike(D.r, radius)
    g.law = "precondition: r group-like"
    rep.add(g)

    if D.is_point:
        rep.add(LawResult("precondition: tau bijective", "pass", note="point character: tau permutes the basis"))
    else:
        rep.add(LawResult("precondition: tau bijective", "skipped", note="functional is not a point evaluation"))

    pairs = list(product(basis, repeat=2))
    rep.add(ch.law(
        "precondition: tau-derivation law",
        pairs,
        lambda ab: (D.delta_apply(K.mul(*ab)),
                    K.add(K.mul(D.delta_apply(ab[0]), ab[1]), K.mul(D.tau(ab[0]), D.delta_apply(ab[1])))),
        two,
    ))

    # C1: chi is a nonzero multiplicative functional and tau = (chi (x) id) Delta
    if not D.chi.entries:
        w0 = Witness("C1 chi nonzero", ["chi"], [], None, "0", "nonzero", replay=lambda: not D.chi.entries)
        rep.add(LawResult("C1 chi nonzero", "fail", 1, w0, "chi vanishes identically"))
    else:
        rep.add(LawResult("C1 chi nonzero", "pass", 1))
    pts = sorted(set(w) | {x for x, _ in D.chi.entries})
    rep.add(ch.scalar_law(
        "C1 chi multiplicative",
        list(product(pts, repeat=2)),
        lambda xy: (D.chi(K.mul(K.basis(xy[0]), K.basis(xy[1]))), D.chi(K.basis(xy[0])) * D.chi(K.basis(xy[1]))),
        describe=lambda xy: [f"a=e{A.fmt(xy[0])}", f"b=e{A.fmt(xy[1])}"],
        where=lambda xy: [A.fmt(xy[0]), A.fmt(xy[1])],
    ))
    rep.add(ch.law("Eq3.2", basis, lambda a: (D.tau_apply(a), D.tau_closed(a)), one))

    # C2
    def tri_right(a):
        return A.coproduct(A.coproduct(a), 1)  # a1 (x) a21 (x) a22

    def tri_left(a):
        return A.coproduct(A.coproduct(a), 0)  # a11 (x) a12 (x) a2

    rep.add(ch.law(
        "Eq3.3 first",
        basis,
        lambda a: (D.chi_leg(tri_right(a), 0), D.ad_r(D.chi_leg(tri_right(a), 1), 0)),
        one,
    ))
    rep.add(ch.law(
        "Eq3.3 second",
        basis,
        lambda a: (D.ad_r(D.chi_leg(tri_right(a), 1), 0), D.chi_leg(tri_left(a), 0)),
        one,
    ))
    rep.add(ch.law("Eq3.5", basis, lambda a: eq35(D, a), one))
    rep.add(ch.law("Eq3.6", basis, lambda a: eq36(D, a), one))

    # C3
    rep.add(ch.law("Eq3.4", basis, lambda a: eq34(D, a), one))
    return rep.finish()


def eq34(D: OreData, a):
    A = D.A
    d = A.coproduct(a)
    lhs = A.coproduct(D.delta_apply(a))
    rhs = K.add(D.delta_leg(d, 0), K.mul(K.embed(D.r, [0], 2), D.delta_leg(d, 1)))
    return lhs, rhs


def eq35(D: OreData, a):
    A = D.A
    return A.coproduct(D.tau(a)), D.tau_leg(A.coproduct(a), 0)


def eq36(D: OreData, a):
    A = D.A
    return A.coproduct(D.tau(a)), D.ad_r(D.tau_leg(A.coproduct(a), 1), 0)


# -- extension ------------------------------------------------------------------


def _eq21a(E: Extension, P: Poly):
    t = E.coproduct(E.coproduct(P), 1)
    return E.merge(E.antipode(t, 0), 0), E.embed(P, (1,), 2)


def _eq21b(E: Extension, P: Poly):
    t = E.coproduct(E.coproduct(P), 1)
    return E.merge(E.antipode(t, 1), 0), E.embed(P, (1,), 2)


def _eq22a(E: Extension, P: Poly):
    t = E.coproduct(E.coproduct(P), 0)
    return E.merge(E.antipode(t, 2), 1), E.embed(P, (0,), 2)


def _eq22b(E: Extension, P: Poly):
    t = E.coproduct(E.coproduct(P), 0)
    return E.merge(E.antipode(t, 1), 1), E.embed(P, (0,), 2)


ANTIPODE_LAWS = {"Eq2.1a": _eq21a, "Eq2.1b": _eq21b, "Eq2.2a": _eq22a, "Eq2.2b": _eq22b}


def verify_extension(E: Extension, radius: int, maxdeg: int) -> SuiteReport:
    """MHC axioms of A[y; tau, delta] on monomials e_x y^i, x in W, i <= maxdeg."""
    D, A = E.data, E.A
    w = A.window(radius)
    ch = Checker(E.space, w)
    mono = monomials(w, maxdeg)
    desc = _fmt_mono(A)
    P = lambda m: E.monomial(K.basis(m[0]), m[1])
    rep = SuiteReport("extension")

    rep.add(ch.law("counit (eps(x)id)Delta(P)=P", mono,
                   lambda m: (E.counit_leg(E.coproduct(P(m)), 0), P(m)), desc))
    rep.add(ch.law("counit (id(x)eps)Delta(P)=P", mono,
                   lambda m: (E.counit_leg(E.coproduct(P(m)), 1), P(m)), desc))
    for name, fn in ANTIPODE_LAWS.items():
        rep.add(ch.law(name, mono, lambda m, fn=fn: fn(E, P(m)), desc))

    def relation(x):
        a = E.lift(K.basis(x))
        lhs = E.mul(E.coproduct(E.y()), E.coproduct(a))
        rhs = E.add(
            E.mul(E.coproduct(E.lift(D.tau(K.basis(x)))), E.coproduct(E.y())),
            E.coproduct(E.lift(D.delta_apply(K.basis(x)))),
        )
        return lhs, rhs

    rep.add(ch.law("Delta relation ya=tau(a)y+delta(a)", w, relation, lambda x: f"a=e{A.fmt(x)}"))

    pairs = [(m1, m2) for m1 in mono for m2 in mono if m1[1] + m2[1] <= maxdeg]
    two = lambda mm: [desc(mm[0]), desc(mm[1])]
    rep.add(ch.law(
        "Delta multiplicative",
        pairs,
        lambda mm: (E.coproduct(E.mul(P(mm[0]), P(mm[1]))),
                    E.mul(E.coproduct(P(mm[0])), E.coproduct(P(mm[1])))),
        two,
    ))
    rep.add(ch.scalar_law(
        "eps multiplicative",
        pairs,
        lambda mm: (E.counit(E.mul(P(mm[0]), P(mm[1]))), E.counit(P(mm[0])) * E.counit(P(mm[1]))),
        describe=two,
    ))
    return rep.finish()


def check_ext_coassociativity(E: Extension, radius: int, maxdeg: int) -> SuiteReport:
    w = E.A.window(radius)
    ch = Checker(E.space, w)
    rep = SuiteReport("coassoc")
    P = lambda m: E.monomial(K.basis(m[0]), m[1])
    rep.add(ch.law(
        "coassociativity (extension)",
        monomials(w, maxdeg),
        lambda m: (E.coproduct(E.coproduct(P(m)), 0), E.coproduct(E.coproduct(P(m)), 1)),
        _fmt_mono(E.A),
    ))
    return rep.finish()


# -- identities used in the sufficiency argument ----------------------------------


def derived_identities(D: OreData, radius: int, E: Extension | None = None) -> SuiteReport:
    A = D.A
    w = A.window(radius)
    ch = Checker(D.space, w)
    basis = [K.basis(x) for x in w]
    one = A.fmt_element
    S = lambda f, leg=0: A.antipode(f, leg=leg)
    tau, delta, r, rinv = D.tau, D.delta_apply, D.r, D.rinv
    rep = SuiteReport("derived")

    def tri(a):
        return A.coproduct(A.coproduct(a), 1)

    def on(f, leg, k):
        return K.embed(f, [leg], k)

    rep.add(ch.law("Eq3.5", basis, lambda a: eq35(D, a), one))
    rep.add(ch.law("Eq3.6", basis, lambda a: eq36(D, a), one))
    rep.add(ch.law(
        "Eq3.7 first", basis,
        lambda a: (A.merge(S(D.tau_leg(tri(a), 0), 0), 0), on(tau(a), 1, 2)), one))
    rep.add(ch.law(
        "Eq3.7 second", basis,
        lambda a: (A.merge(S(D.tau_leg(tri(a), 0), 1), 0), on(tau(a), 1, 2)), one))
    rep.add(ch.law(
        "eps(delta(a))=0", basis,
        lambda a: (K.restrict(delta(a), 0, D.space.e), Const(0, ZERO)), one))

    if E is not None:
        def eq310(a):
            lhs = E.mul(E.lift(S(a)), E.S_y)
            rhs = E.add(E.mul(E.S_y, E.lift(S(tau(a)))), E.lift(S(delta(a))))
            return lhs, rhs

        rep.add(ch.law("Eq3.10", basis, eq310, one))

    def eq311(a):
        t = tri(a)
        k = 3
        term1 = A.merge(S(D.delta_leg(t, 0), 0), 0)
        term2 = A.merge(S(K.mul(on(r, 0, k), D.delta_leg(t, 1)), 0), 0)
        term3 = A.merge(S(K.mul(on(r, 0, k), on(r, 1, k), D.delta_leg(t, 2)), 0), 0)
        return on(delta(a), 1, 2), K.add(term1, term2, term3)

    rep.add(ch.law("Eq3.11", basis, eq311, one))
    rep.add(ch.law("Eq3.12", basis, lambda a: (K.mul(S(a), rinv), K.mul(rinv, tau(S(tau(a))))), one))
    rep.add(ch.law("Eq3.13", basis, lambda a: (delta(S(tau(a))), K.mul(r, S(delta(a)))), one))
    rep.add(ch.law(
        "Eq3.14", basis,
        lambda a: (D.chi_leg(D.delta_leg(S(A.coproduct(a), 1), 1), 0), K.mul(r, S(delta(a)))), one))
    rep.add(ch.law(
        "Eq3.15", basis,
        lambda a: (A.merge(S(D.delta_leg(A.coproduct(a), 1), 1), 0),
                   K.scale(-ONE, K.mul(rinv, A.merge(S(D.delta_leg(A.coproduct(a), 0), 1), 0)))), one))

    def eq316(a):
        t = tri(a)
        prod3 = S(D.delta_leg(D.ad_r(S(t, 0), 0), 1), 2)
        return K.mul(r, S(delta(a))), K.scale(-ONE, A.merge(A.merge(prod3, 0), 0))

    rep.add(ch.law("Eq3.16", basis, eq316, one))
    rep.add(ch.law(
        "Eq3.17", basis,
        lambda a: (A.merge(D.delta_leg(S(D.tau_leg(A.coproduct(a), 0), 1), 1), 0),
                   K.scale(-ONE, A.merge(S(D.delta_leg(A.coproduct(a), 0), 1), 0))), one))
    return rep.finish()
