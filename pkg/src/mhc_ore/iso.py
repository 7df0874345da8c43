"""Isomorphisms of Ore extensions induced by a loop isomorphism and a shift d'.

A loop isomorphism sigma: G -> G' gives phi(e_{p,a}) = e_{p,sigma(a)}, i.e.
phi(f)(p, b) = f(p, sigma^-1(b)) on every tensor leg.  It extends to the
extensions by phi(y) = y' + d'.  The inverse uses sigma^-1 and the shift
-phi^-1(d').
"""

from __future__ import annotations

from itertools import product

from . import kernel as K
from .algebra import FunctionAlgebra
from .kernel import Const, Fn
from .laws import Checker, LawResult, Poly, SuiteReport
from .ore import Extension, OreData, check_conditions, monomials
from .scalar import I, ONE, ZERO
from .star import check_thm39

__all__ = ["BaseIso", "IsoRefused", "PhiHat", "check_hypotheses", "build_phi_hat", "verify_iso"]


class IsoRefused(RuntimeError):
    """build_phi_hat was asked to extend a map whose hypotheses fail."""


class BaseIso:
    """phi: A -> A' induced by a bijection of loop elements, identity on grades."""

    def __init__(self, source: FunctionAlgebra, target: FunctionAlgebra, sigma):
        n = source.loop.order
        if target.loop.order != n or source.rank != target.rank:
            raise ValueError("source and target algebras have different shapes")
        sigma = list(sigma)
        if sorted(sigma) != list(range(n)):
            raise ValueError("loop_map is not a bijection")
        self.source, self.target = source, target
        self.sigma = sigma
        self.sigma_inv = [0] * n
        for a, b in enumerate(sigma):
            self.sigma_inv[b] = a

    @classmethod
    def from_names(cls, source: FunctionAlgebra, target: FunctionAlgebra, mapping: dict) -> "BaseIso":
        sl, tl = source.loop, target.loop
        sigma = [None] * sl.order
        for a, b in mapping.items():
            sigma[sl.index(a)] = tl.index(b)
        if None in sigma:
            missing = [sl.name(i) for i, v in enumerate(sigma) if v is None]
            raise ValueError(f"loop_map misses {', '.join(missing)}")
        return cls(source, target, sigma)

    def point(self, x):
        return (x[0], self.sigma[x[1]])

    def inverse(self) -> "BaseIso":
        return BaseIso(self.target, self.source, self.sigma_inv)

    def __call__(self, f: Fn) -> Fn:
        s, si = self.sigma, self.sigma_inv
        fwd = lambda z: (z[0], si[z[1]])
        back = lambda z: (z[0], s[z[1]])
        for leg in range(f.arity):
            f = K.legmap(f, leg, fwd, back)
        return f

    def check(self) -> LawResult:
        """sigma(ab) = sigma(a) sigma(b); a bijection with this property also fixes e."""
        sl, tl = self.source.loop, self.target.loop
        s = self.sigma
        ch = Checker(self.target.space, [])
        return ch.scalar_law(
            "loop_map homomorphism",
            list(product(range(sl.order), repeat=2)),
            lambda ab: (tl.name(s[sl.mul(*ab)]), tl.name(tl.mul(s[ab[0]], s[ab[1]]))),
            describe=lambda ab: [sl.name(ab[0]), sl.name(ab[1])],
        )


def _summary(name: str, rep: SuiteReport) -> LawResult:
    bad = [r for r in rep.laws if r.status == "fail"]
    if not bad:
        return LawResult(name, "pass", len(rep.laws))
    return LawResult(name, "fail", len(rep.laws), bad[0].witness, note=f"{bad[0].law} fails")


def check_hypotheses(phi: BaseIso, D: OreData, D2: OreData, d_prime: Fn, radius: int) -> SuiteReport:
    """Conditions on both sides, the base map, and the compatibilities with r, tau, delta and d'."""
    A, A2 = D.A, D2.A
    w = A2.window(radius)
    ch = Checker(A2.space, w)
    basis = [K.basis(x) for x in A.window(radius)]
    one = A.fmt_element
    d = d_prime
    rep = SuiteReport("iso-hypotheses")

    rep.add(_summary("precondition: source conditions", check_conditions(D, radius)))
    rep.add(_summary("precondition: target conditions", check_conditions(D2, radius)))
    rep.add(phi.check())
    rep.add(ch.law("phi(r)=r'", [D.r], lambda r: (phi(r), D2.r), lambda r: "r"))
    rep.add(ch.law("tau'(phi(a))=phi(tau(a))", basis, lambda a: (D2.tau(phi(a)), phi(D.tau(a))), one))

    def delta_compat(a):
        rhs = K.add(phi(D.delta_apply(a)), K.mul(phi(D.tau(a)), d), -K.mul(d, phi(a)))
        return D2.delta_apply(phi(a)), rhs

    rep.add(ch.law("delta'(phi(a))=phi(delta(a))+phi(tau(a))d'-d'phi(a)", basis, delta_compat, one))
    rep.add(ch.law(
        "d' skew-primitive", [d],
        lambda f: (A2.coproduct(f), K.add(K.embed(f, [0], 2), K.mul(K.embed(D2.r, [0], 2), K.embed(f, [1], 2)))),
        lambda f: "d'",
    ))
    rep.add(ch.scalar_law("eps(d')=0", [d], lambda f: (A2.counit(f), ZERO), describe=lambda f: "d'"))
    rep.add(ch.law("S(d')=-r'^-1 d'", [d], lambda f: (A2.antipode(f), -K.mul(D2.rinv, f)), lambda f: "d'"))
    return rep.finish()


class PhiHat:
    """sum F_I y^I -> sum phi(F_I) (y' + d')^I, normalized in the target."""

    def __init__(self, base: BaseIso, source: Extension, target: Extension, d_prime: Fn):
        self.base = base
        self.source, self.target = source, target
        self.d_prime = d_prime
        E2 = target
        self.image_y = E2.add(E2.y(), E2.lift(d_prime))
        self._pow = {}

    def _ypow(self, n: int) -> Poly:
        return self.target.power(self.image_y, n, self._pow)

    def __call__(self, P: Poly) -> Poly:
        E2 = self.target
        k = P.arity
        parts = []
        for degs, f in P.terms.items():
            term = Poly.of(self.base(f))
            for leg, n in enumerate(degs):
                if n:
                    term = E2.mul(term, E2.embed(self._ypow(n), (leg,), k))
            parts.append(term)
        return E2.add(*parts) if parts else Poly(k)

    def inverse(self) -> "PhiHat":
        inv = self.base.inverse()
        return PhiHat(inv, self.target, self.source, -inv(self.d_prime))


def build_phi_hat(phi: BaseIso, E: Extension, E2: Extension, d_prime: Fn, hypotheses: SuiteReport) -> PhiHat:
    bad = hypotheses.failed()
    if bad:
        raise IsoRefused("hypotheses fail: " + ", ".join(bad))
    return PhiHat(phi, E, E2, d_prime)


def verify_iso(ph: PhiHat, radius: int, maxdeg: int, star: bool = False) -> SuiteReport:
    E, E2 = ph.source, ph.target
    A, A2 = E.A, E2.A
    w, w2 = A.window(radius), A2.window(radius)
    ch = Checker(A2.space, w2)
    ch_src = Checker(A.space, w)
    mono = monomials(w, maxdeg)
    mono2 = monomials(w2, maxdeg)

    def desc(m):
        x, i = m
        return f"e{A.fmt(x)}" + (f" y^{i}" if i > 1 else " y" if i == 1 else "")

    P = lambda m: E.monomial(K.basis(m[0]), m[1])
    Q = lambda m: E2.monomial(K.basis(m[0]), m[1])
    pairs = [(m1, m2) for m1 in mono for m2 in mono if m1[1] + m2[1] <= maxdeg]
    two = lambda mm: [desc(mm[0]), desc(mm[1])]
    psi = ph.inverse()
    rep = SuiteReport("iso")

    rep.add(ch.law("phi(y)=y'+d'", [E.y()], lambda y: (ph(y), E2.add(E2.y(), E2.lift(ph.d_prime))), lambda y: "y"))
    rep.add(ch.law("phi(1)=1", [E.lift(Const(1, ONE))], lambda u: (ph(u), E2.lift(Const(1, ONE))), lambda u: "1"))
    rep.add(ch.law(
        "phi(ya)=phi(y)phi(a)", w,
        lambda x: (ph(E.mul(E.y(), E.lift(K.basis(x)))), E2.mul(ph(E.y()), ph(E.lift(K.basis(x))))),
        lambda x: f"a=e{A.fmt(x)}",
    ))
    rep.add(ch.law("phi multiplicative", pairs,
                   lambda mm: (ph(E.mul(P(mm[0]), P(mm[1]))), E2.mul(ph(P(mm[0])), ph(P(mm[1])))), two))
    rep.add(ch.law("Delta(phi(P))=(phi(x)phi)Delta(P)", mono,
                   lambda m: (E2.coproduct(ph(P(m))), ph(E.coproduct(P(m)))), desc))
    rep.add(ch.scalar_law("eps(phi(P))=eps(P)", mono, lambda m: (E2.counit(ph(P(m))), E.counit(P(m))), describe=desc))
    rep.add(ch.law("S(phi(P))=phi(S(P))", mono, lambda m: (E2.antipode(ph(P(m))), ph(E.antipode(P(m)))), desc))
    rep.add(ch_src.law("psi(phi(P))=P", mono, lambda m: (psi(ph(P(m))), P(m)), desc))
    rep.add(ch.law("phi(psi(Q))=Q", mono2, lambda m: (ph(psi(Q(m))), Q(m)), desc))

    if star:
        d = ph.d_prime
        rep.add(ch.law("(d')*=d'", [d], lambda f: (f.conj(), f), lambda f: "d'"))
        rep.add(ch.law("phi(a*)=phi(a)*", [K.basis(x, c) for x in w for c in (ONE, I)],
                       lambda a: (ph.base(a.conj()), ph.base(a).conj()), A.fmt_element))
        for r in check_thm39(E.data, radius):
            r.law = "Cor4.3 source " + r.law
            rep.add(r)
        for r in check_thm39(E2.data, radius):
            r.law = "Cor4.3 target " + r.law
            rep.add(r)
        rep.add(ch.law("phi(P*)=phi(P)*", mono, lambda m: (ph(E.star(P(m))), E2.star(ph(P(m)))), desc))
    return rep.finish()
