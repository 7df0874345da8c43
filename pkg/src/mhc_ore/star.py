"""The *-structure: e_x* = e_x, coefficients conjugated, and y* = y."""

from __future__ import annotations

from . import kernel as K
from .algebra import FunctionAlgebra
from .laws import Checker, LawResult, SuiteReport
from .ore import Extension, OreData, monomials
from .scalar import I, ONE, Scalar

__all__ = ["star", "check_prop38", "check_thm39", "verify_star_extension", "star_suite", "SAMPLE_COEFFS"]

# coefficients used to probe conjugate-linearity
SAMPLE_COEFFS = (ONE, I, Scalar(1, 1), Scalar(1, -6, 2))


def star(f):
    """a* for a function (element or multiplier) of any arity."""
    return f.conj()


def _samples(A: FunctionAlgebra, radius: int):
    return [K.basis(x, c) for x in A.window(radius) for c in SAMPLE_COEFFS]


def check_prop38(A: FunctionAlgebra, radius: int) -> list:
    """eps(a*) = conj(eps(a)) and S(S(a)*)* = a on sampled elements."""
    ch = Checker(A.space, A.window(radius))
    els = _samples(A, radius)
    S = A.antipode
    return [
        ch.scalar_law("Prop3.8(1)", els, lambda a: (A.counit(star(a)), A.counit(a).conj()), A.fmt_element),
        ch.law("Prop3.8(2)", els, lambda a: (star(S(star(S(a)))), a), A.fmt_element),
    ]


def check_thm39(D: OreData, radius: int) -> list:
    """The three sufficient conditions, each with its own result."""
    A = D.A
    ch = Checker(A.space, A.window(radius))
    els = [K.basis(x, c) for x in A.window(radius) for c in (ONE, I)]

    def star_tau(a):
        return star(D.tau(a))

    def cond1(a):
        return K.materialize(star_tau(star_tau(a))), a

    out = [ch.law("Thm3.9(1)", els, cond1, A.fmt_element)]
    w = out[0].witness
    if w is not None:
        a = next(a for a in els if A.fmt_element(a) == w.input[0])
        w.note = f"(*tau)^2({A.fmt_element(a)}) = {A.fmt_element(cond1(a)[0])}"
    out.append(ch.law(
        "Thm3.9(2) delta(tau+id)=0", els,
        lambda a: (D.delta_apply(K.add(D.tau(a), a)), K.zero(1)), A.fmt_element))
    out.append(ch.law(
        "Thm3.9(2) delta*=*delta", els,
        lambda a: (D.delta_apply(star(a)), star(D.delta_apply(a))), A.fmt_element))
    res = ch.scalar_law(
        "Thm3.9(3)", A.window(radius),
        lambda x: (D.r.at((x,)).conj(), D.r.at((x,))),
        describe=lambda x: "r", where=lambda x: [A.fmt(x)],
    )
    if res.witness is not None:
        res.witness.note = f"r* != r at {res.witness.component[0]}"
    out.append(res)
    return out


def verify_star_extension(E: Extension, radius: int, maxdeg: int, thm39: list | None = None) -> list:
    """*-compatibility of the extension; refused unless the sufficient conditions hold."""
    D, A = E.data, E.A
    thm39 = thm39 if thm39 is not None else check_thm39(D, radius)
    bad = [r.law for r in thm39 if not r.ok]
    if bad:
        return [LawResult("star extension", "refused", note="sufficient conditions fail: " + ", ".join(bad))]
    w = A.window(radius)
    ch = Checker(A.space, w)
    mono = [(x, i, c) for (x, i) in monomials(w, maxdeg) for c in (ONE, Scalar(1, 1))]

    def P(m):
        return E.monomial(K.basis(m[0], m[2]), m[1])

    def desc(m):
        x, i, c = m
        head = f"e{A.fmt(x)}" if c == ONE else f"({c})e{A.fmt(x)}"
        return head + (f" y^{i}" if i > 1 else " y" if i == 1 else "")

    pairs = [(m1, m2) for m1 in mono for m2 in mono if m1[1] + m2[1] <= maxdeg and m1[2] == ONE]
    two = lambda mm: [desc(mm[0]), desc(mm[1])]
    S = E.antipode
    return [
        ch.law("star involutive", mono, lambda m: (E.star(E.star(P(m))), P(m)), desc),
        ch.law("(PQ)*=Q*P*", pairs,
               lambda mm: (E.star(E.mul(P(mm[0]), P(mm[1]))), E.mul(E.star(P(mm[1])), E.star(P(mm[0])))), two),
        ch.law("Delta(P*)=Delta(P)*", mono, lambda m: (E.coproduct(E.star(P(m))), E.star(E.coproduct(P(m)))), desc),
        ch.scalar_law("eps(P*)=conj eps(P)", mono, lambda m: (E.counit(E.star(P(m))), E.counit(P(m)).conj()), desc),
        ch.law("S(S(P)*)*=P", mono, lambda m: (E.star(S(E.star(S(P(m))))), P(m)), desc),
    ]


def star_suite(D: OreData, radius: int, maxdeg: int, E: Extension | None = None) -> SuiteReport:
    rep = SuiteReport("star")
    for r in check_prop38(D.A, radius):
        rep.add(r)
    thm = check_thm39(D, radius)
    for r in thm:
        rep.add(r)
    if E is None:
        rep.add(LawResult("star extension", "refused", note="no extension available"))
    else:
        for r in verify_star_extension(E, radius, maxdeg, thm):
            rep.add(r)
    return rep.finish()
