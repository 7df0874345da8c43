"""Law results, witnesses and the componentwise comparison engine.

Both sides of an identity are either an :class:`~mhc_ore.kernel.Fn` or a
:class:`Poly` (functions times powers of y, one power per leg).  Two sides
agree on a window W when, at every point of W^k where either side may be
nonzero, the coefficient of every y-degree matches exactly.  Evaluating at a
point of W^k is the same as covering by the window idempotent e_x (x) ... on
the left, so each comparison is a finite exact check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .kernel import Fn, components
from .scalar import ZERO

__all__ = ["Poly", "Witness", "LawResult", "SuiteReport", "Checker", "first_mismatch"]


class Poly:
    """Sum over degree tuples I of F_I * (y^I[0] (x) ... (x) y^I[k-1])."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms=None):
        self.arity = arity
        self.terms = {}
        for deg, f in (terms or {}).items():
            if len(deg) != arity or f.arity != arity:
                raise ValueError("degree tuple / coefficient arity mismatch")
            if not f.is_zero():
                self.terms[tuple(deg)] = f

    @classmethod
    def of(cls, f: Fn) -> "Poly":
        return cls(f.arity, {(0,) * f.arity: f})

    def degree(self) -> int:
        return max((sum(d) for d in self.terms), default=-1)

    def coeff(self, deg) -> Fn | None:
        return self.terms.get(tuple(deg))

    def __repr__(self):
        return f"Poly({self.arity}, degrees={sorted(self.terms)})"


def _as_terms(x) -> dict:
    if isinstance(x, Poly):
        return x.terms
    if isinstance(x, Fn):
        return {} if x.is_zero() else {(0,) * x.arity: x}
    raise TypeError(f"cannot compare {type(x).__name__}")


def _arity(x) -> int:
    return x.arity


def first_mismatch(lhs, rhs, window):
    """First (component, degree, lhs value, rhs value) where the sides differ, or None."""
    arity = _arity(lhs)
    if _arity(rhs) != arity:
        raise ValueError(f"sides have different arity: {arity} vs {_arity(rhs)}")
    lt, rt = _as_terms(lhs), _as_terms(rhs)
    degs = sorted(set(lt) | set(rt))
    fs = list(lt.values()) + list(rt.values())
    for comp in components(fs, window, arity):
        for d in degs:
            lv = lt[d].at(comp) if d in lt else ZERO
            rv = rt[d].at(comp) if d in rt else ZERO
            if lv != rv:
                return comp, d, lv, rv
    return None


def value_at(x, comp, deg):
    f = _as_terms(x).get(tuple(deg))
    return f.at(comp) if f is not None else ZERO


@dataclass
class Witness:
    law: str
    input: list
    component: list
    degree: list | None
    lhs: str
    rhs: str
    note: str | None = None
    replay: Callable[[], bool] | None = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        out = {
            "law": self.law,
            "input": list(self.input),
            "component": list(self.component),
            "lhs": self.lhs,
            "rhs": self.rhs,
        }
        if self.degree is not None:
            out["degree"] = list(self.degree)
        if self.note:
            out["note"] = self.note
        return out

    def refails(self) -> bool:
        """Recompute this single instance from scratch; True if it still fails."""
        if self.replay is None:
            raise RuntimeError("witness carries no replay closure")
        return self.replay()

    def text(self) -> str:
        where = " ".join(self.component)
        deg = f" deg {tuple(self.degree)}" if self.degree and any(self.degree) else ""
        inp = ", ".join(self.input)
        return f"{self.law}: {self.lhs} != {self.rhs} at {where}{deg} [{inp}]"


@dataclass
class LawResult:
    law: str
    status: str
    checked: int = 0
    witness: Witness | None = None
    note: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"law": self.law, "status": self.status, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class SuiteReport:
    suite: str
    laws: list = field(default_factory=list)
    status: str | None = None
    notes: list = field(default_factory=list)

    def add(self, result: LawResult) -> LawResult:
        self.laws.append(result)
        return result

    def finish(self) -> "SuiteReport":
        if self.status is None:
            self.status = "fail" if any(r.status == "fail" for r in self.laws) else "pass"
        return self

    @property
    def ok(self) -> bool:
        return self.finish().status == "pass"

    def law(self, name: str) -> LawResult:
        for r in self.laws:
            if r.law == name:
                return r
        raise KeyError(name)

    def failed(self) -> list:
        return [r.law for r in self.laws if r.status == "fail"]

    @property
    def witnesses(self) -> list:
        return [r.witness for r in self.laws if r.witness is not None]

    def to_json(self) -> dict:
        self.finish()
        out = {"suite": self.suite, "status": self.status, "laws": [r.to_json() for r in self.laws]}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


class Checker:
    """Runs one law over a list of inputs, stopping at the first failure."""

    def __init__(self, space, window):
        self.space = space
        self.window = window

    def fmt_comp(self, comp) -> list:
        return [self.space.fmt(x) for x in comp]

    def law(self, name, inputs, compute, describe=str, note=None) -> LawResult:
        """``compute(inp)`` returns the pair (lhs, rhs) of one instance."""
        n = 0
        for inp in inputs:
            lhs, rhs = compute(inp)
            n += 1
            hit = first_mismatch(lhs, rhs, self.window)
            if hit is None:
                continue
            comp, deg, lv, rv = hit
            w = Witness(
                law=name,
                input=_listify(describe(inp)),
                component=self.fmt_comp(comp),
                degree=list(deg) if any(deg) else None,
                lhs=str(lv),
                rhs=str(rv),
                note=note,
                replay=_replayer(compute, inp, comp, deg),
            )
            return LawResult(name, "fail", n, w)
        return LawResult(name, "pass", n)

    def scalar_law(self, name, inputs, compute, describe=str, where=None) -> LawResult:
        """Like :meth:`law` for identities between scalars."""
        n = 0
        for inp in inputs:
            lv, rv = compute(inp)
            n += 1
            if lv != rv:
                comp = where(inp) if where else []
                w = Witness(
                    law=name,
                    input=_listify(describe(inp)),
                    component=comp,
                    degree=None,
                    lhs=str(lv),
                    rhs=str(rv),
                    replay=lambda inp=inp: (lambda p: p[0] != p[1])(compute(inp)),
                )
                return LawResult(name, "fail", n, w)
        return LawResult(name, "pass", n)


def _listify(x) -> list:
    if isinstance(x, (list, tuple)):
        return [str(v) for v in x]
    return [str(x)]


def _replayer(compute, inp, comp, deg):
    def replay():
        lhs, rhs = compute(inp)
        return value_at(lhs, comp, deg) != value_at(rhs, comp, deg)

    return replay
