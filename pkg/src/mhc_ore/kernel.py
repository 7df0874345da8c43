"""Functions on L^k, L = Z^m x G, evaluated exactly and lazily.

The algebra A is the span of the orthogonal idempotents e_x (x in L), so an
element of A is a finitely supported function on L, an element of A (x) A a
finitely supported function on L x L, and multipliers (of A, of A (x) A, ...)
are arbitrary functions.  Every object here is an :class:`Fn` of some arity
with two capabilities:

``at(pt)``
    the exact coefficient at a k-tuple of points (a finite computation even
    for multipliers such as Delta(a), whose value at (x, y) is a(x*y));

``cands(part)``
    a superset of the support restricted to points extending the partial
    assignment ``part`` (a k-tuple with ``None`` for unknown legs).  Entries
    of the result may still contain ``None`` when a factor carries no
    information about that leg.

Products chain the ``cands`` of their factors to a fixpoint, which is how a
cover such as Delta(a)(1 (x) b) is found to be finite: b fixes leg 2, and
Delta then solves leg 1 by right division.
"""

from __future__ import annotations

from itertools import product as iproduct

from .loop import Loop
from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "Space",
    "Fn",
    "Finite",
    "Const",
    "PowerRule",
    "TableRule",
    "InfiniteSupport",
    "materialize",
    "basis",
    "element",
    "add",
    "mul",
    "embed",
    "split",
    "legmap",
    "merge",
    "restrict",
    "permute",
    "recip",
    "delta_table",
    "zero",
    "components",
    "point_key",
]


class InfiniteSupport(ValueError):
    """The support of a function could not be enumerated finitely."""


class Space:
    """The loop L = Z^rank x G with pointwise product (p, a)(q, b) = (p+q, ab)."""

    def __init__(self, loop: Loop, rank: int):
        if rank < 0:
            raise ValueError("grading rank must be nonnegative")
        self.loop = loop
        self.rank = rank
        self.e = ((0,) * rank, loop.identity)

    def mul(self, x, y):
        (p, a), (q, b) = x, y
        return (tuple(i + j for i, j in zip(p, q)), self.loop.table[a][b])

    def ldiv(self, x, y):
        """The unique z with x*z = y."""
        (p, a), (q, b) = x, y
        return (tuple(j - i for i, j in zip(p, q)), self.loop.ldiv(a, b))

    def rdiv(self, x, y):
        """The unique z with z*x = y."""
        (p, a), (q, b) = x, y
        return (tuple(j - i for i, j in zip(p, q)), self.loop.rdiv(a, b))

    def inv(self, x):
        p, a = x
        return (tuple(-i for i in p), self.loop.inv[a])

    def point(self, grade, elem) -> tuple:
        grade = tuple(int(g) for g in grade)
        if len(grade) != self.rank:
            raise ValueError(f"grade {list(grade)} does not have length {self.rank}")
        if isinstance(elem, str):
            elem = self.loop.index(elem)
        return (grade, elem)

    def window(self, radius: int) -> list:
        if radius < 0:
            raise ValueError("window radius must be nonnegative")
        grades = iproduct(range(-radius, radius + 1), repeat=self.rank)
        return sorted(((g, a) for g in grades for a in range(self.loop.order)), key=point_key)

    def fmt(self, x) -> str:
        p, a = x
        return "(" + ",".join([str(i) for i in p] + [self.loop.name(a)]) + ")"

    def to_json(self, x) -> dict:
        return {"grade": list(x[0]), "elem": self.loop.name(x[1])}


def point_key(x):
    """Center-out order: small grades first, then 1 before -1, then element index."""
    p, a = x
    return (sum(abs(i) for i in p), tuple((abs(i), i < 0) for i in p), a)


def comp_key(pt):
    return tuple(point_key(x) for x in pt)


class Fn:
    arity = 1

    def at(self, pt) -> Scalar:
        raise NotImplementedError

    def cands(self, part):
        return [part]

    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        if other == 0:
            return self
        return add(Const(self.arity, other), self)

    def __neg__(self):
        return scale(-ONE, self)

    def __sub__(self, other):
        return add(self, -other)

    def __mul__(self, other):
        if isinstance(other, Fn):
            return mul(self, other)
        return scale(other, self)

    def __rmul__(self, other):
        return scale(other, self)

    def conj(self) -> "Fn":
        return Conj(self)

    def is_zero(self) -> bool:
        return False

    def __call__(self, *pt):
        return self.at(pt)


class Lazy(Fn):
    """Node with memoized evaluation."""

    def __init__(self, arity):
        self.arity = arity
        self._memo = {}

    def at(self, pt):
        try:
            return self._memo[pt]
        except KeyError:
            v = self._memo[pt] = self._at(pt)
            return v

    def _at(self, pt):
        raise NotImplementedError


class Finite(Fn):
    """Finitely supported function; ``data`` maps k-tuples of points to nonzero scalars."""

    def __init__(self, arity: int, data=None):
        self.arity = arity
        clean = {}
        for k, v in (data or {}).items():
            v = as_scalar(v)
            if not v.is_zero():
                clean[k] = v
        self.data = clean

    def at(self, pt):
        return self.data.get(pt, ZERO)

    def cands(self, part):
        if None not in part:
            return [part] if part in self.data else []
        known = [(i, v) for i, v in enumerate(part) if v is not None]
        return [k for k in self.data if all(k[i] == v for i, v in known)]

    def is_zero(self):
        return not self.data

    def conj(self):
        return Finite(self.arity, {k: v.conj() for k, v in self.data.items()})

    def support(self):
        return sorted(self.data)

    def __eq__(self, other):
        if isinstance(other, Finite):
            return self.arity == other.arity and self.data == other.data
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"Finite({self.arity}, {self.data!r})"


def zero(arity: int = 1) -> Finite:
    return Finite(arity, {})


class Const(Fn):
    def __init__(self, arity: int, value=ONE):
        self.arity = arity
        self.value = as_scalar(value)

    def at(self, pt):
        return self.value

    def cands(self, part):
        return [] if self.value.is_zero() else [part]

    def is_zero(self):
        return self.value.is_zero()

    def conj(self):
        return Const(self.arity, self.value.conj())


class PowerRule(Fn):
    """Diagonal rule (p, a) -> prod_j lam_j ** p_j."""

    def __init__(self, lambdas):
        self.arity = 1
        self.lambdas = tuple(as_scalar(x) for x in lambdas)
        if any(x.is_zero() for x in self.lambdas):
            raise ValueError("power rule needs nonzero bases")
        self._pow = {}

    def at(self, pt):
        (grade, _), = pt
        out = ONE
        for j, p in enumerate(grade):
            key = (j, p)
            v = self._pow.get(key)
            if v is None:
                v = self._pow[key] = self.lambdas[j] ** p
            out = out * v
        return out

    def inverse(self) -> "PowerRule":
        return PowerRule([x.inverse() for x in self.lambdas])

    def conj(self):
        return PowerRule([x.conj() for x in self.lambdas])


class TableRule(Fn):
    """Diagonal rule given by finitely many entries and a default value."""

    def __init__(self, entries: dict, default=ZERO):
        self.arity = 1
        self.entries = {k: as_scalar(v) for k, v in entries.items()}
        self.default = as_scalar(default)

    def at(self, pt):
        return self.entries.get(pt[0], self.default)

    def cands(self, part):
        if not self.default.is_zero():
            return [part]
        x, = part
        if x is not None:
            return [part] if not self.entries.get(x, ZERO).is_zero() else []
        return [(k,) for k, v in self.entries.items() if not v.is_zero()]

    def inverse(self) -> "TableRule":
        return TableRule({k: v.inverse() for k, v in self.entries.items()}, self.default.inverse())

    def conj(self):
        return TableRule({k: v.conj() for k, v in self.entries.items()}, self.default.conj())


def basis(x, coeff=ONE) -> Finite:
    return Finite(1, {(x,): coeff})


def element(pairs) -> Finite:
    """Arity-1 function from ``{point: coeff}`` or an iterable of pairs."""
    items = pairs.items() if isinstance(pairs, dict) else pairs
    data = {}
    for x, c in items:
        data[(x,)] = data.get((x,), ZERO) + as_scalar(c)
    return Finite(1, data)


# -- algebra ---------------------------------------------------------------


class Sum(Lazy):
    def __init__(self, terms):
        super().__init__(terms[0].arity)
        self.terms = terms

    def _at(self, pt):
        out = ZERO
        for t in self.terms:
            out = out + t.at(pt)
        return out

    def cands(self, part):
        out = []
        for t in self.terms:
            out.extend(t.cands(part))
        return list(dict.fromkeys(out))


class Prod(Lazy):
    def __init__(self, factors):
        super().__init__(factors[0].arity)
        self.factors = factors

    def _at(self, pt):
        out = ONE
        for f in self.factors:
            v = f.at(pt)
            if v.is_zero():
                return ZERO
            out = out * v
        return out

    def cands(self, part):
        frontier = [part]
        for _ in range(2 * self.arity + 2):
            before = frontier
            for f in self.factors:
                nxt = []
                for p in frontier:
                    nxt.extend(f.cands(p))
                frontier = list(dict.fromkeys(nxt))
                if not frontier:
                    return []
            if frontier == before:
                break
        return frontier


class Scaled(Lazy):
    def __init__(self, c, f):
        super().__init__(f.arity)
        self.c = c
        self.f = f

    def _at(self, pt):
        return self.c * self.f.at(pt)

    def cands(self, part):
        return self.f.cands(part)


class Conj(Lazy):
    def __init__(self, f):
        super().__init__(f.arity)
        self.f = f

    def _at(self, pt):
        return self.f.at(pt).conj()

    def cands(self, part):
        return self.f.cands(part)

    def conj(self):
        return self.f


class Recip(Lazy):
    def __init__(self, f):
        super().__init__(f.arity)
        self.f = f

    def _at(self, pt):
        v = self.f.at(pt)
        if v.is_zero():
            raise ZeroDivisionError(f"multiplier is not invertible: zero at {pt}")
        return v.inverse()


def _check_arity(*fs):
    a = fs[0].arity
    for f in fs:
        if f.arity != a:
            raise ValueError(f"arity mismatch: {a} vs {f.arity}")
    return a


def add(*fs) -> Fn:
    if not fs:
        raise ValueError("add() needs at least one term")
    arity = _check_arity(*fs)
    fs = [f for f in fs if not f.is_zero()]
    if not fs:
        return zero(arity)
    finite = [f for f in fs if isinstance(f, Finite)]
    rest = [f for f in fs if not isinstance(f, Finite)]
    terms = []
    for f in rest:
        terms.extend(f.terms if isinstance(f, Sum) else [f])
    if finite:
        if len(finite) == 1:
            merged = finite[0]
        else:
            data = {}
            for f in finite:
                for k, v in f.data.items():
                    data[k] = data.get(k, ZERO) + v
            merged = Finite(arity, data)
        if not merged.is_zero():
            terms.append(merged)
    if not terms:
        return zero(arity)
    if len(terms) == 1:
        return terms[0]
    return Sum(terms)


def scale(c, f: Fn) -> Fn:
    c = as_scalar(c)
    if c.is_zero() or f.is_zero():
        return zero(f.arity)
    if c == ONE:
        return f
    if isinstance(f, Finite):
        return Finite(f.arity, {k: c * v for k, v in f.data.items()})
    if isinstance(f, Const):
        return Const(f.arity, c * f.value)
    if isinstance(f, Scaled):
        return scale(c * f.c, f.f)
    return Scaled(c, f)


def mul(*fs) -> Fn:
    arity = _check_arity(*fs)
    if any(f.is_zero() for f in fs):
        return zero(arity)
    c = ONE
    factors = []
    for f in fs:
        if isinstance(f, Const):
            c = c * f.value
        elif isinstance(f, Prod):
            factors.extend(f.factors)
        else:
            factors.append(f)
    if not factors:
        return Const(arity, c)
    sizes = [(len(f.data), j) for j, f in enumerate(factors) if isinstance(f, Finite)]
    if sizes:
        # the smallest finite factor fixes the support; drop it by position
        i = min(sizes)[1]
        base = factors[i]
        others = factors[:i] + factors[i + 1:]
        data = {}
        for k, v in base.data.items():
            for f in others:
                v = v * f.at(k)
                if v.is_zero():
                    break
            else:
                data[k] = c * v
        return Finite(arity, data)
    out = factors[0] if len(factors) == 1 else Prod(factors)
    return scale(c, out)


def recip(f: Fn) -> Fn:
    if hasattr(f, "inverse"):
        return f.inverse()
    if isinstance(f, Const):
        return Const(f.arity, f.value.inverse())
    if isinstance(f, Finite):
        raise ZeroDivisionError("a finitely supported function is not invertible in M(A)")
    return Recip(f)


# -- leg operations --------------------------------------------------------


class Embed(Lazy):
    """f on the listed legs of an arity-k function, constant 1 on the rest."""

    def __init__(self, f, legs, arity):
        super().__init__(arity)
        self.f = f
        self.legs = tuple(legs)

    def _at(self, pt):
        return self.f.at(tuple(pt[l] for l in self.legs))

    def cands(self, part):
        out = []
        for q in self.f.cands(tuple(part[l] for l in self.legs)):
            new = list(part)
            for l, v in zip(self.legs, q):
                new[l] = v
            out.append(tuple(new))
        return out


def embed(f: Fn, legs, arity: int) -> Fn:
    legs = tuple(legs)
    if len(legs) != f.arity:
        raise ValueError("leg list does not match arity")
    if f.is_zero():
        return zero(arity)
    if isinstance(f, Const):
        return Const(arity, f.value)
    if legs == tuple(range(arity)):
        return f
    return Embed(f, legs, arity)


class Split(Lazy):
    """Delta on one leg: F'(.., x, x', ..) = F(.., x*x', ..)."""

    def __init__(self, f, leg, space):
        super().__init__(f.arity + 1)
        self.f = f
        self.leg = leg
        self.space = space

    def _at(self, pt):
        l = self.leg
        return self.f.at(pt[:l] + (self.space.mul(pt[l], pt[l + 1]),) + pt[l + 2:])

    def cands(self, part):
        l, sp = self.leg, self.space
        x, x2 = part[l], part[l + 1]
        head, tail = part[:l], part[l + 2:]
        v = sp.mul(x, x2) if x is not None and x2 is not None else None
        out = []
        for q in self.f.cands(head + (v,) + tail):
            w = q[l]
            if w is None:
                a, b = x, x2
            elif x is not None and x2 is not None:
                a, b = x, x2
            elif x is not None:
                a, b = x, sp.ldiv(x, w)
            elif x2 is not None:
                a, b = sp.rdiv(x2, w), x2
            else:
                a, b = None, None
            out.append(q[:l] + (a, b) + q[l + 1:])
        return out


def split(f: Fn, leg: int, space: Space) -> Fn:
    if f.is_zero():
        return zero(f.arity + 1)
    if isinstance(f, Const):
        return Const(f.arity + 1, f.value)
    return Split(f, leg, space)


class LegMap(Lazy):
    """F'(.., x, ..) = F(.., fwd(x), ..) for a bijection fwd with inverse back."""

    def __init__(self, f, leg, fwd, back):
        super().__init__(f.arity)
        self.f = f
        self.leg = leg
        self.fwd = fwd
        self.back = back

    def _at(self, pt):
        l = self.leg
        return self.f.at(pt[:l] + (self.fwd(pt[l]),) + pt[l + 1:])

    def cands(self, part):
        l = self.leg
        x = part[l]
        sub = part if x is None else part[:l] + (self.fwd(x),) + part[l + 1:]
        out = []
        for q in self.f.cands(sub):
            w = q[l]
            out.append(q[:l] + (x if x is not None else (None if w is None else self.back(w)),) + q[l + 1:])
        return out


def legmap(f: Fn, leg: int, fwd, back) -> Fn:
    if isinstance(f, Finite):
        return Finite(f.arity, {k[:leg] + (back(k[leg]),) + k[leg + 1:]: v for k, v in f.data.items()})
    if isinstance(f, Const) or f.is_zero():
        return f
    if isinstance(f, Sum):
        return add(*[legmap(t, leg, fwd, back) for t in f.terms])
    return LegMap(f, leg, fwd, back)


class Merge(Lazy):
    """F'(.., x, ..) = F(.., x, x, ..), merging legs ``leg`` and ``leg + 1``."""

    def __init__(self, f, leg):
        super().__init__(f.arity - 1)
        self.f = f
        self.leg = leg

    def _at(self, pt):
        l = self.leg
        return self.f.at(pt[:l] + (pt[l], pt[l]) + pt[l + 1:])

    def cands(self, part):
        l = self.leg
        x = part[l]
        out = []
        for q in self.f.cands(part[:l] + (x, x) + part[l + 1:]):
            a, b = q[l], q[l + 1]
            if a is not None and b is not None and a != b:
                continue
            out.append(q[:l] + (a if a is not None else b,) + q[l + 2:])
        return out


def merge(f: Fn, leg: int) -> Fn:
    if isinstance(f, Finite):
        return Finite(f.arity - 1, {k[:leg] + (k[leg],) + k[leg + 2:]: v
                                    for k, v in f.data.items() if k[leg] == k[leg + 1]})
    if isinstance(f, Const):
        return Const(f.arity - 1, f.value)
    return Merge(f, leg)


class Restrict(Lazy):
    """Evaluate one leg at a fixed point, dropping it."""

    def __init__(self, f, leg, point):
        super().__init__(f.arity - 1)
        self.f = f
        self.leg = leg
        self.point = point

    def _at(self, pt):
        l = self.leg
        return self.f.at(pt[:l] + (self.point,) + pt[l:])

    def cands(self, part):
        l = self.leg
        return [q[:l] + q[l + 1:] for q in self.f.cands(part[:l] + (self.point,) + part[l:])
                if q[l] == self.point]


def restrict(f: Fn, leg: int, point) -> Fn:
    if f.arity == 1:
        return Const(0, f.at((point,)))
    if isinstance(f, Finite):
        return Finite(f.arity - 1, {k[:leg] + k[leg + 1:]: v for k, v in f.data.items() if k[leg] == point})
    if isinstance(f, Const):
        return Const(f.arity - 1, f.value)
    return Restrict(f, leg, point)


class Permute(Lazy):
    """F'(x_0, .., x_{k-1}) = F(x_perm[0], .., x_perm[k-1])."""

    def __init__(self, f, perm):
        super().__init__(f.arity)
        self.f = f
        self.perm = tuple(perm)

    def _at(self, pt):
        return self.f.at(tuple(pt[j] for j in self.perm))

    def cands(self, part):
        out = []
        for q in self.f.cands(tuple(part[j] for j in self.perm)):
            new = list(part)
            for i, j in enumerate(self.perm):
                new[j] = q[i]
            out.append(tuple(new))
        return out


def permute(f: Fn, perm) -> Fn:
    perm = tuple(perm)
    if perm == tuple(range(f.arity)) or isinstance(f, Const):
        return f
    if isinstance(f, Finite):
        data = {}
        for k, v in f.data.items():
            new = [None] * f.arity
            for i, j in enumerate(perm):
                new[j] = k[i]
            data[tuple(new)] = v
        return Finite(f.arity, data)
    return Permute(f, perm)


class DeltaTable(Lazy):
    """Linear extension on one leg of a basis map x -> d_x (finite table)."""

    def __init__(self, f, leg, table, rev):
        super().__init__(f.arity)
        self.f = f
        self.leg = leg
        self.table = table
        self.rev = rev

    def _at(self, pt):
        l = self.leg
        out = ZERO
        for x, c in self.rev.get(pt[l], ()):
            out = out + c * self.f.at(pt[:l] + (x,) + pt[l + 1:])
        return out

    def cands(self, part):
        l = self.leg
        z = part[l]
        out = []
        if z is not None:
            for x, _ in self.rev.get(z, ()):
                for q in self.f.cands(part[:l] + (x,) + part[l + 1:]):
                    out.append(q[:l] + (z,) + q[l + 1:])
        else:
            for q in self.f.cands(part):
                x = q[l]
                if x is None:
                    out.append(q)
                elif x in self.table:
                    out.extend(q[:l] + (z2,) + q[l + 1:] for (z2,) in self.table[x].data)
        return list(dict.fromkeys(out))


def delta_table(f: Fn, leg: int, table: dict, rev: dict) -> Fn:
    if f.is_zero():
        return f
    if isinstance(f, Finite):
        data = {}
        for k, v in f.data.items():
            d = table.get(k[leg])
            if d is None:
                continue
            for (z,), c in d.data.items():
                key = k[:leg] + (z,) + k[leg + 1:]
                data[key] = data.get(key, ZERO) + v * c
        return Finite(f.arity, data)
    return DeltaTable(f, leg, table, rev)


# -- support ---------------------------------------------------------------


def materialize(f: Fn) -> Finite:
    """Exact finite form of ``f``; raises InfiniteSupport when not enumerable."""
    if isinstance(f, Finite):
        return f
    if isinstance(f, Const):
        if f.value.is_zero():
            return zero(f.arity)
        raise InfiniteSupport("nonzero constant multiplier")
    pts = f.cands((None,) * f.arity)
    data = {}
    for p in pts:
        if None in p:
            raise InfiniteSupport(f"support is not finite: free legs in {p}")
        if p not in data:
            data[p] = f.at(p)
    return Finite(f.arity, data)


def components(fs, window, arity):
    """Points where any of ``fs`` may be nonzero, in center-out order.

    Finitely supported functions contribute their whole support; the rest
    are restricted to window^arity.  Legs that no function determines are
    branched over the window, last leg first, so Delta-type factors can
    solve the remaining legs by division.
    """
    if arity == 0:
        return [()]
    finite = [f for f in fs if isinstance(f, Finite)]
    fs = [f for f in fs if not isinstance(f, Finite)]
    out = {k for f in finite for k in f.data}
    if not fs:
        return sorted(out, key=comp_key)
    wset = set(window)
    seen = set()
    stack = [(None,) * arity]
    while stack:
        part = stack.pop()
        if part in seen:
            continue
        seen.add(part)
        for f in fs:
            for q in f.cands(part):
                if any(v is not None and v not in wset for v in q):
                    continue
                if None not in q:
                    out.add(q)
                    continue
                l = max(i for i, v in enumerate(q) if v is None)
                stack.extend(q[:l] + (w,) + q[l + 1:] for w in window)
    return sorted(out, key=comp_key)
