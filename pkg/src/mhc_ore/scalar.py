"""Exact arithmetic over the Gaussian rationals Q(i).

A value is stored as ``(a + b*i) / d`` with integers a, b and d > 0 and
gcd(a, b, d) == 1, so structural equality is value equality.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

__all__ = ["Scalar", "parse_scalar", "field_op", "conj", "ZERO", "ONE", "as_scalar"]

_RAT = r"\d+(?:/\d+)?"
_REAL = re.compile(rf"^([+-]?{_RAT})$")
_COMPLEX = re.compile(rf"^([+-]?{_RAT})([+-])({_RAT})?i$")
_IMAG = re.compile(rf"^([+-]?)({_RAT})?i$")


class Scalar:
    __slots__ = ("_a", "_b", "_d", "_hash")

    def __init__(self, a: int = 0, b: int = 0, d: int = 1):
        if d == 0:
            raise ZeroDivisionError("zero denominator")
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(a, b), d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        self._a = a
        self._b = b
        self._d = d
        self._hash = None

    @classmethod
    def from_parts(cls, re_part, im_part=0) -> "Scalar":
        re_part = Fraction(re_part)
        im_part = Fraction(im_part)
        d = re_part.denominator * im_part.denominator // gcd(re_part.denominator, im_part.denominator)
        return cls(re_part.numerator * (d // re_part.denominator),
                   im_part.numerator * (d // im_part.denominator), d)

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_real(self) -> bool:
        return self._b == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = as_scalar(other)
            else:
                return NotImplemented
        return self._a == other._a and self._b == other._b and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._a, self._b, self._d))
        return self._hash

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other._d == self._d:
            return Scalar(self._a + other._a, self._b + other._b, self._d)
        return Scalar(self._a * other._d + other._a * self._d,
                      self._b * other._d + other._b * self._d,
                      self._d * other._d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self._a, -self._b, self._d)

    def __sub__(self, other):
        return self + (-as_scalar(other))

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, d = self._a, self._b, self._d
        c, e, f = other._a, other._b, other._d
        if b == 0 and e == 0:
            return Scalar(a * c, 0, d * f)
        return Scalar(a * c - b * e, a * e + b * c, d * f)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        # d/(a+bi) = d(a-bi)/(a^2+b^2)
        return Scalar(d * a, -d * b, n)

    def __truediv__(self, other):
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "Scalar":
        return Scalar(self._a, -self._b, self._d)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Scalar({render(self)!r})"


def _render_rat(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def render(x: Scalar) -> str:
    """Canonical literal; the inverse of :func:`parse_scalar`."""
    re_part, im_part = x.re, x.im
    if im_part == 0:
        return _render_rat(re_part)
    sign = "-" if im_part < 0 else "+"
    return f"{_render_rat(re_part)}{sign}{_render_rat(abs(im_part))}i"


def parse_scalar(text: str) -> Scalar:
    """Parse ``RAT ((+|-) RAT "i")?``.

    Pure imaginary shorthand (``"3i"``, ``"-i"``) is accepted on input;
    :func:`render` always emits the two-part form.
    """
    if not isinstance(text, str):
        raise ValueError(f"scalar literal must be a string, got {text!r}")
    s = text.replace(" ", "")
    try:
        if m := _REAL.match(s):
            return Scalar.from_parts(_parse_rat(m.group(1)))
        if m := _COMPLEX.match(s):
            mag = _parse_rat(m.group(3)) if m.group(3) else Fraction(1)
            return Scalar.from_parts(_parse_rat(m.group(1)), -mag if m.group(2) == "-" else mag)
        if m := _IMAG.match(s):
            mag = _parse_rat(m.group(2)) if m.group(2) else Fraction(1)
            return Scalar.from_parts(0, -mag if m.group(1) == "-" else mag)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None
    raise ValueError(f"malformed scalar literal {text!r}")


def _parse_rat(txt: str) -> Fraction:
    if "/" in txt:
        num, den = txt.split("/")
        if int(den) == 0:
            raise ZeroDivisionError
        return Fraction(int(num), int(den))
    return Fraction(int(txt))


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Scalar(x)
    if isinstance(x, Fraction):
        return Scalar(x.numerator, 0, x.denominator)
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, complex):
        raise TypeError("floating complex values are not exact; use a literal")
    raise TypeError(f"cannot interpret {x!r} as a scalar")


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction, str)) and not isinstance(x, bool):
        return as_scalar(x)
    return NotImplemented


def field_op(x: Scalar, y: Scalar, kind: str) -> Scalar:
    if kind == "add":
        return x + y
    if kind == "sub":
        return x - y
    if kind == "mul":
        return x * y
    if kind == "div":
        return x / y
    raise ValueError(f"unknown field operation {kind!r}")


def conj(x: Scalar) -> Scalar:
    return as_scalar(x).conj()


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
