"""Exact Gaussian rationals, the constant field Q(i) of every computation."""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, isqrt

__all__ = ["GaussRat", "I", "ONE", "ZERO", "as_gaussrat"]


class GaussRat:
    """The number ``(a + b*i) / d`` with integers a, b, d.

    Stored reduced: ``d > 0`` and ``gcd(a, b, d) == 1``, so equality is
    component-wise.  Values are immutable.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        self.a, self.b, self.d = a, b, d

    @classmethod
    def _make(cls, a: int, b: int, d: int) -> "GaussRat":
        if d < 0:
            a, b, d = -a, -b, -d
        if d != 1:
            g = gcd(a, b, d)
            if g != 1:
                a //= g
                b //= g
                d //= g
        z = object.__new__(cls)
        z.a, z.b, z.d = a, b, d
        return z

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussRat":
        z = object.__new__(cls)
        z.a, z.b, z.d = a, b, d
        return z

    # -- accessors -----------------------------------------------------------
    @property
    def re(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.b, self.d)

    def is_real(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        return self.d == 1

    def conjugate(self) -> "GaussRat":
        return GaussRat._raw(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """|z|^2 as a rational."""
        return Fraction(self.a * self.a + self.b * self.b, self.d * self.d)

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussRat):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        if self.d == 1 and other.d == 1:
            return GaussRat._raw(self.a + other.a, self.b + other.b, 1)
        d1, d2 = self.d, other.d
        if d1 == d2:
            return GaussRat._make(self.a + other.a, self.b + other.b, d1)
        return GaussRat._make(self.a * d2 + other.a * d1, self.b * d2 + other.b * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat._raw(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, GaussRat):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self + GaussRat._raw(-other.a, -other.b, other.d)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if not isinstance(other, GaussRat):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        if b1 == 0 and b2 == 0:
            a, b = a1 * a2, 0
        else:
            a, b = a1 * a2 - b1 * b2, a1 * b2 + a2 * b1
        d = self.d * other.d
        if d == 1:
            return GaussRat._raw(a, b, 1)
        return GaussRat._make(a, b, d)

    __rmul__ = __mul__

    def inverse(self) -> "GaussRat":
        n = self.a * self.a + self.b * self.b
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat._make(self.d * self.a, -self.d * self.b, n)

    def __truediv__(self, other):
        if not isinstance(other, GaussRat):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparisons -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.a == other.a and self.b == other.b and self.d == other.d
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.d)) if self.d != 1 else hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0 and self.d == 1

    # -- exact square root -------------------------------------------------------
    def sqrt(self) -> "GaussRat | None":
        """Return some s with s*s == self when s lies in Q(i), else None."""
        if self.is_zero():
            return ZERO
        # sqrt((a+bi)/d) = sqrt((a+bi)*d)/d
        a, b = self.a * self.d, self.b * self.d
        r = _gauss_int_sqrt(a, b)
        if r is None:
            return None
        return GaussRat._make(r[0], r[1], self.d)

    # -- printing --------------------------------------------------------------
    def __repr__(self):
        return f"GaussRat({self})"

    def __str__(self):
        re_, im_ = self.re, self.im
        if im_ == 0:
            return _frac_str(re_)
        if im_ == 1:
            ims = "i"
        elif im_ == -1:
            ims = "-i"
        else:
            ims = f"{_frac_str(im_)}*i"
        if re_ == 0:
            return ims
        if ims.startswith("-"):
            return f"{_frac_str(re_)} - {ims[1:]}"
        return f"{_frac_str(re_)} + {ims}"

    def needs_parens(self) -> bool:
        """True when the printed form is a sum and must be bracketed as a factor."""
        return self.a != 0 and self.b != 0

    def sort_key(self):
        return (Fraction(self.a, self.d), Fraction(self.b, self.d))


def _frac_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _gauss_int_sqrt(a: int, b: int):
    # (x + y i)^2 = a + b i  ->  x^2 - y^2 = a, 2xy = b, x^2 + y^2 = |a+bi|
    n2 = a * a + b * b
    n = isqrt(n2)
    if n * n != n2:
        return None
    x2, rem = divmod(n + a, 2)
    if rem:
        return None
    y2 = n - x2
    x, y = isqrt(x2), isqrt(y2)
    if x * x != x2 or y * y != y2:
        return None
    if b < 0:
        y = -y
    if 2 * x * y != b:
        return None
    return x, y


def _coerce(v):
    if isinstance(v, GaussRat):
        return v
    if isinstance(v, int):
        return GaussRat._raw(v, 0, 1)
    if isinstance(v, Fraction):
        return GaussRat._raw(v.numerator, 0, v.denominator)
    return None


_LITERAL = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)\s*$")


def as_gaussrat(v) -> GaussRat:
    """Coerce int, Fraction, GaussRat or a string like ``"3/2 - 4*i"``."""
    z = _coerce(v)
    if z is not None:
        return z
    if isinstance(v, str):
        return _parse_gaussrat(v)
    raise TypeError(f"cannot interpret {v!r} as a Gaussian rational (floats are not supported)")


def _parse_gaussrat(text: str) -> GaussRat:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty Gaussian rational literal")
    m = _LITERAL.match(s)
    if m:
        return _coerce(Fraction(m.group(1)))
    # split into signed terms
    terms = re.findall(r"[+-]?[^+-]+", s)
    total = ZERO
    for t in terms:
        sign = -1 if t.startswith("-") else 1
        t = t.lstrip("+-")
        if t.endswith("i"):
            body = t[:-1].rstrip("*")
            val = Fraction(body) if body else Fraction(1)
            total = total + GaussRat(0, sign * val)
        else:
            total = total + GaussRat(sign * Fraction(t))
    return total


ZERO = GaussRat._raw(0, 0, 1)
ONE = GaussRat._raw(1, 0, 1)
I = GaussRat._raw(0, 1, 1)
