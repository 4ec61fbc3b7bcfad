"""Rational functions in x over Q(i), the coefficient field of K[D]."""

from __future__ import annotations

from .gaussrat import as_gaussrat
from .mpoly import MPoly
from .polygcd import poly_gcd

__all__ = ["RatFunc"]

_ONE = MPoly.const(1)


class RatFunc:
    """``num / den`` with den a monic polynomial in x and gcd(num, den) = 1.

    The numerator may carry extra parameter variables; the denominator is
    always univariate in x.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, MPoly):
            num = MPoly.const(num)
        if den is None:
            self.num, self.den = num, _ONE
            return
        if not isinstance(den, MPoly):
            den = MPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("RatFunc with zero denominator")
        if set(den.used_vars()) - {"x"}:
            raise ValueError("denominators must be univariate in x")
        if den.is_constant():
            self.num, self.den = num.scale(den.constant_value().inverse()), _ONE
            return
        if num.is_zero():
            self.num, self.den = num, _ONE
            return
        g = poly_gcd(num, den)
        if not g.is_constant():
            num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lead_coeff_in("x").constant_value()
        if not lc.is_one():
            inv = lc.inverse()
            num, den = num.scale(inv), den.scale(inv)
        if den.is_constant():
            den = _ONE
        self.num, self.den = num, den

    @classmethod
    def _poly(cls, p: MPoly) -> "RatFunc":
        r = object.__new__(cls)
        r.num, r.den = p, _ONE
        return r

    @classmethod
    def _raw(cls, num: MPoly, den: MPoly) -> "RatFunc":
        r = object.__new__(cls)
        r.num, r.den = num, den
        return r

    @staticmethod
    def coerce(v) -> "RatFunc":
        if isinstance(v, RatFunc):
            return v
        if isinstance(v, MPoly):
            return RatFunc._poly(v)
        return RatFunc._poly(MPoly.const(as_gaussrat(v)))

    def is_poly(self) -> bool:
        return self.den.is_constant()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.den.is_constant() and self.num.is_constant()

    # -- arithmetic --------------------------------------------------------------
    def __add__(self, other):
        other = RatFunc.coerce(other)
        if self.den.is_constant() and other.den.is_constant():
            return RatFunc._poly(self.num + other.num)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, MPoly):
                other = RatFunc._poly(other)
            else:
                c = as_gaussrat(other)
                return RatFunc._raw(self.num.scale(c), self.den)
        if self.den.is_constant() and other.den.is_constant():
            return RatFunc._poly(self.num * other.num)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * RatFunc.coerce(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if self.den.is_constant():
            return RatFunc._poly(self.num ** k)
        return RatFunc._raw(self.num ** k, self.den ** k)

    def diff(self, var: str = "x") -> "RatFunc":
        if self.den.is_constant():
            return RatFunc._poly(self.num.diff(var))
        if var != "x":
            return RatFunc._raw(self.num.diff(var), self.den)
        return RatFunc(self.num.diff("x") * self.den - self.num * self.den.diff("x"), self.den * self.den)

    def nth_diff(self, n: int) -> "RatFunc":
        if self.den.is_constant():
            return RatFunc._poly(self.num.nth_diff("x", n))
        r = self
        for _ in range(n):
            r = r.diff("x")
        return r

    def subs(self, values: dict) -> "RatFunc":
        den = self.den.subs(values)
        return RatFunc(self.num.subs(values), den)

    def __eq__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den.is_constant() and other.den.is_constant():
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        n = f"({self.num})" if self.num.is_sum() else str(self.num)
        return f"{n}/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"
