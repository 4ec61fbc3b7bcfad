"""Ordinary differential operators over Q(i)(x) and their ring arithmetic."""

from __future__ import annotations

from math import comb

from .errors import NotPolynomialCoefficients
from .exactalg import MPoly, RatFunc, as_gaussrat, poly_gcd
from .exactalg.mpoly import merge_vars

__all__ = [
    "NEG_INF",
    "DiffOp",
    "op_mul",
    "op_commutator",
    "div_right",
    "div_left_factor",
    "gcrd",
    "gcrd_raw",
    "poly_at_operator",
    "is_standard_form",
]


class _NegInf:
    """Order of the zero operator: below every integer, absorbing under +."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        return self

    def __repr__(self):
        return "-inf"

    __str__ = __repr__

    def __hash__(self):
        return hash("weylcomm.NEG_INF")


NEG_INF = _NegInf()


def _coerce_coeff(c) -> RatFunc:
    if isinstance(c, RatFunc):
        return c
    if isinstance(c, MPoly):
        return RatFunc._poly(c)
    return RatFunc._poly(MPoly.const(as_gaussrat(c)))


class DiffOp:
    """``sum(coeffs[j] * D**j)`` with RatFunc coefficients; immutable.

    Trailing zero coefficients are stripped, so ``coeffs[-1]`` is the
    leading coefficient; the zero operator has ``coeffs == ()``.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        cs = [_coerce_coeff(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def _new(cls, cs):
        while cs and cs[-1].is_zero():
            cs.pop()
        op = object.__new__(cls)
        op.coeffs = tuple(cs)
        op._hash = None
        return op

    # -- constructors ------------------------------------------------------------
    @classmethod
    def d(cls, k: int = 1) -> "DiffOp":
        """The operator D**k."""
        return cls([0] * k + [1])

    @classmethod
    def x(cls) -> "DiffOp":
        return cls([MPoly.var("x")])

    @classmethod
    def scalar(cls, c) -> "DiffOp":
        return cls([c])

    @staticmethod
    def coerce(v) -> "DiffOp":
        if isinstance(v, DiffOp):
            return v
        return DiffOp([v])

    # -- structure -----------------------------------------------------------------
    @property
    def order(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, j: int) -> RatFunc:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return _coerce_coeff(0)

    def leading_coeff(self) -> RatFunc:
        return self.coeffs[-1] if self.coeffs else _coerce_coeff(0)

    def is_polynomial(self) -> bool:
        return all(c.is_poly() for c in self.coeffs)

    def poly_coeffs(self) -> list:
        """Coefficients as MPolys; raises when a denominator is present."""
        out = []
        for c in self.coeffs:
            if not c.is_poly():
                raise NotPolynomialCoefficients(f"coefficient {c} is not a polynomial")
            out.append(c.num)
        return out

    def variables(self) -> tuple:
        return merge_vars(*[c.num.used_vars() for c in self.coeffs])

    def parameters(self) -> tuple:
        """Variables other than x appearing in the coefficients."""
        return tuple(v for v in self.variables() if v != "x")

    def is_constant_coeff(self) -> bool:
        return all(c.is_constant() for c in self.coeffs)

    def subs(self, values: dict) -> "DiffOp":
        return DiffOp._new([c.subs(values) for c in self.coeffs])

    def monic(self) -> "DiffOp":
        if not self.coeffs:
            return self
        inv = self.coeffs[-1].inverse()
        return DiffOp._new([c * inv for c in self.coeffs])

    def left_scale(self, c) -> "DiffOp":
        c = _coerce_coeff(c)
        return DiffOp._new([c * a for a in self.coeffs])

    # -- arithmetic ----------------------------------------------------------------
    def __add__(self, other):
        other = DiffOp.coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for j, c in enumerate(b):
            cs[j] = cs[j] + c
        return DiffOp._new(cs)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp._new([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-DiffOp.coerce(other))

    def __rsub__(self, other):
        return DiffOp.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, DiffOp):
            c = _coerce_coeff(other)
            if c.is_constant():
                return DiffOp._new([a * c for a in self.coeffs])
            other = DiffOp([c])
        return op_mul(self, other)

    def __rmul__(self, other):
        return DiffOp.coerce(other) * self

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of differential operators are not defined")
        result = DiffOp([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        try:
            other = DiffOp.coerce(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    # -- printing ------------------------------------------------------------------
    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if c.is_zero():
                continue
            parts.append(_term(c, j))
        s = parts[0]
        for t in parts[1:]:
            s += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return s

    def __repr__(self):
        return f"DiffOp({self})"


def _term(c: RatFunc, j: int) -> str:
    dpow = "" if j == 0 else ("D" if j == 1 else f"D^{j}")
    if not dpow:
        return str(c)
    if c.is_constant():
        v = c.num.constant_value()
        if v.is_one():
            return dpow
        if v == -1:
            return "-" + dpow
        return f"({v})*{dpow}" if v.needs_parens() else f"{v}*{dpow}"
    if c.is_poly() and not c.num.is_sum():
        return f"{c.num}*{dpow}"
    return f"({c})*{dpow}"


def op_mul(p: DiffOp, q: DiffOp) -> DiffOp:
    """Composition p*q by the Leibniz rule D^i c = sum_k C(i,k) c^(k) D^(i-k)."""
    if not p.coeffs or not q.coeffs:
        return DiffOp._new([])
    n = len(p.coeffs) - 1
    m = len(q.coeffs) - 1
    # derivative table of q's coefficients
    derivs = []
    for c in q.coeffs:
        row = [c]
        for _ in range(n):
            nxt = row[-1].diff("x")
            row.append(nxt)
            if nxt.is_zero():
                break
        derivs.append(row)
    out = [None] * (n + m + 1)
    for i, pc in enumerate(p.coeffs):
        if pc.is_zero():
            continue
        for j, row in enumerate(derivs):
            for k in range(min(i, len(row) - 1) + 1):
                d = row[k]
                if d.is_zero():
                    continue
                t = pc * d
                b = comb(i, k)
                if b != 1:
                    t = t * b
                idx = i + j - k
                out[idx] = t if out[idx] is None else out[idx] + t
    zero = _coerce_coeff(0)
    return DiffOp._new([zero if c is None else c for c in out])


def op_commutator(p: DiffOp, q: DiffOp) -> DiffOp:
    """[p, q] = p*q - q*p."""
    return op_mul(p, q) - op_mul(q, p)


def div_right(m: DiffOp, l: DiffOp):
    """(q, r) with m = q*l + r and ord r < ord l."""
    if l.is_zero():
        raise ZeroDivisionError("division by the zero operator")
    nl = l.order
    lc_inv = l.leading_coeff().inverse()
    q = DiffOp._new([])
    r = m
    while not r.is_zero() and r.order >= nl:
        k = r.order - nl
        c = r.leading_coeff() * lc_inv
        t = DiffOp._new([_coerce_coeff(0)] * k + [c])
        q = q + t
        r = r - op_mul(t, l)
    return q, r


def div_left_factor(m: DiffOp, l: DiffOp):
    """(q, r) with m = l*q + r and ord r < ord l."""
    if l.is_zero():
        raise ZeroDivisionError("division by the zero operator")
    nl = l.order
    lc_inv = l.leading_coeff().inverse()
    q = DiffOp._new([])
    r = m
    while not r.is_zero() and r.order >= nl:
        k = r.order - nl
        c = r.leading_coeff() * lc_inv
        t = DiffOp._new([_coerce_coeff(0)] * k + [c])
        q = q + t
        r = r - op_mul(l, t)
    return q, r


def _primitive(op: DiffOp) -> DiffOp:
    cs = op.poly_coeffs()
    g = None
    for c in cs:
        if not c.is_zero():
            g = c if g is None else poly_gcd(g, c)
            if g.is_constant():
                return op
    return DiffOp([c.exact_div(g) for c in cs])


def _pseudo_rem(a: DiffOp, b: DiffOp) -> DiffOp:
    """Remainder of lc(b)^k * a by b, kept polynomial and primitive."""
    nb = b.order
    lb = DiffOp([b.leading_coeff()])
    r = a
    while not r.is_zero() and r.order >= nb:
        t = DiffOp._new([_coerce_coeff(0)] * (r.order - nb) + [r.leading_coeff()])
        r = lb * r - op_mul(t, b)
    return r if r.is_zero() else _primitive(r)


def gcrd_raw(p: DiffOp, q: DiffOp) -> DiffOp:
    """Last nonzero remainder of the right Euclidean sequence (not normalized).

    Polynomial-coefficient inputs run a primitive pseudo-remainder
    sequence: left factors from C(x) are units, so each remainder spans the
    same left ideal as the plain one while coefficients stay polynomial.
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("gcrd of two zero operators")
    a, b = p, q
    if a.order < b.order:
        a, b = b, a
    if a.is_polynomial() and b.is_polynomial():
        a = _primitive(a)
        b = b if b.is_zero() else _primitive(b)
        while not b.is_zero():
            a, b = b, _pseudo_rem(a, b)
        return a
    while not b.is_zero():
        a, b = b, div_right(a, b)[1]
    return a


def gcrd(p: DiffOp, q: DiffOp) -> DiffOp:
    """Monic greatest common right divisor."""
    return gcrd_raw(p, q).monic()


def poly_at_operator(p, l: DiffOp, var: str = "lam") -> DiffOp:
    """p(l) by Horner's rule; other variables of p act as scalars."""
    if not isinstance(p, MPoly):
        p = MPoly.const(as_gaussrat(p))
    cs = p.coefficients_in(var)
    if not cs:
        return DiffOp._new([])
    top = max(cs)
    zero = MPoly.zero(p.vars)
    result = DiffOp([cs[top]])
    for k in range(top - 1, -1, -1):
        result = op_mul(result, l) + DiffOp([cs.get(k, zero)])
    return result


def is_standard_form(l: DiffOp) -> bool:
    """Monic with vanishing D^(n-1) coefficient."""
    if l.is_zero():
        return False
    if l.leading_coeff() != 1:
        return False
    n = l.order
    return n == 0 or l.coeff(n - 1).is_zero()
