"""Sparse multivariate polynomials over Q(i).

Variables live in one global order, ``x < lam < mu < chi < xi < a1 < a2 < ...``
followed by any other named parameters grouped by prefix and index.  Terms
are compared in graded lexicographic order with respect to that order.
"""

from __future__ import annotations

import re
from functools import reduce

from ..errors import NotDivisible
from .gaussrat import ONE, ZERO, GaussRat, as_gaussrat

__all__ = ["MPoly", "var_key", "merge_vars", "poly_var", "poly_const"]

_FIXED = ("x", "lam", "mu", "chi", "xi")
_NAME = re.compile(r"^([A-Za-z_]+?)(\d*)$")


def var_key(name: str):
    if name in _FIXED:
        return (0, _FIXED.index(name), "", 0)
    m = _NAME.match(name)
    if m is None:
        return (2, 0, name, 0)
    prefix, digits = m.groups()
    if prefix == "a":
        return (1, 0, "", int(digits) if digits else -1)
    return (2, 0, prefix, int(digits) if digits else -1)


def merge_vars(*var_lists) -> tuple:
    names = set()
    for vs in var_lists:
        names.update(vs)
    return tuple(sorted(names, key=var_key))


def _mono_key(e):
    return (sum(e), e[::-1])


class MPoly:
    """Immutable sparse polynomial: ``vars`` names, ``terms`` maps exponent tuples
    to nonzero :class:`GaussRat` coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms=None, vars=()):
        vars = tuple(vars)
        clean = {}
        if terms:
            n = len(vars)
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n or any(k < 0 for k in e):
                    raise ValueError(f"bad exponent vector {e} for variables {vars}")
                c = as_gaussrat(c)
                if c:
                    clean[e] = clean.get(e, ZERO) + c
                    if not clean[e]:
                        del clean[e]
        self.vars = vars
        self.terms = clean
        self._hash = None

    @classmethod
    def _new(cls, terms: dict, vars: tuple) -> "MPoly":
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors ------------------------------------------------------------
    @classmethod
    def const(cls, c, vars=()) -> "MPoly":
        c = as_gaussrat(c)
        vars = tuple(vars)
        if not c:
            return cls._new({}, vars)
        return cls._new({(0,) * len(vars): c}, vars)

    @classmethod
    def var(cls, name: str, vars=None) -> "MPoly":
        vars = merge_vars(vars or (), (name,))
        e = tuple(1 if v == name else 0 for v in vars)
        return cls._new({e: ONE}, vars)

    @classmethod
    def zero(cls, vars=()) -> "MPoly":
        return cls._new({}, tuple(vars))

    @classmethod
    def from_univariate(cls, coeffs, var: str = "x", vars=None) -> "MPoly":
        """Build sum(coeffs[k] * var**k)."""
        vars = merge_vars(vars or (), (var,))
        idx = vars.index(var)
        terms = {}
        for k, c in enumerate(coeffs):
            c = as_gaussrat(c)
            if c:
                e = [0] * len(vars)
                e[idx] = k
                terms[tuple(e)] = c
        return cls._new(terms, vars)

    # -- variable management -----------------------------------------------------------
    def embed(self, vars) -> "MPoly":
        """Re-express over ``vars`` (which must contain every used variable)."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = {v: i for i, v in enumerate(vars)}
        n = len(vars)
        mapping = []
        for i in range(len(self.vars)):
            v = self.vars[i]
            if v not in pos:
                if any(e[i] for e in self.terms):
                    raise ValueError(f"variable {v} is used but absent from {vars}")
                mapping.append(None)
            else:
                mapping.append(pos[v])
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    ne[mapping[i]] = k
            terms[tuple(ne)] = c
        return MPoly._new(terms, vars)

    def used_vars(self) -> tuple:
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def trim(self) -> "MPoly":
        return self.embed(self.used_vars())

    def _unify(self, other: "MPoly"):
        if self.vars == other.vars:
            return self, other, self.vars
        vars = merge_vars(self.vars, other.vars)
        return self.embed(vars), other.embed(vars), vars

    def _lift(self, other):
        if isinstance(other, MPoly):
            return other
        return MPoly.const(other, self.vars)

    # -- predicates --------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> GaussRat:
        if not self.terms:
            return ZERO
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def constant_term(self) -> GaussRat:
        return self.terms.get((0,) * len(self.vars), ZERO)

    def is_one(self) -> bool:
        return self.is_constant() and bool(self.terms) and self.constant_value().is_one()

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MPoly):
            try:
                other = self._lift(other)
            except TypeError:
                return NotImplemented
        p, q, vars = self._unify(other)
        if len(p.terms) < len(q.terms):
            p, q = q, p
        terms = dict(p.terms)
        for e, c in q.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s = s + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return MPoly._new(terms, vars)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._new({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            try:
                other = self._lift(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MPoly":
        c = as_gaussrat(c)
        if not c:
            return MPoly._new({}, self.vars)
        if c.is_one():
            return self
        return MPoly._new({e: v * c for e, v in self.terms.items()}, self.vars)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        p, q, vars = self._unify(other)
        if not p.terms or not q.terms:
            return MPoly._new({}, vars)
        if len(q.terms) == 1:
            (eq, cq), = q.terms.items()
            if not any(eq):
                return p.scale(cq)
        if len(p.terms) == 1:
            (ep, cp), = p.terms.items()
            if not any(ep):
                return q.scale(cp)
        terms = {}
        get = terms.get
        if len(vars) == 1:
            for (i,), a in p.terms.items():
                for (j,), b in q.terms.items():
                    k = (i + j,)
                    s = get(k)
                    terms[k] = a * b if s is None else s + a * b
        else:
            for e1, a in p.terms.items():
                for e2, b in q.terms.items():
                    k = tuple([u + v for u, v in zip(e1, e2)])
                    s = get(k)
                    terms[k] = a * b if s is None else s + a * b
        return MPoly._new({e: c for e, c in terms.items() if c}, vars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("MPoly powers must be nonnegative integers")
        result = MPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            return self.exact_div(other)
        return self.scale(as_gaussrat(other).inverse())

    # -- equality ------------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, MPoly):
            try:
                other = self._lift(other)
            except TypeError:
                return NotImplemented
        if self.vars == other.vars:
            return self.terms == other.terms
        p, q, _ = self._unify(other)
        return p.terms == q.terms

    def __hash__(self):
        if self._hash is None:
            t = self.trim()
            self._hash = hash((t.vars, frozenset(t.terms.items())))
        return self._hash

    # -- structure -----------------------------------------------------------------
    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree when None); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def total_degree(self) -> int:
        return self.degree()

    def leading_term(self):
        """(exponent, coefficient) of the grlex-largest term."""
        e = max(self.terms, key=_mono_key)
        return e, self.terms[e]

    def leading_coefficient(self) -> GaussRat:
        return self.leading_term()[1] if self.terms else ZERO

    def coefficients_in(self, var: str) -> dict:
        """Map k -> coefficient of var**k (polynomials over the same variables)."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[ne] = c
        return {k: MPoly._new(t, self.vars) for k, t in out.items()}

    def coeff(self, var: str, k: int) -> "MPoly":
        return self.coefficients_in(var).get(k, MPoly.zero(self.vars))

    def lead_coeff_in(self, var: str) -> "MPoly":
        cs = self.coefficients_in(var)
        return cs[max(cs)] if cs else MPoly.zero(self.vars)

    def monomial_coeff(self, powers: dict) -> GaussRat:
        e = tuple(powers.get(v, 0) for v in self.vars)
        return self.terms.get(e, ZERO)

    def diff(self, var: str) -> "MPoly":
        if var not in self.vars:
            return MPoly._new({}, self.vars)
        i = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                terms[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return MPoly._new(terms, self.vars)

    def nth_diff(self, var: str, n: int) -> "MPoly":
        """n-th derivative, computed term-wise with falling factorials."""
        if n == 0:
            return self
        if var not in self.vars:
            return MPoly._new({}, self.vars)
        i = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if k >= n:
                f = 1
                for t in range(k - n + 1, k + 1):
                    f *= t
                terms[e[:i] + (k - n,) + e[i + 1:]] = c * f
        return MPoly._new(terms, self.vars)

    def integrate(self, var: str) -> "MPoly":
        """Antiderivative in ``var`` with zero constant of integration."""
        p = self if var in self.vars else self.embed(merge_vars(self.vars, (var,)))
        i = p.vars.index(var)
        terms = {}
        for e, c in p.terms.items():
            k = e[i]
            terms[e[:i] + (k + 1,) + e[i + 1:]] = c / (k + 1)
        return MPoly._new(terms, p.vars)

    def subs(self, values: dict) -> "MPoly":
        """Substitute GaussRat values or MPolys for variables."""
        if not values:
            return self
        vals = {v: values[v] for v in values if v in self.vars}
        if not vals:
            return self
        const_vals = {}
        poly_vals = {}
        for v, val in vals.items():
            if isinstance(val, MPoly):
                poly_vals[v] = val
            else:
                const_vals[v] = as_gaussrat(val)
        p = self
        if const_vals:
            idx = [(p.vars.index(v), c) for v, c in const_vals.items()]
            keep = tuple(v for v in p.vars if v not in const_vals)
            keep_idx = [p.vars.index(v) for v in keep]
            cache = {}
            terms = {}
            for e, c in p.terms.items():
                for i, val in idx:
                    k = e[i]
                    if k:
                        key = (i, k)
                        pw = cache.get(key)
                        if pw is None:
                            pw = val ** k
                            cache[key] = pw
                        c = c * pw
                if not c:
                    continue
                ne = tuple(e[j] for j in keep_idx)
                s = terms.get(ne)
                terms[ne] = c if s is None else s + c
            p = MPoly._new({e: c for e, c in terms.items() if c}, keep)
        if poly_vals:
            target = merge_vars(tuple(v for v in p.vars if v not in poly_vals),
                                *[q.vars for q in poly_vals.values()])
            idx = [(p.vars.index(v), q.embed(target)) for v, q in poly_vals.items()]
            keep_pos = [(i, target.index(v)) for i, v in enumerate(p.vars) if v not in poly_vals]
            result = MPoly.zero(target)
            powcache = {}
            n = len(target)
            for e, c in p.terms.items():
                ne = [0] * n
                for i, j in keep_pos:
                    ne[j] = e[i]
                term = MPoly._new({tuple(ne): c}, target)
                for i, q in idx:
                    k = e[i]
                    if k:
                        pw = powcache.get((i, k))
                        if pw is None:
                            pw = q ** k
                            powcache[(i, k)] = pw
                        term = term * pw
                result = result + term
            p = result
        return p

    def evaluate(self, values: dict) -> GaussRat:
        """Full evaluation to a Gaussian rational."""
        r = self.subs(values)
        if r.used_vars():
            missing = r.used_vars()
            raise ValueError(f"no value given for {missing}")
        return r.constant_term()

    def monic(self) -> "MPoly":
        if not self.terms:
            return self
        return self.scale(self.leading_coefficient().inverse())

    # -- division ------------------------------------------------------------------
    def exact_div(self, q: "MPoly") -> "MPoly":
        """Return r with self == q * r, or raise NotDivisible."""
        if not isinstance(q, MPoly):
            q = MPoly.const(q, self.vars)
        if not q.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        p, q, vars = self._unify(q)
        if q.is_constant():
            return p.scale(q.constant_value().inverse())
        eq, cq = q.leading_term()
        cq_inv = cq.inverse()
        rem = dict(p.terms)
        quot = {}
        qterms = list(q.terms.items())
        while rem:
            e = max(rem, key=_mono_key)
            c = rem[e]
            d = tuple(a - b for a, b in zip(e, eq))
            if any(k < 0 for k in d):
                raise NotDivisible(f"{q} does not divide {p}")
            t = c * cq_inv
            quot[d] = t
            for e2, c2 in qterms:
                k = tuple(a + b for a, b in zip(e2, d))
                v = rem.get(k, ZERO) - t * c2
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return MPoly._new(quot, vars)

    def divides(self, p: "MPoly") -> bool:
        try:
            p.exact_div(self)
        except NotDivisible:
            return False
        return True

    # -- printing ------------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.vars, e) if k
            )
            parts.append(_term_str(c, mono))
        s = parts[0]
        for t in parts[1:]:
            s += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return s

    def __repr__(self):
        return f"MPoly({self})"

    def is_sum(self) -> bool:
        """True when printing needs parentheses to act as a factor."""
        if len(self.terms) > 1:
            return True
        if len(self.terms) == 1:
            c = next(iter(self.terms.values()))
            return c.needs_parens()
        return False


def _term_str(c: GaussRat, mono: str) -> str:
    if not mono:
        return str(c)
    if c.is_one():
        return mono
    if c == -ONE:
        return "-" + mono
    if c.needs_parens():
        return f"({c})*{mono}"
    return f"{c}*{mono}"


def poly_var(name: str, vars=None) -> MPoly:
    return MPoly.var(name, vars)


def poly_const(c, vars=()) -> MPoly:
    return MPoly.const(c, vars)


def psum(polys, vars=()):
    return reduce(lambda a, b: a + b, polys, MPoly.zero(vars))
