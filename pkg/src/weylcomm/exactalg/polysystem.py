"""Solving small polynomial systems over Q(i) by splitting and substitution.

The solver repeatedly
  * substitutes a variable that occurs linearly with a constant coefficient,
  * splits on univariate equations at their roots in Q(i),
  * splits on monomial factors (v * rest = 0),
  * splits ``a*v + b = 0`` into ``a = 0`` and ``v = -b/a``,
  * and, as a last resort, adds a resultant that eliminates one variable.
Roots outside Q(i) cannot be represented; the factors carrying them are
reported in ``SystemSolution.discarded`` instead of being dropped silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy

from ..errors import UnsupportedStructure
from .gaussrat import ONE, GaussRat
from .mpoly import MPoly, merge_vars
from .linalg import det_fraction_free
from .polygcd import poly_gcd

__all__ = ["gaussian_roots", "solve_polynomial_system", "SystemSolution", "univariate_resultant"]


def _to_sympy(c: GaussRat):
    return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(
        c.im.numerator, c.im.denominator
    )


def _from_sympy(c) -> GaussRat:
    re, im = sympy.Rational(sympy.re(c)), sympy.Rational(sympy.im(c))
    return GaussRat._make(re.p * im.q, im.p * re.q, re.q * im.q)


def gaussian_roots(p: MPoly, var: str):
    """Roots of a univariate polynomial lying in Q(i), and leftover factors.

    Returns ``(roots, others)``: distinct roots, plus the irreducible
    factors of degree > 1 over Q(i) (as MPolys) whose roots lie outside.
    """
    if p.is_zero():
        raise ValueError("roots of the zero polynomial")
    if set(p.used_vars()) - {var}:
        raise ValueError("gaussian_roots expects a univariate polynomial")
    v = sympy.Symbol(var)
    coeffs = [ONE * 0] * (p.degree(var) + 1)
    for k, c in p.coefficients_in(var).items():
        coeffs[k] = c.constant_term()
    sp = sympy.Poly([_to_sympy(c) for c in reversed(coeffs)], v, domain="QQ_I")
    roots, others = [], []
    for fac, _ in sp.factor_list()[1]:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            roots.append(_from_sympy(-b / a))
        elif fac.degree() > 1:
            cs = [_from_sympy(c) for c in reversed(fac.all_coeffs())]
            others.append(MPoly.from_univariate(cs, var))
    return roots, others


def univariate_resultant(p: MPoly, q: MPoly, var: str) -> MPoly:
    """Sylvester resultant of p and q with respect to ``var``."""
    p, q, vars = p._unify(q)
    n, m = p.degree(var), q.degree(var)
    z = MPoly.zero(vars)
    pc = [p.coeff(var, k).embed(vars) for k in range(n, -1, -1)]
    qc = [q.coeff(var, k).embed(vars) for k in range(m, -1, -1)]
    size = n + m
    rows = [[z] * i + pc + [z] * (size - n - 1 - i) for i in range(m)]
    rows += [[z] * i + qc + [z] * (size - m - 1 - i) for i in range(n)]
    return det_fraction_free(rows)


@dataclass
class SystemSolution:
    """Solution branches; each is a dict var -> MPoly over the free variables."""

    branches: list = field(default_factory=list)
    discarded: list = field(default_factory=list)


def _mono_gcd(p: MPoly):
    es = list(p.terms)
    return tuple(min(e[i] for e in es) for i in range(len(p.vars)))


class _Solver:
    def __init__(self, unknowns, max_depth):
        self.unknowns = set(unknowns)
        self.max_depth = max_depth
        self.discarded = []
        self.out = []

    def run(self, eqs, assign, pending, depth=0, used_pairs=frozenset()):
        if depth > self.max_depth:
            raise UnsupportedStructure("polynomial system solver exceeded its branching depth")
        clean = {}
        for e in eqs:
            e = e.trim()
            if e.is_zero():
                continue
            if e.is_constant():
                return
            clean[e.monic()] = None
        eqs = sorted(clean, key=lambda e: (len(e.used_vars()), len(e.terms), e.degree(), str(e)))
        if not eqs:
            self._finish(assign, pending)
            return
        nxt = depth + 1

        # linear with constant coefficient
        for e in eqs:
            for v in e.used_vars():
                if v in self.unknowns and e.degree(v) == 1:
                    a = e.coeff(v, 1)
                    if a.is_constant():
                        val = (e - a * MPoly.var(v, e.vars)).scale(-a.constant_value().inverse()).trim()
                        self._sub(eqs, assign, pending, v, val, nxt, used_pairs, skip=e)
                        return

        # univariate
        for e in eqs:
            uv = e.used_vars()
            if len(uv) == 1 and uv[0] in self.unknowns:
                # the gcd of every univariate equation in this variable
                g = e
                for q in eqs:
                    if q.used_vars() == uv:
                        g = poly_gcd(g, q)
                if g.is_constant():
                    return
                roots, others = gaussian_roots(g, uv[0])
                self.discarded.extend(others)
                for r in roots:
                    self._sub(eqs, assign, pending, uv[0], MPoly.const(r), nxt, used_pairs)
                return

        # monomial factor
        for e in eqs:
            g = _mono_gcd(e)
            if any(g):
                for v, k in zip(e.vars, g):
                    if k:
                        self._sub(eqs, assign, pending, v, MPoly.const(0), nxt, used_pairs)
                rest = e.exact_div(MPoly._new({g: ONE}, e.vars))
                self.run([rest] + [q for q in eqs if q is not e], assign, pending, nxt, used_pairs)
                return

        # linear with non-constant coefficient: a*v + b = 0
        for e in eqs:
            for v in e.used_vars():
                if v in self.unknowns and e.degree(v) == 1:
                    a = e.coeff(v, 1).trim()
                    b = (e - a * MPoly.var(v, e.vars)).trim()
                    self.run([a, b] + [q for q in eqs if q is not e], assign, pending, nxt, used_pairs)
                    neweqs = []
                    for q in eqs:
                        if q is e:
                            continue
                        neweqs.append(_clear_sub(q, v, b, a))
                    self.run(neweqs, assign, pending + [(v, -b, a)], nxt, used_pairs)
                    return

        # eliminate a variable with a resultant
        for i, e1 in enumerate(eqs):
            for e2 in eqs[i + 1:]:
                common = [v for v in e1.used_vars() if v in e2.used_vars() and v in self.unknowns]
                for v in sorted(common, key=lambda v: e1.degree(v) + e2.degree(v)):
                    key = (e1, e2, v)
                    if key in used_pairs:
                        continue
                    r = univariate_resultant(e1, e2, v).trim()
                    if r.is_zero():
                        continue
                    self.run([r] + eqs, assign, pending, nxt, used_pairs | {key})
                    return
        raise UnsupportedStructure(f"cannot reduce the system further: {[str(e) for e in eqs[:4]]}")

    def _sub(self, eqs, assign, pending, v, val, depth, used_pairs, skip=None):
        new = [q.subs({v: val}) for q in eqs if q is not skip]
        na = {k: b.subs({v: val}) for k, b in assign.items()}
        na[v] = val
        npend = [(w, b.subs({v: val}), a.subs({v: val})) for w, b, a in pending]
        self.run(new, na, npend, depth, used_pairs)

    def _finish(self, assign, pending):
        assign = dict(assign)
        for v, num, den in reversed(pending):
            num = num.subs(assign).trim()
            den = den.subs(assign).trim()
            if den.is_zero():
                return
            if not den.is_constant():
                raise UnsupportedStructure("back-substitution left a rational-function value")
            val = num.scale(den.constant_value().inverse())
            assign = {k: b.subs({v: val}) for k, b in assign.items()}
            assign[v] = val
        self.out.append(assign)


def _clear_sub(q: MPoly, v: str, b: MPoly, a: MPoly) -> MPoly:
    """a^deg * q(v = -b/a), a polynomial."""
    d = q.degree(v)
    if d <= 0:
        return q
    vars = merge_vars(q.vars, a.vars, b.vars)
    total = MPoly.zero(vars)
    negb = -b
    for k, c in q.coefficients_in(v).items():
        total = total + c.subs({v: 0}) * negb ** k * a ** (d - k)
    return total


def solve_polynomial_system(equations, unknowns, max_depth: int = 200) -> SystemSolution:
    """All solutions over Q(i) of ``eq == 0`` for eq in ``equations``.

    Variables that are not listed in ``unknowns`` are treated as free
    parameters that must not be constrained.  Every returned branch is
    re-verified against the original equations.
    """
    equations = [e if isinstance(e, MPoly) else MPoly.const(e) for e in equations]
    solver = _Solver(unknowns, max_depth)
    solver.run(equations, {}, [])
    branches = []
    seen = set()
    for a in solver.out:
        if not all(e.subs(a).trim().is_zero() for e in equations):
            continue
        key = tuple(sorted((k, str(v)) for k, v in a.items()))
        if key not in seen:
            seen.add(key)
            branches.append(a)
    return SystemSolution(branches=branches, discarded=solver.discarded)
