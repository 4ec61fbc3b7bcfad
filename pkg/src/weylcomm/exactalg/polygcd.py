"""Polynomial gcds, contents and square-free decompositions over Q(i).

Multivariate gcds use the recursive primitive remainder sequence: content
in the main variable is a gcd over the remaining variables, and the
primitive parts are reduced with pseudo-remainders.  Sizes met in this
package are small (bivariate curves and symbols, univariate x-polynomials),
so no modular machinery is needed.
"""

from __future__ import annotations

from math import gcd as igcd

from .mpoly import MPoly, merge_vars, var_key

__all__ = [
    "poly_gcd",
    "content",
    "primitive_part",
    "pseudo_rem",
    "normalize_unit",
    "sqf_list",
    "squarefree_power",
    "udivmod",
]


def normalize_unit(p: MPoly) -> MPoly:
    """Scale so the grlex-leading coefficient is 1 (zero stays zero)."""
    if p.is_zero():
        return p
    return p.monic()


def _main_var(*polys):
    used = set()
    for p in polys:
        used.update(p.used_vars())
    if not used:
        return None
    return max(used, key=var_key)


def pseudo_rem(a: MPoly, b: MPoly, var: str) -> MPoly:
    """A nonzero-constant-free multiple of the remainder of ``a`` by ``b`` in ``var``.

    Computed as repeated ``lc(b)*r - lc(r)*var^k*b``; the result differs from
    the textbook pseudo-remainder only by a power of lc(b).
    """
    db = b.degree(var)
    if db < 0:
        raise ZeroDivisionError("pseudo-remainder by zero")
    lcb = b.lead_coeff_in(var)
    xv = MPoly.var(var, merge_vars(a.vars, b.vars))
    r = a
    while not r.is_zero() and r.degree(var) >= db:
        k = r.degree(var) - db
        lcr = r.lead_coeff_in(var)
        r = r * lcb - lcr * (xv ** k) * b
    return r


def content(p: MPoly, var: str) -> MPoly:
    """gcd of the coefficients of ``p`` viewed as a polynomial in ``var``."""
    if p.is_zero():
        return p
    g = None
    for c in sorted(p.coefficients_in(var).values(), key=lambda c: len(c.terms)):
        g = c if g is None else poly_gcd(g, c)
        if g.is_constant():
            return MPoly.const(1, p.vars)
    return normalize_unit(g)


def primitive_part(p: MPoly, var: str) -> MPoly:
    if p.is_zero():
        return p
    return p.exact_div(content(p, var))


def poly_gcd(p: MPoly, q: MPoly) -> MPoly:
    """Monic (grlex-leading coefficient 1) greatest common divisor."""
    p, q, vars = p._unify(q)
    if p.is_zero():
        return normalize_unit(q)
    if q.is_zero():
        return normalize_unit(p)
    if p.is_constant() or q.is_constant():
        return MPoly.const(1, vars)
    main = _main_var(p, q)
    if main not in p.used_vars():
        return poly_gcd(p, content(q, main))
    if main not in q.used_vars():
        return poly_gcd(content(p, main), q)
    cp, cq = content(p, main), content(q, main)
    c = poly_gcd(cp, cq)
    a, b = p.exact_div(cp), q.exact_div(cq)
    if a.degree(main) < b.degree(main):
        a, b = b, a
    if len(p.used_vars()) == 1 and len(q.used_vars()) == 1:
        # univariate: plain Euclid over the field keeps numbers small
        while not b.is_zero():
            a, b = b, _urem(a, b, main)
        return normalize_unit(c * a)
    while not b.is_zero() and b.degree(main) > 0:
        r = pseudo_rem(a, b, main)
        a, b = b, (primitive_part(r, main) if not r.is_zero() else r)
    g = a if b.is_zero() else MPoly.const(1, vars)
    if not g.is_constant():
        g = primitive_part(g, main)
    return normalize_unit(c * g)


def _urem(a: MPoly, b: MPoly, var: str) -> MPoly:
    db = b.degree(var)
    lcb_inv = b.lead_coeff_in(var).constant_value().inverse()
    xv = MPoly.var(var, a.vars)
    r = a
    while not r.is_zero() and r.degree(var) >= db:
        k = r.degree(var) - db
        t = r.lead_coeff_in(var).scale(lcb_inv)
        r = r - t * (xv ** k) * b
    return r


def udivmod(a: MPoly, b: MPoly, var: str = "x"):
    """Division with remainder for polynomials univariate in ``var``."""
    a, b, vars = a._unify(b)
    db = b.degree(var)
    if db < 0:
        raise ZeroDivisionError("division by zero polynomial")
    lcb = b.lead_coeff_in(var)
    if not lcb.is_constant():
        raise ValueError("udivmod needs a divisor with constant leading coefficient")
    lcb_inv = lcb.constant_value().inverse()
    xv = MPoly.var(var, vars)
    q = MPoly.zero(vars)
    r = a
    while not r.is_zero() and r.degree(var) >= db:
        k = r.degree(var) - db
        t = r.lead_coeff_in(var).scale(lcb_inv) * (xv ** k)
        q = q + t
        r = r - t * b
    return q, r


def _yun(f: MPoly, var: str):
    """Yun's square-free decomposition of a primitive ``f`` in ``var``."""
    out = []
    fp = f.diff(var)
    b = poly_gcd(f, fp)
    c = f.exact_div(b)
    d = fp.exact_div(b) - c.diff(var)
    i = 1
    while c.degree(var) > 0:
        a = poly_gcd(c, d)
        if a.degree(var) > 0:
            out.append((a, i))
        c = c.exact_div(a)
        d = d.exact_div(a) - c.diff(var)
        i += 1
    return out


def sqf_list(f: MPoly, main: str | None = None):
    """Square-free decomposition ``f = lc * prod(g_k ** m_k)``.

    Returns ``(lc, [(g_k, m_k), ...])`` with normalized, pairwise coprime,
    square-free factors.  ``main`` picks the first variable to split on.
    """
    if f.is_zero():
        raise ValueError("square-free decomposition of zero")
    if f.is_constant():
        return f.constant_value(), []
    used = f.used_vars()
    if main is None or main not in used:
        main = max(used, key=var_key)
    cont = content(f, main)
    pp = f.exact_div(cont)
    factors = [(normalize_unit(g), m) for g, m in _yun(pp, main)]
    if not cont.is_constant():
        _, cfactors = sqf_list(cont)
        factors.extend(cfactors)
    merged = {}
    for g, m in factors:
        merged[m] = merged[m] * g if m in merged else g
    factors = sorted(merged.items())
    prod = MPoly.const(1, f.vars)
    for m, g in factors:
        prod = prod * g ** m
    lc = f.exact_div(prod)
    if not lc.is_constant():
        raise ArithmeticError("square-free decomposition lost a factor")
    return lc.constant_value(), [(g, m) for m, g in factors]


def multiplicity_gcd(factors) -> int:
    e = 0
    for _, m in factors:
        e = igcd(e, m)
    return e


def squarefree_power(f: MPoly, main: str = "mu"):
    """Write ``f = c * h**r`` with h not a proper power.

    ``r`` is the gcd of the square-free multiplicities of f; h is normalized
    so that its leading coefficient in ``main`` has grlex-leading
    coefficient 1.  Returns ``(h, r, c)``.
    """
    if f.is_zero() or f.is_constant():
        raise ValueError("squarefree_power needs a non-constant polynomial")
    lc, factors = sqf_list(f, main)
    r = multiplicity_gcd(factors)
    h = MPoly.const(1, f.vars)
    for g, m in factors:
        h = h * g ** (m // r)
    lead = h.lead_coeff_in(main) if main in h.used_vars() else h
    h = h.scale(lead.leading_coefficient().inverse())
    c = f.exact_div(h ** r)
    return h, r, c.constant_value()
