"""Sylvester matrices of operator pairs, differential (sub)resultants and spectral curves."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import BadIndex, NotCommuting, RankMismatch, SingularPoint
from .exactalg import (
    GaussRat,
    MPoly,
    RatFunc,
    as_gaussrat,
    det_eval_interp,
    det_fraction_free,
    det_numeric,
    poly_gcd,
    squarefree_power,
)
from .exactalg.mpoly import merge_vars
from .oreops import DiffOp, div_right, op_commutator, op_mul

__all__ = [
    "SylvesterK",
    "PlaneCurve",
    "build_sylvester",
    "diff_resultant",
    "subresultant_op",
    "spectral_curve",
    "verify_bc_relation",
    "rank_report",
    "is_nonsingular_point",
    "gcd_at_point",
    "matrix_det",
]

# x-values used to specialise commuting pairs before the curve determinant
X_PROBES = (GaussRat(3, 0) / 7, GaussRat(-5, 0) / 11)


@dataclass(frozen=True)
class SylvesterK:
    """Coefficient matrix of the extended system for index ``k``.

    ``rows[r][c]`` is the coefficient of ``D**(ncols-1-c)`` in the r-th
    operator of the system.  ``row_scales`` lists the polynomial factors
    used to clear denominators (all 1 for polynomial inputs).
    """

    k: int
    n: int
    m: int
    rows: list
    row_scales: list = field(default_factory=list)

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def column_power(self, c: int) -> int:
        return self.shape[1] - 1 - c

    def minor_matrix(self, i: int):
        """S_k^i: drop the columns D^k .. D^0 except D^i."""
        ncols = self.shape[1]
        keep = [c for c in range(ncols) if self.column_power(c) > self.k or self.column_power(c) == i]
        return [[row[c] for c in keep] for row in self.rows]


@dataclass(frozen=True)
class PlaneCurve:
    """``f = c * h**r`` with h primitive and not a proper power."""

    f: MPoly
    h: MPoly
    r: int
    c: GaussRat
    path: str = "interpolated"

    def __str__(self):
        return f"f = {self.f}; h = {self.h}; r = {self.r}; c = {self.c}"


def _clear_denominators(op: DiffOp):
    """Left-multiply by the lcm of coefficient denominators."""
    scale = MPoly.const(1)
    for c in op.coeffs:
        if not c.is_poly():
            g = poly_gcd(scale, c.den)
            scale = scale * c.den.exact_div(g)
    if scale.is_one():
        return op, scale
    return op.left_scale(RatFunc._poly(scale)), scale


def _d_times(op: DiffOp) -> DiffOp:
    """D * op, computed by one Leibniz step."""
    cs = [c.diff("x") for c in op.coeffs] + [RatFunc.coerce(0)]
    for j, c in enumerate(op.coeffs):
        cs[j + 1] = cs[j + 1] + c
    return DiffOp._new(cs)


def _shifted_rows(op: DiffOp, count: int, ncols: int):
    """Coefficient rows of D^(count-1)*op, ..., D*op, op."""
    ops = [op]
    for _ in range(count - 1):
        ops.append(_d_times(ops[-1]))
    rows = []
    for o in reversed(ops):
        row = []
        for c in range(ncols):
            row.append(o.coeff(ncols - 1 - c).num)
        rows.append(row)
    return rows


def build_sylvester(l: DiffOp, m: DiffOp, k: int = 0) -> SylvesterK:
    if l.is_zero() or m.is_zero():
        raise ValueError("Sylvester matrix of a zero operator")
    n, mm = l.order, m.order
    if not 0 <= k <= min(n, mm) - 1:
        raise BadIndex(f"index k={k} outside 0..{min(n, mm) - 1}")
    lp, sl = _clear_denominators(l)
    mp, sm = _clear_denominators(m)
    ncols = n + mm - k
    rows = _shifted_rows(lp, mm - k, ncols) + _shifted_rows(mp, n - k, ncols)
    vars = merge_vars(*[e.vars for r in rows for e in r])
    rows = [[e.embed(merge_vars(vars, e.vars)) for e in r] for r in rows]
    scales = [sl] * (mm - k) + [sm] * (n - k)
    return SylvesterK(k=k, n=n, m=mm, rows=rows, row_scales=scales)


def matrix_det(rows, exact: bool = False) -> MPoly:
    """Determinant choosing a sound path.

    Numeric matrices use Gaussian-integer elimination.  Symbolic ones are
    evaluated on a grid sized by the row/column degree bounds of every
    variable and interpolated, unless ``exact`` asks for fraction-free
    elimination on the symbolic matrix.
    """
    vars = merge_vars(*[e.used_vars() for r in rows for e in r])
    if not vars:
        return MPoly.const(det_numeric([[e.constant_term() for e in r] for r in rows]))
    if exact or len(rows) <= 3:
        return det_fraction_free(rows).trim()
    return det_eval_interp(rows, vars).trim()


def diff_resultant(l: DiffOp, m: DiffOp, exact: bool = False) -> MPoly:
    """det S_0(l, m)."""
    return matrix_det(build_sylvester(l, m, 0).rows, exact)


def subresultant_op(l: DiffOp, m: DiffOp, k: int, exact: bool = False) -> DiffOp:
    """The operator sum_i det(S_k^i) D^i, i = 0..k."""
    s = build_sylvester(l, m, k)
    return DiffOp([matrix_det(s.minor_matrix(i), exact) for i in range(k + 1)])


def _require_commuting(l: DiffOp, m: DiffOp):
    if not op_commutator(l, m).is_zero():
        raise NotCommuting("the operators do not commute")


def _curve_matrix_at(l: DiffOp, m: DiffOp, x0) -> list:
    lam = MPoly.var("lam")
    mu = MPoly.var("mu")
    s = build_sylvester(l - lam, m - mu, 0)
    return [[e.subs({"x": x0}) for e in r] for r in s.rows]


def spectral_curve(l: DiffOp, m: DiffOp, exact: bool = False) -> PlaneCurve:
    """f(lam, mu) = det S_0(l - lam, m - mu) and its decomposition c*h^r.

    The default path specialises x at a rational probe (f is x-free for a
    commuting pair) and interpolates in lam, mu with degree bounds
    ord(m), ord(l); a second probe cross-checks the result.  ``exact``
    runs fraction-free elimination on the full symbolic matrix.
    """
    _require_commuting(l, m)
    n, mm = l.order, m.order
    if exact:
        lam = MPoly.var("lam")
        mu = MPoly.var("mu")
        f = det_fraction_free(build_sylvester(l - lam, m - mu, 0).rows).trim()
        if "x" in f.used_vars():
            raise ArithmeticError("spectral determinant depends on x for a commuting pair")
        path = "exact"
    else:
        bounds = {"lam": mm, "mu": n}
        vals = []
        for x0 in X_PROBES:
            rows = _curve_matrix_at(l, m, x0)
            vals.append(det_eval_interp(rows, ["lam", "mu"], bounds).trim())
        if vals[0] != vals[1]:
            raise ArithmeticError("spectral determinant differs between x probes")
        f = vals[0]
        path = "interpolated"
    h, r, c = squarefree_power(f, "mu")
    return PlaneCurve(f=f, h=h, r=r, c=c, path=path)


def eval_at_pair(h: MPoly, l: DiffOp, m: DiffOp) -> DiffOp:
    """h(l, m) with monomials evaluated as l^a * m^b."""
    extra = set(h.used_vars()) - {"lam", "mu"}
    if extra:
        raise ValueError(f"relation involves variables {sorted(extra)}")
    lp = [DiffOp([1])]
    mp = [DiffOp([1])]
    total = DiffOp([])
    for e, c in h.sorted_terms():
        a = e[h.vars.index("lam")] if "lam" in h.vars else 0
        b = e[h.vars.index("mu")] if "mu" in h.vars else 0
        while len(lp) <= a:
            lp.append(op_mul(lp[-1], l))
        while len(mp) <= b:
            mp.append(op_mul(mp[-1], m))
        total = total + op_mul(lp[a], mp[b]) * c
    return total


def verify_bc_relation(l: DiffOp, m: DiffOp, h: MPoly) -> bool:
    """True iff h(l, m) is the zero operator."""
    _require_commuting(l, m)
    return eval_at_pair(h, l, m).is_zero()


def rank_report(l: DiffOp, m: DiffOp, exact: bool = False):
    """(gcd of orders, exponent r of the spectral curve, whether they agree)."""
    curve = spectral_curve(l, m, exact)
    rk_pair = gcd(l.order, m.order)
    return rk_pair, curve.r, rk_pair == curve.r


def is_nonsingular_point(curve: PlaneCurve, lam0, mu0) -> bool:
    pt = {"lam": as_gaussrat(lam0), "mu": as_gaussrat(mu0)}
    h = curve.h
    if h.evaluate(pt):
        return False
    return bool(h.diff("lam").evaluate(pt)) or bool(h.diff("mu").evaluate(pt))


def gcd_at_point(l: DiffOp, m: DiffOp, curve: PlaneCurve, lam0, mu0) -> DiffOp:
    """The order-r subresultant of (l - lam0, m - mu0) at a non-singular curve point."""
    if not is_nonsingular_point(curve, lam0, mu0):
        raise SingularPoint(f"({lam0}, {mu0}) is not a non-singular point of the curve")
    lam0, mu0 = as_gaussrat(lam0), as_gaussrat(mu0)
    lt, mt = l - lam0, m - mu0
    r = curve.r
    for k in range(r):
        if not subresultant_op(lt, mt, k).is_zero():
            raise RankMismatch(f"subresultant of index {k} does not vanish")
    g = subresultant_op(lt, mt, r)
    if g.order != r:
        raise RankMismatch(f"subresultant of index {r} has order {g.order}")
    for op in (lt, mt):
        if not div_right(op, g)[1].is_zero():
            raise ArithmeticError("subresultant fails to right-divide the shifted operators")
    return g
