"""Exact determinants and linear solving over Q(i) and Q(i)[vars]."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import lcm

from ..errors import GridDegenerate, NotAffine
from .gaussrat import ONE, ZERO, GaussRat, as_gaussrat
from .mpoly import MPoly, merge_vars

__all__ = [
    "det_fraction_free",
    "det_eval_interp",
    "det_degree_bound",
    "det_numeric",
    "solve_linear",
    "solve_sparse",
    "Unique",
    "Parametric",
    "Inconsistent",
]


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------

def _as_poly_matrix(m):
    rows = [list(r) for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    vars = merge_vars(*[e.vars for r in rows for e in r if isinstance(e, MPoly)])
    return [[e.embed(vars) if isinstance(e, MPoly) else MPoly.const(e, vars) for e in r] for r in rows], vars


def det_numeric(m) -> GaussRat:
    """Determinant of a matrix of Gaussian rationals.

    Rows are scaled to Gaussian integers, then Bareiss elimination runs
    with exact divisions in Z[i].
    """
    n = len(m)
    if n == 0:
        return ONE
    denom = 1
    rows = []
    for r in m:
        zs = [as_gaussrat(z) for z in r]
        L = 1
        for z in zs:
            if z.d != 1:
                L = lcm(L, z.d)
        denom *= L
        rows.append([[z.a * (L // z.d), z.b * (L // z.d)] for z in zs])
    sign = 1
    pa, pb = 1, 0
    for k in range(n - 1):
        if rows[k][k][0] == 0 and rows[k][k][1] == 0:
            for s in range(k + 1, n):
                if rows[s][k][0] or rows[s][k][1]:
                    rows[k], rows[s] = rows[s], rows[k]
                    sign = -sign
                    break
            else:
                return ZERO
        ka, kb = rows[k][k]
        rk = rows[k]
        pn = pa * pa + pb * pb
        for i in range(k + 1, n):
            ri = rows[i]
            ia, ib = ri[k]
            for j in range(k + 1, n):
                xa, xb = ri[j]
                ya, yb = rk[j]
                # (x*pivot - ri[k]*rk[j]) / prev
                ua = xa * ka - xb * kb - (ia * ya - ib * yb)
                ub = xa * kb + xb * ka - (ia * yb + ib * ya)
                if pb == 0:
                    if pa != 1:
                        ua //= pa
                        ub //= pa
                else:
                    ua, ub = (ua * pa + ub * pb) // pn, (ub * pa - ua * pb) // pn
                ri[j] = [ua, ub]
            ri[k] = [0, 0]
        pa, pb = ka, kb
    a, b = rows[n - 1][n - 1]
    return GaussRat._make(sign * a, sign * b, denom)


def _det_laplace(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        t = m[0][j] * _det_laplace(minor)
        if j % 2:
            t = -t
        total = t if total is None else total + t
    return total if total is not None else MPoly.zero(m[0][0].vars)


def _det_bareiss(m, vars):
    n = len(m)
    a = [list(r) for r in m]
    sign = 1
    prev = MPoly.const(1, vars)
    for k in range(n - 1):
        # choose the sparsest nonzero pivot in column k
        best = None
        for s in range(k, n):
            if not a[s][k].is_zero() and (best is None or len(a[s][k].terms) < len(a[best][k].terms)):
                best = s
        if best is None:
            return MPoly.zero(vars)
        if best != k:
            a[k], a[best] = a[best], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                t = a[i][j] * piv
                if not aik.is_zero() and not a[k][j].is_zero():
                    t = t - aik * a[k][j]
                a[i][j] = t if prev.is_one() else t.exact_div(prev)
            a[i][k] = MPoly.zero(vars)
        prev = piv
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def det_fraction_free(m) -> MPoly:
    """Exact determinant of a square matrix with MPoly (or scalar) entries.

    Constant matrices go through Gaussian-integer Bareiss; otherwise minor
    expansion for size <= 4 and one-step fraction-free elimination beyond.
    """
    rows, vars = _as_poly_matrix(m)
    n = len(rows)
    if n == 0:
        return MPoly.const(1, vars)
    if all(e.is_constant() for r in rows for e in r):
        return MPoly.const(det_numeric([[e.constant_value() for e in r] for r in rows]), vars)
    if n <= 4:
        return _det_laplace(rows)
    return _det_bareiss(rows, vars)


def det_degree_bound(m, var: str) -> int:
    """Sound upper bound for the degree in ``var`` of det(m)."""
    rows, _ = _as_poly_matrix(m)
    n = len(rows)
    row_sum = 0
    for r in rows:
        ds = [e.degree(var) for e in r if not e.is_zero()]
        if not ds:
            return 0
        row_sum += max(ds)
    col_sum = 0
    for j in range(n):
        ds = [rows[i][j].degree(var) for i in range(n) if not rows[i][j].is_zero()]
        if not ds:
            return 0
        col_sum += max(ds)
    return min(row_sum, col_sum)


def _newton_interp(nodes, values, var, vars):
    """Interpolate MPoly values at distinct GaussRat nodes in ``var``."""
    k = len(nodes)
    coef = list(values)
    for j in range(1, k):
        for i in range(k - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]).scale((nodes[i] - nodes[i - j]).inverse())
    v = MPoly.var(var, vars)
    p = coef[-1]
    for i in range(k - 2, -1, -1):
        p = p * (v - MPoly.const(nodes[i], vars)) + coef[i]
    return p


def det_eval_interp(m, eval_vars, degree_bounds=None, nodes=None) -> MPoly:
    """Determinant by evaluation of ``eval_vars`` on a grid and interpolation.

    ``degree_bounds`` maps each eval variable to an upper bound on the
    degree of the determinant in it; when omitted, the row/column degree
    sums give a sound bound.  Optional ``nodes`` maps variables to explicit
    node lists (at least bound+1 distinct values).
    """
    rows, vars = _as_poly_matrix(m)
    eval_vars = list(eval_vars)
    bounds = {}
    for v in eval_vars:
        b = None if degree_bounds is None else degree_bounds.get(v)
        bounds[v] = det_degree_bound(rows, v) if b is None else b
    grid = []
    for v in eval_vars:
        if nodes and v in nodes:
            pts = [as_gaussrat(t) for t in nodes[v]]
            if len(set(pts)) != len(pts):
                raise GridDegenerate(f"interpolation nodes for {v} collide")
            if len(pts) < bounds[v] + 1:
                raise GridDegenerate(f"need {bounds[v] + 1} nodes for {v}, got {len(pts)}")
            pts = pts[: bounds[v] + 1]
        else:
            pts = [as_gaussrat(t) for t in range(bounds[v] + 1)]
        grid.append(pts)
    rest = tuple(v for v in vars if v not in eval_vars)
    values = {}
    for point in product(*grid):
        sub = dict(zip(eval_vars, point))
        ev = [[e.subs(sub) for e in r] for r in rows]
        values[point] = det_fraction_free(ev).embed(merge_vars(rest, *[e.vars for r in ev for e in r]))
    out_vars = merge_vars(vars)
    data = {k: v.embed(out_vars) for k, v in values.items()}
    for idx in range(len(eval_vars) - 1, -1, -1):
        var = eval_vars[idx]
        groups = {}
        for key, val in data.items():
            groups.setdefault(key[:idx], []).append((key[idx], val))
        data = {}
        for prefix, items in groups.items():
            items.sort(key=lambda t: grid[idx].index(t[0]))
            data[prefix] = _newton_interp([t[0] for t in items], [t[1] for t in items], var, out_vars)
    return data[()]


# ---------------------------------------------------------------------------
# linear systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Unique:
    assignment: dict


@dataclass(frozen=True)
class Parametric:
    particular: dict
    basis: list = field(default_factory=list)


@dataclass(frozen=True)
class Inconsistent:
    pass


def solve_sparse(rows, rhs, ncols):
    """Solve ``sum(row[j] * t_j) = rhs`` for sparse rows over Q(i).

    ``rows`` is a list of {column: GaussRat}.  Returns ``None`` when the
    system is inconsistent, else ``(particular, basis)`` with particular a
    {column: value} dict and basis a list of {column: value} null vectors.
    """
    R = {}
    B = {}
    col_rows = {}
    for rid, (row, b) in enumerate(zip(rows, rhs)):
        r = {c: as_gaussrat(v) for c, v in row.items() if v}
        b = as_gaussrat(b)
        if not r:
            if b:
                return None
            continue
        R[rid] = r
        B[rid] = b
        for c in r:
            col_rows.setdefault(c, set()).add(rid)
    active = set(R)
    pivots = {}
    while active:
        rid = min(active, key=lambda k: (len(R[k]), k))
        active.discard(rid)
        row = R[rid]
        if not row:
            if B[rid]:
                return None
            del R[rid]
            continue
        col = min(row, key=lambda c: (len(col_rows[c]), c))
        inv = row[col].inverse()
        if not inv.is_one():
            row = {c: v * inv for c, v in row.items()}
            R[rid] = row
            B[rid] = B[rid] * inv
        brow = B[rid]
        for other in list(col_rows[col]):
            if other == rid:
                continue
            orow = R[other]
            f = orow[col]
            for c, v in row.items():
                nv = orow.get(c, ZERO) - f * v
                if nv:
                    if c not in orow:
                        col_rows[c].add(other)
                    orow[c] = nv
                else:
                    if c in orow:
                        del orow[c]
                        col_rows[c].discard(other)
            if brow:
                B[other] = B[other] - f * brow
        pivots[col] = rid
    particular = {}
    for col, rid in pivots.items():
        if B[rid]:
            particular[col] = B[rid]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = {f: ONE}
        for col, rid in pivots.items():
            v = R[rid].get(f)
            if v:
                vec[col] = -v
        basis.append(vec)
    return particular, basis


def _linearize(equations, unknowns):
    idx = {u: k for k, u in enumerate(unknowns)}
    rows, rhs = [], []
    for eq in equations:
        if not isinstance(eq, MPoly):
            eq = MPoly.const(eq)
        extra = set(eq.used_vars()) - set(unknowns)
        if extra:
            raise NotAffine(f"equation involves non-unknown variables {sorted(extra)}")
        row = {}
        b = ZERO
        for e, c in eq.terms.items():
            deg = sum(e)
            if deg == 0:
                b = b - c
            elif deg == 1:
                v = eq.vars[next(i for i, k in enumerate(e) if k)]
                row[idx[v]] = row.get(idx[v], ZERO) + c
            else:
                raise NotAffine(f"equation {eq} is not affine in {unknowns}")
        rows.append(row)
        rhs.append(b)
    return rows, rhs


def solve_linear(equations, unknowns):
    """Exact Gaussian elimination for affine equations ``eq == 0``.

    Returns :class:`Unique`, :class:`Parametric` or :class:`Inconsistent`.
    """
    unknowns = list(unknowns)
    rows, rhs = _linearize(equations, unknowns)
    res = solve_sparse(rows, rhs, len(unknowns))
    if res is None:
        return Inconsistent()
    particular, basis = res
    assign = {u: particular.get(k, ZERO) for k, u in enumerate(unknowns)}
    if not basis:
        return Unique(assign)
    named = [{unknowns[k]: v for k, v in vec.items()} for vec in basis]
    return Parametric(assign, named)
