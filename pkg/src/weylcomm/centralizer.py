"""Centralizers of order-4 operators: ansatz searches, triviality and BC pairs."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil

from .errors import (
    CurveShapeUnexpected,
    NoSolution,
    NotCommuting,
    NotOrder4,
    OrderMismatch,
    UnsupportedStructure,
)
from .exactalg import ZERO, GaussRat, MPoly, RatFunc, as_gaussrat, solve_sparse
from .exactalg import solve_polynomial_system
from .oreops import DiffOp, div_left_factor, div_right, op_commutator, op_mul, poly_at_operator
from .resultants import PlaneCurve, spectral_curve

__all__ = [
    "CentralizerFamily",
    "FamilyBranch",
    "ParamDiffOp",
    "BCReport",
    "Trivial",
    "NonTrivial",
    "Solution",
    "NoParamSolution",
    "centralizer_search",
    "default_degree_bounds",
    "classify_family",
    "as_polynomial_in",
    "triviality_test",
    "remainder_sequence",
    "build_candidate",
    "commutator_system",
    "solve_param_system",
    "bc_pair",
]


# ---------------------------------------------------------------------------
# Grünbaum-style searches
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CentralizerFamily:
    """Affine family ``particular + sum(t_k * basis[k])`` of operators commuting with L.

    The basis operators have order below the target and commute with L on
    their own; they include the powers of L of smaller order.
    """

    particular: DiffOp
    basis: tuple = ()

    def member(self, coeffs=()) -> DiffOp:
        out = self.particular
        for t, b in zip(coeffs, self.basis):
            out = out + b * as_gaussrat(t)
        return out

    @property
    def dimension(self) -> int:
        return len(self.basis)


def default_degree_bounds(l: DiffOp, m: int) -> list:
    """x-degree bound for the D^j coefficient, j = 0..m-1."""
    n = l.order
    dx = max(c.num.degree("x") for c in l.coeffs)
    return [ceil(dx * (m - j) / n) + 2 for j in range(m)]


def _require_polynomial(l: DiffOp):
    l.poly_coeffs()
    if l.parameters():
        raise ValueError(f"operator carries symbolic parameters {l.parameters()}")


def _x_monomial_op(k: int, j: int) -> DiffOp:
    c = MPoly.var("x") ** k if k else MPoly.const(1)
    return DiffOp._new([RatFunc.coerce(0)] * j + [RatFunc.coerce(c)])


def centralizer_search(l: DiffOp, m: int, degbounds=None) -> CentralizerFamily:
    """All M = D^m + sum c_j(x) D^j with [l, M] = 0 and deg c_j <= degbounds[j].

    The commutator is linear in the unknown coefficients of the c_j, so the
    whole family comes from one sparse exact elimination.
    """
    _require_polynomial(l)
    if m < 1:
        raise ValueError("target order must be positive")
    if degbounds is None:
        degbounds = default_degree_bounds(l, m)
    elif isinstance(degbounds, int):
        degbounds = [degbounds] * m
    cols = [(j, k) for j in range(m) for k in range(degbounds[j] + 1)]
    eqs: dict = {}

    def scatter(op: DiffOp, col):
        for p, c in enumerate(op.coeffs):
            for e, v in c.num.terms.items():
                key = (p, e[0] if e else 0)
                eqs.setdefault(key, ({}, [ZERO]))
                row, rhs = eqs[key]
                if col is None:
                    rhs[0] = rhs[0] - v
                else:
                    row[col] = row.get(col, ZERO) + v

    scatter(op_commutator(l, DiffOp.d(m)), None)
    for idx, (j, k) in enumerate(cols):
        scatter(op_commutator(l, _x_monomial_op(k, j)), idx)
    rows = [r for r, _ in eqs.values()]
    rhs = [b[0] for _, b in eqs.values()]
    res = solve_sparse(rows, rhs, len(cols))
    if res is None:
        raise NoSolution(f"no operator of order {m} within the degree bounds commutes with L")
    particular, basis = res

    def to_op(vec, lead):
        cs = [MPoly.zero(("x",)) for _ in range(m)]
        for idx, v in vec.items():
            j, k = cols[idx]
            cs[j] = cs[j] + (MPoly.var("x") ** k).scale(v)
        return DiffOp(cs + ([1] if lead else []))

    fam_basis = tuple(sorted((to_op(v, False) for v in basis), key=lambda b: -b.order))
    return CentralizerFamily(to_op(particular, True), fam_basis)


@dataclass(frozen=True)
class FamilyBranch:
    """One solution of a parametric search.

    ``assignment`` fixes the operator's unknown parameters (possibly in
    terms of free ones); ``free_constants`` lists integration constants of
    the ansatz that stay free, each signalling an extra commuting operator
    of smaller order.  ``trivial`` marks branches where L commutes with an
    operator of order dividing ord(L) properly, i.e. L is a polynomial in
    a lower-order operator.
    """

    assignment: dict
    operator: DiffOp
    free_constants: tuple
    trivial: bool


def classify_family(l: DiffOp, m: int, unknowns) -> list:
    """Parameter values of a monic ``l`` admitting a commuting operator of order m.

    ``l`` carries polynomial unknowns in its coefficients.  The commuting
    ansatz is integrated one coefficient at a time: the top coefficient of
    the running commutator fixes c_j up to a constant, and the constants at
    orders divisible by ord(l) are dropped since they only add powers of l.
    What is left of the commutator gives a polynomial system in the
    unknowns and the remaining constants.
    """
    n = l.order
    if l.leading_coeff() != 1:
        raise ValueError("parametric search needs a monic operator")
    unknowns = list(unknowns)
    inv_n = GaussRat(-1) / n
    mop = DiffOp.d(m)
    comm = op_commutator(l, mop)
    consts = []
    for j in range(m - 1, -1, -1):
        top = comm.coeff(j + n - 1).num
        c = top.integrate("x").scale(inv_n)
        if j % n:
            k = f"k{j}"
            consts.append(k)
            c = c + MPoly.var(k)
        t = DiffOp._new([RatFunc.coerce(0)] * j + [RatFunc._poly(c)])
        comm = comm + op_commutator(l, t)
        mop = mop + t
    eqs = []
    for j in range(n - 1):
        for cf in comm.coeff(j).num.coefficients_in("x").values():
            cf = cf.trim()
            if not cf.is_zero():
                eqs.append(cf)
    sol = solve_polynomial_system(eqs, unknowns + consts)
    if sol.discarded:
        raise UnsupportedStructure(
            f"solutions outside Q(i) were found and cannot be represented: {[str(p) for p in sol.discarded]}"
        )
    # branches with the same parameter values nest; keep the widest one
    best = {}
    for br in sol.branches:
        assign = {u: br.get(u, MPoly.var(u)) for u in unknowns}
        key = tuple(str(assign[u]) for u in unknowns)
        free = tuple(sorted(k for k in consts if k not in br))
        if key not in best or len(free) > len(best[key][2]):
            best[key] = (assign, br, free)
    out = []
    for assign, br, free in best.values():
        trivial = _is_trivial_operator(l.subs(assign))
        out.append(FamilyBranch(assign, mop.subs(br), free, trivial))
    return out


def _is_trivial_operator(l: DiffOp) -> bool:
    """True when some operator of order d, d a proper divisor of ord(l), commutes with l."""
    n = l.order
    free = {v: 0 for v in l.parameters()}
    l0 = l.subs(free)
    for d in range(1, n):
        if n % d:
            continue
        try:
            centralizer_search(l0, d)
        except NoSolution:
            continue
        return True
    return False


# ---------------------------------------------------------------------------
# membership in C[L] and the triviality test
# ---------------------------------------------------------------------------

def as_polynomial_in(op: DiffOp, l: DiffOp):
    """p(lam) with op = p(l), or None when op is not a polynomial in l."""
    if l.order == 0:
        raise ValueError("expansion in a zero-order operator")
    coeffs = []
    rest = op
    while not rest.is_zero():
        rest, r = div_left_factor(rest, l)
        if not r.is_zero():
            if r.order > 0 or not r.coeff(0).is_constant():
                return None
            coeffs.append(r.coeff(0).num.constant_value())
        else:
            coeffs.append(ZERO)
    return MPoly.from_univariate(coeffs, "lam") if coeffs else MPoly.zero(("lam",))


@dataclass(frozen=True)
class Trivial:
    p0: MPoly


@dataclass(frozen=True)
class NonTrivial:
    curve: PlaneCurve | None = None


def triviality_test(l: DiffOp, m: DiffOp, exact: bool = False):
    """Trivial(p0) when the spectral curve is (p0(lam) - mu)^n and m = p0(l)."""
    if not op_commutator(l, m).is_zero():
        raise NotCommuting("the operators do not commute")
    curve = spectral_curve(l, m, exact)
    h = curve.h
    if curve.r == l.order and h.degree("mu") == 1:
        lead = h.coeff("mu", 1)
        if lead.is_constant():
            p0 = (-h.coeff("mu", 0)).scale(lead.constant_value().inverse()).trim()
            if (m - poly_at_operator(p0, l)).is_zero():
                return Trivial(p0)
    return NonTrivial(curve)


# ---------------------------------------------------------------------------
# the BC-pair construction
# ---------------------------------------------------------------------------

def remainder_sequence(m: DiffOp, l: DiffOp, g: int):
    """[R_1, ..., R_{g+1}] and the final quotient Q_{g+1}.

    Iterates M = l*Q_1 + R_1, Q_j = l*Q_{j+1} + R_{j+1}; raises
    OrderMismatch when M is too short for g+1 divisions.
    """
    n = l.order
    if g < 0:
        raise ValueError("g must be nonnegative")
    if m.is_zero() or m.order < n * (g + 1):
        raise OrderMismatch(f"order {m.order} is too small for {g + 1} divisions by an order-{n} operator")
    rs = []
    q = m
    for _ in range(g + 1):
        q, r = div_left_factor(q, l)
        rs.append(r)
    return rs, q


@dataclass(frozen=True)
class ParamDiffOp:
    """Differential operator whose coefficients are polynomials in x and parameters."""

    op: DiffOp
    params: tuple = ()

    @property
    def coeffs(self) -> list:
        return self.op.poly_coeffs()

    @property
    def order(self):
        return self.op.order

    def specialize(self, values: dict) -> DiffOp:
        vals = {k: MPoly.const(as_gaussrat(v)) for k, v in values.items()}
        return self.op.subs(vals)

    def __str__(self):
        return str(self.op)


def _d_of(g: int, q: int) -> int:
    return min(q - g, g)


def build_candidate(l: DiffOp, rems, g: int, q: int):
    """(B_a, p_a) for the given remainders R_1..R_{g+1}.

    B_a = l^g Q_{g,B} + sum_{j<g} l^j R_{j+1,B}, with the extended
    remainders obtained by peeling a_t R_{j-t,B} off each R_j.
    """
    if len(rems) < g + 1:
        raise ValueError(f"need {g + 1} remainders, got {len(rems)}")
    d = _d_of(g, q)
    params = tuple(f"a{t}" for t in range(1, d + 1))
    a = [None] + [MPoly.var(p) for p in params]
    rb = [None, rems[0]]
    for j in range(2, g + 1):
        acc = rems[j - 1]
        for t in range(1, min(j - 1, d) + 1):
            acc = acc - rb[j - t] * a[t]
        rb.append(acc)
    qb = rems[g]
    for t in range(1, d + 1):
        qb = qb - rb[g + 1 - t] * a[t]
    b = qb
    for j in range(g - 1, -1, -1):
        b = op_mul(l, b) + rb[j + 1]
    p = MPoly.const(1)
    for t in range(1, d + 1):
        p = p + a[t] * MPoly.var("lam") ** t
    return ParamDiffOp(b, params), p


def commutator_system(l: DiffOp, b: ParamDiffOp) -> list:
    """Coefficients of x^i D^j in the numerator of [l, B], zero ones omitted."""
    comm = op_commutator(l, b.op)
    eqs = []
    for c in comm.coeffs:
        num = c.num
        for e in sorted(num.coefficients_in("x")):
            cf = num.coeff("x", e).trim()
            if not cf.is_zero():
                eqs.append(cf)
    return eqs


@dataclass(frozen=True)
class Solution:
    values: dict


@dataclass(frozen=True)
class NoParamSolution:
    reason: str = ""


def solve_param_system(system, params):
    """Solve S(a) = 0 by linearizing its monomials in the parameters.

    Every monomial in the parameters becomes one unknown; after exact
    elimination the relations between monomials (say m_{a1^2} = a1^2) are
    imposed on whatever freedom is left, and the candidate is re-checked
    against every equation.
    """
    params = tuple(params)
    if not system:
        return Solution({p: ZERO for p in params})
    monos = {}
    rows, rhs = [], []
    for eq in system:
        extra = set(eq.used_vars()) - set(params)
        if extra:
            raise UnsupportedStructure(f"equation involves non-parameter variables {sorted(extra)}")
        row, b = {}, ZERO
        for e, c in eq.terms.items():
            key = tuple(e[eq.vars.index(p)] if p in eq.vars else 0 for p in params)
            if not any(key):
                b = b - c
                continue
            col = monos.setdefault(key, len(monos))
            row[col] = row.get(col, ZERO) + c
        rows.append(row)
        rhs.append(b)
    res = solve_sparse(rows, rhs, len(monos))
    if res is None:
        return NoParamSolution("the linearized system is inconsistent")
    particular, basis = res
    tvars = [f"t{k}" for k in range(len(basis))]
    vals = []
    for col in range(len(monos)):
        v = MPoly.const(particular.get(col, ZERO))
        for tv, vec in zip(tvars, basis):
            if col in vec:
                v = v + MPoly.var(tv).scale(vec[col])
        vals.append(v)
    by_key = {key: vals[col] for key, col in monos.items()}
    # each parameter must be pinned by its degree-one monomial
    pvals = {}
    for i, p in enumerate(params):
        unit = tuple(1 if k == i else 0 for k in range(len(params)))
        pvals[p] = by_key.get(unit, MPoly.var(p))
    consistency = []
    for key, v in by_key.items():
        prod = MPoly.const(1)
        for p, k in zip(params, key):
            if k:
                prod = prod * pvals[p] ** k
        diff = (prod - v).trim()
        if not diff.is_zero():
            consistency.append(diff)
    unknowns = tvars + [p for p in params if pvals[p] == MPoly.var(p)]
    if consistency:
        sol = solve_polynomial_system(consistency, unknowns)
        if not sol.branches:
            if sol.discarded:
                raise UnsupportedStructure("monomial consistency needs values outside Q(i)")
            return NoParamSolution("monomial relations are inconsistent with the linear solution")
        branch = sol.branches[0]
    else:
        branch = {}
    zero_free = {v: MPoly.const(0) for v in unknowns}
    values = {}
    for p in params:
        v = pvals[p].subs(branch).subs(zero_free).trim()
        values[p] = v.constant_term()
    point = {p: MPoly.const(v) for p, v in values.items()}
    if not all(eq.subs(point).trim().is_zero() for eq in system):
        return NoParamSolution("the candidate fails the full system")
    return Solution(values)


@dataclass
class BCReport:
    """Outcome of the BC-pair algorithm for (L4, M).

    verdict is one of "TrivialInCL", "AlreadyBCPair", "NewGenerator".
    """

    verdict: str
    B: DiffOp
    g: int
    order: object
    h: MPoly
    b0: MPoly
    b1: MPoly
    solution: dict = field(default_factory=dict)
    p_alpha: MPoly | None = None
    R: MPoly | None = None
    remainders: list = field(default_factory=list)
    systems: dict = field(default_factory=dict)
    curve_path: str = "interpolated"
    assumptions: tuple = ("L4 assumed irreducible (not checked)",)

    def normalized(self):
        """(monic B, R') with (monic B)^2 = R'(L4)."""
        if self.B.is_zero():
            return self.B, self.R
        lc = self.B.leading_coeff().num.constant_value()
        inv = lc.inverse()
        r = self.R.scale(inv * inv) if self.R is not None else None
        return self.B * inv, r


def _monic_in_mu(curve: PlaneCurve):
    h = curve.h
    if h.degree("mu") != 2 or curve.r != 2:
        raise CurveShapeUnexpected(f"square-free part {h} (power {curve.r}) is not a quadratic in mu of rank 2")
    lead = h.coeff("mu", 2)
    if not lead.is_constant():
        raise CurveShapeUnexpected("leading mu-coefficient of the curve depends on lam")
    h = h.scale(lead.constant_value().inverse())
    b1 = (-h.coeff("mu", 1)).trim()
    b0 = (-h.coeff("mu", 0)).trim()
    return h, b1, b0


def bc_pair(l4: DiffOp, m: DiffOp, exact: bool = False) -> BCReport:
    """Decide whether (l4, m) is a BC pair and otherwise find a generator.

    Steps: spectral curve and its square-free part mu^2 - b1 mu - b0; shift
    m by b1(l4)/2; then for g = 1, 2, ... build the parametric candidate
    from the remainder sequence and solve its commutator system.
    """
    if l4.order != 4:
        raise NotOrder4(f"operator has order {l4.order}")
    if not op_commutator(l4, m).is_zero():
        raise NotCommuting("the operators do not commute")
    curve = spectral_curve(l4, m, exact)
    if curve.h.degree("mu") == 1:
        tri = triviality_test(l4, m, exact)
        if isinstance(tri, Trivial):
            zero = MPoly.zero(("lam",))
            return BCReport("TrivialInCL", DiffOp(), 0, DiffOp().order, curve.h, tri.p0, zero,
                            curve_path=curve.path)
    h, b1, b0 = _monic_in_mu(curve)
    half = b1.scale(GaussRat(1, 0) / 2)
    mm = m - poly_at_operator(half, l4)
    if mm.is_zero():
        return BCReport("TrivialInCL", mm, 0, mm.order, h, b0, b1, curve_path=curve.path)
    order = mm.order
    if order % 4 != 2:
        raise CurveShapeUnexpected(f"normalized operator has order {order}, expected 2 mod 4")
    q = (order - 2) // 4
    rsq = (b0 + half * half).trim()  # mm^2 = rsq(l4)
    report_base = dict(h=h, b0=b0, b1=b1, curve_path=curve.path)
    rems, _ = remainder_sequence(mm, l4, 0)
    if rems[0].is_zero():
        raise UnsupportedStructure("the normalized operator is divisible by L4 (p1(0) = 0)")
    systems = {}
    for g in range(1, q):
        if len(rems) < g + 1:
            rems, _ = remainder_sequence(mm, l4, g)
        cand, _ = build_candidate(l4, rems, g, q)
        system = commutator_system(l4, cand)
        systems[g] = system
        sol = solve_param_system(system, cand.params)
        if isinstance(sol, NoParamSolution):
            continue
        b = cand.specialize(sol.values)
        if b.order != 2 * (2 * g + 1):
            raise ArithmeticError(f"candidate has order {b.order}, expected {2 * (2 * g + 1)}")
        if not op_commutator(l4, b).is_zero():
            raise ArithmeticError("specialized candidate does not commute with L4")
        quo, rem = div_right(mm, b)
        p_alpha = as_polynomial_in(quo, l4) if rem.is_zero() else None
        if p_alpha is None:
            raise ArithmeticError("M is not a polynomial in L4 times the candidate")
        if p_alpha.constant_term() != 1:
            raise UnsupportedStructure("recovered p_alpha does not satisfy p(0) = 1")
        r_b = as_polynomial_in(op_mul(b, b), l4)
        if r_b is None:
            raise ArithmeticError("B^2 is not a polynomial in L4")
        return BCReport("NewGenerator", b, g, b.order, solution=sol.values, p_alpha=p_alpha, R=r_b,
                        remainders=rems[: g + 1], systems=systems, **report_base)
    return BCReport("AlreadyBCPair", mm, q, mm.order, solution={}, p_alpha=MPoly.const(1), R=rsq,
                    remainders=rems, systems=systems, **report_base)
