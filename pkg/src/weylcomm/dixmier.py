"""Weighted filtrations of the Weyl algebra and the Dixmier symbol test.

An operator sum a_ij x^i D^j is weighted by p*i + q*j.  The top-weight part
of an operator is its initial part; replacing x by chi and D by xi gives
its symbol, a polynomial in commuting variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import BracketVanishes, NotAPower, TrivialOperator, ZeroOperator
from .exactalg import GaussRat, MPoly, sqf_list
from .oreops import DiffOp

__all__ = [
    "NewtonDiagram",
    "Filtration",
    "Symbol",
    "Pass",
    "Fail",
    "OrderConstraints",
    "newton_diagram",
    "delta_initial",
    "symbol",
    "test_filtration",
    "dixmier_test",
    "bracket_symbol",
    "order_constraints",
]

_SYM_VARS = ("chi", "xi")


@dataclass(frozen=True)
class NewtonDiagram:
    points: frozenset

    def __iter__(self):
        return iter(sorted(self.points))

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class Filtration:
    """Weight p*i + q*j on x^i D^j, stored in primitive form."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or self.p + self.q == 0:
            raise ValueError("weights must be nonnegative and not both zero")
        g = gcd(self.p, self.q)
        if g > 1:
            object.__setattr__(self, "p", self.p // g)
            object.__setattr__(self, "q", self.q // g)

    def weight(self, i: int, j: int) -> int:
        return self.p * i + self.q * j


@dataclass(frozen=True)
class Symbol:
    poly: MPoly
    weight: int

    def __str__(self):
        return str(self.poly)


def _terms(op: DiffOp):
    """Yield (i, j, coeff) for op = sum coeff * x^i D^j."""
    for j, c in enumerate(op.poly_coeffs()):
        if c.is_zero():
            continue
        if set(c.used_vars()) - {"x"}:
            raise ValueError("operator coefficients must be polynomials in x alone")
        for i, v in c.coefficients_in("x").items():
            yield i, j, v.constant_value()


def newton_diagram(op: DiffOp) -> NewtonDiagram:
    return NewtonDiagram(frozenset((i, j) for i, j, _ in _terms(op)))


def delta_initial(op: DiffOp, f: Filtration):
    """(delta, initial part, symbol) of a nonzero operator."""
    if op.is_zero():
        raise ZeroOperator("the zero operator has no initial part")
    terms = list(_terms(op))
    delta = max(f.weight(i, j) for i, j, _ in terms)
    top = [(i, j, c) for i, j, c in terms if f.weight(i, j) == delta]
    cs = {}
    sym = {}
    for i, j, c in top:
        cs[j] = cs.get(j, MPoly.zero(("x",))) + MPoly._new({(i,): c}, ("x",))
        sym[(i, j)] = c
    ini = DiffOp([cs.get(j, 0) for j in range(max(cs) + 1)])
    return delta, ini, Symbol(MPoly._new(sym, _SYM_VARS), delta)


def symbol(op: DiffOp, f: Filtration) -> Symbol:
    return delta_initial(op, f)[2]


def test_filtration(l: DiffOp) -> Filtration:
    """The weight making (0, n) tie for the maximum with another diagram point.

    The ratio p/q is the smallest (n - b)/a over diagram points (a, b)
    with a > 0, so that no point outweighs (0, n).
    """
    n = l.order
    pts = newton_diagram(l).points
    if (0, n) not in pts:
        raise ValueError("operator does not contain D^n with constant coefficient")
    cands = [(n - b, a) for a, b in pts if a > 0]
    if not cands:
        raise TrivialOperator("the Newton diagram has no point off the D-axis")
    best = cands[0]
    for c in cands[1:]:
        if c[0] * best[1] < best[0] * c[1]:
            best = c
    num, den = best
    if num <= 0:
        raise ValueError("operator is not in standard form")
    f = Filtration(num, den)
    top = f.weight(0, n)
    weights = [f.weight(a, b) for a, b in pts]
    if max(weights) != top or weights.count(top) < 2:
        raise AssertionError("test filtration post-check failed")
    return f


@dataclass(frozen=True)
class Pass:
    """Candidate admitted: sigma(M)^v = c * sigma(L)^w."""

    c: GaussRat


@dataclass(frozen=True)
class Fail:
    """Candidate excluded under this filtration."""

    reason: str = ""


def dixmier_test(l: DiffOp, m: DiffOp, f: Filtration):
    """Necessary condition for m to commute with l under the filtration f."""
    v, _, sl = delta_initial(l, f)
    w, _, sm = delta_initial(m, f)
    g = gcd(v, w)
    if g == 0:
        return Pass(GaussRat(1))
    lhs = sm.poly ** (v // g)
    rhs = sl.poly ** (w // g)
    _, lc_l = lhs.leading_term()
    _, lc_r = rhs.leading_term()
    c = lc_l / lc_r
    if lhs != rhs.scale(c):
        return Fail("symbol powers are not proportional")
    return Pass(c ** g)


def bracket_symbol(l: DiffOp, m: DiffOp, f: Filtration) -> MPoly:
    """d(sigma L)/d xi * d(sigma M)/d chi - d(sigma L)/d chi * d(sigma M)/d xi.

    When nonzero this is the symbol of [l, m], of weight
    delta(l) + delta(m) - p - q.
    """
    sl = symbol(l, f).poly
    sm = symbol(m, f).poly
    br = (sl.diff("xi") * sm.diff("chi") - sl.diff("chi") * sm.diff("xi")).trim()
    if br.is_zero():
        raise BracketVanishes("the symbols Poisson-commute; expand the commutator directly")
    return br


@dataclass(frozen=True)
class OrderConstraints:
    """Orders of commuting operators are multiples of ``step``; residues are mod ``modulus``."""

    filtration: Filtration
    root: MPoly
    power: int
    step: int
    modulus: int
    residues: frozenset

    def admits(self, order: int) -> bool:
        return order % self.modulus in self.residues


def order_constraints(l: DiffOp) -> OrderConstraints:
    """Residues mod ord(l) available to operators commuting with l.

    sigma(l) = c * g^e with g not a proper power.  Any commuting M has
    sigma(M) a power of g, so ord(M) is a multiple of the xi-degree of g.
    """
    f = test_filtration(l)
    s = symbol(l, f).poly.trim()
    _, factors = sqf_list(s, "xi")
    mults = [k for _, k in factors]
    e = 0
    for k in mults:
        e = gcd(e, k)
    if e <= 1:
        raise NotAPower(f"symbol {s} is not a perfect power; the centralizer is C[L]")
    root = MPoly.const(1)
    for fac, k in factors:
        root = root * fac ** (k // e)
    step = root.degree("xi")
    n = l.order
    residues = frozenset((t * step) % n for t in range(n))
    return OrderConstraints(f, root.trim(), e, step, n, residues)
