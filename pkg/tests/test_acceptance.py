"""Acceptance suite: one line per criterion, PASS or FAIL.

Every check is exact, so the numeric tolerance is zero.  Checks that do
not reproduce as stated are kept verbatim and marked as strict expected
failures; a corrected companion check sits next to each of them.

Run under pytest (the summary is printed at the end of the session) or
directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass
from functools import cache
from math import gcd
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from reference_ops import (  # noqa: E402
    HALF,
    I,
    D,
    X,
    b10_24,
    b10_8i,
    curve_8i,
    dixmier_pair,
    l4,
    l4_24,
    l4_8i,
    lam,
    m18,
    m_example_69,
    mu,
    r9_factor,
    x,
)
from weylcomm.centralizer import (  # noqa: E402
    as_polynomial_in,
    bc_pair,
    centralizer_search,
    classify_family,
)
from weylcomm.dixmier import Pass, delta_initial, dixmier_test, order_constraints  # noqa: E402
from weylcomm.dixmier import test_filtration as find_filtration  # noqa: E402
from weylcomm.dixmier import Filtration  # noqa: E402
from weylcomm.exactalg import (  # noqa: E402
    GaussRat,
    MPoly,
    det_eval_interp,
    det_fraction_free,
    solve_linear,
    sqf_list,
    squarefree_power,
)
from weylcomm.oreops import DiffOp, div_left_factor, div_right, gcrd, poly_at_operator  # noqa: E402
from weylcomm.parse import parse_operator, parse_polynomial  # noqa: E402
from weylcomm.resultants import (  # noqa: E402
    diff_resultant,
    gcd_at_point,
    is_nonsingular_point,
    spectral_curve,
    subresultant_op,
)

TOLERANCE = 0  # all comparisons are exact equalities over Q(i)
BUDGET_SECONDS = {1: 1.0, 2: 600.0, 3: 600.0, 7: 3600.0}

TITLES = {
    1: "Dixmier identity B^2 = L^3 - alpha",
    2: "order-10 classification of the (U, W) family",
    3: "spectral curve of (L4, B10)",
    4: "subresultant fiber over symbolic (lam0, mu0)",
    5: "gcd at the curve point (0, 0)",
    6: "BC-pair negative case (8i, 16x^2)",
    7: "BC-pair positive case (0, 24x^2), order-18 M",
    8: "Dixmier symbol test suite",
    9: "property suites",
}


@dataclass
class Check:
    criterion: int
    name: str
    func: object
    known_failure: str | None = None
    slow: bool = False

    @property
    def id(self):
        return f"c{self.criterion}-{self.name}"


@dataclass
class Outcome:
    passed: bool
    seconds: float
    message: str = ""


CHECKS: list = []
OUTCOMES: dict = {}


def check(criterion, name, known_failure=None, slow=False):
    def wrap(func):
        CHECKS.append(Check(criterion, name, func, known_failure, slow))
        return func

    return wrap


def within_budget(criterion, start):
    elapsed = time.perf_counter() - start
    assert elapsed <= BUDGET_SECONDS[criterion], f"{elapsed:.1f}s exceeds the {BUDGET_SECONDS[criterion]}s budget"


def up_to_unit(a: MPoly, b: MPoly) -> bool:
    """a == u*b for a nonzero constant u."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a.scale(a.leading_coefficient().inverse()) == b.scale(b.leading_coefficient().inverse())


# ---------------------------------------------------------------------------
# criterion 1
# ---------------------------------------------------------------------------

@check(1, "identity")
def _c1():
    for alpha in (0, 1, I, 5):
        start = time.perf_counter()
        l, b = dixmier_pair(alpha)
        assert (b * b - (l * l * l - alpha)).is_zero(), alpha
        within_budget(1, start)


# ---------------------------------------------------------------------------
# criterion 2
# ---------------------------------------------------------------------------

U_NAMES = [f"u{k}" for k in range(4)]
W_NAMES = [f"w{k}" for k in range(3)]


@cache
def classification():
    start = time.perf_counter()
    u = sum((MPoly.var(n) * x**k for k, n in enumerate(U_NAMES)), MPoly.zero())
    w = sum((MPoly.var(n) * x**k for k, n in enumerate(W_NAMES)), MPoly.zero())
    branches = classify_family(l4(u, w), 10, U_NAMES + W_NAMES)
    within_budget(2, start)
    found = set()
    for br in branches:
        if br.trivial:
            continue
        # w0 must stay a free parameter in every nontrivial family
        assert br.assignment["w0"] == MPoly.var("w0")
        u_val = tuple(str(br.assignment[n]) for n in U_NAMES)
        w_val = (str(br.assignment["w1"]), str(br.assignment["w2"]))
        found.add((u_val, w_val))
    return found


def family(u0, w2):
    return ((u0, "0", "0", "0"), ("0", w2))


ITEMS = {
    1: {family("0", "4"), family("0", "8")},
    2: {family("4*i", "4"), family("-4*i", "4")},
    3: {family("8*i", "16"), family("-8*i", "16")},
    4: {family("12*i", "12"), family("-12*i", "12")},
}


@check(2, "item1", known_failure="W = 4x^2 admits no order-10 partner; the search finds 8x^2 and 24x^2")
def _c2_item1():
    missing = ITEMS[1] - classification()
    assert not missing, f"not found: {sorted(missing)}"


@check(2, "item2")
def _c2_item2():
    assert ITEMS[2] <= classification()


@check(2, "item3")
def _c2_item3():
    assert ITEMS[3] <= classification()


@check(2, "item4")
def _c2_item4():
    assert ITEMS[4] <= classification()


@check(2, "exactly-items-1-4", known_failure="the search also finds U = 0, W = 24x^2 + w0")
def _c2_exact():
    listed = set().union(*ITEMS.values())
    extra = classification() - listed
    assert not extra, f"unlisted families: {sorted(extra)}"


@check(2, "corrected-list")
def _c2_corrected():
    corrected = {family("0", "8"), family("0", "24")} | ITEMS[2] | ITEMS[3] | ITEMS[4]
    assert classification() == corrected


# ---------------------------------------------------------------------------
# criterion 3
# ---------------------------------------------------------------------------

H_PRINTED = mu**2 + lam * (-(lam**4) - 56 * lam**2 + 288 * lam - 1296)


@check(3, "B10-leading-coefficients")
def _c3_b10():
    b = b10_8i()
    assert b.order == 10 and b.leading_coeff() == 1
    printed = {8: "5*(x^4+1)", 7: "20*(4*x^3+i)", 6: "10*(x^8+2*x^4+64*x^2+1)"}
    for j, text in printed.items():
        assert b.coeff(j).num == parse_polynomial(text), j


@check(3, "curve-interpolated")
def _c3_curve():
    start = time.perf_counter()
    c = spectral_curve(l4_8i(), b10_8i())
    within_budget(3, start)
    assert c.r == 2 and c.path == "interpolated"
    assert up_to_unit(c.h, H_PRINTED)


@check(3, "curve-exact-path")
def _c3_exact():
    c = spectral_curve(l4_8i(), b10_8i(), exact=True)
    assert c.r == 2 and c.path == "exact"
    assert up_to_unit(c.h, H_PRINTED)


# ---------------------------------------------------------------------------
# criterion 4
# ---------------------------------------------------------------------------

def fiber(k):
    return subresultant_op(l4_8i() - lam, b10_8i() - mu, k)


@check(4, "L2-coefficient")
def _c4_l2():
    s2 = fiber(2)
    printed = parse_polynomial("576*lam*x^6 + 192*lam^2*x^4 + 16*lam^3*x^2 + lam^4 + 56*lam^2 - 288*lam + 1296")
    assert s2.order == 2
    assert s2.coeff(2).num == printed


@check(4, "L1-multiple-of-h", slow=True)
def _c4_l1():
    s1 = fiber(1)
    h = curve_8i().h
    assert h == H_PRINTED
    assert s1.coeff(1).num == parse_polynomial("4*i*(18*x^2 + lam)") * h
    assert s1.coeff(0).num == -parse_polynomial("8*lam*x^2 + 72*x^4 + 36 + lam^2 + 72*i*x") * h


@check(4, "L0-equals-h-squared", slow=True)
def _c4_l0():
    s0 = diff_resultant(l4_8i() - lam, b10_8i() - mu)
    assert s0 == H_PRINTED**2


# ---------------------------------------------------------------------------
# criterion 5
# ---------------------------------------------------------------------------

@check(5, "gcd-at-origin")
def _c5():
    c = curve_8i()
    assert c.h.subs({"lam": 0, "mu": 0}).is_zero()
    assert c.h.diff("lam").subs({"lam": 0, "mu": 0}) == -1296
    assert is_nonsingular_point(c, 0, 0)
    l, b = l4_8i(), b10_8i()
    g = gcd_at_point(l, b, c, 0, 0)
    assert g.order == 2
    assert div_right(l, g)[1].is_zero() and div_right(b, g)[1].is_zero()
    assert g.monic() == gcrd(l, b)


# ---------------------------------------------------------------------------
# criterion 6
# ---------------------------------------------------------------------------

B1_PRINTED = parse_polynomial("3*lam^3 + 79*lam + 72")
B1_READ = parse_polynomial("3*lam^2 + 79*lam + 72")
B0_PRINTED = parse_polynomial("-lam^5 + 9/4*lam^4 + 125/2*lam^3 + 7825/4*lam^2 + 1548*lam + 1296")
R1_69 = parse_operator(
    "36 + 72*i*x - 72*i*x^5 + 108*x^4 + 72*x^8 + 1728*x^2 - 72*i*(-x^6 + 12*i*x^3 - x^2 - 8)*D"
    " + (72*x^4 + 36 + 504*i*x)*D^2 + 72*i*x^2*D^3"
)
R2_69 = parse_operator(
    "8*x^2 + 16 + 8*x^6 - 8*i*x^3 - 4*i*(-x^4 + 12*i*x - 1)*D + 8*x^2*D^2 + 4*i*D^3"
)
A1 = MPoly.var("a1")
EQ_FIRST = -11296 + 2889216 * A1
EQ_SECOND = 219904 - 359424 * A1


@cache
def report_69():
    return bc_pair(l4_8i(), m_example_69())


@check(6, "M-leading-coefficients")
def _c6_m():
    m = m_example_69()
    printed = {8: "5*x^4 + 7/2", 7: "20*(4*x^3 + i)", 6: "10*x^8 + 14*x^4 + 640*x^2 + 4"}
    assert m.order == 10
    for j, text in printed.items():
        assert m.coeff(j).num == parse_polynomial(text), j


@check(6, "b0-b1-as-printed", known_failure="printed b1 has lam^3 for lam^2, and both signs are flipped")
def _c6_b_literal():
    rep = report_69()
    assert rep.h == mu**2 - rep.b1 * mu - rep.b0
    assert rep.b1 == B1_PRINTED and rep.b0 == B0_PRINTED


@check(6, "b0-b1-corrected")
def _c6_b_read():
    rep = report_69()
    assert rep.h == mu**2 + B1_READ * mu + B0_PRINTED
    assert rep.b1 == -B1_READ and rep.b0 == -B0_PRINTED


@check(6, "remainders")
def _c6_rems():
    rep = report_69()
    assert rep.remainders[:2] == [R1_69, R2_69]


@check(6, "g1-system-shape")
def _c6_system():
    system = report_69().systems[1]
    assert len(system) == 120
    assert all(set(e.used_vars()) <= {"a1"} and e.total_degree() <= 1 for e in system)
    for printed in (EQ_FIRST, EQ_SECOND):
        assert any(up_to_unit(e, printed) for e in system), printed


@check(6, "candidate-from-first-equation")
def _c6_candidate():
    res = solve_linear([EQ_FIRST], ["a1"])
    a1 = res.assignment["a1"]
    assert a1 == GaussRat(353) / 90288
    residues = [e.subs({"a1": a1}) for e in report_69().systems[1]]
    assert any(not r.is_zero() for r in residues)


@check(6, "printed-equations-agree", known_failure="the second printed equation has root 859/1404, not 353/90288")
def _c6_printed_pair():
    res = solve_linear([EQ_FIRST, EQ_SECOND], ["a1"])
    assert hasattr(res, "assignment") and res.assignment["a1"] == GaussRat(353) / 90288


@check(6, "verdict")
def _c6_verdict():
    rep = report_69()
    assert rep.verdict == "AlreadyBCPair" and rep.g == 2 and rep.order == 10
    assert rep.B == m_example_69() - poly_at_operator(rep.b1.scale(HALF), l4_8i())
    assert rep.B == b10_8i()


# ---------------------------------------------------------------------------
# criterion 7
# ---------------------------------------------------------------------------

R5 = parse_polynomial("lam^5 - 5*lam^4 + 346*lam^3 + 854*lam^2 + 24917*lam + 222719")
R9 = R5 * r9_factor() ** 2
SOLUTION = {"a1": GaussRat(23) / 58939, "a2": GaussRat(-1) / 58939}
M18_LEADING = {16: "9*(x^4+1)", 15: "288*x^3", 14: "36*x^8 + 72*x^4 + 4572*x^2 + 15"}
B10_LEADING = {8: "5*(x^4+1)", 7: "80*x^3", 6: "10*(x^8 + 2*x^4 + 66*x^2 + 1)"}
R_PRINTED = [
    parse_operator(
        "-8487216*x^8 + 707268*x^6 - 17033371*x^4 - 253909212*x^2 - 5009815"
        " + (-101846592*x^3 + 4243608*x)*D + (-8487216*x^4 + 707268*x^2 - 8546155)*D^2"
    ),
    parse_operator(
        "-3312*x^8 - 706992*x^6 + 111231*x^4 - 806352*x^2 - 3420417"
        " + (-39744*x^3 - 4241952*x)*D + (-3312*x^4 - 706992*x^2 + 114543)*D^2"
    ),
    parse_operator(
        "144*x^8 - 288*x^6 - 58604*x^4 + 4032*x^2 - 60188 + (1728*x^3 - 1728*x)*D + (144*x^4 - 288*x^2 - 58748)*D^2"
    ),
]


def coefficients_match(op, printed):
    return all(op.coeff(j).num == parse_polynomial(text) for j, text in printed.items())


def family_member(l, m):
    """Membership of m in centralizer_search(l, ord m); returns the family dimension."""
    fam = centralizer_search(l, m.order)
    rest = m - fam.particular
    for b in fam.basis:
        t = rest.coeff(b.order).num.exact_div(b.coeff(b.order).num)
        assert t.is_constant(), "pinning coefficient is not a constant"
        rest = rest - b * t.constant_value()
    assert rest.is_zero()
    return fam.dimension


@cache
def report_610(w0):
    start = time.perf_counter()
    rep = bc_pair(l4_24(w0), m18(w0))
    within_budget(7, start)
    return rep


@check(7, "printed-L4-R5", known_failure="the generator of (D^2+x^4+1)^2+24x^2 squares to a different quintic")
def _c7_lit_r5():
    b = b10_24(0)
    assert coefficients_match(b, B10_LEADING)
    assert as_polynomial_in(b * b, l4_24(0)) == R5


@check(7, "printed-L4-M-pinning", known_failure="M^2 = R9(L4) forces a D^14 coefficient ending in 13, not 15")
def _c7_lit_pin():
    m = m18(0)
    family_member(l4_24(0), m)
    assert coefficients_match(m, M18_LEADING)
    assert as_polynomial_in(m * m, l4_24(0)) == R9


@check(7, "printed-L4-solution")
def _c7_lit_solution():
    rep = report_610(0)
    assert rep.verdict == "NewGenerator" and rep.g == 2
    assert rep.solution == SOLUTION
    assert len(rep.systems[2]) == 112


@check(7, "printed-L4-R3", known_failure="R3 matches only after shifting L4 by the constant 1")
def _c7_lit_r3():
    assert report_610(0).remainders[2] == R_PRINTED[2]


@check(7, "shifted-L4-pinning")
def _c7_shift_pin():
    l, m = l4_24(1), m18(1)
    # seven free directions in the order-18 family, all fixed by the relation
    assert family_member(l, m) == 7
    assert coefficients_match(m, M18_LEADING)
    assert as_polynomial_in(m * m, l) == R9


@check(7, "shifted-L4-bc-pair")
def _c7_shift_run():
    rep = report_610(1)
    assert rep.verdict == "NewGenerator" and rep.g == 2
    assert rep.solution == SOLUTION
    assert rep.p_alpha == 1 + lam * SOLUTION["a1"] + lam**2 * SOLUTION["a2"]
    assert len(rep.systems[2]) == 112
    b, r = rep.normalized()
    assert coefficients_match(b, B10_LEADING)
    assert r == R5
    assert as_polynomial_in(b * b, l4_24(1)) == R5
    assert rep.remainders == R_PRINTED


# ---------------------------------------------------------------------------
# criterion 8
# ---------------------------------------------------------------------------

def l2p(p, alpha=3):
    return (D**p + X**2 + alpha) ** 2 + 2 * D


def commuting_pairs():
    pairs = [dixmier_pair(a) for a in (0, 1, I, 5)]
    pairs += [(l4_8i(), b10_8i()), (l4_8i(), m_example_69())]
    for w0 in (0, 1):
        pairs += [(l4_24(w0), b10_24(w0)), (l4_24(w0), m18(w0))]
    return pairs


def random_operator(rng):
    cs = []
    for _ in range(rng.randint(1, 4)):
        c = MPoly.zero()
        for k in range(rng.randint(0, 3)):
            c = c + MPoly.const(GaussRat(rng.randint(-3, 3), rng.randint(-1, 1))) * x**k
        cs.append(c)
    op = DiffOp(cs)
    return op if not op.is_zero() else random_operator(rng)


@check(8, "order-constraints")
def _c8_orders():
    for p in (2, 3, 5):
        oc = order_constraints(l2p(p))
        assert oc.modulus == 2 * p and oc.residues == {0, p}, p


@check(8, "dixmier-test-on-pairs")
def _c8_pairs():
    for l, m in commuting_pairs():
        assert isinstance(dixmier_test(l, m, find_filtration(l)), Pass)


@check(8, "symbol-multiplicative")
def _c8_sigma():
    rng = random.Random(8)
    filtrations = [Filtration(1, 1), Filtration(2, 3), Filtration(1, 2), Filtration(3, 1)]
    for _ in range(200):
        p, q = random_operator(rng), random_operator(rng)
        f = rng.choice(filtrations)
        assert delta_initial(p * q, f)[2].poly == delta_initial(p, f)[2].poly * delta_initial(q, f)[2].poly


# ---------------------------------------------------------------------------
# criterion 9
# ---------------------------------------------------------------------------

@check(9, "ore-axioms")
def _c9_ore():
    rng = random.Random(9)
    for _ in range(50):
        p, q, r = (random_operator(rng) for _ in range(3))
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert (p * q).order == p.order + q.order
        assert D * X - X * D == DiffOp.scalar(1)


@check(9, "division-round-trips")
def _c9_division():
    rng = random.Random(99)
    for _ in range(50):
        m, l = random_operator(rng), random_operator(rng)
        q, r = div_right(m, l)
        assert q * l + r == m and (r.is_zero() or r.order < l.order)
        q, r = div_left_factor(m, l)
        assert l * q + r == m and (r.is_zero() or r.order < l.order)


@check(9, "gcrd-right-divisibility")
def _c9_gcrd():
    rng = random.Random(999)
    for _ in range(30):
        a, b, g = (random_operator(rng) for _ in range(3))
        d = gcrd(a * g, b * g)
        assert div_right(a * g, d)[1].is_zero() and div_right(b * g, d)[1].is_zero()
        assert d.order >= g.order


@check(9, "determinant-paths")
def _c9_det():
    rng = random.Random(9999)
    for _ in range(100):
        n = rng.randint(1, 6)
        m = [
            [
                MPoly.const(GaussRat(rng.randint(-3, 3), rng.randint(-1, 1))) * lam ** rng.randint(0, 1) * mu ** rng.randint(0, 1)
                + rng.randint(-2, 2)
                for _ in range(n)
            ]
            for _ in range(n)
        ]
        assert det_fraction_free(m) == det_eval_interp(m, ["lam", "mu"])


@check(9, "squarefree-power")
def _c9_sqf():
    rng = random.Random(99999)
    for _ in range(30):
        core = mu**2 + rng.randint(-3, 3) * lam ** rng.randint(1, 3) + rng.randint(-2, 2) * mu * lam
        r = rng.randint(1, 3)
        f = core**r
        h, rr, c = squarefree_power(f)
        assert (h**rr).scale(c) == f
        _, factors = sqf_list(h, "mu")
        assert gcd(*(k for _, k in factors)) == 1


def weight_terms(f):
    out = {}
    for a, ca in f.coefficients_in("lam").items():
        for b, cb in ca.coefficients_in("mu").items():
            out[(a, b)] = cb.constant_value()
    return out


def random_constant_pairs():
    rng = random.Random(20)
    pairs = []
    for _ in range(20):
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        ops = []
        for k in (n, m):
            cs = [MPoly.const(GaussRat(rng.randint(-3, 3), rng.randint(-1, 1))) for _ in range(k)]
            ops.append(DiffOp(cs + [MPoly.const(1)]))
        pairs.append((n, m, weight_terms(diff_resultant(ops[0] - lam, ops[1] - mu))))
    return pairs


@check(9, "highest-weight-as-stated", known_failure="(-lam)^m + (-1)^(mn) mu^n is off by signs when ord L is odd")
def _c9_weight_literal():
    for n, m, terms in random_constant_pairs():
        assert terms[(m, 0)] == (-1) ** m and terms[(0, n)] == (-1) ** (m * n), (n, m)


@check(9, "highest-weight-corrected")
def _c9_weight():
    for n, m, terms in random_constant_pairs():
        assert max(a * n + b * m for a, b in terms) == n * m
        assert terms[(m, 0)] == (-1) ** ((n + 1) * m) and terms[(0, n)] == (-1) ** n, (n, m)


# ---------------------------------------------------------------------------
# drivers
# ---------------------------------------------------------------------------

def run_check(chk: Check) -> Outcome:
    start = time.perf_counter()
    try:
        chk.func()
    except AssertionError as exc:
        out = Outcome(False, time.perf_counter() - start, str(exc).splitlines()[0] if str(exc) else "assertion failed")
    else:
        out = Outcome(True, time.perf_counter() - start)
    OUTCOMES[chk.id] = (chk, out)
    return out


def summary_lines():
    lines = []
    for crit in sorted(TITLES):
        rows = [(c, o) for c, o in OUTCOMES.values() if c.criterion == crit]
        if not rows:
            continue
        failed = [c.name for c, o in rows if not o.passed]
        status = "FAIL" if failed else "PASS"
        secs = sum(o.seconds for _, o in rows)
        detail = f"{len(rows) - len(failed)}/{len(rows)} checks"
        if failed:
            detail += "; failed: " + ", ".join(failed)
        lines.append(f"criterion {crit} {status}  {TITLES[crit]}  ({detail}; {secs:.1f}s)")
    return lines


def _params():
    out = []
    for chk in CHECKS:
        marks = []
        if chk.known_failure:
            marks.append(pytest.mark.xfail(strict=True, reason=chk.known_failure))
        if chk.slow:
            marks.append(pytest.mark.slow)
        out.append(pytest.param(chk, id=chk.id, marks=marks))
    return out


@pytest.mark.parametrize("chk", _params())
def test_acceptance(chk):
    out = run_check(chk)
    assert out.passed, out.message


def main() -> int:
    unexpected = 0
    for chk in CHECKS:
        out = run_check(chk)
        tag = "PASS" if out.passed else "FAIL"
        note = f"  [known: {chk.known_failure}]" if chk.known_failure else ""
        print(f"  {chk.id:<40} {tag} {out.seconds:7.2f}s{note}", flush=True)
        if out.passed == bool(chk.known_failure):
            unexpected += 1
    print()
    for line in summary_lines():
        print(line)
    return 1 if unexpected else 0


if __name__ == "__main__":
    raise SystemExit(main())
