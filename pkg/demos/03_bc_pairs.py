"""Which order-10 partners exist, and when an operator hides a smaller generator.

First the family (D^2 + x^4 + 1)^2 + U D + W with cubic U and quadratic W is
split into branches that admit an order-10 commuting operator.  Then the
BC-pair procedure is run twice: on a shifted order-10 partner, where the
parametric system is inconsistent, and on an order-18 operator p(L) B10,
where it recovers the order-10 generator.
"""

from weylcomm.centralizer import bc_pair, centralizer_search, classify_family
from weylcomm.exactalg import GaussRat, MPoly
from weylcomm.oreops import DiffOp, poly_at_operator
from weylcomm.resultants import spectral_curve

D = DiffOp.d()
X = DiffOp.x()
x, lam = MPoly.var("x"), MPoly.var("lam")
half = GaussRat(1) / 2


def l4(u, w):
    return (D**2 + X**4 + 1) ** 2 + DiffOp([w, u])


def normalized_partner(l, order=10):
    fam = centralizer_search(l, order)
    m = fam.particular
    b1 = -spectral_curve(l, m).h.coeff("mu", 1)
    return m - poly_at_operator(b1.scale(half), l)


us = [MPoly.var(f"u{k}") for k in range(4)]
ws = [MPoly.var(f"w{k}") for k in range(3)]
u = sum((c * x**k for k, c in enumerate(us)), MPoly.zero())
w = sum((c * x**k for k, c in enumerate(ws)), MPoly.zero())
print("branches with an order-10 partner:")
for br in classify_family(l4(u, w), 10, [str(v) for v in us + ws]):
    uu = sum((br.assignment[f"u{k}"] * x**k for k in range(4)), MPoly.zero())
    ww = sum((br.assignment[f"w{k}"] * x**k for k in range(3)), MPoly.zero())
    kind = "trivial" if br.trivial else "nontrivial"
    print(f"  U = {uu}, W = {ww}: {kind}, free constants {br.free_constants}")

# an order-10 partner shifted by a quadratic in L: already a BC pair
l = l4(GaussRat(0, 8), 16 * x**2)
b = normalized_partner(l)
m = b - poly_at_operator((3 * lam**2 + 79 * lam + 72).scale(half), l)
rep = bc_pair(l, m)
print(f"\nshifted partner: {rep.verdict}, g = {rep.g}")
print(f"  h = {rep.h}")
print(f"  g = 1 system: {len(rep.systems[1])} equations, no solution")

# an order-18 operator that is a polynomial in L times the generator
l = l4(0, 24 * x**2 + 1)
b = normalized_partner(l)
m = poly_at_operator(lam**2 - 23 * lam - 58939, l) * b
rep = bc_pair(l, m)
print(f"\norder-18 operator: {rep.verdict}, g = {rep.g}, solution {rep.solution}")
print(f"  p(lam) = {rep.p_alpha}")
gen, r = rep.normalized()
print(f"  recovered generator has order {gen.order}, B^2 = R(L) with R = {r}")
