"""Spectral curve and common factor for an order-4 operator.

L = (D^2 + x^4 + 1)^2 + 8i D + 16x^2 has an order-10 partner.  We find it
by an ansatz search, compute the curve h(lam, mu) = 0 of the pair, and at
the point (0, 0) extract the order-2 right factor both operators share.
The operators are written to demos/data for use with the command line.
"""

from pathlib import Path

from weylcomm.centralizer import as_polynomial_in, centralizer_search
from weylcomm.exactalg import GaussRat, MPoly
from weylcomm.oreops import DiffOp, gcrd, poly_at_operator
from weylcomm.resultants import gcd_at_point, is_nonsingular_point, spectral_curve

D, X = DiffOp.d(), DiffOp.x()
x = MPoly.var("x")
data = Path(__file__).parent / "data"

l = (D**2 + X**4 + 1) ** 2 + DiffOp([16 * x**2, GaussRat(0, 8)])
fam = centralizer_search(l, 10)
print(f"order-10 family: particular + {fam.dimension} free constants")

# fix the D^8 coefficient to 5x^4 + 5, then drop the mu-linear term of the curve
top = fam.basis[0]
t = (5 * x**4 + 5 - fam.particular.coeff(8).num).constant_value() / top.coeff(8).num.constant_value()
m = fam.member([t] + [0] * (fam.dimension - 1))
b1 = -spectral_curve(l, m).h.coeff("mu", 1)
b = m - poly_at_operator(b1.scale(GaussRat(1) / 2), l)

curve = spectral_curve(l, b)
print(f"h = {curve.h}  (rank {curve.r})")
print(f"B^2 as a polynomial in L: {as_polynomial_in(b * b, l)}")

assert is_nonsingular_point(curve, 0, 0)
g = gcd_at_point(l, b, curve, 0, 0)
print(f"common right factor at (0, 0): {g.monic()}")
assert g.monic() == gcrd(l, b)

data.mkdir(exist_ok=True)
(data / "L4_8i.op").write_text("# order-4 operator\n" + str(l) + "\n", encoding="utf-8")
(data / "B10_8i.op").write_text("# order-10 partner\n" + str(b) + "\n", encoding="utf-8")
print(f"wrote {data / 'L4_8i.op'} and {data / 'B10_8i.op'}")
