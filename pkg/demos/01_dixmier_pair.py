"""A rank-two commuting pair in the first Weyl algebra.

H = D^2 + x^3 + alpha, L = H^2 + 2x and B = H^3 + 3/2 (xH + Hx) commute,
and B^2 = L^3 - alpha.  The differential resultant recovers that cubic,
squared, because the pair has rank two.
"""

from weylcomm.dixmier import dixmier_test, test_filtration
from weylcomm.exactalg import GaussRat
from weylcomm.oreops import DiffOp, op_commutator
from weylcomm.resultants import spectral_curve

D, X = DiffOp.d(), DiffOp.x()

for alpha in (0, 1, GaussRat(0, 1), 5):
    h = D**2 + X**3 + alpha
    l = h * h + 2 * X
    b = h**3 + (X * h + h * X).left_scale(GaussRat(3) / 2)
    assert op_commutator(l, b).is_zero()
    curve = spectral_curve(l, b)
    verdict = dixmier_test(l, b, test_filtration(l))
    print(f"alpha = {alpha}")
    print(f"  ord L = {l.order}, ord B = {b.order}")
    print(f"  B^2 - L^3 + alpha = {b * b - (l * l * l - alpha)}")
    print(f"  curve h = {curve.h}, rank r = {curve.r}")
    print(f"  symbol test: {verdict}")
