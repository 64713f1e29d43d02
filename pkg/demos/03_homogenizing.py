"""Homogenizing automorphisms and the shifted eigenvalue equation.

An endomorphism e of a local ring whose differential is multiplication by
lambda with 0 < |lambda| < 1 admits exact eigen-coordinates: the equation
e(c) - lambda*c = r has a unique solution in m^2 degree by degree.  Those
coordinates turn the relations into a homogeneous ideal whenever the ring
has homogeneous singularities, and the pipeline produces a checkable
certificate.
"""

import math
from fractions import Fraction

from quathom import homog
from quathom.series import Ideal, SeriesRing, SubstitutionMap

print("One variable: e(x) = x/2 + x^2, N = 3.")
ring = SeriesRing(("x",), 3)
x = ring.var(0)
e = SubstitutionMap(ring, [x / 2 + x * x])
pres = homog.LocalRingPresentation(ring)
(f,) = homog.eigen_coordinates(e, pres)
print("  eigen coordinate f =", f)
print("  check e(f) - f/2   =", e(f) - f / 2)

print("\nThe node y^2 = x^2 + x^3 carries a hidden diagonal map:")
N = 6
ring = SeriesRing(("x", "y"), N)
x, y = ring.var(0), ring.var(1)


def binomial_half(k):
    value = Fraction(1)
    for i in range(k):
        value *= Fraction(1, 2) - i
    return value / math.factorial(k)


s = ring.series({(k, 0): binomial_half(k) for k in range(N + 1)})
change = SubstitutionMap(ring, [y - x * s, y + x * s])
diag = SubstitutionMap.diagonal(ring, Fraction(1, 2))
e = change.compose(diag).compose(change.inverse())
relations = Ideal(ring, [y * y - x * x - x ** 3])
pres = homog.LocalRingPresentation(ring, relations)
cert = homog.homogeneous_presentation(e, pres)
print("  lambda =", cert.lam)
print("  homogeneous kernel:",
      [str(g) for g in cert.homogeneous_ideal.generators])
print("  certificate valid:",
      bool(homog.lhs_certificate_check(cert, pres)))
