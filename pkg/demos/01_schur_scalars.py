"""Schur scalars of projection compositions.

For two induced complex structures I and J on H^n, the composition of the
Hodge projections Phi_{I,J} = P_I o P_J acts on V_I^{1,0} as multiplication
by a single scalar lambda.  This demo computes lambda exactly for rational
structure directions and numerically for a generic pair, and checks the
closed form lambda = (1 + <I, J>) / 2.
"""

from fractions import Fraction

import numpy as np

from quathom import quatlin

module = quatlin.QuaternionModule(1, "exact")

print("Exact axis pairs on H^1:")
i = quatlin.make_structure(1, 0, 0)
j = quatlin.make_structure(0, 1, 0)
for name, other in (("J = I", i), ("J = j-axis", j), ("J = -I", -i)):
    lam = quatlin.scalar_of_phi(module, i, other)
    print("  lambda(I, %s) = %s" % (name, lam))

print("\nA rational non-axis pair:")
s = quatlin.make_structure(Fraction(3, 5), Fraction(4, 5), 0)
lam = quatlin.scalar_of_phi(module, i, s)
print("  I = (1,0,0), J = (3/5,4/5,0): lambda = %s" % lam)
print("  closed form (1 + <I,J>)/2  = %s" % ((1 + i.dot(s)) / 2))

print("\nA generic float pair on H^2:")
rng = np.random.default_rng(1)
u, v = rng.normal(size=(2, 3))
u /= np.linalg.norm(u)
v /= np.linalg.norm(v)
fmodule = quatlin.QuaternionModule(2, "float")
si = quatlin.make_structure(*u, backend="float")
sj = quatlin.make_structure(*v, backend="float")
lam = quatlin.scalar_of_phi(fmodule, si, sj)
print("  lambda          = %.15f" % lam)
print("  (1 + <I,J>)/2   = %.15f" % ((1 + float(np.dot(u, v))) / 2))
print("  commutes with the right quaternion action:",
      quatlin.su2_commutation_check(fmodule, si, sj))
