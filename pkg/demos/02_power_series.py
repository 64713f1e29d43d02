"""Truncated power series, substitution maps, and ideal arithmetic.

All arithmetic is exact over the Gaussian rationals, modulo the maximal
ideal to the power N + 1.
"""

from quathom.series import Ideal, SeriesRing, SubstitutionMap

ring = SeriesRing(("x", "y"), 6)
x, y = ring.var("x"), ring.var("y")

print("Arithmetic in C[[x, y]] mod m^7:")
f = (1 + x + y) ** 4
print("  (1 + x + y)^4 =", f)

print("\nInverting x -> x + x^2 recovers the signed Catalan numbers:")
line = SeriesRing(("x",), 6)
t = line.var(0)
m = SubstitutionMap(line, [t + t * t])
print(" ", m.inverse().images[0])

print("\nComposition and substitution:")
g = SubstitutionMap(ring, [x + y * y, y])
h = SubstitutionMap(ring, [x * 2, y - x])
print("  (g o h)(x*y) =", g.compose(h)(x * y))

print("\nIdeal arithmetic via Groebner bases:")
ideal = Ideal(ring, [y - x * x])
print("  y^2 mod (y - x^2):", ideal.normal_form(y * y))
print("  (x) meet (y) =", Ideal(ring, [x]).intersect(Ideal(ring, [y])))
print("  (x) == (x + x^2) mod m^7:",
      Ideal(ring, [x]).equals(Ideal(ring, [x + x * x])))
