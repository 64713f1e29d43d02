"""Flat-model germ calculus: charts, Psi, and plane unions on H^2.

The composite Psi of embeddings and projections between the holomorphic
coordinates of two structures is linear on the flat model, with differential
equal to the Schur scalar.  A union of quaternionically invariant planes is
preserved by Psi, and homogenizing it recovers the union ideal.
"""

from quathom import germ, quatlin

struct_i = quatlin.make_structure(1, 0, 0)
struct_j = quatlin.make_structure(0, 1, 0)
chart_i = germ.make_chart(2, struct_i, trunc=2)
chart_j = germ.make_chart(2, struct_j, trunc=2)

psi = germ.psi_endomorphism(chart_i, chart_j)
print("Psi for the axis pair on H^2 sends")
for name, img in zip(chart_i.holo_ring.varnames, psi.images):
    print("  %s -> %s" % (name, img))

line1 = tuple(tuple(1 if c == k else 0 for c in range(8)) for k in range(4))
line2 = tuple(tuple(1 if c == k + 4 else 0 for c in range(8)) for k in range(4))
model = germ.make_plane_union([line1, line2], chart_i)
print("\nUnion of the two coordinate quaternionic lines:")
print("  ideal:", [str(g) for g in model.union_ideal.generators])
print("  preserved by Psi:",
      germ.verify_psi_invariance(model.union_ideal, psi))

cert = germ.homogenize_model(model, struct_j)
print("  homogenized ideal:",
      [str(g) for g in cert.homogeneous_ideal.generators])

report = germ.normalization_report(model)
print("\nNormalization report:")
print("  components:", report["component_count"])
for comp in report["components"]:
    print("  component %d: complex dim %d, smooth: %s"
          % (comp["index"], comp["complex_dimension"], comp["smooth"]))
print("  all pairwise intersections 0-dimensional:",
      all(m["real_dimension"] == 0 for m in report["pairwise_intersections"]))
