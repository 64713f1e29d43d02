"""Flat-model germ calculus on H^n.

Charts identify the completed ring of real-analytic complex-valued germs at
the origin of H^n with a power series ring in 4n real coordinates, and the
holomorphic germs of an induced complex structure with a series ring in 2n
holomorphic coordinates.  The embedding and projection between the two,
composed for two structures, give the endomorphism whose differential is the
Schur scalar of the corresponding Hodge projections.  Plane-union models and
their normalization reports live here as well.

Everything in this module runs on the exact backend; a structure that cannot
be written with rational coefficients raises FieldClosureError.
"""

from fractions import Fraction

from . import homog, linalg, quatlin
from .errors import (
    DoesNotPreserveIdeal,
    DuplicatePlane,
    FieldClosureError,
    NotQuaternionInvariant,
    NotScalar,
    RingMismatch,
)
from .gaussian import GR_ONE, GR_ZERO, GaussianRational
from .series import Ideal, SeriesRing, SubstitutionMap


class GermChart:
    """Coordinates for one induced complex structure on H^n.

    ``z_rows`` are the holomorphic coordinate functionals (2n rows of length
    4n); their conjugates are the antiholomorphic ones; stacked they give an
    invertible change of basis from the 4n real coordinates.
    """

    __slots__ = (
        "module",
        "structure",
        "trunc",
        "z_rows",
        "zbar_rows",
        "real_ring",
        "holo_ring",
        "_projection_images",
    )

    def __init__(self, module, structure, trunc, z_rows):
        self.module = module
        self.structure = structure
        self.trunc = trunc
        self.z_rows = z_rows
        self.zbar_rows = linalg.conjugate(z_rows)
        n = module.n
        self.real_ring = SeriesRing(
            tuple("t%d" % (k + 1) for k in range(4 * n)), trunc
        )
        self.holo_ring = SeriesRing(
            tuple("z%d" % (k + 1) for k in range(2 * n)), trunc
        )
        self._projection_images = None

    @property
    def n(self):
        return self.module.n


def make_chart(n, structure, trunc=4):
    """Chart of H^n for a structure with exact (rational) coefficients."""
    if structure.backend != "exact":
        raise FieldClosureError(
            "germ charts require the exact backend; irrational structures "
            "have no Gaussian-rational Hodge frame"
        )
    module = quatlin.QuaternionModule(n, "exact")
    frame = quatlin.hodge_frame(module, structure)
    # Rows of the reduced row echelon form of the projector span the space of
    # holomorphic functionals; rref makes the choice deterministic.
    reduced, pivots = linalg.rref(frame.projector10)
    z_rows = [reduced[k] for k in range(len(pivots))]
    if len(z_rows) != 2 * n:
        raise NotScalar("holomorphic functional space has wrong dimension")
    return GermChart(module, structure, trunc, z_rows)


def embed(chart, f):
    """The inclusion of holomorphic germs into real-analytic germs."""
    images = [
        _linear_form(chart.real_ring, row) for row in chart.z_rows
    ]
    inclusion = SubstitutionMap(chart.holo_ring, images, chart.real_ring)
    return inclusion(f)


def _linear_form(ring, coefficients):
    form = ring.zero()
    for j, c in enumerate(coefficients):
        if c:
            form = form + ring.var(j) * c
    return form


def _projection_images(chart):
    """Images t_l -> linear form in (z, zbar), cached on the chart."""
    if chart._projection_images is None:
        stacked = [list(row) for row in chart.z_rows] + [
            list(row) for row in chart.zbar_rows
        ]
        inv = linalg.inverse(stacked, GR_ZERO, GR_ONE)
        chart._projection_images = inv  # rows: t_l in (z, zbar) coordinates
    return chart._projection_images


def project(chart, g):
    """The epimorphism from real-analytic germs onto holomorphic germs.

    Rewrites ``g`` in the chart's (z, zbar) coordinates, then kills every
    monomial containing an antiholomorphic factor.
    """
    n = chart.n
    if g.ring != chart.real_ring:
        raise RingMismatch("series is not in the chart's real ring")
    big = SeriesRing(
        tuple("w%d" % (k + 1) for k in range(2 * n))
        + tuple("wb%d" % (k + 1) for k in range(2 * n)),
        chart.trunc,
    )
    inv = _projection_images(chart)
    images = [_linear_form(big, row) for row in inv]
    rewrite = SubstitutionMap(chart.real_ring, images, big)
    h = rewrite(g)
    data = {}
    for exp, c in h.coeffs.items():
        if any(exp[2 * n :]):
            continue
        data[exp[: 2 * n]] = c
    return chart.holo_ring.series(data)


def psi_endomorphism(chart_i, chart_j):
    """e_I o i_J o e_J o i_I as a substitution map on chart_i's holomorphic
    ring; linear in the flat model, with differential equal to the Schur
    scalar of the two structures."""
    if chart_i.n != chart_j.n or chart_i.trunc != chart_j.trunc:
        raise ValueError("charts must share module and truncation")
    images = []
    for k in range(2 * chart_i.n):
        f = chart_i.holo_ring.var(k)
        f = project(chart_j, embed(chart_i, f))
        f = project(chart_i, embed(chart_j, f))
        images.append(f)
    return SubstitutionMap(chart_i.holo_ring, images)


class PlaneUnionModel:
    """A union of quaternionically invariant planes through 0 in H^n."""

    __slots__ = ("planes", "chart", "plane_ideals", "union_ideal")

    def __init__(self, planes, chart, plane_ideals, union_ideal):
        self.planes = planes
        self.chart = chart
        self.plane_ideals = plane_ideals
        self.union_ideal = union_ideal


def _span_rank(vectors):
    return linalg.rank([list(v) for v in vectors]) if vectors else 0


def _same_span(a, b):
    ra = linalg.rref([list(v) for v in a])[0]
    rb = linalg.rref([list(v) for v in b])[0]
    ra = [row for row in ra if any(row)]
    rb = [row for row in rb if any(row)]
    return ra == rb


def _check_invariant(plane, module):
    rows = [list(v) for v in plane]
    base_rank = linalg.rank(rows)
    for action in (module.actionI, module.actionJ, module.actionK):
        for v in plane:
            image = linalg.matvec(action, [GaussianRational(c) for c in v])
            test = rows + [[x.re for x in image]]
            if any(x.im for x in image):
                raise NotQuaternionInvariant("action image is not real")
            if linalg.rank(test) != base_rank:
                raise NotQuaternionInvariant(
                    "plane is not closed under the quaternion actions"
                )


def plane_ideal(chart, plane):
    """The ideal of holomorphic linear forms vanishing on a real subspace."""
    rows = []
    for v in plane:
        rows.append(
            [
                linalg.sum_entries(
                    chart.z_rows[k][l] * GaussianRational(v[l])
                    for l in range(len(v))
                )
                for k in range(2 * chart.n)
            ]
        )
    kernel = linalg.nullspace(rows, GR_ZERO, GR_ONE)
    gens = [
        _linear_form(chart.holo_ring, c) for c in kernel
    ]
    return Ideal(chart.holo_ring, gens)


def make_plane_union(planes, chart):
    """Validate planes and build the ideal of their union."""
    planes = tuple(tuple(tuple(Fraction(c) for c in v) for v in p) for p in planes)
    for p in planes:
        _check_invariant(p, chart.module)
    for a in range(len(planes)):
        for b in range(a + 1, len(planes)):
            if _same_span(planes[a], planes[b]):
                raise DuplicatePlane("planes %d and %d coincide" % (a, b))
    ideals = [plane_ideal(chart, p) for p in planes]
    union = ideals[0]
    for ideal in ideals[1:]:
        union = union.intersect(ideal)
    return PlaneUnionModel(planes, chart, tuple(ideals), union)


def plane_union_ideal(planes, chart):
    return make_plane_union(planes, chart).union_ideal


def verify_psi_invariance(ideal, psi):
    """True iff the substitution maps every generator back into the ideal."""
    return all(ideal.contains(psi(g)) for g in ideal.generators)


def homogenize_model(model, structure_j):
    """Run the homogeneous-presentation pipeline on the model's germ ring,
    using the chart-composition endomorphism for the second structure.

    Flat plane unions are already homogeneous, so the output ideal must come
    back equal to the input (after the recorded linear identification); this
    is asserted as a consistency check.
    """
    chart_i = model.chart
    chart_j = make_chart(chart_i.n, structure_j, chart_i.trunc)
    psi = psi_endomorphism(chart_i, chart_j)
    if not verify_psi_invariance(model.union_ideal, psi):
        raise DoesNotPreserveIdeal(
            "the composite endomorphism does not preserve the union ideal"
        )
    presentation = homog.LocalRingPresentation(
        chart_i.holo_ring, model.union_ideal
    )
    cert = homog.homogeneous_presentation(psi, presentation)
    if presentation.cotangent_dim == chart_i.holo_ring.nvars:
        # All coordinates survive, so the identification is y_k -> z_k and
        # the certificate ideal must reproduce the union ideal exactly.
        renamed = Ideal(
            chart_i.holo_ring,
            [
                chart_i.holo_ring.series(dict(g.coeffs))
                for g in cert.homogeneous_ideal.generators
            ],
        )
        if not renamed.equals(model.union_ideal):
            raise NotScalar(
                "homogenized ideal does not match the flat model ideal"
            )
    return cert


def _intersection_dim(plane_a, plane_b):
    ra = _span_rank(plane_a)
    rb = _span_rank(plane_b)
    rsum = _span_rank(list(plane_a) + list(plane_b))
    return ra + rb - rsum


def normalization_report(model):
    """Smoothness and dimension data for the disjoint union of components."""
    components = []
    for idx, (plane, ideal) in enumerate(zip(model.planes, model.plane_ideals)):
        real_dim = _span_rank(plane)
        gens = ideal.generators
        jac_rows = [g.linear_coeffs() for g in gens]
        jac_rank = linalg.rank(jac_rows) if jac_rows else 0
        codim = 2 * model.chart.n - real_dim // 2
        components.append(
            {
                "index": idx,
                "real_dimension": real_dim,
                "complex_dimension": real_dim // 2,
                "real_dimension_divisible_by_4": real_dim % 4 == 0,
                "smooth": all(
                    len({sum(e) for e in g.coeffs}) == 1 and g.degree() == 1
                    for g in gens
                )
                and jac_rank == codim,
                "ideal_generators": [str(g) for g in gens],
            }
        )
    intersections = []
    for a in range(len(model.planes)):
        for b in range(a + 1, len(model.planes)):
            dim = _intersection_dim(model.planes[a], model.planes[b])
            intersections.append(
                {
                    "pair": [a, b],
                    "real_dimension": dim,
                    "complex_dimension": dim // 2,
                }
            )
    return {
        "component_count": len(model.planes),
        "components": components,
        "pairwise_intersections": intersections,
        "normalization_smooth": all(c["smooth"] for c in components),
        "already_normal": len(model.planes) == 1,
    }
