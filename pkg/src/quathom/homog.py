"""Homogenizing automorphisms of truncated local rings.

Given a presentation A = C[[x_1..x_n]]/relations and a substitution
endomorphism whose action on the cotangent space m/m^2 is multiplication by a
scalar of modulus strictly between 0 and 1, this module solves the shifted
eigenvalue equation e(c) - lambda*c = r degree by degree, lifts a cotangent
basis to exact eigenvectors of e, and produces a presentation of A whose
kernel is generated by homogeneous polynomials (the certificate that A has
homogeneous singularities).
"""

from . import linalg
from .errors import (
    DoesNotPreserveIdeal,
    LambdaOutOfRange,
    NotScalarDifferential,
    PreconditionViolated,
    SingularLinearPart,
)
from .gaussian import GaussianRational
from .series import Ideal, SeriesRing, SubstitutionMap

FLOAT_TOL = 1e-9


class LocalRingPresentation:
    """A = C[[vars]]/relations, truncated at the ring's order."""

    __slots__ = ("ring", "relations", "_pivot_rows", "_surviving")

    def __init__(self, ring, relations=None):
        self.ring = ring
        if relations is None:
            relations = Ideal(ring, [])
        if relations.ring != ring:
            raise ValueError("relations live in a different ring")
        self.relations = relations
        rows = [g.linear_coeffs() for g in relations.generators]
        tol = 0 if ring.field == "exact" else 1e-12
        if rows:
            red, pivots = linalg.rref(rows, tol)
            self._pivot_rows = [(p, red[k]) for k, p in enumerate(pivots)]
        else:
            self._pivot_rows = []
        pivot_set = {p for p, _ in self._pivot_rows}
        self._surviving = tuple(
            idx for idx in range(ring.nvars) if idx not in pivot_set
        )

    @property
    def cotangent_dim(self):
        return len(self._surviving)

    @property
    def surviving_variables(self):
        """Indices of the coordinates that survive in m/m^2."""
        return self._surviving

    def reduce_linear(self, vector):
        """Reduce a degree-1 coefficient vector modulo the relations' linear
        parts; the result is supported on the surviving coordinates."""
        v = list(vector)
        for pivot, row in self._pivot_rows:
            f = v[pivot]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return v


def differential_of(e, presentation):
    """The induced linear action of ``e`` on m/m^2 of the presented ring."""
    ring = presentation.ring
    if e.domain != ring or e.codomain != ring:
        raise ValueError("map is not an endomorphism of the presentation ring")
    for g in presentation.relations.generators:
        if not presentation.relations.contains(e(g)):
            raise DoesNotPreserveIdeal(
                "image of relation %s leaves the ideal" % g
            )
    surviving = presentation.surviving_variables
    m = len(surviving)
    columns = []
    for s in surviving:
        lin = presentation.reduce_linear(e(ring.var(s)).linear_coeffs())
        columns.append([lin[t] for t in surviving])
    return [[columns[c][r] for c in range(m)] for r in range(m)]


def _is_small(value, ring):
    if ring.field == "exact":
        return not value
    return abs(value) <= FLOAT_TOL


def check_homogenizing(e, presentation):
    """Return lambda iff the differential is scalar with 0 < |lambda| < 1."""
    ring = presentation.ring
    diff = differential_of(e, presentation)
    m = len(diff)
    if m == 0:
        raise NotScalarDifferential("zero-dimensional cotangent space")
    lam = diff[0][0]
    for r in range(m):
        for c in range(m):
            target = lam if r == c else ring.zero_scalar()
            if not _is_small(diff[r][c] - target, ring):
                raise NotScalarDifferential(
                    "cotangent action is not scalar at entry (%d, %d)" % (r, c)
                )
    if ring.field == "exact":
        if not lam:
            raise LambdaOutOfRange("lambda = 0")
        if lam.re * lam.re + lam.im * lam.im >= 1:
            raise LambdaOutOfRange("|lambda| >= 1 for lambda = %s" % lam)
    else:
        if abs(lam) <= FLOAT_TOL:
            raise LambdaOutOfRange("lambda ~ 0")
        if abs(lam) >= 1 - FLOAT_TOL:
            raise LambdaOutOfRange("|lambda| >= 1 for lambda = %r" % lam)
    tol = 0 if ring.field == "exact" else 1e-12
    try:
        linalg.inverse(
            e.linear_matrix(), ring.zero_scalar(), ring.one_scalar(), tol
        )
    except SingularLinearPart:
        raise SingularLinearPart("linear part of the map is singular")
    return lam


def _check_in_m2(r):
    if r.constant_term() or any(c for c in r.linear_coeffs()):
        raise PreconditionViolated("right-hand side must lie in m^2")


def _linear_is_scalar(e, lam):
    ring = e.domain
    lmat = e.linear_matrix()
    for r in range(ring.nvars):
        for c in range(ring.nvars):
            target = lam if r == c else ring.zero_scalar()
            if lmat[r][c] != target:
                return False
    return True


def solve_shifted_eigen(e, lam, r):
    """The unique c in m^2 with e(c) - lambda*c = r, modulo degree N+1.

    Degree-by-degree: the degree-d graded piece of e - lambda is invertible
    for every d >= 2 because 0 < |lambda| < 1, so each homogeneous component
    of c is determined by the residual left by the lower-degree components.
    """
    from . import groebner as gb

    ring = e.domain
    if r.ring != ring:
        raise PreconditionViolated("right-hand side outside the ring")
    _check_in_m2(r)
    lam = ring.coerce(lam)
    scalar_linear = _linear_is_scalar(e, lam)
    linear_map = SubstitutionMap.linear(ring, e.linear_matrix())
    c = ring.zero()
    for d in range(2, ring.trunc + 1):
        residual = (r - (e(c) - c * lam)).graded_component(d)
        if residual.is_zero():
            continue
        if scalar_linear:
            denom = lam ** d - lam
            # |lambda| < 1 and lambda != 0 force lambda^d != lambda for d >= 2.
            assert denom
            c = c + residual / denom
        else:
            monos = gb.monomials_of_degree(ring.nvars, d)
            index = {exp: k for k, exp in enumerate(monos)}
            size = len(monos)
            zero = ring.zero_scalar()
            matrix = [[zero] * size for _ in range(size)]
            for col, exp in enumerate(monos):
                image = linear_map(ring.monomial(exp)) - ring.monomial(exp) * lam
                for iexp, coeff in image.coeffs.items():
                    matrix[index[iexp]][col] = coeff
            rhs = [[residual.coeffs.get(exp, zero)] for exp in monos]
            tol = 0 if ring.field == "exact" else 1e-12
            sol = linalg.solve_right(matrix, rhs, tol)
            component = ring.series(
                {exp: sol[k][0] for k, exp in enumerate(monos)}
            )
            c = c + component
    return c


def solve_shifted_eigen_dense(e, lam, r):
    """Independent solution path: one exact linear solve on all of
    m^2 / m^{N+1} at once, following the finite-dimensional quotient
    argument rather than the graded recursion."""
    from . import groebner as gb

    ring = e.domain
    _check_in_m2(r)
    lam = ring.coerce(lam)
    monos = []
    for d in range(2, ring.trunc + 1):
        monos.extend(gb.monomials_of_degree(ring.nvars, d))
    index = {exp: k for k, exp in enumerate(monos)}
    size = len(monos)
    zero = ring.zero_scalar()
    matrix = [[zero] * size for _ in range(size)]
    for col, exp in enumerate(monos):
        image = e(ring.monomial(exp)) - ring.monomial(exp) * lam
        for iexp, coeff in image.coeffs.items():
            if sum(iexp) <= ring.trunc:
                matrix[index[iexp]][col] = coeff
    rhs = [[r.coeffs.get(exp, zero)] for exp in monos]
    tol = 0 if ring.field == "exact" else 1e-12
    sol = linalg.solve_right(matrix, rhs, tol)
    return ring.series({exp: sol[k][0] for k, exp in enumerate(monos)})


def solve_shifted_eigen_fixed_point(e, lam, r, iterations=200):
    """The contraction iteration c <- (e(c) - r) / lambda on the float
    backend.  Converges geometrically (|lambda| < 1 makes every graded
    eigenvalue of the update strictly contracting), so the result matches
    the exact solution to within the iteration tail, not bit-for-bit."""
    ring = e.domain
    if ring.field == "float":
        ef, rf = e, r
        ringf = ring
    else:
        ringf = SeriesRing(ring.varnames, ring.trunc, "float")
        ef = SubstitutionMap(
            ringf,
            [img.map_coefficients(complex, ringf) for img in e.images],
        )
        rf = r.map_coefficients(complex, ringf)
    lamf = complex(ring.coerce(lam))
    c = ringf.zero()
    for _ in range(iterations):
        c = (ef(c) - rf) / lamf
    return c


def eigen_coordinates(e, presentation):
    """Lift the surviving coordinates to exact lambda-eigenvectors of ``e``."""
    ring = presentation.ring
    lam = check_homogenizing(e, presentation)
    coords = []
    for s in presentation.surviving_variables:
        a = ring.var(s)
        r = e(a) - a * lam
        if presentation.relations.generators:
            r = presentation.relations.normal_form(r)
        _check_in_m2(r)
        c = solve_shifted_eigen(e, lam, r)
        coords.append(a - c)
    return coords


class HomogenizingCertificate:
    """Output of the homogeneous-presentation pipeline.

    ``presentation_ring`` has one variable per cotangent dimension;
    ``variable_images`` records the surjection (new variable -> eigen
    coordinate in the original ring); ``homogeneous_ideal`` is the kernel,
    with every generator homogeneous; ``cotangent_variables`` records the
    linear identification with the original coordinates.
    """

    __slots__ = (
        "lam",
        "eigen_coords",
        "presentation_ring",
        "variable_images",
        "homogeneous_ideal",
        "cotangent_variables",
        "trunc",
    )

    def __init__(
        self,
        lam,
        eigen_coords,
        presentation_ring,
        variable_images,
        homogeneous_ideal,
        cotangent_variables,
        trunc,
    ):
        self.lam = lam
        self.eigen_coords = tuple(eigen_coords)
        self.presentation_ring = presentation_ring
        self.variable_images = tuple(variable_images)
        self.homogeneous_ideal = homogeneous_ideal
        self.cotangent_variables = tuple(cotangent_variables)
        self.trunc = trunc


def homogeneous_presentation(e, presentation, new_varnames=None, budget=None):
    """Build the surjection rho: C[[y_1..y_m]] -> A with homogeneous kernel.

    The kernel is computed modulo degree N+1 by eliminating the original
    variables from the graph ideal of rho together with the relations; each
    kernel generator is then replaced by its homogeneous components, and
    every component's membership is re-verified rather than trusted.
    """
    from . import groebner as gb

    ring = presentation.ring
    m = presentation.cotangent_dim
    if new_varnames is None:
        new_varnames = tuple("y%d" % (k + 1) for k in range(m))
    new_ring = SeriesRing(new_varnames, ring.trunc, ring.field) if m else None
    if m == 0:
        # A is the ground field; the statement is vacuously true.
        empty_ring = SeriesRing(("y1",), ring.trunc, ring.field)
        return HomogenizingCertificate(
            None, (), empty_ring, (), Ideal(empty_ring, []), (), ring.trunc
        )
    coords = eigen_coordinates(e, presentation)
    lam = check_homogenizing(e, presentation)
    n = ring.nvars
    one = GaussianRational(1)
    budget = budget or gb.DEFAULT_BUDGET

    raw_gens = []
    zeros_y = (0,) * m
    for g in presentation.relations.generators:
        raw_gens.append({exp + zeros_y: c for exp, c in g.coeffs.items()})
    for k, f in enumerate(coords):
        yexp = tuple(1 if t == k else 0 for t in range(m))
        poly = {(0,) * n + yexp: ring.one_scalar()}
        for exp, c in f.coeffs.items():
            key = exp + zeros_y
            acc = poly.get(key)
            acc = -c if acc is None else acc - c
            if acc:
                poly[key] = acc
            elif key in poly:
                del poly[key]
        raw_gens.append(poly)
    for exp in gb.monomials_of_degree(n, ring.trunc + 1):
        raw_gens.append({exp + zeros_y: one})

    eliminated = gb.elimination_ideal(raw_gens, n, budget)
    kernel_gens = []
    for raw in eliminated:
        if min((sum(exp) for exp in raw), default=ring.trunc + 1) > ring.trunc:
            continue
        kernel_gens.append(
            new_ring.series(
                {exp: c for exp, c in raw.items() if sum(exp) <= ring.trunc}
            )
        )
    kernel = Ideal(new_ring, kernel_gens)

    homogeneous = []
    seen = set()
    for g in kernel_gens:
        degrees = sorted({sum(exp) for exp in g.coeffs})
        for d in degrees:
            component = g.graded_component(d)
            if component.is_zero():
                continue
            if not kernel.contains(component):
                raise NotScalarDifferential(
                    "graded component %s escapes the kernel; the kernel is "
                    "not stable under the diagonal scaling" % component
                )
            key = frozenset(component.coeffs.items())
            if key not in seen:
                seen.add(key)
                homogeneous.append(component)

    # Diagram commutativity: e(rho(y_k)) = rho(lambda * y_k) modulo
    # relations and truncation.
    for f in coords:
        defect = e(f) - f * lam
        if not presentation.relations.contains(defect):
            raise DoesNotPreserveIdeal("eigen property fails for %s" % f)

    return HomogenizingCertificate(
        lam,
        coords,
        new_ring,
        coords,
        Ideal(new_ring, homogeneous),
        tuple(ring.varnames[s] for s in presentation.surviving_variables),
        ring.trunc,
    )


class CertificateVerdict:
    """Boolean verdict plus the list of reasons when it is negative."""

    __slots__ = ("ok", "reasons")

    def __init__(self, ok, reasons):
        self.ok = ok
        self.reasons = tuple(reasons)

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "CertificateVerdict(%r, %r)" % (self.ok, list(self.reasons))


def lhs_certificate_check(cert, presentation):
    """Verify a certificate against the presented ring it claims to describe."""
    reasons = []
    for g in cert.homogeneous_ideal.generators:
        if len({sum(exp) for exp in g.coeffs}) > 1:
            reasons.append("generator %s is not homogeneous" % g)
    if len(cert.eigen_coords) != presentation.cotangent_dim:
        reasons.append(
            "certificate has %d coordinates but the cotangent dimension is %d"
            % (len(cert.eigen_coords), presentation.cotangent_dim)
        )
    elif cert.eigen_coords:
        rho = SubstitutionMap(
            cert.presentation_ring, cert.variable_images, presentation.ring
        )
        for g in cert.homogeneous_ideal.generators:
            if not presentation.relations.contains(rho(g)):
                reasons.append(
                    "generator %s does not vanish in the presented ring" % g
                )
    return CertificateVerdict(not reasons, reasons)
