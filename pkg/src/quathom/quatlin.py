"""Quaternionic linear algebra on H^n.

Induced complex structures, complexified Hodge decompositions, the
projection-composition endomorphism Phi restricted to the holomorphic part,
and extraction of its scalar.

Conventions (fixed once, used everywhere):
  * each quaternionic coordinate contributes the real basis (1, i, j, k),
    in that order, so H^n is R^{4n};
  * the structure actions are the LEFT multiplications by i, j, k, which
    satisfy actionI @ actionJ = actionK and make {e1 - i e2, e3 - i e4}
    the holomorphic basis of H^1 for the structure (1, 0, 0);
  * the commuting quaternion action used for the Schur commutation check
    is the RIGHT multiplication.
  * V^{1,0} is the +i eigenspace of the complexified structure action.
"""

from fractions import Fraction

import numpy as np

from . import linalg
from .errors import FieldClosureError, NotScalar, NotUnitImaginary
from .gaussian import GR_I, GR_ONE, GR_ZERO, GaussianRational

FLOAT_TOL = 1e-10
UNIT_TOL = 1e-12

# Left multiplication by i, j, k on (1, i, j, k) coordinates.
_LEFT_I = ((0, -1, 0, 0), (1, 0, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0))
_LEFT_J = ((0, 0, -1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, -1, 0, 0))
_LEFT_K = ((0, 0, 0, -1), (0, 0, -1, 0), (0, 1, 0, 0), (1, 0, 0, 0))

# Right multiplication by i, j, k.
_RIGHT_I = ((0, -1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, -1, 0))
_RIGHT_J = ((0, 0, -1, 0), (0, 0, 0, -1), (1, 0, 0, 0), (0, 1, 0, 0))
_RIGHT_K = ((0, 0, 0, -1), (0, 0, 1, 0), (0, -1, 0, 0), (1, 0, 0, 0))


class Quaternion:
    """A quaternion w + x i + y j + z k with scalar components."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w=0, x=0, y=0, z=0):
        self.w, self.x, self.y, self.z = w, x, y, z

    def __mul__(self, other):
        a, b = self, other
        return Quaternion(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )

    def __add__(self, other):
        return Quaternion(
            self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z
        )

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __eq__(self, other):
        return (
            isinstance(other, Quaternion)
            and self.w == other.w
            and self.x == other.x
            and self.y == other.y
            and self.z == other.z
        )

    def norm2(self):
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def conjugate(self):
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def __repr__(self):
        return "Quaternion(%r, %r, %r, %r)" % (self.w, self.x, self.y, self.z)


class InducedComplexStructure:
    """A unit imaginary quaternion a i + b j + c k, defining a complex structure."""

    __slots__ = ("a", "b", "c", "backend")

    def __init__(self, a, b, c, backend):
        self.a, self.b, self.c = a, b, c
        self.backend = backend

    def as_quaternion(self):
        zero = Fraction(0) if self.backend == "exact" else 0.0
        return Quaternion(zero, self.a, self.b, self.c)

    def __neg__(self):
        return InducedComplexStructure(-self.a, -self.b, -self.c, self.backend)

    def dot(self, other):
        return self.a * other.a + self.b * other.b + self.c * other.c

    def __eq__(self, other):
        return (
            isinstance(other, InducedComplexStructure)
            and self.a == other.a
            and self.b == other.b
            and self.c == other.c
        )

    def __repr__(self):
        return "InducedComplexStructure(%r, %r, %r, %r)" % (
            self.a,
            self.b,
            self.c,
            self.backend,
        )


def make_structure(a, b, c, backend="exact"):
    """Validate (a, b, c) on the unit sphere and wrap it as a structure."""
    if backend == "exact":
        if any(isinstance(v, (float, complex)) for v in (a, b, c)):
            raise FieldClosureError(
                "exact backend requires rational structure coefficients; "
                "floats are only approximations of irrational directions"
            )
        try:
            a, b, c = Fraction(a), Fraction(b), Fraction(c)
        except (TypeError, ValueError):
            raise FieldClosureError(
                "exact backend requires rational structure coefficients"
            )
        if a * a + b * b + c * c != 1:
            raise NotUnitImaginary("a^2 + b^2 + c^2 = %s != 1" % (a * a + b * b + c * c))
        return InducedComplexStructure(a, b, c, "exact")
    if backend == "float":
        a, b, c = float(a), float(b), float(c)
        norm = a * a + b * b + c * c
        if abs(norm - 1.0) > UNIT_TOL:
            raise NotUnitImaginary("a^2 + b^2 + c^2 = %r != 1" % norm)
        return InducedComplexStructure(a, b, c, "float")
    raise ValueError("unknown backend %r" % (backend,))


def _block_diagonal(block, n, backend):
    if backend == "float":
        mat = np.zeros((4 * n, 4 * n))
        for q in range(n):
            mat[4 * q : 4 * q + 4, 4 * q : 4 * q + 4] = np.array(block, dtype=float)
        return mat
    zero = GaussianRational(0)
    mat = linalg.zeros(4 * n, 4 * n, zero)
    for q in range(n):
        for r in range(4):
            for c in range(4):
                if block[r][c]:
                    mat[4 * q + r][4 * q + c] = GaussianRational(block[r][c])
    return mat


class QuaternionModule:
    """H^n as R^{4n} with the three structure action matrices."""

    __slots__ = ("n", "backend", "actionI", "actionJ", "actionK")

    def __init__(self, n, backend="exact"):
        if n < 1:
            raise ValueError("quaternionic dimension must be positive")
        self.n = n
        self.backend = backend
        self.actionI = _block_diagonal(_LEFT_I, n, backend)
        self.actionJ = _block_diagonal(_LEFT_J, n, backend)
        self.actionK = _block_diagonal(_LEFT_K, n, backend)

    def right_actions(self):
        """Right multiplications by i and j (the commuting quaternion action)."""
        return (
            _block_diagonal(_RIGHT_I, self.n, self.backend),
            _block_diagonal(_RIGHT_J, self.n, self.backend),
        )

    def structure_action(self, structure):
        """The real 4n x 4n matrix of a*actionI + b*actionJ + c*actionK."""
        if self.backend != structure.backend:
            raise ValueError("module and structure use different backends")
        if self.backend == "float":
            return (
                structure.a * self.actionI
                + structure.b * self.actionJ
                + structure.c * self.actionK
            )
        sa = GaussianRational(structure.a)
        sb = GaussianRational(structure.b)
        sc = GaussianRational(structure.c)
        return linalg.mat_add(
            linalg.mat_add(
                linalg.mat_scale(self.actionI, sa), linalg.mat_scale(self.actionJ, sb)
            ),
            linalg.mat_scale(self.actionK, sc),
        )


class HodgeFrame:
    """The V^{1,0} data of one induced complex structure on one module."""

    __slots__ = ("structure", "basis10", "projector10")

    def __init__(self, structure, basis10, projector10):
        self.structure = structure
        self.basis10 = basis10  # 4n x 2n (columns are basis vectors)
        self.projector10 = projector10  # 4n x 4n


def hodge_frame(module, structure):
    """Projector onto the +i eigenspace of the complexified structure action.

    The action matrix A satisfies A^2 = -id, so (id - i A)/2 is exactly the
    +i eigenprojector; on the exact backend it is Gaussian-rational whenever
    the structure coefficients are rational.
    """
    action = module.structure_action(structure)
    dim = 4 * module.n
    if module.backend == "float":
        projector = (np.eye(dim) - 1j * np.asarray(action, dtype=complex)) / 2.0
        # A is real antisymmetric, so the projector is Hermitian; eigh gives
        # a deterministic orthonormal basis of the eigenvalue-1 space.
        evals, evecs = np.linalg.eigh(projector)
        basis = evecs[:, evals > 0.5]
        if basis.shape[1] != 2 * module.n:
            raise NotScalar("Hodge projector rank %d != %d" % (basis.shape[1], 2 * module.n))
        return HodgeFrame(structure, basis, projector)
    half = GaussianRational(Fraction(1, 2))
    mihalf = GaussianRational(0, Fraction(-1, 2))
    projector = linalg.mat_add(
        linalg.mat_scale(linalg.identity(dim, GR_ZERO, GR_ONE), half),
        linalg.mat_scale(action, mihalf),
    )
    # Independent columns of the projector span its image; pick the leftmost.
    cols = linalg.transpose(projector)
    chosen = linalg.select_independent_rows(cols, 2 * module.n)
    if len(chosen) != 2 * module.n:
        raise NotScalar("Hodge projector has unexpected rank %d" % len(chosen))
    basis = [[cols[c][r] for c in chosen] for r in range(dim)]
    return HodgeFrame(structure, basis, projector)


def _coords_on_frame(module, frame, matrix):
    """Coordinates of ``matrix`` restricted to span(basis10), in that basis."""
    if module.backend == "float":
        b = frame.basis10
        return b.conj().T @ (np.asarray(matrix, dtype=complex) @ b)
    mb = linalg.matmul(matrix, frame.basis10)
    return linalg.solve_right(frame.basis10, mb)


def phi_endomorphism(module, struct_i, struct_j):
    """Matrix of (proj to V_I^{1,0}) o (proj to V_J^{1,0}) on V_I^{1,0}."""
    frame_i = hodge_frame(module, struct_i)
    frame_j = hodge_frame(module, struct_j)
    if module.backend == "float":
        full = frame_i.projector10 @ frame_j.projector10
    else:
        full = linalg.matmul(frame_i.projector10, frame_j.projector10)
    return _coords_on_frame(module, frame_i, full)


def scalar_of_phi(module, struct_i, struct_j):
    """The Schur scalar of the projection composition.

    Returns an exact Fraction on the exact backend, a float otherwise.
    Guarantees: real, 0 <= lambda <= 1, with 1 iff I = J and 0 iff I = -J.
    """
    phi = phi_endomorphism(module, struct_i, struct_j)
    if module.backend == "float":
        lam = phi[0, 0]
        dev = np.linalg.norm(phi - lam * np.eye(phi.shape[0]))
        if dev > FLOAT_TOL:
            raise NotScalar("Phi deviates from a scalar by %r" % dev)
        if abs(lam.imag) > FLOAT_TOL:
            raise NotScalar("Phi scalar has imaginary part %r" % lam.imag)
        value = lam.real
        if value < -FLOAT_TOL or value > 1.0 + FLOAT_TOL:
            raise NotScalar("Phi scalar %r outside [0, 1]" % value)
        return float(min(max(value, 0.0), 1.0))
    dim = len(phi)
    lam = phi[0][0]
    for r in range(dim):
        for c in range(dim):
            expected = lam if r == c else GR_ZERO
            if phi[r][c] != expected:
                raise NotScalar("Phi is not scalar at entry (%d, %d)" % (r, c))
    if not lam.is_real():
        raise NotScalar("Phi scalar %s is not real" % lam)
    value = lam.re
    if value < 0 or value > 1:
        raise NotScalar("Phi scalar %s outside [0, 1]" % value)
    return value


def su2_commutation_check(module, struct_i, struct_j, perturbation=None):
    """True iff Phi commutes with the right quaternion action on V_I^{1,0}.

    ``perturbation`` (a 2n x 2n matrix added to Phi) exists for negative
    controls in the test harness.
    """
    frame_i = hodge_frame(module, struct_i)
    frame_j = hodge_frame(module, struct_j)
    if module.backend == "float":
        full = frame_i.projector10 @ frame_j.projector10
    else:
        full = linalg.matmul(frame_i.projector10, frame_j.projector10)
    phi = _coords_on_frame(module, frame_i, full)
    if perturbation is not None:
        if module.backend == "float":
            phi = phi + np.asarray(perturbation, dtype=complex)
        else:
            phi = linalg.mat_add(phi, perturbation)
    for generator in module.right_actions():
        rg = _coords_on_frame(module, frame_i, generator)
        if module.backend == "float":
            if np.linalg.norm(rg @ phi - phi @ rg) > FLOAT_TOL:
                return False
        else:
            lhs = linalg.matmul(rg, phi)
            rhs = linalg.matmul(phi, rg)
            if any(
                lhs[r][c] != rhs[r][c]
                for r in range(len(lhs))
                for c in range(len(lhs))
            ):
                return False
    return True
