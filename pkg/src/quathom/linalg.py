"""Small dense linear algebra over exact field elements.

Matrices are lists of lists whose entries support field arithmetic
(GaussianRational on the exact backend, complex on the float backend).
Sizes here are tiny (4n <= 16 at desk scale), so plain Gaussian
elimination is both fast enough and fully deterministic.
"""

from .errors import SingularLinearPart


def zeros(rows, cols, zero):
    return [[zero for _ in range(cols)] for _ in range(rows)]


def identity(n, zero, one):
    m = zeros(n, n, zero)
    for i in range(n):
        m[i][i] = one
    return m


def mat_copy(a):
    return [row[:] for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, s):
    return [[s * x for x in row] for row in a]


def matmul(a, b):
    nb = len(b)
    cols = len(b[0])
    out = []
    for row in a:
        orow = []
        for j in range(cols):
            acc = None
            for k in range(nb):
                term = row[k] * b[k][j]
                acc = term if acc is None else acc + term
            orow.append(acc)
        out.append(orow)
    return out


def matvec(a, v):
    return [sum_entries(row[k] * v[k] for k in range(len(v))) for row in a]


def sum_entries(items):
    acc = None
    for item in items:
        acc = item if acc is None else acc + item
    return acc


def transpose(a):
    return [list(col) for col in zip(*a)]


def conjugate(a):
    return [[x.conjugate() for x in row] for row in a]


def _is_zero(x, tol):
    if tol:
        return abs(x) <= tol
    return not x


def rref(a, tol=0):
    """Reduced row echelon form.  Returns (rref_matrix, pivot_columns)."""
    m = mat_copy(a)
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pivot_row = None
        if tol:
            best = tol
            for i in range(r, nrows):
                if abs(m[i][c]) > best:
                    best = abs(m[i][c])
                    pivot_row = i
        else:
            for i in range(r, nrows):
                if m[i][c]:
                    pivot_row = i
                    break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and not _is_zero(m[i][c], tol):
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a, tol=0):
    _, pivots = rref(a, tol)
    return len(pivots)


def nullspace(a, zero, one, tol=0):
    """Basis of the right null space, one vector per free column."""
    red, pivots = rref(a, tol)
    ncols = len(a[0]) if a else 0
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve_right(b, c, tol=0):
    """Solve B X = C for full-column-rank B; raises if inconsistent."""
    nrows = len(b)
    k = len(b[0])
    p = len(c[0])
    aug = [b[i][:] + c[i][:] for i in range(nrows)]
    red, pivots = rref(aug, tol)
    if any(pc >= k for pc in pivots[: len(pivots)]):
        for pc in pivots:
            if pc >= k:
                raise SingularLinearPart("inconsistent linear system")
    if len([pc for pc in pivots if pc < k]) < k:
        raise SingularLinearPart("coefficient matrix is rank deficient")
    x = [[None] * p for _ in range(k)]
    for r, pc in enumerate(pivots):
        if pc < k:
            for j in range(p):
                x[pc][j] = red[r][k + j]
    return x


def inverse(a, zero, one, tol=0):
    n = len(a)
    return solve_right(a, identity(n, zero, one), tol)


def max_abs(a):
    return max((abs(x) for row in a for x in row), default=0.0)


def select_independent_rows(a, count, tol=0):
    """Indices of the first ``count`` linearly independent rows of ``a``."""
    chosen = []
    current = []
    for idx, row in enumerate(a):
        trial = current + [row]
        if rank(trial, tol) == len(trial):
            chosen.append(idx)
            current = trial
            if len(chosen) == count:
                break
    return chosen
