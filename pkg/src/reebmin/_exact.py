"""Exact rational and integer linear algebra used by the polyhedral kernel.

Vectors are tuples, matrices are tuples of row tuples.  Entries are ints or
`fractions.Fraction`; nothing in here touches floating point.
"""

from fractions import Fraction
from math import gcd


def frac(x):
    """Coerce ints, strings like '3/4' or '0.25', and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to an exact rational")


def fracvec(v):
    return tuple(frac(x) for x in v)


def dot(u, v):
    if len(u) != len(v):
        raise ValueError("dimension mismatch in dot product")
    return sum(a * b for a, b in zip(u, v))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * a for a in v)


def is_zero_vec(v):
    return all(a == 0 for a in v)


def primitive(v):
    """Smallest positive integer multiple of a rational vector, same direction."""
    v = fracvec(v)
    if is_zero_vec(v):
        raise ValueError("zero vector has no primitive representative")
    den = 1
    for a in v:
        den = den * a.denominator // gcd(den, a.denominator)
    ints = [int(a * den) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    return tuple(a // g for a in ints)


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def transpose(m):
    return tuple(zip(*m)) if m else ()


def mat_mul(a, b):
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def rref(m):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    rows = [list(fracvec(r)) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(m):
    if not m:
        return 0
    return len(rref(m)[1])


def nullspace(m):
    """Rational basis of {x : m x = 0}; empty matrix means the full space."""
    if not m:
        raise ValueError("nullspace needs the ambient dimension; pass a row of zeros")
    ncols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(tuple(v))
    return tuple(basis)


def solve(m, b):
    """One solution of m x = b, or None if inconsistent."""
    aug = [list(fracvec(row)) + [frac(bb)] for row, bb in zip(m, b)]
    red, pivots = rref(aug)
    ncols = len(m[0])
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return tuple(x)


def inverse(m):
    n = len(m)
    aug = [list(fracvec(row)) + list(identity(n)[i]) for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if list(pivots[:n]) != list(range(n)):
        return None
    return tuple(tuple(red[i][n:]) for i in range(n))


def det(m):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(m)
    rows = [list(fracvec(r)) for r in m]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            sign = -sign
        pv = rows[c][c]
        result *= pv
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / pv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return sign * result


def int_det(m):
    d = det(m)
    if d.denominator != 1:
        raise ValueError("matrix is not integral")
    return int(d)


def smith_normal_form(m):
    """Smith decomposition of an integer matrix.

    Returns (U, D, V) with U (rows x rows) and V (cols x cols) unimodular,
    U m V = D, and D diagonal with nonnegative entries forming a divisibility
    chain d1 | d2 | ...
    """
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    a = [[int(x) for x in row] for row in m]
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while True:
        pivot = None
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            done = True
            for i in range(t + 1, nrows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t] != 0:  # remainder smaller than pivot; promote it
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, ncols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # pivot must divide the rest of the submatrix
            stray = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if a[i][j] % a[t][t] != 0:
                        stray = i
                        break
                if stray is not None:
                    break
            if stray is None:
                break
            row_op(t, stray, -1)  # fold the offending row into the pivot row
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
        if t == min(nrows, ncols):
            break
    d = tuple(tuple(a[i][j] if i == j else 0 for j in range(ncols)) for i in range(nrows))
    return (tuple(tuple(r) for r in u), d, tuple(tuple(r) for r in v))


def solve_integer(m, b):
    """One integer solution of m x = b, or None."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    u, d, v = smith_normal_form(m)
    ub = mat_vec(u, b)
    y = [0] * ncols
    for i in range(nrows):
        di = d[i][i] if i < ncols else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di != 0:
                return None
            if i < ncols:
                y[i] = ub[i] // di
    return mat_vec(v, tuple(y))


def row_lattices_equal(a, b):
    """Whether two integer matrices generate the same row lattice."""
    at = transpose(a)
    bt = transpose(b)
    return all(solve_integer(at, row) is not None for row in b) and all(
        solve_integer(bt, row) is not None for row in a
    )
