"""A small exact-rational simplex solver (Bland's rule, two phases).

Only intended for the desk-scale systems produced by the polyhedral kernel:
a few dozen constraints in a handful of variables.
"""

from fractions import Fraction

from ._exact import frac

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


def _pivot(tableau, basis, row, col):
    pv = tableau[row][col]
    tableau[row] = [x / pv for x in tableau[row]]
    for i, r in enumerate(tableau):
        if i != row and r[col] != 0:
            f = r[col]
            tableau[i] = [x - f * y for x, y in zip(r, tableau[row])]
    basis[row] = col


def _run_simplex(tableau, basis, ncols):
    """Minimize the objective stored in the last tableau row.  Bland's rule."""
    while True:
        obj = tableau[-1]
        col = next((j for j in range(ncols) if obj[j] < 0), None)
        if col is None:
            return OPTIMAL
        row = None
        best = None
        for i in range(len(tableau) - 1):
            if tableau[i][col] > 0:
                ratio = tableau[i][-1] / tableau[i][col]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[row]):
                    best = ratio
                    row = i
        if row is None:
            return UNBOUNDED
        _pivot(tableau, basis, row, col)


def lp_standard(c, a, b):
    """min c.x  subject to  a x = b, x >= 0.

    Returns (status, x, value) with exact rationals; x and value are None
    unless status == OPTIMAL.
    """
    m = len(a)
    n = len(c)
    rows = [[frac(x) for x in row] for row in a]
    rhs = [frac(x) for x in b]
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]

    # phase 1: artificial variables
    ncols = n + m
    tableau = [rows[i] + [Fraction(int(i == j)) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    objrow = [Fraction(0)] * (ncols + 1)
    for i in range(m):  # objective sum of artificials, expressed in nonbasic terms
        objrow = [o - t for o, t in zip(objrow, tableau[i])]
    objrow = [o if j < n else Fraction(0) for j, o in enumerate(objrow[:ncols])] + [objrow[-1]]
    tableau.append(objrow)
    _run_simplex(tableau, basis, n)
    if -tableau[-1][-1] != 0:
        return INFEASIBLE, None, None

    # drive remaining artificials out of the basis, drop dependent rows
    keep = []
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tableau[i][j] != 0), None)
            if col is None:
                continue  # redundant constraint
            _pivot(tableau, basis, i, col)
        keep.append(i)
    tableau = [[tableau[i][j] for j in range(n)] + [tableau[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]

    # phase 2
    cost = [frac(x) for x in c]
    objrow = list(cost) + [Fraction(0)]
    for i, bi in enumerate(basis):
        if objrow[bi] != 0:
            f = objrow[bi]
            objrow = [x - f * y for x, y in zip(objrow, tableau[i] + [])]
    tableau.append(objrow)
    status = _run_simplex(tableau, basis, n)
    if status != OPTIMAL:
        return status, None, None
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        x[bi] = tableau[i][-1]
    value = sum(ci * xi for ci, xi in zip(cost, x))
    return OPTIMAL, tuple(x), value


def _split_free(coeffs):
    """Free variables x -> x_plus - x_minus."""
    out = []
    for c in coeffs:
        out.append(c)
        out.append(-c)
    return out


def lp_inequalities(objective, inequalities, n):
    """min objective.x  subject to  <a, x> + off >= 0 for (a, off) in inequalities.

    x is free.  Returns (status, x, value).
    """
    m = len(inequalities)
    a = []
    b = []
    for idx, (normal, off) in enumerate(inequalities):
        row = _split_free(normal) + [Fraction(0)] * m
        row[2 * n + idx] = Fraction(-1)  # surplus: <a, x> - s = -off
        a.append(row)
        b.append(-frac(off))
    c = _split_free(objective) + [Fraction(0)] * m
    status, x, value = lp_standard(c, a, b)
    if status != OPTIMAL:
        return status, None, None
    point = tuple(x[2 * i] - x[2 * i + 1] for i in range(n))
    return OPTIMAL, point, value


def ineq_feasible(inequalities, n):
    status, _, _ = lp_inequalities([Fraction(0)] * n, inequalities, n)
    return status == OPTIMAL


def ineq_min(objective, inequalities, n):
    """Status and minimum of a linear functional over an inequality system."""
    status, _, value = lp_inequalities(objective, inequalities, n)
    return status, value


def in_cone(rays, v):
    """Whether v is a nonnegative combination of the given rays."""
    v = [frac(x) for x in v]
    if all(x == 0 for x in v):
        return True
    if not rays:
        return False
    n = len(v)
    a = [[frac(rays[j][i]) for j in range(len(rays))] for i in range(n)]
    c = [Fraction(0)] * len(rays)
    status, _, _ = lp_standard(c, a, v)
    return status == OPTIMAL


def nonneg_solution(a, b):
    """One x >= 0 with a x = b, or None."""
    ncols = len(a[0]) if a else 0
    status, x, _ = lp_standard([Fraction(0)] * ncols, a, b)
    return x if status == OPTIMAL else None
