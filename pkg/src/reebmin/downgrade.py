"""Subtorus downgrades of affine space and binomial hypersurface helpers.

Given the weight matrix F of a rank-r subtorus acting on C^N, complete it to
an exact sequence 0 -> Z^r -F-> Z^N -P-> Z^(N-r) -> 0 with an integer section
s (s F = id), read off the cone sigma = {xi : F xi >= 0}, and compute the
coefficient polyhedra s({y >= 0, P y = p}) of the induced polyhedral divisor.
Binomial hypersurfaces z^a = z^b are converted to toric data through the
saturated character-lattice quotient Z^N / Z(a - b).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from . import _exact as ex
from . import _simplex as lp
from .errors import (
    EmptyFiber,
    Inconsistent,
    NonInvariant,
    RankDeficient,
    TorsionCokernel,
    TorsionQuotient,
)
from .polyhedral import HRep, Polyhedron, VCone, _rays_from_inequalities, dual_cone, vertex_enumeration
from .toricvol import ReebVector, ToricData


@dataclass(frozen=True)
class WeightMatrix:
    """Integer N x r matrix whose row i is the torus weight of coordinate z_i."""

    rows: tuple
    N: int
    r: int

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if not rows:
            raise ValueError("empty weight matrix")
        r = len(rows[0])
        if any(len(row) != r for row in rows):
            raise ValueError("ragged weight matrix")
        if ex.rank(rows) != r:
            raise RankDeficient("torus action is not effective: rank(F) < r")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "N", len(rows))
        object.__setattr__(self, "r", r)

    def column_sums(self):
        return tuple(sum(row[j] for row in self.rows) for j in range(self.r))


@dataclass(frozen=True)
class DowngradeData:
    """Exact-sequence data (F, P, s) with P F = 0 and s F = id."""

    F: WeightMatrix
    P: tuple
    s: tuple

    def __init__(self, F, P, s):
        P = tuple(tuple(int(x) for x in row) for row in P)
        s = tuple(tuple(int(x) for x in row) for row in s)
        prod = ex.mat_mul(P, F.rows) if P else ()
        if any(x != 0 for row in prod for x in row):
            raise ValueError("P F != 0")
        sf = tuple(tuple(Fraction(x) for x in row) for row in ex.mat_mul(s, F.rows))
        if sf != ex.identity(F.r):
            raise ValueError("s F != id")
        u, d, _ = ex.smith_normal_form(F.rows)
        if any(abs(d[i][i]) != 1 for i in range(F.r)):
            raise TorsionCokernel("coker(F) has torsion")
        if P and not ex.row_lattices_equal(P, u[F.r :]):
            raise ValueError("rows of P do not generate the saturated cokernel lattice")
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "s", s)


def complete_sequence(F: WeightMatrix) -> DowngradeData:
    """Cokernel map P and integer section s from the Smith form of F."""
    u, d, v = ex.smith_normal_form(F.rows)
    diag = [d[i][i] for i in range(F.r)]
    if any(x == 0 for x in diag):
        raise RankDeficient("rank(F) < r")
    if any(abs(x) != 1 for x in diag):
        raise TorsionCokernel(f"coker(F) has torsion of orders {[x for x in diag if abs(x) != 1]}")
    p = tuple(u[F.r :])
    s = ex.mat_mul(v, u[: F.r])
    s = tuple(tuple(int(x) for x in row) for row in s)
    return DowngradeData(F, p, s)


def downgrade_sigma(d: DowngradeData):
    """The cone sigma = {xi : F xi >= 0} and its dual."""
    rays, lin = _rays_from_inequalities(d.F.rows, d.F.r)
    assert not lin  # F has full column rank
    sigma = VCone(rays, d.F.r)
    return sigma, dual_cone(sigma)


def downgrade_coefficient(d: DowngradeData, p) -> Polyhedron:
    """Coefficient polyhedron s({y >= 0 : P y = p}) with tail cone sigma.

    Solved by one particular rational solution y0 of P y = p followed by the
    vertex enumeration of {xi : F xi + y0 >= 0}, translated by s(y0).
    """
    p = [ex.frac(x) for x in p]
    if len(p) != d.F.N - d.F.r:
        raise ValueError("fiber point has the wrong dimension")
    y0 = lp.nonneg_solution(d.P, p)
    if y0 is None:
        raise EmptyFiber(f"no y >= 0 with P y = {p}")
    h = HRep([(row, y0[i]) for i, row in enumerate(d.F.rows)], d.F.r)
    poly = vertex_enumeration(h)
    sy0 = ex.mat_vec(d.s, y0)
    return poly.translate(sy0)


@dataclass(frozen=True)
class BinomialHypersurface:
    """The hypersurface z^a = z^b with disjoint supports."""

    a: tuple
    b: tuple
    ambient_weight: tuple = None

    def __init__(self, a, b, ambient_weight=None):
        a = tuple(int(x) for x in a)
        b = tuple(int(x) for x in b)
        if len(a) != len(b):
            raise ValueError("exponent vectors of different length")
        if any(x < 0 for x in a + b):
            raise ValueError("exponents must be nonnegative")
        if a == b:
            raise ValueError("a == b defines the zero polynomial")
        if any(x > 0 and y > 0 for x, y in zip(a, b)):
            raise ValueError("supports of a and b must be disjoint")
        if ambient_weight is not None:
            ambient_weight = tuple(float(w) for w in ambient_weight)
            pairing = sum((x - y) * w for x, y, w in zip(a, b, ambient_weight))
            if abs(pairing) > 1e-9:
                raise ValueError("ambient weight does not annihilate a - b")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "ambient_weight", ambient_weight)

    @property
    def N(self):
        return len(self.a)


def binomial_to_toric(h: BinomialHypersurface) -> ToricData:
    """Toric data of the binomial hypersurface via the character quotient.

    The quotient Z^N / Z(a-b) is saturated through the Smith form; coordinate
    characters map to the weight-cone rays and u0 is the image of
    (1, ..., 1) - a.
    """
    c = tuple(x - y for x, y in zip(h.a, h.b))
    g = 0
    for x in c:
        g = gcd(g, abs(x))
    c = tuple(x // g for x in c)
    u, d, _v = ex.smith_normal_form(tuple((x,) for x in c))
    if d[0][0] != 1:
        raise TorsionQuotient("character lattice quotient kept torsion after saturation")
    q = u[1:]  # (N-1) x N projection onto the saturated quotient
    images = [tuple(row[i] for row in q) for i in range(h.N)]
    if any(all(x == 0 for x in img) for img in images):
        raise ValueError("a coordinate character dies in the quotient")
    sigma_dual = VCone(images, h.N - 1)
    one_minus_a = tuple(1 - x for x in h.a)
    u0 = ex.mat_vec(q, one_minus_a)
    return ToricData(dual_cone(sigma_dual), sigma_dual, u0)


def induced_reeb(F: WeightMatrix, ambient_weight) -> ReebVector:
    """The unique xi with <F_i, xi> = ambient_weight_i for every coordinate."""
    w = list(ambient_weight)
    if len(w) != F.N:
        raise ValueError("ambient weight has the wrong length")
    exact = all(isinstance(x, (int, Fraction, str)) for x in w)
    if exact:
        wq = [ex.frac(x) for x in w]
        _red, pivots = ex.rref(ex.transpose(F.rows))
        rows = list(pivots)
        sol = ex.solve([F.rows[i] for i in rows], [wq[i] for i in rows])
        if sol is None:
            raise Inconsistent("weight rows are inconsistent")
        for i in range(F.N):
            if ex.dot(F.rows[i], sol) != wq[i]:
                raise Inconsistent(f"row {i}: <F_i, xi> != w_i")
        return ReebVector.rational(sol)
    a = np.asarray(F.rows, dtype=float)
    wf = np.asarray([float(x) for x in w])
    sol, *_ = np.linalg.lstsq(a, wf, rcond=None)
    resid = a @ sol - wf
    if np.max(np.abs(resid)) > 1e-9 * (1 + np.max(np.abs(wf))):
        raise Inconsistent(f"weight not in the row space (residual {np.max(np.abs(resid)):.3g})")
    return ReebVector.real(sol)


def hypersurface_u0(F: WeightMatrix, f_weight=None, monomials=None):
    """Log-discrepancy functional (sum of weight rows) - (weight of f).

    Either pass f_weight directly or a list of exponent vectors of the
    defining equation; all monomials must then share one torus weight.
    """
    if monomials is not None:
        weights = []
        for mono in monomials:
            mono = tuple(int(x) for x in mono)
            if len(mono) != F.N:
                raise ValueError("monomial exponent length mismatch")
            weights.append(tuple(sum(m * row[j] for m, row in zip(mono, F.rows)) for j in range(F.r)))
        if any(w != weights[0] for w in weights):
            raise NonInvariant(f"monomial weights differ: {sorted(set(weights))}")
        derived = weights[0]
        if f_weight is not None and tuple(int(x) for x in f_weight) != derived:
            raise NonInvariant("declared f_weight does not match the monomials")
        f_weight = derived
    if f_weight is None:
        f_weight = tuple(0 for _ in range(F.r))
    f_weight = tuple(int(x) for x in f_weight)
    cols = F.column_sums()
    return tuple(Fraction(c - w) for c, w in zip(cols, f_weight))
