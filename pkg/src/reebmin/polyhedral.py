"""Exact rational polyhedral kernel.

Cones are generated by primitive integer rays (`VCone`), inequality systems
are `HRep` objects, and unbounded polyhedra are stored as a compact vertex
list plus a tail cone (`Polyhedron`).  Everything here is exact: no floating
point enters this module.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import _exact as ex
from . import _simplex as lp
from .errors import InfeasibleSystem, NotFullDimensional, NotPointed


class _MinusInfinity:
    """Sentinel for an unbounded-below support value."""

    def __repr__(self):
        return "MinusInfinity"

    def __lt__(self, other):
        return other is not MINUS_INFINITY


MINUS_INFINITY = _MinusInfinity()


@dataclass(frozen=True)
class VCone:
    """Cone generated by rays, stored as primitive integer vectors in order."""

    rays: tuple
    ambient_dim: int

    def __init__(self, rays, ambient_dim=None):
        rays = list(rays)
        if ambient_dim is None:
            if not rays:
                raise ValueError("ambient_dim required for a cone with no rays")
            ambient_dim = len(rays[0])
        seen = set()
        prim = []
        for r in rays:
            if len(r) != ambient_dim:
                raise ValueError("ray dimension mismatch")
            p = ex.primitive(r)
            if p not in seen:
                seen.add(p)
                prim.append(p)
        object.__setattr__(self, "rays", tuple(prim))
        object.__setattr__(self, "ambient_dim", ambient_dim)

    def contains(self, v):
        return lp.in_cone(self.rays, v)

    def is_equivalent(self, other):
        """Set equality of the generated cones (mutual ray containment)."""
        if self.ambient_dim != other.ambient_dim:
            return False
        return all(other.contains(r) for r in self.rays) and all(
            self.contains(r) for r in other.rays
        )

    def span_rank(self):
        return ex.rank(self.rays) if self.rays else 0

    def is_full_dimensional(self):
        return self.span_rank() == self.ambient_dim

    def is_pointed(self):
        if not self.rays:
            return True
        pointed, lin = _rays_from_inequalities(self.rays, self.ambient_dim)
        del pointed
        return not lin

    def extreme_rays(self):
        """Irredundant generating subset, preserving stored order."""
        out = []
        for i, r in enumerate(self.rays):
            others = [s for j, s in enumerate(self.rays) if j != i]
            if not lp.in_cone(others, r):
                out.append(r)
        if not out and self.rays:
            out.append(self.rays[0])
        return tuple(out)

    def interior_point(self):
        if not self.rays:
            raise ValueError("zero cone has no interior point")
        total = self.rays[0]
        for r in self.rays[1:]:
            total = ex.vec_add(total, r)
        return total


@dataclass(frozen=True)
class HRep:
    """Inequality system { x : <normal, x> + offset >= 0 }."""

    inequalities: tuple
    ambient_dim: int

    def __init__(self, inequalities, ambient_dim):
        rows = []
        seen = set()
        for normal, offset in inequalities:
            normal = ex.fracvec(normal)
            offset = ex.frac(offset)
            if len(normal) != ambient_dim:
                raise ValueError("inequality dimension mismatch")
            if ex.is_zero_vec(normal):
                if offset >= 0:
                    continue  # trivially true
                row = (tuple([0] * ambient_dim), Fraction(-1))  # canonical absurd row
            else:
                p = ex.primitive(normal)
                scale = next(Fraction(int(pc), 1) / nc for pc, nc in zip(p, normal) if nc != 0)
                row = (p, offset * scale)
            if row not in seen:
                seen.add(row)
                rows.append(row)
        object.__setattr__(self, "inequalities", tuple(rows))
        object.__setattr__(self, "ambient_dim", ambient_dim)

    def satisfies(self, x):
        return all(ex.dot(a, x) + c >= 0 for a, c in self.inequalities)


@dataclass(frozen=True)
class Polyhedron:
    """conv(compact_vertices) + tail cone, vertex list irredundant."""

    compact_vertices: tuple
    tail: VCone

    def __init__(self, compact_vertices, tail):
        verts = sorted(set(ex.fracvec(v) for v in compact_vertices))
        object.__setattr__(self, "compact_vertices", tuple(verts))
        object.__setattr__(self, "tail", tail)

    @property
    def ambient_dim(self):
        return self.tail.ambient_dim

    def translate(self, v):
        v = ex.fracvec(v)
        return Polyhedron([ex.vec_add(w, v) for w in self.compact_vertices], self.tail)

    def is_equivalent(self, other):
        return (
            self.compact_vertices == other.compact_vertices
            and self.tail.is_equivalent(other.tail)
        )


@dataclass(frozen=True)
class SimplicialPiece:
    """One simplicial subcone of a triangulation: n primitive rays, |det| != 0."""

    rays: tuple
    det_abs: int


def _rays_from_inequalities(normals, n):
    """Extreme rays and lineality basis of { y : <a, y> >= 0 for a in normals }.

    Returns (pointed_rays, lineality_basis); the cone equals
    cone(pointed_rays) + span(lineality_basis).
    """
    normals = [ex.fracvec(a) for a in normals if not ex.is_zero_vec(a)]
    if not normals:
        basis = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
        return (), tuple(ex.primitive(b) for b in basis)
    lin = ex.nullspace(normals)
    t = n - len(lin)  # rank of the constraint matrix
    eq_rows = list(lin)  # pointed part lives in the row space: lin . y = 0
    candidates = []
    seen = set()
    for subset in itertools.combinations(range(len(normals)), t - 1):
        m = eq_rows + [normals[i] for i in subset]
        if m:
            null = ex.nullspace(m)
        else:  # n == 1 with a rank-1 system: the whole line is the candidate space
            null = (tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
            null = tuple(null)
        if len(null) != 1:
            continue
        v = ex.primitive(null[0])
        for w in (v, tuple(-x for x in v)):
            if w in seen:
                continue
            if all(ex.dot(a, w) >= 0 for a in normals):
                seen.add(w)
                candidates.append(w)
    if t == 0:
        candidates = []
    return tuple(sorted(candidates)), tuple(ex.primitive(b) for b in lin)


def dual_cone(c: VCone) -> VCone:
    """Generators of { y : <y, r> >= 0 for every ray r of c }.

    If c is not full dimensional the dual contains the orthogonal complement
    of span(c); it is returned through +/- basis ray pairs.
    """
    pointed, lin = _rays_from_inequalities(c.rays, c.ambient_dim)
    rays = list(pointed)
    for b in lin:
        rays.append(b)
        rays.append(tuple(-x for x in b))
    return VCone(rays, c.ambient_dim)


def _remove_redundant(rows, n):
    """Drop inequalities implied by the rest (exact LP per row)."""
    kept = list(rows)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1 :]
        if not others:
            break
        a, c = kept[i]
        status, value = lp.ineq_min(a, others, n)
        if status == lp.OPTIMAL and value + c >= 0:
            kept.pop(i)
        elif status == lp.INFEASIBLE:
            break  # empty set: everything is vacuously implied; keep as-is
        else:
            i += 1
    return kept


def fm_eliminate(h: HRep, coordinate_index: int) -> HRep:
    """Fourier-Motzkin projection forgetting one coordinate."""
    k = coordinate_index
    if not 0 <= k < h.ambient_dim:
        raise ValueError("coordinate index out of range")

    def drop(vec):
        return vec[:k] + vec[k + 1 :]

    zero, pos, neg = [], [], []
    for a, c in h.inequalities:
        if a[k] == 0:
            zero.append((drop(a), c))
        elif a[k] > 0:
            pos.append((a, c))
        else:
            neg.append((a, c))
    combined = list(zero)
    for (ap, cp), (an, cn) in itertools.product(pos, neg):
        # ap[k] * (an row) - an[k] * (ap row): positive combination, kills x_k
        a = tuple(ap[k] * x - an[k] * y for x, y in zip(an, ap))
        c = ap[k] * cn - an[k] * cp
        if ex.is_zero_vec(a):
            if c >= 0:
                continue
            combined.append((drop(a), c))
        else:
            combined.append((drop(a), c))
    out = HRep(combined, h.ambient_dim - 1)
    kept = _remove_redundant(list(out.inequalities), out.ambient_dim)
    return HRep(kept, out.ambient_dim)


def vertex_enumeration(h: HRep) -> Polyhedron:
    """Irredundant vertices plus tail cone of a pointed inequality system."""
    n = h.ambient_dim
    rows = list(h.inequalities)
    if not lp.ineq_feasible(rows, n):
        raise InfeasibleSystem("inequality system has no solution")
    normals = [a for a, _ in rows]
    pointed, lin = _rays_from_inequalities(normals, n)
    if lin:
        raise NotPointed("solution set contains a line; no vertex description")
    tail = VCone(pointed, n) if pointed else VCone([], n)
    vertices = set()
    for subset in itertools.combinations(range(len(rows)), n):
        m = [rows[i][0] for i in subset]
        b = [-rows[i][1] for i in subset]
        if ex.rank(m) != n:
            continue
        x = ex.solve(m, b)
        if x is None:
            continue
        if all(ex.dot(a, x) + c >= 0 for a, c in rows):
            vertices.add(x)
    if not vertices:
        raise InfeasibleSystem("feasible system produced no basic solution")
    return Polyhedron(sorted(vertices), tail)


def hrep_of(p: Polyhedron) -> HRep:
    """Inequality description of conv(vertices) + tail (by homogenization)."""
    n = p.ambient_dim
    hats = [tuple(v) + (Fraction(1),) for v in p.compact_vertices]
    hats += [tuple(Fraction(x) for x in r) + (Fraction(0),) for r in p.tail.rays]
    pointed, lin = _rays_from_inequalities(hats, n + 1)
    rows = []
    for gen in pointed:
        rows.append((gen[:n], Fraction(gen[n])))
    for b in lin:
        rows.append((b[:n], Fraction(b[n])))
        rows.append((tuple(-x for x in b[:n]), Fraction(-b[n])))
    return HRep(rows, n)


def _facets(ray_indices, all_rays):
    """Facets of cone(rays[i] : i in ray_indices) as (normal, sub_indices)."""
    rays = [all_rays[i] for i in ray_indices]
    normals, _lin = _rays_from_inequalities(rays, len(rays[0]))
    out = []
    for hnorm in normals:
        sub = [i for i in ray_indices if ex.dot(hnorm, all_rays[i]) == 0]
        out.append((hnorm, sub))
    return out


def triangulate_cone(c: VCone):
    """Triangulation into simplicial subcones using only rays of c.

    Cells are produced by recursively coning the earliest stored extreme ray
    over the facets it does not lie on, so the output depends only on the
    stored ray order.
    """
    n = c.ambient_dim
    ext = c.extreme_rays()
    if ex.rank(ext) != n:
        raise NotFullDimensional("cone rays span a proper subspace")
    order = {r: i for i, r in enumerate(c.rays)}
    idx = sorted(range(len(ext)), key=lambda i: order[ext[i]])

    def tri(indices, dim):
        if len(indices) == dim:
            return [tuple(indices)]
        apex = indices[0]
        cells = []
        for hnorm, sub in _facets(indices, ext):
            if ex.dot(hnorm, ext[apex]) > 0:
                for cell in tri(sub, dim - 1):
                    cells.append(tuple([apex] + list(cell)))
        return cells

    pieces = []
    for cell in tri(idx, n):
        rays = tuple(ext[i] for i in sorted(cell))
        d = abs(ex.int_det(rays))
        pieces.append(SimplicialPiece(rays=rays, det_abs=d))
    return pieces


def smith_decompose(m):
    """Smith normal form with unimodular transforms: U m V = D."""
    return ex.smith_normal_form(m)


def polyhedron_min(p: Polyhedron, u):
    """min_{v in p} <u, v>: finite iff u pairs >= 0 with every tail ray."""
    u = ex.fracvec(u)
    if any(ex.dot(u, r) < 0 for r in p.tail.rays):
        return MINUS_INFINITY
    return min(ex.dot(u, v) for v in p.compact_vertices)
