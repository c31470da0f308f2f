from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reebmin import (
    MINUS_INFINITY,
    HRep,
    InfeasibleSystem,
    NotFullDimensional,
    Polyhedron,
    VCone,
    dual_cone,
    fm_eliminate,
    hrep_of,
    polyhedron_min,
    smith_decompose,
    triangulate_cone,
    vertex_enumeration,
)
from reebmin import _exact as ex

from conftest import DK_F, DK_P, DK_SIGMA_RAYS, SPP_DUAL_RAYS, random_interior_rational


class TestDualCone:
    def test_orthant_self_dual(self):
        c = VCone([(1, 0), (0, 1)])
        assert set(dual_cone(c).rays) == {(1, 0), (0, 1)}

    def test_suspended_pinch_point_dual(self):
        sigma = VCone([(1, 0, 0), (0, 1, 0), (2, 0, 1), (0, 2, 1)])
        assert set(dual_cone(sigma).rays) == set(SPP_DUAL_RAYS)

    def test_a1_by_inequality_solve(self):
        assert set(dual_cone(VCone([(0, 1), (2, -1)])).rays) == {(1, 0), (1, 2)}

    def test_zero_cone_dual_is_full_space(self):
        rays = dual_cone(VCone([], ambient_dim=2)).rays
        assert set(rays) == {(1, 0), (-1, 0), (0, 1), (0, -1)}

    def test_double_dual_identity(self):
        cones = [
            VCone([(1, 0), (0, 1)]),
            VCone([(0, 1), (2, -1)]),
            VCone(SPP_DUAL_RAYS),
            VCone(DK_SIGMA_RAYS),
            VCone([(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1)]),
        ]
        for c in cones:
            assert dual_cone(dual_cone(c)).is_equivalent(c)


class TestFmEliminate:
    def test_triangle_projection(self):
        h = HRep([((1, 0), 0), ((0, 1), 0), ((-1, -1), 1)], 2)
        out = fm_eliminate(h, 1)
        assert set(out.inequalities) == {((1,), Fraction(0)), ((-1,), Fraction(1))}

    def test_equality_collapse(self):
        h = HRep([((0, 1), 0), ((0, -1), 0), ((1, -1), 0)], 2)
        out = fm_eliminate(h, 1)
        assert set(out.inequalities) == {((1,), Fraction(0))}

    def test_fiber_elimination_reproduces_coefficient(self, dk_divisor):
        # y >= 0 plus P y = (1, 0), in coordinates (y1, y3, y4, y2, y5);
        # eliminating the two trailing coordinates leaves the coefficient
        # polyhedron at the first marked point in xi = (y1, y3, y4) space.
        perm = (0, 2, 3, 1, 4)  # y1 y3 y4 y2 y5

        def reorder(row):
            return tuple(row[i] for i in perm)

        rows = []
        for i in range(5):
            e = [0] * 5
            e[i] = 1
            rows.append((reorder(tuple(e)), 0))
        p_target = (1, 0)
        for j, prow in enumerate(DK_P):
            rows.append((reorder(prow), -p_target[j]))
            rows.append((reorder(tuple(-x for x in prow)), p_target[j]))
        h = HRep(rows, 5)
        h = fm_eliminate(h, 4)  # y5
        h = fm_eliminate(h, 3)  # y2
        got = vertex_enumeration(h)
        expected = dk_divisor.points[0][1]
        assert got.is_equivalent(expected)


class TestVertexEnumeration:
    def test_triangle(self):
        p = vertex_enumeration(HRep([((1, 0), 0), ((0, 1), 0), ((-1, -1), 1)], 2))
        assert set(p.compact_vertices) == {(0, 0), (1, 0), (0, 1)}
        assert p.tail.rays == ()

    def test_dk_coefficient_segment(self, dk_divisor):
        # half-space description of the third coefficient polyhedron
        rows = [
            ((1, 0, 0), 0),
            ((0, 1, 0), 0),
            ((0, 0, 1), 0),
            ((-1, 2, 0), 1),
            ((0, 2, -2), 0),
        ]
        p = vertex_enumeration(HRep(rows, 3))
        assert set(p.compact_vertices) == {(0, 0, 0), (1, 0, 0)}
        assert p.tail.is_equivalent(VCone(DK_SIGMA_RAYS))

    def test_halfline(self):
        p = vertex_enumeration(HRep([((1,), 0)], 1))
        assert p.compact_vertices == ((Fraction(0),),)
        assert p.tail.rays == ((1,),)

    def test_infeasible(self):
        with pytest.raises(InfeasibleSystem):
            vertex_enumeration(HRep([((1,), 0), ((-1,), -1)], 1))

    def test_roundtrip_hrep(self):
        h = HRep([((1, 0), 0), ((0, 1), 0), ((-1, -1), 1)], 2)
        p = vertex_enumeration(h)
        again = vertex_enumeration(hrep_of(p))
        assert again.is_equivalent(p)


class TestTriangulate:
    def test_orthant_single_piece(self):
        pieces = triangulate_cone(VCone([(1, 0), (0, 1)]))
        assert len(pieces) == 1 and pieces[0].det_abs == 1

    def test_spp_dual_two_pieces(self):
        pieces = triangulate_cone(VCone(SPP_DUAL_RAYS))
        assert len(pieces) == 2

    def test_cone_over_square_two_pieces(self):
        # each diagonal triangle of the square [-1,1]^2 has area 2, so the
        # primitive ray determinant of either piece is 3! * (2/3!) * 2 = 4
        pieces = triangulate_cone(VCone([(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1)]))
        assert len(pieces) == 2
        assert [p.det_abs for p in pieces] == [4, 4]

    def test_not_full_dimensional(self):
        with pytest.raises(NotFullDimensional):
            triangulate_cone(VCone([(1, 0, 0), (0, 1, 0)]))

    def _truncated_volume(self, pieces, xi):
        total = Fraction(0)
        for piece in pieces:
            prod = Fraction(1)
            for u in piece.rays:
                prod *= sum(Fraction(a) * b for a, b in zip(u, xi))
            total += Fraction(piece.det_abs) / prod
        return total

    def test_volume_functional_order_independent(self, rng):
        base = list(SPP_DUAL_RAYS)
        orders = [base, [base[2], base[0], base[3], base[1]]]
        cones = [VCone(o) for o in orders]
        piece_sets = [triangulate_cone(c) for c in cones]
        interior_source = dual_cone(cones[0])
        for _ in range(100):
            xi = random_interior_rational(interior_source, rng)
            vals = [self._truncated_volume(ps, xi) for ps in piece_sets]
            assert vals[0] == vals[1]


class TestSmith:
    def test_identity(self):
        u, d, v = smith_decompose(((1, 0), (0, 1)))
        assert d == ((1, 0), (0, 1))

    def test_spp_binomial_column(self):
        u, d, v = smith_decompose(((1,), (1,), (-2,), (-1,)))
        assert d[0][0] == 1

    def test_one_by_one(self):
        u, d, v = smith_decompose(((2,),))
        assert d == ((2,),)

    @settings(max_examples=120, deadline=None)
    @given(
        st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=3),
            min_size=2,
            max_size=4,
        )
    )
    def test_decomposition_properties(self, rows):
        m = tuple(tuple(r) for r in rows)
        u, d, v = smith_decompose(m)
        assert ex.mat_mul(ex.mat_mul(u, m), v) == d
        assert abs(ex.int_det(u)) == 1
        assert abs(ex.int_det(v)) == 1
        diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
        for a, b in zip(diag, diag[1:]):
            if a != 0 and b != 0:
                assert b % a == 0
            if a == 0:
                assert b == 0
        assert all(x >= 0 for x in diag)


class TestPolyhedronMin:
    def test_dk_first_coefficient(self, dk_divisor):
        d0 = dk_divisor.points[0][1]
        assert polyhedron_min(d0, (0, 1, -1)) == Fraction(-1, 2)

    def test_zero_functional(self, dk_divisor):
        for _, poly in dk_divisor.points:
            assert polyhedron_min(poly, (0, 0, 0)) == 0

    def test_dk_third_coefficient(self, dk_divisor):
        d2 = dk_divisor.points[2][1]
        assert polyhedron_min(d2, (1, 0, 0)) == 0

    def test_unbounded(self, dk_divisor):
        d0 = dk_divisor.points[0][1]
        assert polyhedron_min(d0, (0, -1, 0)) is MINUS_INFINITY


class TestProjectionConsistency:
    def project_polyhedron(self, p, k):
        verts = [v[:k] + v[k + 1 :] for v in p.compact_vertices]
        rays = [r[:k] + r[k + 1 :] for r in p.tail.rays]
        rays = [r for r in rays if any(x != 0 for x in r)]
        tail = VCone(rays, p.ambient_dim - 1) if rays else VCone([], p.ambient_dim - 1)
        return vertex_enumeration(hrep_of(Polyhedron(verts, tail)))

    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_fm_matches_vertex_projection(self, k):
        rows = [
            ((1, 0, 0), 0),
            ((0, 1, 0), 0),
            ((0, 0, 1), 0),
            ((-1, -1, -2), 3),
            ((1, 1, 1), 1),
        ]
        h = HRep(rows, 3)
        via_fm = vertex_enumeration(fm_eliminate(h, k))
        via_vertices = self.project_polyhedron(vertex_enumeration(h), k)
        assert via_fm.is_equivalent(via_vertices)

    @pytest.mark.parametrize("k", [0, 3])
    def test_fm_matches_vertex_projection_dim4(self, k):
        rows = [
            ((1, 0, 0, 0), 0),
            ((0, 1, 0, 0), 0),
            ((0, 0, 1, 0), 0),
            ((0, 0, 0, 1), 0),
            ((-1, -2, -1, -1), 4),
        ]
        h = HRep(rows, 4)
        via_fm = vertex_enumeration(fm_eliminate(h, k))
        via_vertices = self.project_polyhedron(vertex_enumeration(h), k)
        assert via_fm.is_equivalent(via_vertices)


class TestSmithAgainstSympy:
    def test_diagonal_matches_sympy(self, rng):
        sympy = pytest.importorskip("sympy")
        from sympy.matrices.normalforms import smith_normal_form as sympy_snf

        for _ in range(40):
            ncols = rng.randint(1, 4)
            rows = [
                [rng.randint(-9, 9) for _ in range(ncols)]
                for _ in range(rng.randint(1, 4))
            ]
            _, d, _ = smith_decompose(rows)
            mine = [d[i][i] for i in range(min(len(d), ncols))]
            theirs = [abs(int(x)) for x in sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ).diagonal()]
            theirs += [0] * (len(mine) - len(theirs))
            assert mine == theirs[: len(mine)]
