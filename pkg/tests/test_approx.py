import math
from fractions import Fraction

import mpmath
import pytest

from reebmin import (
    Enclosure,
    SearchExhausted,
    cone_rational_approx,
    dirichlet_signed,
    verify_cone,
    verify_signed,
)

mpmath.mp.dps = 45


def enc(value, digits=30, radius=Fraction(1, 10**25)):
    return Enclosure.from_decimal(mpmath.nstr(value, digits), radius=radius)


SQRT2 = enc(mpmath.sqrt(2))
SQRT3M1 = enc(mpmath.sqrt(3) - 1)
TAIL = [enc(mpmath.sqrt(3) - 1), enc(4 - 2 * mpmath.sqrt(3))]


class TestEnclosure:
    def test_default_radius_is_half_ulp(self):
        e = Enclosure.from_decimal("1.41")
        assert e.hi - e.lo == Fraction(1, 100)
        assert e.mid == Fraction(141, 100)

    def test_exact(self):
        e = Enclosure.exact("3/7")
        assert e.is_exact() and e.lo == Fraction(3, 7)


class TestDirichletSigned:
    def test_sqrt2_plus_certificate(self):
        sa = dirichlet_signed([SQRT2], [1], Fraction(1, 2), 1000)
        assert (sa.q, sa.p) == (2, (3,))
        assert verify_signed(sa)

    def test_sqrt3_minus_certificate(self):
        sa = dirichlet_signed([SQRT3M1], [-1], Fraction(1, 2), 10000)
        assert verify_signed(sa)
        # below the target from above? sign -1 means p/q < alpha
        assert Fraction(sa.p[0], sa.q) < SQRT3M1.lo

    def test_two_dimensional_certificate(self):
        targets = [enc(mpmath.sqrt(2)), enc(mpmath.sqrt(5))]
        for signs in ([1, 1], [1, -1], [-1, 1], [-1, -1]):
            sa = dirichlet_signed(targets, signs, Fraction(2, 5), 10**6)
            assert verify_signed(sa)

    def test_monotone_q_in_epsilon(self):
        qs = []
        for eps in (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 16)):
            qs.append(dirichlet_signed([SQRT2], [1], eps, 10**6).q)
        assert all(a <= b for a, b in zip(qs, qs[1:]))

    def test_search_exhausted(self):
        # a rational target cannot satisfy the strict two-sided box forever
        with pytest.raises(SearchExhausted):
            dirichlet_signed([Enclosure.exact(Fraction(1, 2))], [1], Fraction(1, 100), 50)

    def test_invariant_inequalities_exact(self):
        sa = dirichlet_signed([SQRT2], [1], Fraction(1, 2), 1000)
        p, q = sa.p[0], sa.q
        assert Fraction(p, q) > SQRT2.hi
        assert Fraction(p, q) - SQRT2.lo <= Fraction(sa.epsilon, q)


class TestConeApprox:
    def test_dependent_weight_tail(self):
        ca = cone_rational_approx(TAIL, Fraction(1, 10), 10**6)
        assert len(ca.vectors) == 2
        assert verify_cone(ca)
        for vec, q in ca.vectors:
            assert all((x * q).denominator == 1 for x in vec)

    def test_rational_fast_path(self):
        ca = cone_rational_approx([Fraction(1, 3), Fraction(1, 2)], Fraction(1, 100))
        assert ca.vectors == (((Fraction(1, 3), Fraction(1, 2)), 6),)
        assert ca.hull_coefficients == (Fraction(1),)
        assert verify_cone(ca)

    def test_independent_pair(self):
        targets = [enc(mpmath.sqrt(2)), enc(mpmath.sqrt(3))]
        ca = cone_rational_approx(targets, Fraction(1, 10), 10**6)
        assert len(ca.vectors) == 2
        assert verify_cone(ca)

    def test_combination_recovers_target_midpoint(self):
        ca = cone_rational_approx(TAIL, Fraction(1, 10), 10**6)
        for j in range(2):
            combo = sum(a * vec[j] for a, (vec, _) in zip(ca.hull_coefficients, ca.vectors))
            assert TAIL[j].lo <= combo <= TAIL[j].hi
