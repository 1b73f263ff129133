"""Unit tests for exact integer polynomials."""

from fractions import Fraction

import pytest
from sympy import QQ, Poly, Rational

from app.services.polynomial import X, Polynomial


@pytest.fixture
def h():
    """1 + x + x^2 - x^3 - x^4"""
    return Polynomial((1, 1, 1, -1, -1))


class TestConstruction:
    def test_trailing_zeros_dropped(self):
        assert Polynomial((1, 2, 0, 0)) == Polynomial((1, 2))
        assert Polynomial((0, 0)).is_zero()
        assert Polynomial(()).degree == -1

    def test_trinomial(self):
        """Test x^4 - x^2 - x."""
        assert Polynomial.trinomial(4, 1, 2) == Polynomial((0, -1, -1, 0, 1))

    def test_trinomial_with_equal_exponents(self):
        assert Polynomial.trinomial(4, 1, 1) == Polynomial((0, -2, 0, 0, 1))

    def test_from_terms(self):
        assert Polynomial.from_terms({6: 1, 1: -2, 0: -1}).coefficients == (-1, -2, 0, 0, 0, 0, 1)


class TestArithmetic:
    def test_multiply(self):
        product = Polynomial((-1, 1)) * Polynomial((1, 1))
        assert product == Polynomial((-1, 0, 1))

    def test_add_and_subtract(self):
        p = Polynomial((1, 2, 3))
        assert p - p == Polynomial(())
        assert p + Polynomial((0, 0, -3)) == Polynomial((1, 2))

    def test_derivative(self):
        assert Polynomial((5, 0, 0, 2)).derivative() == Polynomial((0, 0, 6))

    def test_gcd(self):
        """Test gcd of (x-1)(x+2) and (x-1)(x-3) is x - 1."""
        first = Polynomial((-1, 1)) * Polynomial((2, 1))
        second = Polynomial((-1, 1)) * Polynomial((-3, 1))
        assert first.gcd(second) == Polynomial((-1, 1))

    def test_coprime_gcd_is_constant(self):
        assert Polynomial.trinomial(4, 0, 1).gcd(Polynomial.trinomial(4, 1, 1)).degree == 0

    def test_squarefree_part(self):
        """Test (x-1)^2 (x+1) reduces to x^2 - 1."""
        p = Polynomial((-1, 1)) * Polynomial((-1, 1)) * Polynomial((1, 1))
        assert p.squarefree_part() == Polynomial((-1, 0, 1))


class TestEvaluation:
    def test_exact_value(self, h):
        """Test h(47/40) exactly."""
        assert h.evaluate(Fraction(47, 40)) == Fraction("0.027265234375")

    def test_sign_at(self, h):
        assert h.sign_at(Fraction(47, 40)) == 1
        assert h.sign_at(2) == -1
        assert Polynomial((-2, 0, 1)).sign_at(Fraction(3, 2)) == 1
        assert Polynomial((-1, 1)).sign_at(1) == 0

    def test_sign_at_negative_point(self):
        assert Polynomial((0, 0, 0, 1)).sign_at(Fraction(-1, 3)) == -1

    def test_call(self):
        assert Polynomial((1, 1))(Fraction(1, 2)) == Fraction(3, 2)


class TestRealRoots:
    def test_count_roots_of_x2_minus_2(self):
        p = Polynomial((-2, 0, 1))
        assert p.count_roots(0, 2) == 1
        assert p.count_roots(-2, 2) == 2
        assert p.count_roots(2, 10) == 0

    def test_count_is_over_closed_interval(self):
        """Test roots at both ends of the window are counted."""
        p = Polynomial((-1, 1)) * Polynomial((-3, 1))
        assert p.count_roots(0, 1) == 1
        assert p.count_roots(1, 3) == 2
        assert p.count_roots(Fraction(3, 2), Fraction(29, 10)) == 0

    def test_multiple_root_counted_once(self):
        p = Polynomial((-1, 1)) * Polynomial((-1, 1)) * Polynomial((-3, 1))
        assert p.count_roots(0, 4) == 2

    def test_constant_has_no_roots(self):
        assert Polynomial((5,)).count_roots(-10, 10) == 0
        assert Polynomial((5,)).real_root_intervals() == []

    def test_rational_roots(self):
        """Test (x-1)^2 (2x+3) (x^2-2) has rational roots -3/2 and 1 only."""
        p = Polynomial((-1, 1)) * Polynomial((-1, 1)) * Polynomial((3, 2)) * Polynomial((-2, 0, 1))
        assert p.rational_roots() == [Fraction(-3, 2), Fraction(1)]

    def test_intervals_isolate_irrational_roots(self):
        p = Polynomial((-2, 0, 1))
        intervals = p.real_root_intervals()
        assert len(intervals) == 2
        (s1, t1), (s2, t2) = intervals
        assert t1 <= s2
        for s, t in intervals:
            assert s < t
            assert p.sign_at(s) * p.sign_at(t) < 0

    def test_intervals_respect_window(self):
        intervals = Polynomial((-2, 0, 1)).real_root_intervals(0, 2)
        assert len(intervals) == 1
        s, t = intervals[0]
        assert 0 <= s < t <= 2
        assert s * s < 2 < t * t

    def test_intervals_of_repeated_roots(self):
        """Test (x-1)^2 (x^2-2) has three distinct real roots."""
        p = Polynomial((-1, 1)) * Polynomial((-1, 1)) * Polynomial((-2, 0, 1))
        intervals = p.real_root_intervals()
        assert len(intervals) == 3
        assert any(s <= 1 <= t for s, t in intervals)


class TestSympyBridge:
    def test_to_sympy(self):
        assert Polynomial.from_terms({6: 1, 1: -2, 0: -1}).to_sympy() == Poly(X ** 6 - 2 * X - 1, X)

    def test_from_sympy_clears_denominators(self):
        """Test x/2 + 1/3 becomes 3x + 2."""
        poly = Poly(Rational(1, 2) * X + Rational(1, 3), X, domain=QQ)
        assert Polynomial.from_sympy(poly) == Polynomial((2, 3))

    def test_primitive_has_positive_leading(self):
        assert Polynomial((4, 0, -6)).primitive() == Polynomial((-2, 0, 3))
        assert Polynomial(()).primitive().is_zero()


class TestRendering:
    def test_sparse(self):
        assert Polynomial.from_terms({6: 1, 1: -2, 0: -1}).to_sparse() == "x^6 - 2x - 1"
        assert Polynomial.trinomial(4, 1, 2).to_sparse() == "x^4 - x^2 - x"
        assert Polynomial(()).to_sparse() == "0"
        assert Polynomial((3, 0, -1)).to_sparse() == "-x^2 + 3"

    def test_dense(self):
        assert Polynomial.from_terms({6: 1, 1: -2, 0: -1}).to_dense() == "-1 -2 0 0 0 0 1"

    def test_as_trinomial(self):
        assert Polynomial.trinomial(4, 1, 1).as_trinomial() == (4, 1, 1)
        assert Polynomial.trinomial(5, 2, 0).as_trinomial() == (5, 0, 2)
        assert Polynomial.from_terms({5: 1, 0: -1}).as_trinomial() is None
        assert Polynomial.from_terms({5: 1, 1: -2, 0: -1}).as_trinomial() is None
