"""Unit tests for the characteristic polynomial engines."""

from fractions import Fraction

import pytest

from app.core.exceptions import CapExceededError
from app.services.charpoly_service import CharpolyMethod, CharpolyService, get_charpoly_service
from app.services.digraph_service import Digraph
from app.services.enumeration_service import get_enumeration_service
from app.services.family_service import (
    DPrimeParams,
    InftyParams,
    ThetaParams,
    build_cycle,
    build_infty,
    build_theta,
    build_theta_plus_arc,
    closed_form_charpoly,
)
from app.services.polynomial import Polynomial


class TestDeterminantEngine:
    def setup_method(self):
        self.service = CharpolyService()

    @pytest.mark.parametrize("n", range(2, 9))
    def test_cycle(self, n):
        """Test det(xI - A(C_n)) = x^n - 1."""
        assert self.service.charpoly_det(build_cycle(n)) == Polynomial.from_terms({n: 1, 0: -1})

    def test_single_vertex(self):
        assert self.service.charpoly_det(Digraph(1)) == Polynomial((0, 1))

    def test_theta(self, theta_011):
        assert self.service.charpoly_det(theta_011).to_sparse() == "x^4 - x - 1"

    def test_complete_digraph(self, complete_digraph_3):
        """Test K3 gives (x-2)(x+1)^2."""
        assert self.service.charpoly_det(complete_digraph_3) == Polynomial((-2, -3, 0, 1))

    def test_acyclic_is_power_of_x(self):
        d = Digraph(4, ((0, 1), (1, 2), (0, 3)))
        assert self.service.charpoly_det(d) == Polynomial.from_terms({4: 1})


class TestCycleEngine:
    def setup_method(self):
        self.service = CharpolyService()

    @pytest.mark.parametrize("n", range(2, 9))
    def test_cycle(self, n):
        assert self.service.charpoly_cycles(build_cycle(n)) == Polynomial.from_terms({n: 1, 0: -1})

    def test_single_vertex(self):
        assert self.service.charpoly_cycles(Digraph(1)) == Polynomial((0, 1))

    def test_infty(self):
        assert self.service.charpoly_cycles(build_infty(InftyParams(2, 2))) == Polynomial((0, -2, 0, 1))

    def test_disjoint_cycles_pack(self):
        """Test two disjoint 2-cycles contribute a positive constant term."""
        d = Digraph(4, ((0, 1), (1, 0), (2, 3), (3, 2)))
        assert self.service.charpoly_cycles(d) == Polynomial((1, 0, -2, 0, 1))
        assert self.service.charpoly_det(d) == self.service.charpoly_cycles(d)

    def test_order_cap(self):
        with pytest.raises(CapExceededError):
            self.service.charpoly_cycles(build_cycle(13))


class TestEnginesAgree:
    def setup_method(self):
        self.service = CharpolyService()

    @pytest.mark.parametrize("n", range(4, 11))
    def test_dprime(self, n):
        """Test both engines give x^n - 2x - 1 for θ(0,1,n-3) plus one arc."""
        expected = closed_form_charpoly(DPrimeParams(n))
        d = build_theta_plus_arc(n)
        assert self.service.charpoly_det(d) == expected
        assert self.service.charpoly_cycles(d) == expected

    def test_all_strong_digraphs_of_order_four(self):
        for d in get_enumeration_service().enumerate_strongly_connected(4):
            assert self.service.charpoly_det(d) == self.service.charpoly_cycles(d)

    @pytest.mark.slow
    def test_all_strong_digraphs_of_order_five(self):
        for d in get_enumeration_service().enumerate_strongly_connected(5):
            assert self.service.charpoly_det(d) == self.service.charpoly_cycles(d)


class TestDispatch:
    def setup_method(self):
        self.service = CharpolyService()

    def test_closed_form_for_families(self):
        p = ThetaParams(0, 2, 3)
        assert self.service.characteristic_polynomial(build_theta(p)) == closed_form_charpoly(p)

    def test_determinant_otherwise(self, dprime_5):
        assert self.service.characteristic_polynomial(dprime_5).to_sparse() == "x^5 - 2x - 1"

    def test_rational_evaluation(self):
        value = self.service.poly_eval_rational(closed_form_charpoly(ThetaParams(0, 6, 0)), Fraction(47, 40))
        assert value > 0
        assert self.service.poly_eval_rational(Polynomial((-2, 0, 1)), Fraction(3, 2)) == Fraction(1, 4)

    def test_compute_by_method(self, dprime_5):
        for method in CharpolyMethod:
            assert self.service.compute(dprime_5, method).to_sparse() == "x^5 - 2x - 1"
        assert self.service.compute(dprime_5, "cycles") == self.service.charpoly_cycles(dprime_5)


def test_get_charpoly_service():
    """Test the getter returns one shared instance."""
    assert get_charpoly_service() is get_charpoly_service()
