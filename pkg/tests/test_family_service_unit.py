"""Unit tests for the θ/∞ family service."""

import pytest

from app.core.exceptions import InvalidOrderError, InvalidParamsError, ParseError
from app.services.charpoly_service import get_charpoly_service
from app.services.digraph_service import Digraph, is_strongly_connected
from app.services.family_service import (
    CycleParams,
    DPrimeParams,
    FamilyKind,
    InftyParams,
    ThetaParams,
    build_cycle,
    build_family,
    build_infty,
    build_theta,
    build_theta_plus_arc,
    closed_form_charpoly,
    enumerate_bicyclic_params,
    identify_family,
    is_family_spec,
    parse_family_spec,
)
from app.services.polynomial import Polynomial


class TestParams:
    def test_theta_order_and_label(self):
        p = ThetaParams(0, 6, 0)
        assert p.order == 8
        assert p.label == "theta(0,6,0)"
        assert p.spec == "theta:0,6,0"
        assert p.kind == FamilyKind.THETA

    def test_infty_order_and_label(self):
        p = InftyParams(2, 7)
        assert p.order == 8
        assert p.label == "infty(2,7)"

    @pytest.mark.parametrize("a,b,c", [(0, 0, 3), (2, 1, 0), (-1, 2, 0), (0, 2, -1)])
    def test_invalid_theta(self, a, b, c):
        """Test θ parameters that would break a <= b, b >= 1 or nonnegativity."""
        with pytest.raises(InvalidParamsError):
            ThetaParams(a, b, c)

    @pytest.mark.parametrize("k,l", [(1, 3), (3, 2)])
    def test_invalid_infty(self, k, l):
        with pytest.raises(InvalidParamsError):
            InftyParams(k, l)

    def test_invalid_orders(self):
        with pytest.raises(InvalidOrderError):
            CycleParams(1)
        with pytest.raises(InvalidOrderError):
            DPrimeParams(3)


class TestBuilders:
    def test_cycle(self):
        assert build_cycle(3) == Digraph(3, ((0, 1), (1, 2), (2, 0)))

    def test_theta_numbering(self):
        """Test hubs first, then the a, b and c interiors."""
        d = build_theta(ThetaParams(1, 1, 1))
        assert d.arcs == ((0, 2), (0, 3), (1, 4), (2, 1), (3, 1), (4, 0))

    def test_infty_numbering(self):
        d = build_infty(InftyParams(2, 3))
        assert d.arcs == ((0, 1), (0, 2), (1, 0), (2, 3), (3, 0))

    def test_theta_plus_arc(self):
        """Test D' is θ(0,1,n-3) plus 2 -> 3."""
        d = build_theta_plus_arc(5)
        assert d.size == 7
        assert d.has_arc(2, 3)
        assert d.without_arc(2, 3) == build_theta(ThetaParams(0, 1, 2))
        assert is_strongly_connected(d)

    @pytest.mark.parametrize("n", range(3, 9))
    def test_bicyclic_members_are_strong(self, n):
        for p in enumerate_bicyclic_params(n):
            d = build_family(p)
            assert d.order == n
            assert d.size == n + 1
            assert is_strongly_connected(d)


class TestEnumeration:
    def test_order_three(self):
        assert enumerate_bicyclic_params(3) == [ThetaParams(0, 1, 0), InftyParams(2, 2)]

    def test_order_four(self):
        """Test B_4 has θ(0,1,1), θ(0,2,0), θ(1,1,0) and ∞(2,3)."""
        assert set(enumerate_bicyclic_params(4)) == {
            ThetaParams(0, 1, 1), ThetaParams(0, 2, 0), ThetaParams(1, 1, 0), InftyParams(2, 3),
        }

    def test_thetas_listed_first(self):
        members = enumerate_bicyclic_params(7)
        kinds = [p.kind for p in members]
        assert kinds == sorted(kinds, key=lambda kind: kind != FamilyKind.THETA)

    def test_too_small(self):
        with pytest.raises(InvalidOrderError):
            enumerate_bicyclic_params(2)


class TestClosedForms:
    def test_examples(self):
        assert closed_form_charpoly(ThetaParams(0, 1, 1)) == Polynomial.from_terms({4: 1, 1: -1, 0: -1})
        assert closed_form_charpoly(ThetaParams(1, 1, 0)) == Polynomial((0, -2, 0, 0, 1))
        assert closed_form_charpoly(InftyParams(2, 3)) == Polynomial.from_terms({4: 1, 2: -1, 1: -1})
        assert closed_form_charpoly(InftyParams(2, 2)) == Polynomial((0, -2, 0, 1))
        assert closed_form_charpoly(CycleParams(5)).to_sparse() == "x^5 - 1"
        assert closed_form_charpoly(DPrimeParams(6)).to_sparse() == "x^6 - 2x - 1"

    @pytest.mark.parametrize("n", range(3, 11))
    def test_closed_forms_match_determinant(self, n):
        """Test every member of B_n against the exact determinant."""
        for p in enumerate_bicyclic_params(n):
            assert get_charpoly_service().charpoly_det(build_family(p)) == closed_form_charpoly(p), p.label


class TestIdentification:
    @pytest.mark.parametrize("n", range(3, 8))
    def test_identifies_relabeled_members(self, n):
        for p in enumerate_bicyclic_params(n):
            d = build_family(p)
            reversed_labels = list(reversed(range(n)))
            assert identify_family(d.relabel(reversed_labels)) == p

    def test_identifies_cycle(self):
        assert identify_family(build_cycle(6)) == CycleParams(6)

    def test_rejects_others(self, complete_digraph_3, dprime_5, not_strong):
        assert identify_family(complete_digraph_3) is None
        assert identify_family(dprime_5) is None
        assert identify_family(not_strong) is None


class TestSpecParsing:
    def test_parse(self):
        assert parse_family_spec("theta:0,6,0") == ThetaParams(0, 6, 0)
        assert parse_family_spec("infty:2,7") == InftyParams(2, 7)
        assert parse_family_spec("cycle:9") == CycleParams(9)
        assert parse_family_spec(" Dprime:5 ") == DPrimeParams(5)

    def test_parse_errors(self):
        for spec in ["theta:0,6", "theta:a,b,c", "square:4", "theta"]:
            with pytest.raises(ParseError):
                parse_family_spec(spec)

    def test_parse_invalid_params(self):
        """Test well-formed specs with bad parameters are precondition errors."""
        with pytest.raises(InvalidParamsError):
            parse_family_spec("theta:1,0,2")

    def test_is_family_spec(self):
        assert is_family_spec("infty:2,3")
        assert not is_family_spec("digraph.txt")
        assert not is_family_spec("C:/digraph.txt")

    def test_spec_round_trip(self):
        for p in enumerate_bicyclic_params(6):
            assert parse_family_spec(p.spec) == p
