"""Unit tests for the digraph service."""

from itertools import permutations

import pytest

from app.core.exceptions import AcyclicDigraphError, CapExceededError, InvalidDigraphError, ParseError
from app.services.digraph_service import (
    CycleWitness,
    Digraph,
    are_isomorphic,
    canonical_form,
    enumerate_directed_cycles,
    format_digraph_text,
    is_strongly_connected,
    iter_bits,
    lexicographic_shortest_path,
    parse_digraph_records,
    parse_digraph_text,
    shortest_directed_cycle,
    strongly_connected_components,
)
from app.services.family_service import InftyParams, ThetaParams, build_cycle, build_infty, build_theta


class TestDigraphConstruction:
    def test_arcs_are_sorted(self):
        """Test that arc order does not affect equality."""
        assert Digraph(3, ((2, 0), (0, 1), (1, 2))) == Digraph(3, ((0, 1), (1, 2), (2, 0)))

    def test_loop_rejected(self):
        """Test that loops are rejected."""
        with pytest.raises(InvalidDigraphError):
            Digraph(2, ((0, 0),))

    def test_duplicate_arc_rejected(self):
        with pytest.raises(InvalidDigraphError):
            Digraph(2, ((0, 1), (0, 1)))

    def test_out_of_range_rejected(self):
        with pytest.raises(InvalidDigraphError):
            Digraph(2, ((0, 2),))

    def test_invalid_order(self):
        with pytest.raises(InvalidDigraphError):
            Digraph(0)

    def test_invalid_digraph_is_value_error(self):
        """Test that precondition errors can be caught as ValueError."""
        with pytest.raises(ValueError):
            Digraph(2, ((1, 1),))

    def test_degrees_and_neighbours(self, theta_011):
        """Test neighbourhoods of θ(0,1,1)."""
        assert theta_011.out_neighbors[0] == (1, 2)
        assert theta_011.in_neighbors[1] == (0, 2)
        assert theta_011.max_out_degree == 2
        assert theta_011.size == 5

    def test_adjacency_matrix(self, cycle_5):
        matrix = cycle_5.adjacency_matrix()
        assert matrix.sum() == 5
        assert matrix[4, 0] == 1
        assert matrix[0, 4] == 0

    def test_from_rows(self):
        assert Digraph.from_rows(3, (0b010, 0b100, 0b001)) == build_cycle(3)

    def test_with_and_without_arc(self, cycle_5):
        extended = cycle_5.with_arc(0, 2)
        assert extended.size == 6
        assert extended.without_arc(0, 2) == cycle_5
        with pytest.raises(InvalidDigraphError):
            cycle_5.without_arc(0, 3)

    def test_relabel_requires_permutation(self, cycle_5):
        with pytest.raises(InvalidDigraphError):
            cycle_5.relabel([0, 0, 1, 2, 3])

    def test_induced_subdigraph(self, theta_011):
        """Test that an induced subdigraph renumbers its vertices."""
        sub = theta_011.induced_subdigraph([0, 2, 1])
        assert sub == Digraph(3, ((0, 1), (0, 2), (2, 1)))

    def test_iter_bits(self):
        assert list(iter_bits(0b101001)) == [0, 3, 5]


class TestTextFormat:
    def test_parse_cycle(self):
        """Test parsing the "n m" format."""
        assert parse_digraph_text("3 3\n0 1\n1 2\n2 0\n") == build_cycle(3)

    def test_format_parse_example(self, theta_011):
        text = format_digraph_text(theta_011)
        assert text.splitlines()[0] == "4 5"
        assert parse_digraph_text(text) == theta_011

    def test_duplicate_arc_is_parse_error(self):
        with pytest.raises(ParseError):
            parse_digraph_text("2 2\n0 1\n0 1\n")

    def test_loop_is_parse_error(self):
        with pytest.raises(ParseError):
            parse_digraph_text("2 1\n1 1\n")

    def test_arc_count_mismatch(self):
        with pytest.raises(ParseError):
            parse_digraph_text("3 3\n0 1\n1 2\n")

    def test_malformed_lines(self):
        with pytest.raises(ParseError):
            parse_digraph_text("3 x\n")
        with pytest.raises(ParseError):
            parse_digraph_text("2 1\n0\n")
        with pytest.raises(ParseError):
            parse_digraph_text("")

    def test_out_of_range_is_parse_error(self):
        with pytest.raises(ParseError):
            parse_digraph_text("2 1\n0 5\n")

    def test_records(self, theta_011, cycle_5):
        """Test blank-line separated records."""
        text = "\n".join([format_digraph_text(theta_011), format_digraph_text(cycle_5)])
        assert parse_digraph_records(text) == [theta_011, cycle_5]


class TestConnectivity:
    def test_families_are_strong(self, cycle_5, theta_011, infty_23):
        assert is_strongly_connected(cycle_5)
        assert is_strongly_connected(theta_011)
        assert is_strongly_connected(infty_23)

    def test_not_strong(self, not_strong):
        assert not is_strongly_connected(not_strong)

    def test_components(self, not_strong):
        """Test components are sorted by their lowest vertex."""
        assert strongly_connected_components(not_strong) == [(0, 1), (2,)]

    def test_lexicographic_shortest_path(self, theta_011):
        assert lexicographic_shortest_path(theta_011, 0, 3) == (0, 1, 3)
        assert lexicographic_shortest_path(theta_011, 2, 0) == (2, 1, 3, 0)

    def test_no_path(self, not_strong):
        with pytest.raises(InvalidDigraphError):
            lexicographic_shortest_path(not_strong, 2, 0)


class TestCycles:
    def test_girth_of_cycle(self, cycle_5):
        assert shortest_directed_cycle(cycle_5) == CycleWitness((0, 1, 2, 3, 4))

    def test_girth_of_infty(self):
        witness = shortest_directed_cycle(build_infty(InftyParams(2, 4)))
        assert witness.length == 2
        assert witness.vertices == (0, 1)

    def test_girth_of_theta(self):
        """Test θ(0,2,0): the direct arc and the c-path close a 2-cycle."""
        d = build_theta(ThetaParams(0, 2, 0))
        witness = shortest_directed_cycle(d)
        assert witness.vertices == (0, 1)
        assert witness.is_cycle_of(d)

    def test_acyclic(self):
        with pytest.raises(AcyclicDigraphError):
            shortest_directed_cycle(Digraph(3, ((0, 1), (1, 2))))

    def test_cycles_of_complete_digraph(self, complete_digraph_3):
        """Test K3 has three 2-cycles and two 3-cycles."""
        lengths = sorted(c.length for c in enumerate_directed_cycles(complete_digraph_3))
        assert lengths == [2, 2, 2, 3, 3]

    def test_cycles_of_theta(self, theta_011):
        cycles = list(enumerate_directed_cycles(theta_011))
        assert sorted(c.vertices for c in cycles) == [(0, 1, 3), (0, 2, 1, 3)]
        assert all(c.is_cycle_of(theta_011) for c in cycles)


class TestCanonicalForm:
    def test_relabelings_share_form(self):
        """Test every relabeling of θ(1,1,0) has the same canonical form."""
        d = build_theta(ThetaParams(1, 1, 0))
        forms = {canonical_form(d.relabel(p)) for p in permutations(range(d.order))}
        assert len(forms) == 1

    def test_distinct_families_differ(self, theta_011, infty_23):
        assert canonical_form(theta_011) != canonical_form(infty_23)
        assert not are_isomorphic(theta_011, infty_23)

    def test_from_canonical(self, infty_23):
        """Test decoding a canonical form gives an isomorphic digraph."""
        decoded = Digraph.from_canonical(canonical_form(infty_23))
        assert are_isomorphic(decoded, infty_23)
        assert canonical_form(decoded) == canonical_form(infty_23)

    def test_converse_not_identified(self):
        """Test a digraph and its converse can be non-isomorphic."""
        d = Digraph(4, ((0, 1), (0, 2), (0, 3), (1, 0), (2, 0), (3, 1)))
        converse = Digraph(4, tuple((v, u) for u, v in d.arcs))
        assert not are_isomorphic(d, converse)

    def test_order_cap(self):
        with pytest.raises(CapExceededError):
            canonical_form(build_cycle(9))
