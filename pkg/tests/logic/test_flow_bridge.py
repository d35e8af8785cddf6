"""Tests for the network-flow view of single-file storage."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gdsp_solver.errors import DimensionMismatchError, GdspError
from gdsp_solver.logic.covering_lp import check_feasible, solve_covering_lp
from gdsp_solver.logic.flow_bridge import (
    build_flow_network,
    export_edge_list,
    max_flow,
    rate_one_feasible,
)
from gdsp_solver.types.flow import INF
from gdsp_solver.types.instance import HyperGraph, MemoryAllocation
from tests.strategies import hypergraphs

PAIR = HyperGraph(num_vertices=2, hyperedges=((1, 2),))
TRIANGLE = HyperGraph(num_vertices=3, hyperedges=((1, 2), (1, 3), (2, 3)))

SIZES = st.sampled_from(
    [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1)]
)


class TestBuildFlowNetwork:
    """Tests for build_flow_network."""

    def test_single_pair(self):
        """Test the four-node network of one pair."""
        net = build_flow_network(PAIR, MemoryAllocation.of(["1/2", "1/2"]))

        assert net.num_nodes == 4
        assert net.sinks == (3,)
        pairs = [(a.tail, a.head) for a in net.arcs]
        assert pairs == [(0, 1), (0, 2), (1, 3), (2, 3)]
        assert net.arcs[2].capacity == INF

    def test_no_hyperedges(self):
        """Test that an empty edge set has no sinks."""
        h = HyperGraph(num_vertices=3)

        net = build_flow_network(h, MemoryAllocation.zeros(3))

        assert net.num_nodes == 4
        assert net.sinks == ()
        assert rate_one_feasible(net).feasible

    def test_length_mismatch(self):
        """Test that the allocation must have one entry per vertex."""
        with pytest.raises(DimensionMismatchError):
            build_flow_network(PAIR, MemoryAllocation.of([1]))


class TestRateOneFeasible:
    """Tests for max_flow and rate_one_feasible."""

    def test_pair_of_halves(self):
        """Test that two halves carry exactly one unit."""
        net = build_flow_network(PAIR, MemoryAllocation.of(["1/2", "1/2"]))

        feasibility = rate_one_feasible(net)

        assert feasibility.feasible
        assert feasibility.min_cut_per_sink == (Fraction(1),)

    def test_pair_below_one(self):
        """Test that capacities cap the cut."""
        net = build_flow_network(PAIR, MemoryAllocation.of(["1/3", "1/2"]))

        feasibility = rate_one_feasible(net)

        assert not feasibility.feasible
        assert feasibility.min_cut_per_sink == (Fraction(5, 6),)

    def test_triangle_of_halves(self):
        """Test every sink of the triangle receives one unit."""
        net = build_flow_network(TRIANGLE, MemoryAllocation.of(["1/2"] * 3))

        assert rate_one_feasible(net).min_cut_per_sink == (Fraction(1),) * 3

    def test_unknown_sink(self):
        """Test that flow is only computed towards sinks."""
        net = build_flow_network(PAIR, MemoryAllocation.of([1, 1]))

        with pytest.raises(GdspError):
            max_flow(net, 1)

    @settings(deadline=None, max_examples=100)
    @given(hypergraphs(max_vertices=6, max_edges=6))
    def test_lp_optimum_is_flow_feasible(self, h):
        """Test that the LP optimum passes the flow check."""
        net = build_flow_network(h, solve_covering_lp(h).allocation)

        assert rate_one_feasible(net).feasible

    @settings(deadline=None, max_examples=200)
    @given(st.data())
    def test_agrees_with_covering_constraints(self, data):
        """Test flow feasibility and the covering constraints coincide."""
        h = data.draw(hypergraphs(max_vertices=4, max_edges=5))
        k = h.num_vertices
        m = MemoryAllocation(
            sizes=tuple(data.draw(st.lists(SIZES, min_size=k, max_size=k)))
        )

        net = build_flow_network(h, m)

        assert rate_one_feasible(net).feasible == check_feasible(h, m)
        for edge, cut in zip(h.hyperedges, rate_one_feasible(net).min_cut_per_sink):
            assert cut == sum((m.size(u) for u in edge), Fraction(0))


class TestExportEdgeList:
    """Tests for export_edge_list."""

    def test_triangle(self):
        """Test one line per arc with exact capacities."""
        net = build_flow_network(TRIANGLE, MemoryAllocation.of(["1/2", "1/2", 1]))

        assert export_edge_list(net) == (
            "0 1 1/2\n0 2 1/2\n0 3 1\n"
            "1 4 INF\n2 4 INF\n1 5 INF\n3 5 INF\n2 6 INF\n3 6 INF\n"
        )
