"""Tests for superposition and the constructive decompositions."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from gdsp_solver.errors import (
    FieldTooSmallError,
    GdspError,
    HypothesisViolation,
    InvalidCodeError,
)
from gdsp_solver.logic.covering_lp import check_feasible
from gdsp_solver.logic.fixtures import storage_gap_graph, storage_gap_partition
from gdsp_solver.logic.graph_ops import (
    color_blind_hypergraph,
    monochrome_to_hypergraph,
    subgraph_by_colors,
)
from gdsp_solver.logic.linear_codes import (
    empty_code,
    stored_sizes,
    total_storage,
    verify_valid,
)
from gdsp_solver.logic.oracle import brute_force_optimum
from gdsp_solver.logic.superposition import (
    build_superposition_code,
    lp_cluster_solver,
    peeling_cluster_solver,
    positive_part,
    sup,
    sup_colors,
    theorem1_decompose,
    theorem2_decompose,
    theorem_applicability,
)
from gdsp_solver.types.code import LinearCode
from gdsp_solver.types.instance import (
    ColoredGraph,
    FileSpec,
    MemoryAllocation,
    Partition,
)
from gdsp_solver.types.oracle import OracleConfig
from tests.strategies import (
    mixed_codes,
    one_sided_instances,
    singleton_class_instances,
)

TWO_FILES = FileSpec(num_files=2, symbols_per_file=1, field_order=5)


def path_instance():
    """Path 1-2-3-4: colors 1, 1, 2; clusters {1,2} and {3,4}."""
    g = ColoredGraph.from_triples(4, [(1, 2, 1), (2, 3, 1), (3, 4, 2)])
    p = Partition(color_classes=((1,), (2,)), vertex_clusters=((1, 2), (3, 4)))
    return g, p


def one_sided_instance():
    """Vertex 1 alone in cluster 1; edge (1,2) wants A1, edge (2,3) wants A2."""
    g = ColoredGraph.from_triples(3, [(1, 2, 1), (2, 3, 2)])
    p = Partition(color_classes=((1,), (2,)), vertex_clusters=((1,), (2, 3)))
    return g, p


def monochrome_feasible(g: ColoredGraph, color: int, m: MemoryAllocation) -> bool:
    sub = subgraph_by_colors(g, [color])
    return check_feasible(monochrome_to_hypergraph(sub), m)


class TestSup:
    """Tests for sup and sup_colors."""

    def test_fixture_superposition_total(self):
        """Test the 27/2 superposition total of the bundled instance."""
        g, p = storage_gap_graph(), storage_gap_partition()

        result = sup(g, p, peeling_cluster_solver)

        assert result.total == Fraction(27, 2)
        assert [a.total for a in result.per_cluster_allocations] == [
            Fraction(9),
            Fraction(9, 2),
        ]
        assert result.applicability == "heuristic-only"

    def test_fixture_per_color_total(self):
        """Test that splitting every color apart gives the same 27/2."""
        result = sup_colors(storage_gap_graph(), [[1], [2], [3], [4]])

        assert result.total == Fraction(27, 2)
        assert len(result.per_cluster_allocations) == 4

    def test_lp_solver_needs_monochrome_classes(self):
        """Test that the LP cluster solver refuses a three-color class."""
        with pytest.raises(GdspError):
            sup(storage_gap_graph(), storage_gap_partition(), lp_cluster_solver)

    def test_peeling_matches_lp_on_one_color(self):
        """Test that peeling a monochrome graph is the LP itself."""
        g = ColoredGraph.from_triples(3, [(1, 2, 1), (1, 3, 1), (2, 3, 1)])

        assert peeling_cluster_solver(g) == lp_cluster_solver(g)

    def test_combined_is_component_wise_sum(self):
        """Test the combined allocation adds the cluster allocations."""
        g, p = path_instance()

        result = sup(g, p)

        for u in range(g.num_vertices):
            assert result.combined.sizes[u] == sum(
                a.sizes[u] for a in result.per_cluster_allocations
            )

    def test_positive_part(self):
        """Test (x)⁺."""
        assert positive_part(Fraction(-1, 2)) == 0
        assert positive_part(Fraction(1, 3)) == Fraction(1, 3)


class TestApplicability:
    """Tests for theorem_applicability."""

    def test_singleton_classes_with_disjoint_frontiers(self):
        """Test the singleton-class case."""
        g, p = path_instance()

        assert theorem_applicability(g, p) == "theorem1"
        assert sup(g, p).applicability == "theorem1"

    def test_one_sided_two_clusters(self):
        """Test the one-sided case with a two-color second class."""
        g = ColoredGraph.from_triples(4, [(1, 2, 1), (2, 3, 2), (3, 4, 3)])
        p = Partition(color_classes=((1,), (2, 3)), vertex_clusters=((1,), (2, 3, 4)))

        assert theorem_applicability(g, p) == "theorem2"

    def test_non_smooth(self):
        """Test that a non-smooth coloring is heuristic only."""
        g = ColoredGraph.from_triples(3, [(1, 2, 3)])
        p = Partition(
            color_classes=((1,), (2,), (3,)), vertex_clusters=((1,), (2,), (3,))
        )

        assert theorem_applicability(g, p) == "heuristic-only"


class TestTheorem1Decompose:
    """Tests for theorem1_decompose."""

    def test_path_split(self):
        """Test splitting an optimal allocation of the path."""
        g, p = path_instance()
        m = MemoryAllocation.of([0, 1, 1, 0])

        result = theorem1_decompose(g, p, m)

        first, second = result.per_cluster_allocations
        assert first.sizes == (0, 1, 0, 0)
        assert second.sizes == (0, 0, 1, 0)
        assert result.total == 2
        assert result.applicability == "theorem1"

    def test_share_moves_to_touching_cluster(self):
        """Test that a frontier vertex hands its share to the touching cluster."""
        g, p = path_instance()
        m = MemoryAllocation.of(["1/2", "1/2", 1, 0])

        result = theorem1_decompose(g, p, m)

        first, second = result.per_cluster_allocations
        assert first.sizes == (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), 0)
        assert second.sizes == (0, 0, Fraction(1, 2), 0)
        assert result.combined == m

    def test_infeasible_global_allocation(self):
        """Test that an allocation leaving an edge uncovered is refused."""
        g, p = path_instance()

        with pytest.raises(HypothesisViolation) as info:
            theorem1_decompose(g, p, MemoryAllocation.of([1, 0, 0, 1]))

        assert info.value.hypothesis == "global-feasibility"

    def test_multi_color_class(self):
        """Test that a class with several colors is refused."""
        g = storage_gap_graph()
        m = MemoryAllocation.of([1] * 12)

        with pytest.raises(HypothesisViolation) as info:
            theorem1_decompose(g, storage_gap_partition(), m)

        assert info.value.hypothesis == "singleton-color-classes"

    def test_intersecting_frontiers(self):
        """Test that a vertex touched by two outside colors is refused."""
        g = ColoredGraph.from_triples(3, [(1, 3, 1), (2, 3, 2)])
        p = Partition(
            color_classes=((1,), (2,), (3,)), vertex_clusters=((1,), (2,), (3,))
        )

        with pytest.raises(HypothesisViolation) as info:
            theorem1_decompose(g, p, MemoryAllocation.of([1, 1, 0]))

        assert info.value.hypothesis == "frontier-disjointness"
        assert info.value.details == {"k": 1, "l": 2, "j": 3}

    @settings(deadline=None, max_examples=100)
    @given(singleton_class_instances())
    def test_valid_code_allocations_split_feasibly(self, instance):
        """Test cluster feasibility and exact totals on random instances."""
        g, p = instance
        spec = FileSpec(num_files=p.num_clusters, symbols_per_file=1, field_order=17)
        code = build_superposition_code(g, spec)
        m = MemoryAllocation(sizes=stored_sizes(code))

        result = theorem1_decompose(g, p, m)

        assert theorem_applicability(g, p) == "theorem1"
        assert result.total == m.total
        for index, allocation in enumerate(result.per_cluster_allocations, start=1):
            assert monochrome_feasible(g, index, allocation)

    @settings(deadline=None, max_examples=60)
    @given(singleton_class_instances(max_vertices=5, max_clusters=3))
    def test_oracle_witness_allocations_split_feasibly(self, instance):
        """Test the split of the oracle's optimal scalar allocation."""
        g, p = instance
        cfg = OracleConfig(max_f=1, field_order=2)
        oracle = brute_force_optimum(g, cfg, num_files=p.num_clusters)
        assert oracle.witness is not None
        m = MemoryAllocation(sizes=stored_sizes(oracle.witness))

        result = theorem1_decompose(g, p, m)

        assert result.total == oracle.total
        for index, allocation in enumerate(result.per_cluster_allocations, start=1):
            assert monochrome_feasible(g, index, allocation)

    @settings(deadline=None, max_examples=40)
    @given(singleton_class_instances(max_vertices=3, max_clusters=2))
    def test_superposition_is_optimal_on_small_instances(self, instance):
        """Test that superposition meets the exhaustive linear-code optimum."""
        g, p = instance
        cfg = OracleConfig(max_f=2, field_order=2)

        result = brute_force_optimum(g, cfg, num_files=p.num_clusters)

        assert result.total == sup(g, p).total


class TestTheorem2Decompose:
    """Tests for theorem2_decompose."""

    def test_split_of_a_mixing_code(self):
        """Test a code where vertex 2 mixes both files."""
        g, p = one_sided_instance()
        # h1 = A2, h2 = A1 + A2, h3 = A1
        code = LinearCode(spec=TWO_FILES, rows=(((0, 1),), ((1, 1),), ((1, 0),)))

        result = theorem2_decompose(code, g, p)

        first, second = result.per_cluster_allocations
        assert first.sizes == (1, 0, 0)
        assert second.sizes == (0, 1, 0)
        assert result.total == 2
        assert result.total <= total_storage(code)
        restricted = result.cluster_codes[1]
        assert restricted.rows == ((), ((0, 1),), ())
        assert verify_valid(restricted, subgraph_by_colors(g, [2])).valid

    def test_split_of_a_separated_code(self):
        """Test a code storing A1 at vertex 1 and A2 at vertex 2."""
        g, p = one_sided_instance()
        code = LinearCode(spec=TWO_FILES, rows=(((1, 0),), ((0, 1),), ()))

        result = theorem2_decompose(code, g, p)

        assert result.combined.sizes == (1, 1, 0)
        assert result.applicability == "theorem2"

    def test_invalid_code(self):
        """Test that an invalid code is refused."""
        g, p = one_sided_instance()

        with pytest.raises(InvalidCodeError):
            theorem2_decompose(empty_code(TWO_FILES, 3), g, p)

    def test_first_class_must_be_single_color(self):
        """Test the bundled instance's three-color first class is refused."""
        g = storage_gap_graph()
        spec = FileSpec(num_files=4, symbols_per_file=1, field_order=5)

        with pytest.raises(HypothesisViolation) as info:
            theorem2_decompose(empty_code(spec, 12), g, storage_gap_partition())

        assert info.value.hypothesis == "singleton-first-class"

    def test_second_class_may_not_touch_the_first(self):
        """Test that a cross edge in the second class's color is refused."""
        g = ColoredGraph.from_triples(3, [(1, 2, 2), (2, 3, 2)])
        p = Partition(color_classes=((1,), (2,)), vertex_clusters=((1,), (2, 3)))

        with pytest.raises(HypothesisViolation) as info:
            theorem2_decompose(empty_code(TWO_FILES, 3), g, p)

        assert info.value.hypothesis == "one-sided-frontiers"

    def test_three_clusters(self):
        """Test that only two clusters are accepted."""
        g = ColoredGraph.from_triples(3, [(1, 2, 1)])
        p = Partition(
            color_classes=((1,), (2,), (3,)), vertex_clusters=((1,), (2,), (3,))
        )
        spec = FileSpec(num_files=3, symbols_per_file=1, field_order=5)

        with pytest.raises(HypothesisViolation) as info:
            theorem2_decompose(empty_code(spec, 3), g, p)

        assert info.value.hypothesis == "two-clusters"

    @settings(deadline=None, max_examples=100)
    @given(one_sided_instances())
    def test_random_one_sided_instances(self, instance):
        """Test feasibility and the total bound on random one-sided instances."""
        g, p = instance
        spec = FileSpec(
            num_files=len(p.color_classes[1]) + 1, symbols_per_file=1, field_order=13
        )
        code = build_superposition_code(g, spec)

        result = theorem2_decompose(code, g, p)

        first, second = result.per_cluster_allocations
        assert result.total <= total_storage(code)
        assert monochrome_feasible(g, 1, first)
        second_graph = subgraph_by_colors(g, p.color_classes[1])
        assert check_feasible(color_blind_hypergraph(second_graph), second)
        assert verify_valid(result.cluster_codes[1], second_graph).valid

    @settings(deadline=None, max_examples=100)
    @given(mixed_codes())
    def test_random_mixing_codes(self, instance):
        """Test feasibility and the total bound when vertices mix both classes."""
        g, p, code = instance

        result = theorem2_decompose(code, g, p)

        first, second = result.per_cluster_allocations
        assert result.total <= total_storage(code)
        assert monochrome_feasible(g, 1, first)
        second_graph = subgraph_by_colors(g, p.color_classes[1])
        assert check_feasible(color_blind_hypergraph(second_graph), second)
        assert verify_valid(result.cluster_codes[1], second_graph).valid

    @settings(deadline=None, max_examples=60)
    @given(one_sided_instances(max_vertices=5))
    def test_oracle_witness_codes(self, instance):
        """Test the split of the oracle's optimal scalar code."""
        g, p = instance
        cfg = OracleConfig(max_f=1, field_order=2)
        oracle = brute_force_optimum(g, cfg, num_files=len(p.color_classes[1]) + 1)
        assert oracle.witness is not None

        result = theorem2_decompose(oracle.witness, g, p)

        first, second = result.per_cluster_allocations
        assert result.total <= oracle.total
        assert monochrome_feasible(g, 1, first)
        second_graph = subgraph_by_colors(g, p.color_classes[1])
        assert check_feasible(color_blind_hypergraph(second_graph), second)


class TestBuildSuperpositionCode:
    """Tests for build_superposition_code."""

    def test_fixture(self):
        """Test the explicit superposition code of the bundled instance."""
        spec = FileSpec(num_files=4, symbols_per_file=1, field_order=11)

        code = build_superposition_code(storage_gap_graph(), spec)

        assert code.spec.symbols_per_file == 2
        assert total_storage(code) == Fraction(27, 2)
        assert verify_valid(code, storage_gap_graph()).valid

    def test_edgeless_graph(self):
        """Test that an edgeless graph gets the empty code."""
        code = build_superposition_code(ColoredGraph(num_vertices=2), TWO_FILES)

        assert total_storage(code) == 0

    def test_field_too_small_names_the_order_needed(self):
        """Test that GF(5) is refused for the bundled instance's nine points."""
        spec = FileSpec(num_files=4, symbols_per_file=1, field_order=5)

        with pytest.raises(FieldTooSmallError, match=r"needs 9 .* q >= 11; got q = 5"):
            build_superposition_code(storage_gap_graph(), spec)
