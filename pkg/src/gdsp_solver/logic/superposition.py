"""Superposition of per-color-class solutions and the constructive decompositions."""

import math
from collections import defaultdict
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from loguru import logger

from ..errors import (
    DimensionMismatchError,
    FieldTooSmallError,
    GdspError,
    HypothesisViolation,
    InvalidCodeError,
)
from ..types.code import LinearCode
from ..types.decomposition import Applicability, DecompositionResult
from ..types.instance import (
    ColoredGraph,
    FileSpec,
    FrontierSets,
    MemoryAllocation,
    Partition,
)
from .covering_lp import solve_covering_lp
from .finite_field import smallest_field_order
from .graph_ops import (
    check_partition,
    check_smooth,
    colors_used,
    compute_frontiers,
    frontier_disjointness_violations,
    monochrome_to_hypergraph,
    subgraph_by_colors,
)
from .linear_codes import (
    build_mds_single_file,
    conditional_entropy,
    embed_single_file_code,
    empty_code,
    entropy,
    mutual_information_with_file,
    restrict_code,
    superpose_codes,
    verify_valid,
)

ClusterSolver = Callable[[ColoredGraph], MemoryAllocation]


def positive_part(x: Fraction) -> Fraction:
    """(x)⁺ = max(x, 0)."""
    return max(x, Fraction(0))


def lp_cluster_solver(g: ColoredGraph) -> MemoryAllocation:
    """Exact optimum of a monochrome subgraph via the covering LP.

    Raises:
        GdspError: When the subgraph carries more than one color.
    """
    return solve_covering_lp(monochrome_to_hypergraph(g)).allocation


def peeling_cluster_solver(g: ColoredGraph) -> MemoryAllocation:
    """Peel one color at a time and superpose, falling back to the LP per color.

    Mirrors applying the one-sided decomposition repeatedly; the result is
    always achievable but only claimed optimal where a theorem applies.
    """
    used = colors_used(g)
    if len(used) <= 1:
        return lp_cluster_solver(g)
    logger.debug(f"peeling color {used[0]} off colors {used}")
    return sup_colors(g, [[used[0]], used[1:]], peeling_cluster_solver).combined


def _add(
    allocations: Sequence[MemoryAllocation], num_vertices: int
) -> MemoryAllocation:
    return MemoryAllocation(
        sizes=tuple(
            sum((a.sizes[u] for a in allocations), Fraction(0))
            for u in range(num_vertices)
        )
    )


def sup_colors(
    g: ColoredGraph,
    color_classes: Sequence[Sequence[int]],
    cluster_solver: ClusterSolver = lp_cluster_solver,
) -> DecompositionResult:
    """Solve every color-class subgraph independently and add the allocations.

    Args:
        g: Colored graph.
        color_classes: Partition of the colors into N_1..N_L.
        cluster_solver: Maps a subgraph to a feasible allocation.

    Returns:
        DecompositionResult labelled heuristic-only; ``sup`` adds the label.
    """
    allocations: List[MemoryAllocation] = []
    for index, colors in enumerate(color_classes, start=1):
        subgraph = subgraph_by_colors(g, colors)
        allocation = cluster_solver(subgraph)
        if len(allocation) != g.num_vertices:
            raise DimensionMismatchError(
                f"cluster solver returned {len(allocation)} sizes for "
                f"{g.num_vertices} vertices"
            )
        logger.debug(f"cluster {index} colors {list(colors)}: total {allocation.total}")
        allocations.append(allocation)

    return DecompositionResult(
        per_cluster_allocations=tuple(allocations),
        combined=_add(allocations, g.num_vertices),
    )


def theorem_applicability(g: ColoredGraph, p: Partition) -> Applicability:
    """Report which exactness theorem's hypotheses hold for (g, p)."""
    if not check_smooth(g, p).smooth:
        return "heuristic-only"
    frontiers = compute_frontiers(g, p)
    singletons = all(len(group) == 1 for group in p.color_classes)
    if singletons and not frontier_disjointness_violations(frontiers):
        return "theorem1"
    if _one_sided(p, frontiers):
        return "theorem2"
    return "heuristic-only"


def _one_sided(p: Partition, frontiers: FrontierSets) -> bool:
    return (
        p.num_clusters == 2
        and len(p.color_classes[0]) == 1
        and not frontiers.frontier(2, 1)
        and not frontiers.frontier(2, 2)
    )


def sup(
    g: ColoredGraph,
    p: Partition,
    cluster_solver: ClusterSolver = lp_cluster_solver,
) -> DecompositionResult:
    """Superposition over the color classes of ``p``, labelled by applicability.

    Raises:
        DimensionMismatchError: When ``p`` does not fit ``g``.
        GdspError: Propagated from the cluster solver.
    """
    check_partition(g, p)
    result = sup_colors(g, p.color_classes, cluster_solver)
    applicability = theorem_applicability(g, p)
    logger.info(f"superposition total {result.total} ({applicability})")
    return result.model_copy(update={"applicability": applicability})


def _require_smooth(g: ColoredGraph, p: Partition) -> FrontierSets:
    check = check_smooth(g, p)
    if not check.smooth:
        edge = check.violations[0].edge
        raise HypothesisViolation(
            "smooth-coloring",
            f"{len(check.violations)} edge(s) break smoothness, first {edge.pair}",
            {"edge": list(edge.pair), "color": edge.color},
        )
    return compute_frontiers(g, p)


def _cross_neighbors(g: ColoredGraph, p: Partition) -> Dict[Tuple[int, int], List[int]]:
    """(vertex, color) -> vertices across a cluster boundary joined by that color."""
    cluster = p.cluster_of_vertex()
    neighbors: Dict[Tuple[int, int], List[int]] = defaultdict(list)
    for edge in g.edges:
        if cluster[edge.u] != cluster[edge.v]:
            neighbors[(edge.u, edge.color)].append(edge.v)
            neighbors[(edge.v, edge.color)].append(edge.u)
    return neighbors


def theorem1_decompose(
    g: ColoredGraph, p: Partition, global_allocation: MemoryAllocation
) -> DecompositionResult:
    """Split a feasible allocation of ``g`` into per-cluster allocations.

    Interior vertices keep M_i. A vertex of V_l touched by cluster k's color
    gives (1 − min_j M_j)⁺ to cluster k and keeps the rest, the minimum ranging
    over its cluster-k neighbours along edges of that color.

    Raises:
        HypothesisViolation: Non-smooth coloring, a color class with more than
            one color, intersecting frontier sets, or an allocation that is
            not feasible for ``g``.
        DimensionMismatchError: Allocation length differs from K.
    """
    if len(global_allocation) != g.num_vertices:
        raise DimensionMismatchError(
            f"allocation has {len(global_allocation)} entries for "
            f"{g.num_vertices} vertices"
        )
    frontiers = _require_smooth(g, p)
    for index, group in enumerate(p.color_classes, start=1):
        if len(group) != 1:
            raise HypothesisViolation(
                "singleton-color-classes",
                f"class {index} holds colors {list(group)}",
                {"class": index},
            )
    clashes = frontier_disjointness_violations(frontiers)
    if clashes:
        k, m, j = clashes[0]
        raise HypothesisViolation(
            "frontier-disjointness",
            f"F[{k}][{j}] and F[{m}][{j}] intersect",
            {"k": k, "l": m, "j": j},
        )

    size = p.num_clusters
    color = [group[0] for group in p.color_classes]
    neighbors = _cross_neighbors(g, p)
    cluster_of = p.cluster_of_vertex()
    M = global_allocation

    def transfer(vertex: int, via_cluster: int) -> Optional[Fraction]:
        # (1 - min_j M_j)^+ over neighbours reached by via_cluster's color
        reach = neighbors.get((vertex, color[via_cluster]), [])
        reach = [j for j in reach if cluster_of[j] == via_cluster]
        if not reach:
            logger.warning(
                f"vertex {vertex} has no cluster-{via_cluster + 1} neighbour; "
                "treated as interior"
            )
            return None
        return positive_part(1 - min(M.size(j) for j in reach))

    # touched[v] = cluster whose color reaches v from outside its own cluster
    touched: Dict[int, int] = {}
    for k in range(size):
        for l in range(size):
            if k != l:
                for v in frontiers.sets[k][l]:
                    touched[v] = k

    rows: List[List[Fraction]] = [[Fraction(0)] * g.num_vertices for _ in range(size)]
    for v in g.vertices:
        home = cluster_of[v]
        share = transfer(v, touched[v]) if v in touched else None
        if share is None:
            rows[home][v - 1] = M.size(v)
        else:
            rows[home][v - 1] = M.size(v) - share
            rows[touched[v]][v - 1] = share
        if rows[home][v - 1] < 0:
            raise HypothesisViolation(
                "global-feasibility",
                f"vertex {v} would receive {rows[home][v - 1]}; the allocation "
                "is not feasible for the graph",
                {"vertex": v},
            )

    allocations = tuple(MemoryAllocation(sizes=tuple(row)) for row in rows)
    return DecompositionResult(
        per_cluster_allocations=allocations,
        combined=_add(allocations, g.num_vertices),
        applicability="theorem1",
    )


def theorem2_decompose(
    code: LinearCode, g: ColoredGraph, p: Partition
) -> DecompositionResult:
    """Split a valid code of ``g`` along a one-sided two-cluster partition.

    Cluster 1 (single color c) keeps H(h_u) on V_1 and charges I(h_u; A_c) on
    F_{1,2}. Cluster 2 stores h_u with A_c set to zero on V_2.

    Raises:
        HypothesisViolation: Non-smooth coloring, L ≠ 2, |N_1| ≠ 1 or a
            nonempty F_{2,j}.
        InvalidCodeError: When ``code`` is not valid for ``g``.
    """
    frontiers = _require_smooth(g, p)
    if p.num_clusters != 2:
        raise HypothesisViolation(
            "two-clusters", f"partition has {p.num_clusters} classes", {}
        )
    if len(p.color_classes[0]) != 1:
        raise HypothesisViolation(
            "singleton-first-class",
            f"class 1 holds colors {list(p.color_classes[0])}",
            {"class": 1},
        )
    for j in (1, 2):
        if frontiers.frontier(2, j):
            raise HypothesisViolation(
                "one-sided-frontiers",
                f"F[2][{j}] = {list(frontiers.frontier(2, j))} is not empty",
                {"i": 2, "j": j},
            )
    verification = verify_valid(code, g)
    if not verification.valid:
        raise InvalidCodeError(
            f"code fails {len(verification.failures)} edge(s), "
            f"first {verification.failures[0]}"
        )

    c1 = p.color_classes[0][0]
    first: Set[int] = set(p.vertex_clusters[0])
    second: Set[int] = set(p.vertex_clusters[1])
    frontier = set(frontiers.frontier(1, 2))

    cluster1: List[Fraction] = []
    cluster2: List[Fraction] = []
    for u in g.vertices:
        if u in first:
            cluster1.append(entropy(code, [u]))
        elif u in frontier:
            cluster1.append(mutual_information_with_file(code, u, c1))
        else:
            cluster1.append(Fraction(0))
        cluster2.append(
            conditional_entropy(code, [u], [c1]) if u in second else Fraction(0)
        )

    restricted = restrict_code(code, [c1])
    restricted = restricted.model_copy(
        update={
            "rows": tuple(
                matrix if u in second else ()
                for u, matrix in enumerate(restricted.rows, start=1)
            )
        }
    )
    allocations = (
        MemoryAllocation(sizes=tuple(cluster1)),
        MemoryAllocation(sizes=tuple(cluster2)),
    )
    return DecompositionResult(
        per_cluster_allocations=allocations,
        combined=_add(allocations, g.num_vertices),
        applicability="theorem2",
        cluster_codes=(None, restricted),
    )


def build_superposition_code(g: ColoredGraph, spec: FileSpec) -> LinearCode:
    """Explicit code for the per-color superposition.

    Each color's subgraph gets its covering-LP optimum realised by an MDS code
    placed in that file's columns; F is the lcm of all denominators.

    Raises:
        FieldTooSmallError: When GF(q) lacks evaluation points for a color;
            the message names the smallest order that works.
    """
    per_color: Dict[int, MemoryAllocation] = {}
    for c in colors_used(g):
        if c > spec.num_files:
            raise DimensionMismatchError(f"color {c} exceeds N={spec.num_files}")
        per_color[c] = lp_cluster_solver(subgraph_by_colors(g, [c]))

    f = math.lcm(
        1, *(size.denominator for a in per_color.values() for size in a.sizes)
    )
    points = max(
        (int(sum(a.sizes, Fraction(0)) * f) for a in per_color.values()), default=0
    )
    if spec.field_order <= points:
        raise FieldTooSmallError(
            f"superposition code needs {points} evaluation points per file, "
            f"q >= {smallest_field_order(points)}; got q = {spec.field_order}"
        )
    full_spec = spec.model_copy(update={"symbols_per_file": f})
    single = FileSpec(num_files=1, symbols_per_file=f, field_order=spec.field_order)

    codes = [empty_code(full_spec, g.num_vertices)]
    for c, allocation in per_color.items():
        hyper = monochrome_to_hypergraph(subgraph_by_colors(g, [c]))
        mds = build_mds_single_file(hyper, allocation, single)
        codes.append(embed_single_file_code(mds, c, full_spec))
    code = superpose_codes(codes)
    if not verify_valid(code, g).valid:
        raise GdspError("superposition code failed verification")
    return code
