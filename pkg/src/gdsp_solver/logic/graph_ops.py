"""Pure functions over colored graphs: validity, smooth coloring and subgraphs."""

from typing import Dict, Iterable, List, Set, Tuple

from ..errors import DimensionMismatchError, GdspError
from ..types.diagnostics import SmoothnessCheck, Violation
from ..types.instance import (
    ColoredEdge,
    ColoredGraph,
    FileSpec,
    FrontierSets,
    HyperGraph,
    Partition,
)


def colors_used(g: ColoredGraph) -> List[int]:
    """Return the sorted colors that appear on at least one edge."""
    return sorted({edge.color for edge in g.edges})


def validate_instance(g: ColoredGraph, spec: FileSpec) -> List[Violation]:
    """List every way in which ``g`` breaks the colored-graph rules.

    Args:
        g: Colored graph to check.
        spec: File specification giving the color range 1..N.

    Returns:
        Violations in edge order; empty when the instance is legal.
    """
    violations: List[Violation] = []
    seen: Dict[Tuple[int, int], ColoredEdge] = {}

    for edge in g.edges:
        if edge.u == edge.v:
            violations.append(
                Violation(
                    kind="self-loop",
                    edge=edge,
                    message=f"edge joins vertex {edge.u} to itself",
                )
            )
        for endpoint in (edge.u, edge.v):
            if not 1 <= endpoint <= g.num_vertices:
                violations.append(
                    Violation(
                        kind="vertex-out-of-range",
                        edge=edge,
                        message=f"vertex {endpoint} outside 1..{g.num_vertices}",
                    )
                )
        if not 1 <= edge.color <= spec.num_files:
            violations.append(
                Violation(
                    kind="color-out-of-range",
                    edge=edge,
                    message=f"color {edge.color} outside 1..{spec.num_files}",
                )
            )
        if edge.pair in seen:
            violations.append(
                Violation(
                    kind="duplicate-pair",
                    edge=edge,
                    message=(
                        f"pair {set(edge.pair)} already carries color "
                        f"{seen[edge.pair].color}"
                    ),
                )
            )
        else:
            seen[edge.pair] = edge

    return violations


def check_partition(g: ColoredGraph, p: Partition) -> None:
    """Raise when ``p`` does not fit ``g``.

    Vertex clusters must partition 1..K exactly. Color classes must partition
    1..N' for some N' and include every color present on an edge.
    """
    vertices = sorted(v for cluster in p.vertex_clusters for v in cluster)
    if vertices != list(g.vertices):
        raise DimensionMismatchError(
            f"vertex clusters cover {vertices}, expected 1..{g.num_vertices}"
        )
    colors = sorted(c for group in p.color_classes for c in group)
    if colors != list(range(1, len(colors) + 1)):
        raise DimensionMismatchError(
            f"color classes cover {colors}, expected a dense range 1..N"
        )
    missing = set(colors_used(g)) - set(colors)
    if missing:
        raise DimensionMismatchError(
            f"edge colors {sorted(missing)} belong to no color class"
        )


def check_smooth(g: ColoredGraph, p: Partition) -> SmoothnessCheck:
    """Check whether ``g`` is smoothly colored with respect to ``p``.

    Intra-cluster edges must use the cluster's colors; cross edges must use the
    colors of one of their two endpoint clusters.

    Raises:
        DimensionMismatchError: When ``p`` does not partition g's vertices/colors.
    """
    check_partition(g, p)
    vertex_cluster = p.cluster_of_vertex()
    classes = [set(group) for group in p.color_classes]

    violations: List[Violation] = []
    for edge in g.edges:
        a, b = vertex_cluster[edge.u], vertex_cluster[edge.v]
        if a == b:
            if edge.color not in classes[a]:
                violations.append(
                    Violation(
                        kind="intra-cluster-color",
                        edge=edge,
                        message=(
                            f"edge inside cluster {a + 1} has color {edge.color} "
                            f"outside its class {sorted(classes[a])}"
                        ),
                    )
                )
        elif edge.color not in classes[a] | classes[b]:
            violations.append(
                Violation(
                    kind="cross-cluster-color",
                    edge=edge,
                    message=(
                        f"edge between clusters {a + 1} and {b + 1} has color "
                        f"{edge.color} outside both classes"
                    ),
                )
            )

    return SmoothnessCheck(smooth=not violations, violations=tuple(violations))


def compute_frontiers(g: ColoredGraph, p: Partition) -> FrontierSets:
    """Compute F_{i,j}: vertices of V_j touched from outside by a color of N_i.

    Raises:
        GdspError: When ``g`` is not smooth with respect to ``p``.
    """
    check = check_smooth(g, p)
    if not check.smooth:
        raise GdspError(
            f"frontier sets need a smooth coloring; {len(check.violations)} "
            "edge(s) violate it"
        )

    vertex_cluster = p.cluster_of_vertex()
    color_cluster = p.cluster_of_color()
    size = p.num_clusters
    found: List[List[Set[int]]] = [[set() for _ in range(size)] for _ in range(size)]

    for edge in g.edges:
        a, b = vertex_cluster[edge.u], vertex_cluster[edge.v]
        if a == b:
            continue
        i = color_cluster[edge.color]
        found[i][a].add(edge.u)
        found[i][b].add(edge.v)

    return FrontierSets(
        sets=tuple(tuple(tuple(sorted(cell)) for cell in row) for row in found)
    )


def frontier_disjointness_violations(
    frontiers: FrontierSets,
) -> List[Tuple[int, int, int]]:
    """Return 1-based (k, l, j) with k < l and F_{k,j} ∩ F_{l,j} nonempty."""
    size = len(frontiers.sets)
    clashes = []
    for j in range(size):
        for k in range(size):
            for m in range(k + 1, size):
                if set(frontiers.sets[k][j]) & set(frontiers.sets[m][j]):
                    clashes.append((k + 1, m + 1, j + 1))
    return clashes


def subgraph_by_colors(g: ColoredGraph, colors: Iterable[int]) -> ColoredGraph:
    """Keep exactly the edges whose color is in ``colors``; vertices are kept."""
    keep = set(colors)
    return ColoredGraph(
        num_vertices=g.num_vertices,
        edges=tuple(edge for edge in g.edges if edge.color in keep),
    )


def monochrome_to_hypergraph(g: ColoredGraph) -> HyperGraph:
    """Turn a single-colored graph into the equivalent 2-uniform hypergraph.

    Raises:
        GdspError: When more than one color is present.
    """
    used = colors_used(g)
    if len(used) > 1:
        raise GdspError(f"expected a monochrome graph, found colors {used}")
    pairs = sorted({edge.pair for edge in g.edges})
    return HyperGraph(num_vertices=g.num_vertices, hyperedges=tuple(pairs))


def color_blind_hypergraph(g: ColoredGraph) -> HyperGraph:
    """Every edge as a 2-hyperedge, ignoring colors."""
    pairs = sorted({edge.pair for edge in g.edges})
    return HyperGraph(num_vertices=g.num_vertices, hyperedges=tuple(pairs))

