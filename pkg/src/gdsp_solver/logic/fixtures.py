"""Bundled instance where per-color superposition is strictly suboptimal.

Vertices 1..3 are v1..v3 and 4..12 are u1..u9, split into the groups
{u1,u2,u3}, {u4,u5,u6}, {u7,u8,u9}. Every v_i is joined to every u of group
ℓ by an edge of color ℓ+1 (ℓ = 0, 1, 2), and each group is a triangle of
color 4.

Assumption: the bipartite colors are assigned group by group as above. Only
the prose of the source description fixes them; this choice is the one the
known 12-file code decodes.
"""

from typing import List, Tuple

from ..types.code import LinearCode, Row
from ..types.instance import ColoredGraph, FileSpec, GdspInstance, Partition

NUM_V = 3
GROUP = 3
LABELS = tuple([f"v{i}" for i in range(1, NUM_V + 1)] + [f"u{i}" for i in range(1, 10)])


def _u(group: int, k: int) -> int:
    """Vertex id of u_{3·group + k}, k in 1..3."""
    return NUM_V + GROUP * group + k


def storage_gap_graph() -> ColoredGraph:
    triples: List[Tuple[int, int, int]] = []
    for v in range(1, NUM_V + 1):
        for group in range(3):
            for k in range(1, GROUP + 1):
                triples.append((v, _u(group, k), group + 1))
    for group in range(3):
        for a, b in ((1, 2), (1, 3), (2, 3)):
            triples.append((_u(group, a), _u(group, b), 4))
    return ColoredGraph.from_triples(NUM_V + 3 * GROUP, triples)


def storage_gap_partition() -> Partition:
    """Colors {1,2,3} on the v's, color {4} on the u's."""
    return Partition(
        color_classes=((1, 2, 3), (4,)),
        vertex_clusters=(
            tuple(range(1, NUM_V + 1)),
            tuple(range(NUM_V + 1, NUM_V + 3 * GROUP + 1)),
        ),
    )


def storage_gap_instance() -> GdspInstance:
    return GdspInstance(
        spec=FileSpec(num_files=4, symbols_per_file=1, field_order=5),
        graph=storage_gap_graph(),
        partition=storage_gap_partition(),
        vertex_labels=LABELS,
        color_mapping={c: c for c in range(1, 5)},
    )


def _unit(width: int, column: int) -> Row:
    return tuple(1 if col == column else 0 for col in range(width))


def storage_gap_optimal_code() -> LinearCode:
    """h_v = A4 and h_{u_{3ℓ+k}} = A_{ℓ+1} + (k−1)·A4 over GF(5); total 12."""
    spec = FileSpec(num_files=4, symbols_per_file=1, field_order=5)
    rows: List[Tuple[Row, ...]] = [((0, 0, 0, 1),) for _ in range(NUM_V)]
    for group in range(3):
        for k in range(1, GROUP + 1):
            row = [0, 0, 0, k - 1]
            row[group] = 1
            rows.append((tuple(row),))
    return LinearCode(spec=spec, rows=tuple(rows))


def storage_gap_sup_code() -> LinearCode:
    """Per-color superposition code at F = 2; total 27/2.

    Each v stores A1, A2 and A3 whole. In every triangle the u's store
    A4's first half, its second half and their sum.
    """
    spec = FileSpec(num_files=4, symbols_per_file=2, field_order=5)
    width = spec.num_columns
    whole = tuple(_unit(width, col) for col in range(6))
    first, second = _unit(width, 6), _unit(width, 7)
    both = tuple(a + b for a, b in zip(first, second))
    rows: List[Tuple[Row, ...]] = [whole for _ in range(NUM_V)]
    for _ in range(3):
        rows.extend([(first,), (second,), (both,)])
    return LinearCode(spec=spec, rows=tuple(rows))
