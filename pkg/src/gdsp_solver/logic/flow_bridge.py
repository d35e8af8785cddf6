"""Single-file GDSP as single-source network information flow.

Node numbering: source 0, intermediates 1..K (one per server), sinks
K+1..K+|E| (one per hyperedge). Capacities are exact; unbounded links carry
the ``INF`` marker and never a large number.
"""

from collections import deque
from fractions import Fraction
from typing import Dict, List, Optional, Union

from loguru import logger

from ..errors import DimensionMismatchError, GdspError
from ..types.flow import INF, Arc, FlowFeasibility, FlowNetwork
from ..types.instance import HyperGraph, MemoryAllocation

Residual = Union[str, Fraction]


def build_flow_network(h: HyperGraph, m: MemoryAllocation) -> FlowNetwork:
    """Source to server u with capacity M_u, server to hyperedge sinks with INF.

    Raises:
        DimensionMismatchError: When the allocation length differs from K.
    """
    if len(m) != h.num_vertices:
        raise DimensionMismatchError(
            f"allocation has {len(m)} entries for {h.num_vertices} vertices"
        )
    arcs: List[Arc] = [Arc(tail=0, head=u, capacity=m.size(u)) for u in h.vertices]
    for index, edge in enumerate(h.hyperedges):
        sink = h.num_vertices + 1 + index
        arcs.extend(Arc(tail=u, head=sink, capacity=INF) for u in edge)
    return FlowNetwork(
        num_intermediates=h.num_vertices, hyperedges=h.hyperedges, arcs=tuple(arcs)
    )


def _residual_graph(net: FlowNetwork) -> List[Dict[int, Residual]]:
    residual: List[Dict[int, Residual]] = [{} for _ in range(net.num_nodes)]
    for arc in net.arcs:
        current = residual[arc.tail].get(arc.head, Fraction(0))
        if current == INF or arc.capacity == INF:
            residual[arc.tail][arc.head] = INF
        else:
            residual[arc.tail][arc.head] = current + arc.capacity
        residual[arc.head].setdefault(arc.tail, Fraction(0))
    return residual


def _positive(capacity: Residual) -> bool:
    return capacity == INF or capacity > 0


def _bfs(
    residual: List[Dict[int, Residual]], source: int, sink: int
) -> Optional[List[int]]:
    """Shortest augmenting path, neighbours visited in increasing node index."""
    parent: List[int] = [-1] * len(residual)
    visited = [False] * len(residual)
    visited[source] = True
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in sorted(residual[u]):
            if not visited[v] and _positive(residual[u][v]):
                visited[v] = True
                parent[v] = u
                queue.append(v)
    if not visited[sink]:
        return None
    path = [sink]
    while path[-1] != source:
        path.append(parent[path[-1]])
    return path[::-1]


def max_flow(net: FlowNetwork, sink: int) -> Fraction:
    """Exact maximum flow from the source to ``sink`` (Edmonds–Karp).

    Raises:
        GdspError: When ``sink`` is not a sink of ``net``.
    """
    if sink not in net.sinks:
        raise GdspError(f"node {sink} is not a sink of the network")
    residual = _residual_graph(net)
    total = Fraction(0)

    while (path := _bfs(residual, net.source, sink)) is not None:
        finite = [
            residual[u][v]
            for u, v in zip(path, path[1:])
            if residual[u][v] != INF
        ]
        if not finite:
            raise GdspError("augmenting path of unbounded capacity")
        bottleneck = min(finite)
        for u, v in zip(path, path[1:]):
            if residual[u][v] != INF:
                residual[u][v] -= bottleneck
            if residual[v][u] != INF:
                residual[v][u] += bottleneck
        total += bottleneck
    return total


def rate_one_feasible(net: FlowNetwork) -> FlowFeasibility:
    """Feasible iff every sink receives flow at least 1."""
    cuts = tuple(max_flow(net, sink) for sink in net.sinks)
    feasible = all(cut >= 1 for cut in cuts)
    logger.debug(f"per-sink max flows {[str(c) for c in cuts]}, feasible={feasible}")
    return FlowFeasibility(feasible=feasible, min_cut_per_sink=cuts)


def export_edge_list(net: FlowNetwork) -> str:
    """One ``tail head capacity`` line per arc, capacity ``p/q`` or ``INF``."""
    return "".join(f"{arc.tail} {arc.head} {arc.capacity}\n" for arc in net.arcs)
