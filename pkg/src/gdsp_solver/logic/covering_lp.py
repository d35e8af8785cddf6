"""Exact-rational covering LP for single-file hypergraphs, plus cut-set bounds."""

from fractions import Fraction
from typing import List, Optional, Tuple

from loguru import logger

from ..errors import DimensionMismatchError, GdspError
from ..types.instance import ColoredGraph, HyperGraph, MemoryAllocation
from ..types.lp import CoveringLP, LPSolution
from .graph_ops import color_blind_hypergraph


class _PackingTableau:
    """Dense simplex tableau for max Σ y_S s.t. Σ_{S∋u} y_S ≤ 1, y ≥ 0.

    Columns 0..m-1 are the y_S, columns m..m+K-1 the slacks. The slack basis is
    feasible from the start because every right-hand side is 1.
    """

    def __init__(self, lp: CoveringLP):
        self.m = len(lp.constraints)
        self.k = lp.num_vars
        width = self.m + self.k
        self.rows: List[List[Fraction]] = []
        for u in range(1, self.k + 1):
            row = [Fraction(0)] * width
            for j, subset in enumerate(lp.constraints):
                if u in subset:
                    row[j] = Fraction(1)
            row[self.m + u - 1] = Fraction(1)
            self.rows.append(row)
        self.rhs = [Fraction(1)] * self.k
        self.reduced = [Fraction(1)] * self.m + [Fraction(0)] * self.k
        self.basis = [self.m + r for r in range(self.k)]
        self.value = Fraction(0)
        self.pivots = 0

    def _entering(self) -> Optional[int]:
        # Bland: lowest index with positive reduced cost
        for j, d in enumerate(self.reduced):
            if d > 0:
                return j
        return None

    def _leaving(self, j: int) -> int:
        best: Optional[Tuple[Fraction, int, int]] = None
        for r, row in enumerate(self.rows):
            if row[j] > 0:
                key = (self.rhs[r] / row[j], self.basis[r], r)
                if best is None or key < best:
                    best = key
        if best is None:
            # cannot happen: every y_S sits in at least one bounded row
            raise GdspError(f"packing LP unbounded in column {j}")
        return best[2]

    def _pivot(self, r: int, j: int) -> None:
        pivot_row = self.rows[r]
        scale = pivot_row[j]
        pivot_row[:] = [x / scale for x in pivot_row]
        self.rhs[r] /= scale

        for other, row in enumerate(self.rows):
            if other != r and row[j] != 0:
                factor = row[j]
                row[:] = [x - factor * y for x, y in zip(row, pivot_row)]
                self.rhs[other] -= factor * self.rhs[r]

        factor = self.reduced[j]
        self.reduced = [d - factor * y for d, y in zip(self.reduced, pivot_row)]
        self.value += factor * self.rhs[r]
        self.basis[r] = j
        self.pivots += 1

    def solve(self) -> None:
        while (j := self._entering()) is not None:
            r = self._leaving(j)
            logger.debug(f"pivot {self.basis[r]} -> {j} (row {r})")
            self._pivot(r, j)

    def packing(self) -> List[Fraction]:
        y = [Fraction(0)] * self.m
        for r, var in enumerate(self.basis):
            if var < self.m:
                y[var] = self.rhs[r]
        return y

    def covering(self) -> List[Fraction]:
        # shadow price of vertex row u is minus the slack's reduced cost
        return [-self.reduced[self.m + u] for u in range(self.k)]


def covering_lp_of(h: HyperGraph) -> CoveringLP:
    """Constraints one-to-one with the hyperedges of ``h``."""
    return CoveringLP(num_vars=h.num_vertices, constraints=h.hyperedges)


def check_feasible(h: HyperGraph, m: MemoryAllocation) -> bool:
    """True iff Σ_{u∈S} M_u ≥ 1 holds exactly for every hyperedge S.

    Raises:
        DimensionMismatchError: When the allocation length differs from K.
    """
    if len(m) != h.num_vertices:
        raise DimensionMismatchError(
            f"allocation has {len(m)} entries for {h.num_vertices} vertices"
        )
    return all(
        sum((m.size(u) for u in edge), Fraction(0)) >= 1 for edge in h.hyperedges
    )


def verify_certificate(h: HyperGraph, solution: LPSolution) -> bool:
    """Re-check primal feasibility, dual feasibility and strong duality."""
    if not check_feasible(h, solution.allocation):
        return False
    y = solution.dual_certificate
    if len(y) != len(h.hyperedges) or any(value < 0 for value in y):
        return False
    for u in h.vertices:
        load = sum(
            (y[j] for j, edge in enumerate(h.hyperedges) if u in edge), Fraction(0)
        )
        if load > 1:
            return False
    dual_value = sum(y, Fraction(0))
    return dual_value == solution.optimum == solution.allocation.total


def solve_covering_lp(h: HyperGraph) -> LPSolution:
    """Solve min Σ M_u s.t. Σ_{u∈S} M_u ≥ 1 (S ∈ E), M ≥ 0 exactly.

    Args:
        h: Hypergraph; an empty edge set gives optimum 0.

    Returns:
        LPSolution whose allocation and dual certificate have been re-verified.
    """
    lp = covering_lp_of(h)
    tableau = _PackingTableau(lp)
    tableau.solve()

    solution = LPSolution(
        optimum=tableau.value,
        allocation=MemoryAllocation(sizes=tuple(tableau.covering())),
        dual_certificate=tuple(tableau.packing()),
    )
    logger.debug(
        f"covering LP on {h.num_vertices} vertices / {len(h.hyperedges)} "
        f"hyperedges: optimum {solution.optimum} after {tableau.pivots} pivots"
    )
    if not verify_certificate(h, solution):
        raise GdspError("covering LP certificate failed its self-check")
    return solution


def cutset_lower_bound(g: ColoredGraph) -> Fraction:
    """Color-blind bound: optimum of the covering LP with M_i + M_j ≥ 1 per edge."""
    return solve_covering_lp(color_blind_hypergraph(g)).optimum
