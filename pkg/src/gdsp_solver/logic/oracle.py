"""Exhaustive search over linear codes for desk-scale ground truth.

Search order: F = 1..max_f; for each F, total row counts T in increasing order
from ⌈lower_bound·F⌉; for each T, per-vertex row-count profiles in
lexicographic order, pruned by Σ_{u∈S} d_u ≥ F per demand and by d_u = 0 for
vertices in no demand; for each profile, per-vertex subspaces in reduced row
echelon form, assigned by backtracking in vertex order with every demand
checked as soon as its last vertex is placed.
The first success at a given F is that F's minimum.
"""

import itertools
import math
import time
from fractions import Fraction
from functools import lru_cache
from typing import (
    Callable,
    Dict,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Tuple,
    Union,
)

from loguru import logger

from ..errors import GdspError
from ..types.code import LinearCode, Row
from ..types.instance import ColoredGraph, FileSpec, HyperGraph, MemoryAllocation
from ..types.oracle import Certification, OracleConfig, OracleResult
from .covering_lp import cutset_lower_bound, solve_covering_lp
from .finite_field import rank
from .graph_ops import colors_used
from .linear_codes import empty_code, stored_sizes

Structure = Union[ColoredGraph, HyperGraph]
Subspace = Tuple[Row, ...]


class _Demand(NamedTuple):
    vertices: Tuple[int, ...]
    file: int


class _OutOfTime(Exception):
    pass


@lru_cache(maxsize=None)
def enumerate_subspaces(n: int, d: int, q: int) -> Tuple[Subspace, ...]:
    """All d-dimensional subspaces of GF(q)^n as RREF bases, lexicographically."""
    if d == 0:
        return ((),)
    found: List[Subspace] = []
    for pivots in itertools.combinations(range(n), d):
        free = [
            (r, col)
            for r, p in enumerate(pivots)
            for col in range(p + 1, n)
            if col not in pivots
        ]
        for values in itertools.product(range(q), repeat=len(free)):
            matrix = [[0] * n for _ in range(d)]
            for r, p in enumerate(pivots):
                matrix[r][p] = 1
            for (r, col), x in zip(free, values):
                matrix[r][col] = x
            found.append(tuple(tuple(row) for row in matrix))
    return tuple(found)


def _profiles(total: int, parts: int, cap: int) -> Iterator[Tuple[int, ...]]:
    """Compositions of ``total`` into ``parts`` values in 0..cap, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(0, min(cap, total) + 1):
        if total - first > cap * (parts - 1):
            continue
        for rest in _profiles(total - first, parts - 1, cap):
            yield (first,) + rest


class _Search:
    """Backtracking search at one subpacketization level F."""

    def __init__(
        self,
        num_vertices: int,
        demands: List[_Demand],
        spec: FileSpec,
        deadline: float,
    ):
        self.k = num_vertices
        self.demands = demands
        self.spec = spec
        self.n = spec.num_columns
        self.deadline = deadline
        self.cache: Dict[Tuple[Tuple[Subspace, ...], int], bool] = {}
        self.closing: Dict[int, List[_Demand]] = {
            v: [] for v in range(1, self.k + 1)
        }
        for demand in demands:
            self.closing[max(demand.vertices)].append(demand)
        self.idle = [
            v - 1
            for v in range(1, self.k + 1)
            if not any(v in demand.vertices for demand in demands)
        ]
        self.steps = 0

    def _units(self, file: int) -> List[Row]:
        f = self.spec.symbols_per_file
        return [
            tuple(1 if col == (file - 1) * f + s else 0 for col in range(self.n))
            for s in range(f)
        ]

    def _decodes(self, chosen: Dict[int, Subspace], demand: _Demand) -> bool:
        key = (
            tuple(sorted(chosen[v] for v in demand.vertices)),
            demand.file,
        )
        if key not in self.cache:
            rows = [row for v in demand.vertices for row in chosen[v]]
            q = self.spec.field_order
            self.cache[key] = rank(rows, q, self.n) == rank(
                rows + self._units(demand.file), q, self.n
            )
        return self.cache[key]

    def profile_ok(self, profile: Tuple[int, ...]) -> bool:
        # rows on an idle vertex only pad a total already refuted
        if any(profile[i] for i in self.idle):
            return False
        f = self.spec.symbols_per_file
        return all(
            sum(profile[v - 1] for v in demand.vertices) >= f
            for demand in self.demands
        )

    def assign(self, profile: Tuple[int, ...]) -> Optional[Dict[int, Subspace]]:
        chosen: Dict[int, Subspace] = {}
        q = self.spec.field_order

        def place(v: int) -> bool:
            if v > self.k:
                return True
            for candidate in enumerate_subspaces(self.n, profile[v - 1], q):
                self.steps += 1
                if self.steps % 512 == 0 and time.monotonic() > self.deadline:
                    raise _OutOfTime
                chosen[v] = candidate
                closed = all(self._decodes(chosen, d) for d in self.closing[v])
                if closed and place(v + 1):
                    return True
            chosen.pop(v, None)
            return False

        return dict(chosen) if place(1) else None


def _demands(structure: Structure) -> List[_Demand]:
    if isinstance(structure, HyperGraph):
        return [_Demand(vertices=edge, file=1) for edge in structure.hyperedges]
    return [
        _Demand(vertices=edge.pair, file=edge.color) for edge in structure.edges
    ]


def _num_files(structure: Structure, num_files: Optional[int]) -> int:
    if isinstance(structure, HyperGraph):
        return 1
    return num_files or max(colors_used(structure), default=1)


def oracle_lower_bound(structure: Structure) -> Fraction:
    """Cut-set bound: covering LP for hypergraphs, color-blind LP for graphs."""
    if isinstance(structure, HyperGraph):
        return solve_covering_lp(structure).optimum
    return cutset_lower_bound(structure)


def search_bits(structure: Structure, cfg: OracleConfig, num_files: int) -> float:
    """K·N·max_f·log2(q), the size measure the budget guard compares."""
    return (
        structure.num_vertices * num_files * cfg.max_f * math.log2(cfg.field_order)
    )


def brute_force_optimum(
    structure: Structure, cfg: OracleConfig, num_files: Optional[int] = None
) -> OracleResult:
    """Minimum Σ m_u/F over linear codes with F ≤ max_f that are valid.

    Args:
        structure: Colored graph (multi-file) or hypergraph (single file).
        cfg: Search limits.
        num_files: N for graphs; defaults to the largest color used.

    Returns:
        OracleResult; ``exact`` when the best total meets the cut-set bound,
        ``upper-bound`` otherwise, ``inconclusive`` when nothing was found.
    """
    n_files = _num_files(structure, num_files)
    lower = oracle_lower_bound(structure)
    demands = _demands(structure)

    if not demands:
        spec = FileSpec(
            num_files=n_files, symbols_per_file=1, field_order=cfg.field_order
        )
        return OracleResult(
            total=Fraction(0),
            witness=empty_code(spec, structure.num_vertices),
            symbols_per_file=1,
            lower_bound=lower,
            status="exact",
            search_complete=True,
        )

    bits = search_bits(structure, cfg, n_files)
    if bits > cfg.max_bits:
        logger.warning(
            f"oracle refused: search measure {bits:.1f} exceeds {cfg.max_bits}"
        )
        return OracleResult(lower_bound=lower, status="inconclusive")

    deadline = time.monotonic() + cfg.time_cap
    best: Optional[Tuple[Fraction, LinearCode, int]] = None
    complete = True

    try:
        for f in range(1, cfg.max_f + 1):
            spec = FileSpec(
                num_files=n_files, symbols_per_file=f, field_order=cfg.field_order
            )
            search = _Search(structure.num_vertices, demands, spec, deadline)
            t_min = math.ceil(lower * f)
            t_max = structure.num_vertices * spec.num_columns
            if best is not None:
                t_max = min(t_max, math.ceil(best[0] * f) - 1)
            if cfg.budget_cap is not None:
                t_max = min(t_max, math.floor(cfg.budget_cap * f))

            for total in range(t_min, t_max + 1):
                found = _search_total(search, total)
                if found is not None:
                    witness = LinearCode(
                        spec=spec,
                        rows=tuple(found[v] for v in structure.vertices),
                    )
                    best = (Fraction(total, f), witness, f)
                    logger.debug(
                        f"F={f}: total {best[0]} after {search.steps} steps"
                    )
                    break
            if best is not None and best[0] == lower:
                break
    except _OutOfTime:
        complete = False
        logger.warning(f"oracle hit its {cfg.time_cap}s time cap")

    if best is None:
        return OracleResult(
            lower_bound=lower, status="inconclusive", search_complete=complete
        )
    total, witness, f = best
    return OracleResult(
        total=total,
        witness=witness,
        symbols_per_file=f,
        lower_bound=lower,
        status="exact" if total == lower else "upper-bound",
        search_complete=complete,
    )


def _search_total(search: _Search, total: int) -> Optional[Dict[int, Subspace]]:
    for profile in _profiles(total, search.k, search.n):
        if not search.profile_ok(profile):
            continue
        found = search.assign(profile)
        if found is not None:
            return found
    return None


def certify_match(
    structure: Structure,
    claimed: Fraction,
    cfg: OracleConfig,
    num_files: Optional[int] = None,
) -> Certification:
    """Compare a claimed optimum with the cut-set bound and the oracle."""
    result = brute_force_optimum(structure, cfg, num_files)
    if claimed < result.lower_bound:
        verdict = "claimed-too-low"
    elif result.total is not None and result.total < claimed:
        verdict = "claimed-too-high"
    elif result.total is not None and result.total == claimed:
        verdict = "matched"
    else:
        verdict = "inconclusive"
    logger.info(f"claim {claimed} vs oracle {result.total}: {verdict}")
    return Certification(
        verdict=verdict, claimed=claimed, lower_bound=result.lower_bound, oracle=result
    )


def oracle_cluster_solver(
    cfg: OracleConfig, num_files: Optional[int] = None
) -> Callable[[ColoredGraph], MemoryAllocation]:
    """Cluster solver for superposition that uses the oracle's witness sizes.

    Raises:
        GdspError: When the oracle finds nothing within its limits.
    """

    def solve(g: ColoredGraph) -> MemoryAllocation:
        result = brute_force_optimum(g, cfg, num_files)
        if result.witness is None:
            raise GdspError("oracle found no code for the cluster within its limits")
        return MemoryAllocation(sizes=stored_sizes(result.witness))

    return solve
