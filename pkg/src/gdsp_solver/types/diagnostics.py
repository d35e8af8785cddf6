"""Violation and verdict type definitions."""

from fractions import Fraction
from typing import Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from .code import LinearCode
from .instance import ColoredEdge, MemoryAllocation, Rational

ViolationKind = Literal[
    "duplicate-pair",
    "self-loop",
    "vertex-out-of-range",
    "color-out-of-range",
    "intra-cluster-color",
    "cross-cluster-color",
]


class Violation(BaseModel):
    """One offending edge with the rule it breaks."""

    kind: ViolationKind
    edge: ColoredEdge
    message: str

    model_config = ConfigDict(frozen=True)


class SmoothnessCheck(BaseModel):
    """Outcome of checking a partition for smooth coloring."""

    smooth: bool
    violations: Tuple[Violation, ...] = ()

    model_config = ConfigDict(frozen=True)


class CodeVerification(BaseModel):
    """Validity of a code against every (hyper)edge, with the storage report."""

    valid: bool
    # graph edges as ColoredEdge, hyperedges as vertex tuples
    failures: Tuple[ColoredEdge | Tuple[int, ...], ...] = ()
    stored_sizes: Tuple[Rational, ...] = ()
    rank_sizes: Tuple[Rational, ...] = ()

    model_config = ConfigDict(frozen=True)

    @property
    def total(self) -> Fraction:
        return sum(self.stored_sizes, Fraction(0))


class SolveReport(BaseModel):
    """Achieved total with the provenance of each reported quantity."""

    total: Rational
    total_source: str
    allocation: MemoryAllocation
    witness: Optional[LinearCode] = None
    lower_bound: Optional[Rational] = None
    lower_bound_source: Optional[str] = None

    model_config = ConfigDict(frozen=True)
