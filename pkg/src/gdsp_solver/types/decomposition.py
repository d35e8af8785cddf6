"""Superposition / decomposition result type definitions."""

from fractions import Fraction
from typing import Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from .code import LinearCode
from .instance import MemoryAllocation

Applicability = Literal["theorem1", "theorem2", "heuristic-only"]


class DecompositionResult(BaseModel):
    """Per-cluster allocations and their component-wise sum."""

    per_cluster_allocations: Tuple[MemoryAllocation, ...]
    combined: MemoryAllocation
    applicability: Applicability = "heuristic-only"
    # restricted codes realising each cluster, when the decomposition builds them
    cluster_codes: Optional[Tuple[Optional[LinearCode], ...]] = None

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _combined_is_sum(self) -> "DecompositionResult":
        for alloc in self.per_cluster_allocations:
            if len(alloc) != len(self.combined):
                raise ValueError("cluster allocation length differs from combined")
        for u in range(len(self.combined)):
            expected = sum(
                (a.sizes[u] for a in self.per_cluster_allocations), Fraction(0)
            )
            if expected != self.combined.sizes[u]:
                raise ValueError(f"combined[{u + 1}] is not the sum over clusters")
        return self

    @property
    def total(self) -> Fraction:
        return self.combined.total
