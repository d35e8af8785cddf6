"""Covering LP related type definitions."""

from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field

from .instance import MemoryAllocation, Rational


class CoveringLP(BaseModel):
    """min Σ M_u subject to Σ_{u∈S} M_u ≥ 1 for every S, M ≥ 0."""

    num_vars: int = Field(ge=1)
    constraints: Tuple[Tuple[int, ...], ...] = ()

    model_config = ConfigDict(frozen=True)


class LPSolution(BaseModel):
    """Optimum with primal allocation and dual certificate (one y_S per constraint)."""

    optimum: Rational
    allocation: MemoryAllocation
    dual_certificate: Tuple[Rational, ...] = ()

    model_config = ConfigDict(frozen=True)
