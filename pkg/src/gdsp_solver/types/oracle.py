"""Brute-force oracle type definitions."""

from typing import Literal, Optional

import galois
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .code import LinearCode
from .instance import Rational

OracleStatus = Literal["exact", "upper-bound", "inconclusive"]
Verdict = Literal["matched", "claimed-too-low", "claimed-too-high", "inconclusive"]

# Covers K = 6, N = 3, max_f = 3 over GF(5), about 125.
DEFAULT_MAX_BITS = 160.0


class OracleConfig(BaseModel):
    """Search limits for the brute-force oracle.

    ``max_bits`` bounds K·N·max_f·log2(q); larger instances are refused up front.
    """

    max_f: int = Field(default=2, ge=1)
    field_order: int = Field(default=5, ge=2)
    budget_cap: Optional[Rational] = None
    time_cap: float = Field(default=60.0, gt=0)
    max_bits: float = Field(default=DEFAULT_MAX_BITS, gt=0)

    model_config = ConfigDict(frozen=True)

    @field_validator("field_order")
    @classmethod
    def _prime_power(cls, q: int) -> int:
        if not galois.is_prime_power(q):
            raise ValueError(f"field order {q} is not a prime power")
        return q


class OracleResult(BaseModel):
    """Best linear code found, with how much of it is certified."""

    total: Optional[Rational] = None
    witness: Optional[LinearCode] = None
    symbols_per_file: Optional[int] = None
    lower_bound: Rational
    status: OracleStatus
    search_complete: bool = False

    model_config = ConfigDict(frozen=True)


class Certification(BaseModel):
    """Outcome of comparing a claimed optimum with the oracle."""

    verdict: Verdict
    claimed: Rational
    lower_bound: Rational
    oracle: OracleResult

    model_config = ConfigDict(frozen=True)
