"""Network information flow related type definitions."""

from typing import Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from .instance import Rational

INF = "INF"
Capacity = Union[Literal["INF"], Rational]


class Arc(BaseModel):
    """Directed link; capacity ``INF`` is unbounded."""

    tail: int
    head: int
    capacity: Capacity

    model_config = ConfigDict(frozen=True)


class FlowNetwork(BaseModel):
    """Source 0, intermediates 1..K, sinks K+1..K+|E|."""

    num_intermediates: int = Field(ge=1)
    hyperedges: Tuple[Tuple[int, ...], ...] = ()
    arcs: Tuple[Arc, ...] = ()

    model_config = ConfigDict(frozen=True)

    @property
    def source(self) -> int:
        return 0

    @property
    def sinks(self) -> Tuple[int, ...]:
        first = self.num_intermediates + 1
        return tuple(range(first, first + len(self.hyperedges)))

    @property
    def num_nodes(self) -> int:
        return 1 + self.num_intermediates + len(self.hyperedges)


class FlowFeasibility(BaseModel):
    """Per-sink max-flow values and the rate-one verdict."""

    feasible: bool
    min_cut_per_sink: Tuple[Rational, ...] = ()

    model_config = ConfigDict(frozen=True)
