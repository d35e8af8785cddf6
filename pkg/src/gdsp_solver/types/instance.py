"""Instance related type definitions: files, graphs, allocations and partitions."""

from fractions import Fraction
from typing import Annotated, Any, Dict, Iterable, List, Optional, Tuple

import galois
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    PlainValidator,
    field_validator,
    model_validator,
)


def _to_fraction(value: Any) -> Fraction:
    # floats are rejected: every quantity in the toolkit is exact
    if isinstance(value, bool):
        raise ValueError(f"expected an exact rational, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational: {value!r}") from e
    raise ValueError(f"expected an exact rational, got {value!r}")


Rational = Annotated[
    Fraction,
    PlainValidator(_to_fraction),
    PlainSerializer(str, return_type=str),
]


class FileSpec(BaseModel):
    """N independent files of F symbols each over GF(q)."""

    num_files: int = Field(ge=1)
    symbols_per_file: int = Field(ge=1)
    field_order: int = Field(ge=2)

    model_config = ConfigDict(frozen=True)

    @field_validator("field_order")
    @classmethod
    def _prime_power(cls, q: int) -> int:
        if not galois.is_prime_power(q):
            raise ValueError(f"field order {q} is not a prime power")
        return q

    @property
    def num_columns(self) -> int:
        """Width N·F of every encoding matrix."""
        return self.num_files * self.symbols_per_file


class ColoredEdge(BaseModel):
    """A user connected to servers ``u`` and ``v`` that wants file ``color``."""

    u: int
    v: int
    color: int

    model_config = ConfigDict(frozen=True)

    @property
    def pair(self) -> Tuple[int, int]:
        return (min(self.u, self.v), max(self.u, self.v))


class ColoredGraph(BaseModel):
    """Servers 1..K and colored edges.

    Edge-level problems (duplicate pairs, self loops, colors out of range) are
    not rejected here; ``validate_instance`` reports them as data.
    """

    num_vertices: int = Field(ge=1)
    edges: Tuple[ColoredEdge, ...] = ()

    model_config = ConfigDict(frozen=True)

    @classmethod
    def from_triples(
        cls, num_vertices: int, triples: Iterable[Tuple[int, int, int]]
    ) -> "ColoredGraph":
        return cls(
            num_vertices=num_vertices,
            edges=tuple(ColoredEdge(u=u, v=v, color=c) for u, v, c in triples),
        )

    @property
    def vertices(self) -> range:
        return range(1, self.num_vertices + 1)


class HyperGraph(BaseModel):
    """Servers 1..K and hyperedges, all wanting the single file."""

    num_vertices: int = Field(ge=1)
    hyperedges: Tuple[Tuple[int, ...], ...] = ()

    model_config = ConfigDict(frozen=True)

    @field_validator("hyperedges")
    @classmethod
    def _normalize(cls, hyperedges: Tuple[Tuple[int, ...], ...]):
        for edge in hyperedges:
            if len(set(edge)) != len(edge):
                raise ValueError(f"hyperedge {list(edge)} repeats a vertex")
        return tuple(tuple(sorted(edge)) for edge in hyperedges)

    @model_validator(mode="after")
    def _check_hyperedges(self) -> "HyperGraph":
        seen = set()
        for edge in self.hyperedges:
            if not edge:
                raise ValueError("hyperedges must be nonempty")
            if edge[0] < 1 or edge[-1] > self.num_vertices:
                raise ValueError(
                    f"hyperedge {list(edge)} leaves vertex range 1..{self.num_vertices}"
                )
            if edge in seen:
                raise ValueError(f"duplicate hyperedge {list(edge)}")
            seen.add(edge)
        return self

    @property
    def vertices(self) -> range:
        return range(1, self.num_vertices + 1)


class MemoryAllocation(BaseModel):
    """Per-vertex storage in units of files; ``sizes[u - 1]`` belongs to vertex u."""

    sizes: Tuple[Rational, ...]

    model_config = ConfigDict(frozen=True)

    @field_validator("sizes")
    @classmethod
    def _non_negative(cls, sizes: Tuple[Fraction, ...]) -> Tuple[Fraction, ...]:
        for u, size in enumerate(sizes, start=1):
            if size < 0:
                raise ValueError(f"vertex {u} has negative storage {size}")
        return sizes

    @classmethod
    def zeros(cls, num_vertices: int) -> "MemoryAllocation":
        return cls(sizes=tuple(Fraction(0) for _ in range(num_vertices)))

    @classmethod
    def of(cls, values: Iterable[Any]) -> "MemoryAllocation":
        return cls(sizes=tuple(_to_fraction(v) for v in values))

    @property
    def total(self) -> Fraction:
        return sum(self.sizes, Fraction(0))

    def size(self, vertex: int) -> Fraction:
        return self.sizes[vertex - 1]

    def __len__(self) -> int:
        return len(self.sizes)


class Partition(BaseModel):
    """Color classes N_1..N_L paired with vertex clusters V_1..V_L."""

    color_classes: Tuple[Tuple[int, ...], ...]
    vertex_clusters: Tuple[Tuple[int, ...], ...]

    model_config = ConfigDict(frozen=True)

    @field_validator("color_classes", "vertex_clusters")
    @classmethod
    def _sort(cls, groups: Tuple[Tuple[int, ...], ...]):
        return tuple(tuple(sorted(group)) for group in groups)

    @model_validator(mode="after")
    def _check_shape(self) -> "Partition":
        if not self.color_classes:
            raise ValueError("a partition needs at least one class")
        if len(self.color_classes) != len(self.vertex_clusters):
            raise ValueError(
                f"{len(self.color_classes)} color classes but "
                f"{len(self.vertex_clusters)} vertex clusters"
            )
        for name, groups in (
            ("color classes", self.color_classes),
            ("vertex clusters", self.vertex_clusters),
        ):
            flat = [x for group in groups for x in group]
            if len(flat) != len(set(flat)):
                raise ValueError(f"{name} are not disjoint")
        if any(not group for group in self.color_classes):
            raise ValueError("color classes must be nonempty")
        return self

    @property
    def num_clusters(self) -> int:
        return len(self.color_classes)

    def cluster_of_color(self) -> Dict[int, int]:
        """Map color -> 0-based cluster index."""
        return {c: i for i, group in enumerate(self.color_classes) for c in group}

    def cluster_of_vertex(self) -> Dict[int, int]:
        """Map vertex -> 0-based cluster index."""
        return {v: i for i, group in enumerate(self.vertex_clusters) for v in group}


class FrontierSets(BaseModel):
    """Frontier sets; ``sets[i][j]`` holds F_{i+1, j+1} sorted."""

    sets: Tuple[Tuple[Tuple[int, ...], ...], ...]

    model_config = ConfigDict(frozen=True)

    def frontier(self, i: int, j: int) -> Tuple[int, ...]:
        """F_{i,j} with 1-based cluster numbers."""
        return self.sets[i - 1][j - 1]


class GdspInstance(BaseModel):
    """A parsed instance document."""

    spec: FileSpec
    graph: Optional[ColoredGraph] = None
    hypergraph: Optional[HyperGraph] = None
    partition: Optional[Partition] = None
    vertex_labels: Optional[Tuple[str, ...]] = None
    color_mapping: Dict[int, int] = Field(default_factory=dict)
    instance_hash: str = ""

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _one_structure(self) -> "GdspInstance":
        if (self.graph is None) == (self.hypergraph is None):
            raise ValueError("an instance holds exactly one of edges / hyperedges")
        if self.vertex_labels is not None and len(self.vertex_labels) != (
            self.num_vertices
        ):
            raise ValueError("vertex_labels must name every vertex")
        return self

    @property
    def num_vertices(self) -> int:
        structure = self.graph if self.graph is not None else self.hypergraph
        assert structure is not None
        return structure.num_vertices

    def label(self, vertex: int) -> str:
        if self.vertex_labels:
            return self.vertex_labels[vertex - 1]
        return str(vertex)

    def labels(self, vertices: Iterable[int]) -> List[str]:
        return [self.label(v) for v in vertices]
