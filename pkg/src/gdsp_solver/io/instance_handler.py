"""File handler for instance, partition, allocation and code documents."""

import hashlib
import json
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Type, TypeVar

import ruamel.yaml
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from ruamel.yaml.error import YAMLError

from ..errors import InstanceFormatError
from ..types.code import LinearCode
from ..types.instance import (
    ColoredGraph,
    FileSpec,
    GdspInstance,
    HyperGraph,
    MemoryAllocation,
    Partition,
)

M = TypeVar("M", bound=BaseModel)

YAML_SUFFIXES = (".yaml", ".yml")


class PartitionDocument(BaseModel):
    """``color_classes`` and ``vertex_clusters``, index-aligned."""

    color_classes: List[List[int]]
    vertex_clusters: List[List[int]]

    model_config = ConfigDict(extra="forbid")


class InstanceDocument(BaseModel):
    """On-disk form of an instance; see FORMATS.md."""

    num_vertices: int = Field(ge=1)
    num_files: Optional[int] = Field(default=None, ge=1)
    symbols_per_file: int = Field(default=1, ge=1)
    field_order: int = Field(default=5, ge=2)
    vertex_labels: Optional[List[str]] = None
    edges: Optional[List[Tuple[int, int, int]]] = None
    hyperedges: Optional[List[List[int]]] = None
    partition: Optional[PartitionDocument] = None

    model_config = ConfigDict(extra="forbid")


def instance_hash(instance: GdspInstance) -> str:
    """sha256 of the canonical JSON form, without the hash field itself."""
    payload = instance.model_dump(mode="json", exclude={"instance_hash"})
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _dense_mapping(colors: List[int]) -> Dict[int, int]:
    return {c: i for i, c in enumerate(sorted(set(colors)), start=1)}


def _remap_partition(
    doc: PartitionDocument, mapping: Dict[int, int], path: str
) -> Partition:
    classes = []
    for index, group in enumerate(doc.color_classes):
        unknown = [c for c in group if c not in mapping]
        if unknown:
            raise InstanceFormatError(
                path,
                f"colors {unknown} appear on no edge and cannot be re-indexed",
                f"color_classes.{index}",
            )
        classes.append(tuple(mapping[c] for c in group))
    return Partition(
        color_classes=tuple(classes),
        vertex_clusters=tuple(tuple(group) for group in doc.vertex_clusters),
    )


def to_instance(doc: InstanceDocument, path: str = "<instance>") -> GdspInstance:
    """Normalize a parsed document into a GdspInstance with its hash.

    Colors are re-indexed densely in increasing order only when ``num_files``
    is absent; otherwise they are kept as written.

    Raises:
        InstanceFormatError: On structural problems in the document.
    """
    if (doc.edges is None) == (doc.hyperedges is None):
        raise InstanceFormatError(path, "give exactly one of edges / hyperedges")

    try:
        if doc.hyperedges is not None:
            if doc.num_files not in (None, 1):
                raise InstanceFormatError(
                    path, "a hypergraph instance carries a single file", "num_files"
                )
            mapping = {1: 1}
            graph = None
            hypergraph = HyperGraph(
                num_vertices=doc.num_vertices,
                hyperedges=tuple(tuple(edge) for edge in doc.hyperedges),
            )
            num_files = 1
        else:
            assert doc.edges is not None
            colors = [c for _, _, c in doc.edges]
            if doc.num_files is None:
                mapping = _dense_mapping(colors) or {1: 1}
                num_files = len(mapping)
            else:
                literal = set(colors) | set(range(1, doc.num_files + 1))
                mapping = {c: c for c in sorted(literal)}
                num_files = doc.num_files
            graph = ColoredGraph.from_triples(
                doc.num_vertices, [(u, v, mapping[c]) for u, v, c in doc.edges]
            )
            hypergraph = None

        partition = None
        if doc.partition is not None:
            partition = _remap_partition(doc.partition, mapping, path)

        instance = GdspInstance(
            spec=FileSpec(
                num_files=num_files,
                symbols_per_file=doc.symbols_per_file,
                field_order=doc.field_order,
            ),
            graph=graph,
            hypergraph=hypergraph,
            partition=partition,
            vertex_labels=tuple(doc.vertex_labels) if doc.vertex_labels else None,
            color_mapping=mapping,
        )
    except ValidationError as e:
        raise _format_error(path, e) from e
    return instance.model_copy(update={"instance_hash": instance_hash(instance)})


def to_document(instance: GdspInstance) -> InstanceDocument:
    """Inverse of ``to_instance`` with ``num_files`` always written out."""
    partition = None
    if instance.partition is not None:
        partition = PartitionDocument(
            color_classes=[list(g) for g in instance.partition.color_classes],
            vertex_clusters=[list(g) for g in instance.partition.vertex_clusters],
        )
    return InstanceDocument(
        num_vertices=instance.num_vertices,
        num_files=instance.spec.num_files,
        symbols_per_file=instance.spec.symbols_per_file,
        field_order=instance.spec.field_order,
        vertex_labels=list(instance.vertex_labels) if instance.vertex_labels else None,
        edges=(
            [(e.u, e.v, e.color) for e in instance.graph.edges]
            if instance.graph is not None
            else None
        ),
        hyperedges=(
            [list(edge) for edge in instance.hypergraph.hyperedges]
            if instance.hypergraph is not None
            else None
        ),
        partition=partition,
    )


def _format_error(path: str, error: ValidationError) -> InstanceFormatError:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or None
    return InstanceFormatError(path, first["msg"], location)


class InstanceHandler:
    """Handler for reading and writing JSON / YAML documents."""

    def __init__(self):
        self.yaml = ruamel.yaml.YAML(typ="safe")
        self.yaml.default_flow_style = False
        self.yaml.allow_unicode = True
        self.yaml.width = 4096

    def _load(self, file_path: str, model: Type[M]) -> M:
        path = Path(file_path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            logger.error(f"Failed to read {file_path}: {e}")
            raise InstanceFormatError(file_path, str(e)) from e

        try:
            if path.suffix in YAML_SUFFIXES:
                return model.model_validate(self.yaml.load(text))
            return model.model_validate_json(text)
        except YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            location = (
                f"line {mark.line + 1}, column {mark.column + 1}" if mark else None
            )
            logger.error(f"Failed to parse {file_path}: {e}")
            raise InstanceFormatError(file_path, "malformed YAML", location) from e
        except ValidationError as e:
            logger.error(f"Failed to validate {file_path}: {e}")
            raise _format_error(file_path, e) from e

    def read_instance(self, file_path: str) -> GdspInstance:
        """Read and normalize an instance document.

        Args:
            file_path: ``.json``, ``.yaml`` or ``.yml`` file.

        Returns:
            GdspInstance carrying its color mapping and instance hash.
        """
        instance = to_instance(self._load(file_path, InstanceDocument), file_path)
        logger.info(f"Loaded {file_path} (hash {instance.instance_hash[:12]})")
        return instance

    def read_partition(self, file_path: str, instance: GdspInstance) -> Partition:
        """Read a partition, mapping its colors through the instance's re-indexing."""
        doc = self._load(file_path, PartitionDocument)
        try:
            return _remap_partition(doc, instance.color_mapping, file_path)
        except ValidationError as e:
            raise _format_error(file_path, e) from e

    def read_allocation(self, file_path: str) -> MemoryAllocation:
        return self._load(file_path, MemoryAllocation)

    def read_code(self, file_path: str) -> LinearCode:
        return self._load(file_path, LinearCode)

    def write_document(self, file_path: str, document: BaseModel) -> None:
        """Write any document model as JSON, or YAML for a YAML suffix."""
        path = Path(file_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        data = document.model_dump(mode="json", exclude_none=True)
        try:
            with open(path, "w", encoding="utf-8") as f:
                if path.suffix in YAML_SUFFIXES:
                    self.yaml.dump(data, f)
                else:
                    f.write(json.dumps(data, indent=2) + "\n")
        except OSError as e:
            logger.error(f"Failed to write {file_path}: {e}")
            raise

    def write_instance(self, file_path: str, instance: GdspInstance) -> None:
        self.write_document(file_path, to_document(instance))

    def write_code(self, file_path: str, code: LinearCode) -> None:
        self.write_document(file_path, code)

