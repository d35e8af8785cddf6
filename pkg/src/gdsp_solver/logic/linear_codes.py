"""Pure functions over linear storage codes: entropies, validity and constructions."""

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from loguru import logger

from ..errors import DimensionMismatchError, FieldTooSmallError, GdspError
from ..types.code import LinearCode, Row
from ..types.diagnostics import CodeVerification
from ..types.instance import ColoredGraph, FileSpec, HyperGraph, MemoryAllocation
from .covering_lp import check_feasible
from .finite_field import rank, row_basis, to_rows, vandermonde_rows


def _file_columns(spec: FileSpec, file: int) -> range:
    start = (file - 1) * spec.symbols_per_file
    return range(start, start + spec.symbols_per_file)


def _unit_rows(spec: FileSpec, file: int) -> List[Row]:
    width = spec.num_columns
    return [
        tuple(1 if col == target else 0 for col in range(width))
        for target in _file_columns(spec, file)
    ]


def _stack(code: LinearCode, vertices: Iterable[int]) -> List[Row]:
    return [row for v in sorted(set(vertices)) for row in code.rows_of(v)]


def _zero_files(rows: Sequence[Row], spec: FileSpec, files: Iterable[int]) -> List[Row]:
    dropped = {col for f in files for col in _file_columns(spec, f)}
    return [
        tuple(0 if col in dropped else x for col, x in enumerate(row)) for row in rows
    ]


def empty_code(spec: FileSpec, num_vertices: int) -> LinearCode:
    """Code in which no vertex stores anything."""
    return LinearCode(spec=spec, rows=tuple(() for _ in range(num_vertices)))


def stored_sizes(code: LinearCode) -> Tuple[Fraction, ...]:
    """m_u / F per vertex (stored symbols in units of files)."""
    f = code.spec.symbols_per_file
    return tuple(Fraction(len(matrix), f) for matrix in code.rows)


def total_storage(code: LinearCode) -> Fraction:
    return sum(stored_sizes(code), Fraction(0))


def entropy(code: LinearCode, vertices: Iterable[int]) -> Fraction:
    """H(h_S) in files: rank of the stacked encoding matrices divided by F."""
    spec = code.spec
    r = rank(_stack(code, vertices), spec.field_order, spec.num_columns)
    return Fraction(r, spec.symbols_per_file)


def conditional_entropy(
    code: LinearCode, vertices: Iterable[int], given_files: Iterable[int]
) -> Fraction:
    """H(h_S | A_given) in files: rank with the given files' columns zeroed, over F."""
    spec = code.spec
    reduced = _zero_files(_stack(code, vertices), spec, given_files)
    r = rank(reduced, spec.field_order, spec.num_columns)
    return Fraction(r, spec.symbols_per_file)


def mutual_information_with_file(code: LinearCode, vertex: int, file: int) -> Fraction:
    """I(h_u; A_file) in files."""
    return entropy(code, [vertex]) - conditional_entropy(code, [vertex], [file])


def can_decode(code: LinearCode, vertices: Iterable[int], file: int) -> bool:
    """True iff every symbol of ``file`` lies in the row space of the stacked rows."""
    spec = code.spec
    q, width = spec.field_order, spec.num_columns
    stacked = _stack(code, vertices)
    return rank(stacked, q, width) == rank(
        stacked + _unit_rows(spec, file), q, width
    )


def _storage_report(
    code: LinearCode,
) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    ranks = tuple(entropy(code, [u]) for u in range(1, code.num_vertices + 1))
    return stored_sizes(code), ranks


def verify_valid(code: LinearCode, g: ColoredGraph) -> CodeVerification:
    """Check decodability of every colored edge from its two endpoints.

    Raises:
        DimensionMismatchError: When vertex counts differ or an edge color has
            no file in the code.
    """
    if code.num_vertices != g.num_vertices:
        raise DimensionMismatchError(
            f"code covers {code.num_vertices} vertices, graph has {g.num_vertices}"
        )
    for edge in g.edges:
        if not 1 <= edge.color <= code.spec.num_files:
            raise DimensionMismatchError(
                f"edge color {edge.color} exceeds the code's "
                f"{code.spec.num_files} files"
            )

    failures = tuple(
        edge for edge in g.edges if not can_decode(code, [edge.u, edge.v], edge.color)
    )
    sizes, ranks = _storage_report(code)
    return CodeVerification(
        valid=not failures, failures=failures, stored_sizes=sizes, rank_sizes=ranks
    )


def hyperedge_verify(code: LinearCode, h: HyperGraph) -> CodeVerification:
    """Check that every hyperedge recovers the single file.

    Raises:
        GdspError: When the code carries more than one file.
    """
    if code.spec.num_files != 1:
        raise GdspError(
            "hyperedge verification needs a single-file code, "
            f"got N={code.spec.num_files}"
        )
    if code.num_vertices != h.num_vertices:
        raise DimensionMismatchError(
            f"code covers {code.num_vertices} vertices, hypergraph has {h.num_vertices}"
        )
    failures = tuple(edge for edge in h.hyperedges if not can_decode(code, edge, 1))
    sizes, ranks = _storage_report(code)
    return CodeVerification(
        valid=not failures, failures=failures, stored_sizes=sizes, rank_sizes=ranks
    )


def build_mds_single_file(
    h: HyperGraph, m: MemoryAllocation, spec: FileSpec
) -> LinearCode:
    """Give vertex u m_u·F Vandermonde rows with globally distinct points.

    Points 1, 2, 3, … are handed out in vertex order. Any F rows with distinct
    points are independent, so every hyperedge holding ≥ F rows decodes.

    Raises:
        GdspError: Infeasible allocation, non-integral m_u·F or N ≠ 1.
        FieldTooSmallError: When q ≤ Σ m_u·F.
    """
    if spec.num_files != 1:
        raise GdspError(f"MDS construction is single-file, got N={spec.num_files}")
    if not check_feasible(h, m):
        raise GdspError("allocation violates a covering constraint")

    f = spec.symbols_per_file
    counts: List[int] = []
    for u, size in enumerate(m.sizes, start=1):
        symbols = size * f
        if symbols.denominator != 1:
            raise GdspError(f"vertex {u} would store {symbols} symbols; raise F")
        counts.append(int(symbols))

    needed = sum(counts)
    if spec.field_order <= needed:
        raise FieldTooSmallError(
            f"{needed} distinct evaluation points need q > {needed}, "
            f"got q = {spec.field_order}"
        )

    generator = to_rows(vandermonde_rows(range(1, needed + 1), f, spec.field_order))
    rows: List[Tuple[Row, ...]] = []
    start = 0
    for count in counts:
        rows.append(tuple(generator[start : start + count]))
        start += count
    logger.debug(f"MDS code with {needed} rows over GF({spec.field_order})")
    return LinearCode(spec=spec, rows=tuple(rows))


def superpose_codes(codes: Sequence[LinearCode]) -> LinearCode:
    """Concatenate every vertex's rows across codes sharing one FileSpec.

    Raises:
        DimensionMismatchError: On differing specs or vertex counts.
    """
    if not codes:
        raise GdspError("nothing to superpose")
    first = codes[0]
    for other in codes[1:]:
        if other.spec != first.spec:
            raise DimensionMismatchError(f"spec {other.spec} differs from {first.spec}")
        if other.num_vertices != first.num_vertices:
            raise DimensionMismatchError("codes cover different vertex counts")
    rows = tuple(
        tuple(row for code in codes for row in code.rows[u])
        for u in range(first.num_vertices)
    )
    return LinearCode(spec=first.spec, rows=rows)


def restrict_code(code: LinearCode, zeroed_files: Iterable[int]) -> LinearCode:
    """Substitute A_f = 0 for the named files and keep a row basis per vertex."""
    spec = code.spec
    zeroed = list(zeroed_files)
    rows = tuple(
        row_basis(
            _zero_files(matrix, spec, zeroed), spec.field_order, spec.num_columns
        )
        for matrix in code.rows
    )
    return LinearCode(spec=spec, rows=rows)


def embed_single_file_code(code: LinearCode, file: int, spec: FileSpec) -> LinearCode:
    """Move a single-file code into file ``file``'s column block of ``spec``.

    Raises:
        DimensionMismatchError: When F or q differ, or the code has N ≠ 1.
    """
    inner = code.spec
    if (
        inner.num_files != 1
        or inner.symbols_per_file != spec.symbols_per_file
        or inner.field_order != spec.field_order
    ):
        raise DimensionMismatchError(f"cannot embed {inner} into {spec}")
    offset = _file_columns(spec, file).start
    width = spec.num_columns
    f = spec.symbols_per_file

    def lift(row: Row) -> Row:
        return (0,) * offset + row + (0,) * (width - offset - f)

    rows = tuple(tuple(lift(row) for row in matrix) for matrix in code.rows)
    return LinearCode(spec=spec, rows=rows)
