"""Linear storage code type definitions."""

from typing import Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from .instance import FileSpec

Row = Tuple[int, ...]


class LinearCode(BaseModel):
    """Per-vertex encoding matrices over GF(q).

    ``rows[u - 1]`` is the m_u × N·F matrix of vertex u. Column
    ``(c - 1) * F + s`` holds the coefficient of symbol s of file c.
    """

    spec: FileSpec
    rows: Tuple[Tuple[Row, ...], ...]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_rows(self) -> "LinearCode":
        width = self.spec.num_columns
        q = self.spec.field_order
        for u, matrix in enumerate(self.rows, start=1):
            for row in matrix:
                if len(row) != width:
                    raise ValueError(
                        f"vertex {u} has a row of length {len(row)}, expected {width}"
                    )
                if any(not 0 <= x < q for x in row):
                    raise ValueError(f"vertex {u} has a coefficient outside [0, {q})")
        return self

    @property
    def num_vertices(self) -> int:
        return len(self.rows)

    def rows_of(self, vertex: int) -> Tuple[Row, ...]:
        return self.rows[vertex - 1]

    def stored_symbols(self, vertex: int) -> int:
        return len(self.rows[vertex - 1])
