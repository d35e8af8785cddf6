"""GF(q) linear algebra on small integer matrices, backed by galois."""

from functools import lru_cache
from typing import Sequence, Tuple, Type

import galois
import numpy as np

Matrix = Sequence[Sequence[int]]


@lru_cache(maxsize=None)
def field(q: int) -> Type[galois.FieldArray]:
    """Return the GF(q) array class (cached per order)."""
    return galois.GF(q)


def as_field_array(rows: Matrix, q: int, width: int) -> galois.FieldArray:
    GF = field(q)
    if not rows:
        return GF.Zeros((0, width))
    return GF(np.asarray(rows, dtype=np.int64).reshape(len(rows), width))


def to_rows(array: galois.FieldArray) -> Tuple[Tuple[int, ...], ...]:
    plain = array.view(np.ndarray)
    return tuple(tuple(int(x) for x in row) for row in plain)


def rank(rows: Matrix, q: int, width: int) -> int:
    """Rank over GF(q); zero for an empty matrix."""
    if not rows or width == 0:
        return 0
    return int(np.linalg.matrix_rank(as_field_array(rows, q, width)))


def row_basis(rows: Matrix, q: int, width: int) -> Tuple[Tuple[int, ...], ...]:
    """Nonzero rows of the reduced row echelon form."""
    if not rows or width == 0:
        return ()
    reduced = as_field_array(rows, q, width).row_reduce()
    nonzero = np.any(reduced.view(np.ndarray) != 0, axis=1)
    return to_rows(reduced[nonzero])


def vandermonde_rows(points: Sequence[int], length: int, q: int) -> galois.FieldArray:
    """Rows (1, a, a², …, a^{length-1}) for each evaluation point a in GF(q)."""
    GF = field(q)
    alphas = GF(np.asarray(points, dtype=np.int64))
    return alphas[:, np.newaxis] ** np.arange(length)


def smallest_field_order(above: int) -> int:
    """Smallest prime power strictly greater than ``above``."""
    q = max(above + 1, 2)
    while not galois.is_prime_power(q):
        q += 1
    return q
