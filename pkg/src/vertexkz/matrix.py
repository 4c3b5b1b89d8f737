"""Dense square matrices of exact rationals and their determinants.

The determinant uses ordinary Gaussian elimination over Fractions with the
pivot taken as the first nonzero entry below the diagonal.  Over exact
rationals this is exact by construction; at the lattice sizes this package
targets (order <= 8) intermediate blow-up is a non-issue.  A singular matrix
yields exactly 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


@dataclass(frozen=True)
class RatMatrix:
    """Immutable square matrix with Fraction entries."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        rows = []
        for row in self.entries:
            if len(row) != n:
                raise ValueError("matrix must be square")
            rows.append(tuple(Fraction(x) for x in row))
        object.__setattr__(self, "entries", tuple(rows))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[Fraction | int]]) -> "RatMatrix":
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows(
            [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        )

    @property
    def order(self) -> int:
        return len(self.entries)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        r, c = key
        return self.entries[r][c]

    def with_column(self, col_index: int, column: Sequence[Fraction]) -> "RatMatrix":
        if len(column) != self.order:
            raise ValueError("replacement column has wrong length")
        rows = [list(row) for row in self.entries]
        for r, value in enumerate(column):
            rows[r][col_index] = Fraction(value)
        return RatMatrix.from_rows(rows)


def determinant(matrix: RatMatrix) -> Fraction:
    """Exact determinant via fraction elimination with first-nonzero pivoting."""
    n = matrix.order
    if n == 0:
        return Fraction(1)
    m = [list(row) for row in matrix.entries]
    det = Fraction(1)
    for col in range(n):
        pivot_row = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            det = -det
        pivot = m[col][col]
        det *= pivot
        for r in range(col + 1, n):
            factor = m[r][col] / pivot
            if factor == 0:
                continue
            row = m[r]
            ref = m[col]
            for c in range(col, n):
                row[c] -= factor * ref[c]
    return det
