"""Exact integer linear algebra for lattice membership questions.

Everything here is integer or rational arithmetic; there is no floating
point and hence no tolerance anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple


@dataclass(frozen=True)
class IntMatrix:
    n: int
    entries: Tuple[Tuple[int, ...], ...]  # rows

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be positive")
        if len(self.entries) != self.n or any(len(r) != self.n for r in self.entries):
            raise ValueError("entries must form a square matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        return cls(len(rows), tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def scaled_identity(cls, n: int, c: int) -> "IntMatrix":
        return cls(n, tuple(tuple(c if i == j else 0 for j in range(n)) for i in range(n)))

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(self.entries[i][j] for i in range(self.n))

    def mul_vec(self, z: Sequence[int]) -> Tuple[int, ...]:
        return tuple(
            sum(self.entries[i][j] * z[j] for j in range(self.n)) for i in range(self.n)
        )


def det_exact(matrix: IntMatrix) -> int:
    """Fraction-free Bareiss elimination; exact for any integer matrix."""
    n = matrix.n
    m = [list(row) for row in matrix.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def solve_exact(matrix: IntMatrix, x: Sequence[int]) -> Optional[List[Fraction]]:
    """Solve B z = x over the rationals; None if B is singular."""
    n = matrix.n
    if len(x) != n:
        raise ValueError("vector dimension mismatch")
    aug = [[Fraction(v) for v in row] + [Fraction(x[i])] for i, row in enumerate(matrix.entries)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def lattice_member(matrix: IntMatrix, x: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """Integer z with B z = x, or None when x is outside the lattice."""
    if det_exact(matrix) == 0:
        raise ValueError("basis is singular")
    z = solve_exact(matrix, x)
    assert z is not None
    if all(v.denominator == 1 for v in z):
        return tuple(int(v) for v in z)
    return None
