"""Exact linear solves over Fractions.

Plain Gaussian elimination with exact rational pivots; accepts
overdetermined-but-consistent systems (used for stationary distributions,
where the defining equations have rank n-1 and a normalization row is
appended).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)


def solve_unique(
    rows: Sequence[Sequence[Fraction]],
    rhs_columns: Sequence[Sequence[Fraction]],
) -> list[list[Fraction]]:
    """Solve A x = b exactly for each right-hand-side column.

    `rows` is an m x n matrix with m >= n; the system must be consistent and
    have full column rank, otherwise ValueError.  Returns one solution
    vector per column.
    """
    m = len(rows)
    if m == 0:
        return [[] for _ in rhs_columns]
    n = len(rows[0])
    k = len(rhs_columns)
    aug = [list(rows[i]) + [col[i] for col in rhs_columns] for i in range(m)]

    pivot_cols: list[int] = []
    row_at = 0
    for col in range(n):
        pivot = next((r for r in range(row_at, m) if aug[r][col] != ZERO), None)
        if pivot is None:
            continue
        aug[row_at], aug[pivot] = aug[pivot], aug[row_at]
        inv = 1 / aug[row_at][col]
        aug[row_at] = [x * inv for x in aug[row_at]]
        for r in range(m):
            if r != row_at and aug[r][col] != ZERO:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[row_at])]
        pivot_cols.append(col)
        row_at += 1
        if row_at == m:
            break

    if len(pivot_cols) != n:
        raise ValueError("system does not have full column rank")
    for r in range(row_at, m):
        if any(aug[r][n + j] != ZERO for j in range(k)):
            raise ValueError("inconsistent system")

    solutions = [[ZERO] * n for _ in range(k)]
    for r, col in enumerate(pivot_cols):
        for j in range(k):
            solutions[j][col] = aug[r][n + j]
    return solutions
