"""Column determinants of matrices with noncommuting (Weyl algebra) entries."""

from __future__ import annotations

from typing import Sequence

from .polynomial import permutation_sign
from .weyl import WeylElement

__all__ = ["OperatorMatrix", "column_det", "natural_order", "reversed_order"]

OperatorMatrix = Sequence[Sequence[WeylElement]]


def natural_order(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def reversed_order(n: int) -> tuple[int, ...]:
    return tuple(range(n, 0, -1))


def column_det(M: OperatorMatrix, order: Sequence[int] | None = None) -> WeylElement:
    """sum_sigma sign(sigma) M[sigma(c1)][c1] M[sigma(c2)][c2] ... for columns
    c1, c2, ... taken from ``order`` (1-based, default natural) left to right."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("column determinant needs a square matrix")
    order = tuple(order) if order is not None else natural_order(n)
    if sorted(order) != list(range(1, n + 1)):
        raise ValueError(f"{list(order)} is not a column order for n={n}")

    rows_of: list[int] = [0] * n  # rows_of[c-1] = sigma(c)
    total: dict = {}

    def expand(depth: int, used: int, prefix: WeylElement) -> None:
        if depth == n:
            sgn = permutation_sign(rows_of)
            for key, coeff in prefix.terms.items():
                total[key] = total.get(key, 0) + sgn * coeff
            return
        col = order[depth]
        for row in range(1, n + 1):
            if used & (1 << row):
                continue
            entry = M[row - 1][col - 1]
            if entry.is_zero():
                continue
            rows_of[col - 1] = row
            expand(depth + 1, used | (1 << row), prefix * entry)

    expand(0, 0, WeylElement.scalar(1))
    return WeylElement(total)
