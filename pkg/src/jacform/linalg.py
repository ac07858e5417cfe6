"""Exact Gaussian elimination over the rationals for small dense systems."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["Solution", "solve", "rank"]


def _size(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


@dataclass
class Solution:
    """Result of ``A x = b``.

    ``x`` is a particular solution built from the pivot rows (free variables
    set to zero); ``consistent`` is False when some row reduces to ``0 = c``
    with ``c != 0``, and ``inconsistent_row`` names the first such input row.
    """

    x: list
    rank: int
    consistent: bool
    unique: bool
    inconsistent_row: int | None


def _eliminate(rows: list, ncols: int):
    """Reduced row echelon form in place; returns pivot columns and row order."""
    order = list(range(len(rows)))
    pivots = []
    r = 0
    for col in range(ncols):
        best = None
        for i in range(r, len(rows)):
            v = rows[i][col]
            if v and (best is None or _size(v) < _size(rows[best][col])):
                best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        order[r], order[best] = order[best], order[r]
        piv = rows[r][col]
        rows[r] = [v / piv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots, order


def solve(A: Sequence[Sequence], b: Sequence) -> Solution:
    """Exact solve; pivots are the entries of smallest bit-size."""
    ncols = len(A[0]) if A else 0
    rows = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    pivots, order = _eliminate(rows, ncols)
    bad = None
    for i in range(len(pivots), len(rows)):
        if rows[i][ncols]:
            bad = order[i] if bad is None else min(bad, order[i])
    x = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        x[col] = rows[r][ncols]
    return Solution(x, len(pivots), bad is None, len(pivots) == ncols, bad)


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    rows = [[Fraction(v) for v in row] for row in A]
    pivots, _ = _eliminate(rows, len(rows[0]))
    return len(pivots)
