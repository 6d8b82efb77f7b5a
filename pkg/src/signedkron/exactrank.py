"""Exact rank of integer matrices via fraction-free (Bareiss) elimination."""

from __future__ import annotations

from typing import Sequence


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals of an integer matrix, computed exactly.

    Uses Bareiss fraction-free elimination with Python integers, so the
    result does not depend on conditioning or floating-point tolerances.
    """
    m = [[int(x) for x in row] for row in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        pivot = m[r][c]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (pivot * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = pivot
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


def integer_nullity(rows: Sequence[Sequence[int]], ncols: int) -> int:
    """Dimension of the rational nullspace of an integer constraint matrix."""
    if not rows:
        return ncols
    return ncols - integer_rank(rows)
