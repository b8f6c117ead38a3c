"""Column arithmetic over the two-element field.

A column is either a Python ``int`` used as a dense bitset (bit ``i`` set
means row ``i`` holds a one) or a ``frozenset`` of row indices. Both support
``^`` as column addition, so the reduction code is written once.
"""

from __future__ import annotations

from collections.abc import Iterable

Column = int | frozenset


def low(col: Column) -> int:
    """Index of the lowest nonzero entry (largest row index), -1 if zero."""
    if isinstance(col, int):
        return col.bit_length() - 1
    return max(col) if col else -1


def column(rows: Iterable[int], dense: bool = True) -> Column:
    if not dense:
        return frozenset(int(i) for i in rows)
    out = 0
    for i in rows:
        out ^= 1 << int(i)
    return out


def entries(col: Column) -> list[int]:
    if isinstance(col, int):
        out = []
        while col:
            b = col & -col
            out.append(b.bit_length() - 1)
            col ^= b
        return out
    return sorted(col)


def truncate(col: Column, last_row: int) -> Column:
    """Drop every entry below ``last_row``."""
    if isinstance(col, int):
        return col & ((1 << (last_row + 1)) - 1)
    return frozenset(i for i in col if i <= last_row)


def rank(cols: Iterable[Column]) -> int:
    pivots: dict[int, Column] = {}
    for c in cols:
        while c:
            lo = low(c)
            hit = pivots.get(lo)
            if hit is None:
                pivots[lo] = c
                break
            c = c ^ hit
    return len(pivots)


def in_span(vec: Column, cols: Iterable[Column]) -> bool:
    basis = list(cols)
    return rank(basis) == rank(basis + [vec])
