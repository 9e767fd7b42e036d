"""Pure-Python subset-sum DP kernels (the fallback backend).

Both functions take the domain as a flat list of slot values (a value with
multiplicity mu appears mu times) and return exact Python integers.
"""
from __future__ import annotations

__all__ = ["subset_table", "subset_totals"]


def _rot(row: list[int], v: int) -> list[int]:
    # out[b] = row[b - v]
    return row[-v:] + row[:-v] if v else row


def subset_table(slots: list[int], p: int, kmax: int) -> list[list[int]]:
    """table[k][b] = number of k-element sub-multisets of slots summing to b mod p."""
    table = [[0] * p for _ in range(kmax + 1)]
    table[0][0] = 1
    used = 0
    for v in slots:
        used += 1
        for k in range(min(kmax, used), 0, -1):
            table[k] = [x + y for x, y in zip(table[k], _rot(table[k - 1], v))]
    return table


def subset_totals(slots: list[int], p: int) -> list[int]:
    """totals[b] = number of sub-multisets of slots (any size) summing to b mod p."""
    row = [0] * p
    row[0] = 1
    for v in slots:
        row = [x + y for x, y in zip(row, _rot(row, v))]
    return row
