"""Exact cyclic convolution of integer vectors (multiplication in Z[X]/(X^p - 1)).

Small or very sparse operands use a shift-and-add schoolbook loop. Larger
ones go through Kronecker substitution: each vector is packed into one big
integer with fixed-width slots, the two integers are multiplied (by GMP when
gmpy2 is installed, otherwise by CPython's Karatsuba), and the slots of the
product are read back and folded mod X^p - 1. Slot widths come from an a
priori bound on the output, so no carry ever crosses a slot.
"""
from __future__ import annotations

from typing import Iterable, Sequence

try:
    import gmpy2
except ImportError:  # pragma: no cover - exercised when gmpy2 is absent
    gmpy2 = None

__all__ = [
    "cyclic_convolve",
    "cyclic_dot",
    "cyclic_convolve_2d",
    "schoolbook_convolve",
    "HAVE_GMPY2",
]

HAVE_GMPY2 = gmpy2 is not None

# Below this many multiply-adds the schoolbook loop wins.
SCHOOLBOOK_LIMIT = 20_000


def _nonzero(a: Sequence[int]) -> list[tuple[int, int]]:
    return [(i, x) for i, x in enumerate(a) if x]


def schoolbook_convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Reference cyclic convolution: shift b by each nonzero index of a."""
    p = len(a)
    if len(b) != p:
        raise ValueError("operands must have equal length")
    sa, sb = _nonzero(a), _nonzero(b)
    if len(sa) > len(sb):
        sa, b = sb, a
    out = [0] * p
    for i, x in sa:
        rot = b[-i:] + b[:-i] if i else b
        if x == 1:
            out = [o + y for o, y in zip(out, rot)]
        else:
            out = [o + x * y for o, y in zip(out, rot)]
    return out


def _width(bound: int) -> int:
    """Bytes per slot for nonnegative values <= bound."""
    return max(1, (bound.bit_length() + 8) // 8)


def _pack(vec: Iterable[int], width: int, pad: int = 0) -> int:
    data = b"".join(x.to_bytes(width, "little") for x in vec)
    if pad:
        data += bytes(width * pad)
    return int.from_bytes(data, "little")


def _unpack(n: int, width: int, count: int) -> list[int]:
    data = memoryview(n.to_bytes(width * count, "little"))
    frm = int.from_bytes
    return [frm(data[i : i + width], "little") for i in range(0, width * count, width)]


def _mul(x: int, y: int):
    if gmpy2 is not None:
        return gmpy2.mpz(x) * gmpy2.mpz(y)
    return x * y


def _fold(linear: list[int], p: int) -> list[int]:
    head, tail = linear[:p], linear[p:]
    return [h + t for h, t in zip(head, tail)] + head[len(tail) :]


def cyclic_dot(pairs: Sequence[tuple[Sequence[int], Sequence[int]]]) -> list[int]:
    """Sum of cyclic convolutions a_i * b_i for nonnegative integer vectors.

    All products share one slot width, so the whole sum costs one unpack.
    """
    if not pairs:
        raise ValueError("need at least one pair")
    p = len(pairs[0][0])
    bound = 0
    for a, b in pairs:
        if len(a) != p or len(b) != p:
            raise ValueError("operands must have equal length")
        bound += sum(a) * max(b, default=0)
    if bound == 0:
        return [0] * p
    work = sum(min(len(_nonzero(a)), len(_nonzero(b))) for a, b in pairs) * p
    if work <= SCHOOLBOOK_LIMIT:
        out = [0] * p
        for a, b in pairs:
            out = [x + y for x, y in zip(out, schoolbook_convolve(a, b))]
        return out
    w = _width(bound)
    acc = 0
    for a, b in pairs:
        acc += _mul(_pack(a, w), _pack(b, w))
    return _fold(_unpack(int(acc), w, 2 * p - 1), p)


def _split(a: Sequence[int]) -> tuple[list[int], list[int]]:
    return [x if x > 0 else 0 for x in a], [-x if x < 0 else 0 for x in a]


def cyclic_convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact cyclic convolution of two integer vectors of equal length."""
    if len(a) != len(b):
        raise ValueError("operands must have equal length")
    if not any(x < 0 for x in a) and not any(y < 0 for y in b):
        return cyclic_dot([(a, b)])
    ap, an = _split(a)
    bp, bn = _split(b)
    pos = cyclic_dot([(ap, bp), (an, bn)])
    neg = cyclic_dot([(ap, bn), (an, bp)])
    return [x - y for x, y in zip(pos, neg)]


def cyclic_convolve_2d(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], t_max: int) -> list[list[int]]:
    """Product in (Z[t]/t^(t_max+1))[X]/(X^p - 1) of nonnegative bivariate arrays.

    ``A[i][j]`` is the coefficient of t^i X^j. Rows are packed with stride
    2p - 1 so a single big multiplication carries the whole product.
    """
    p = len(A[0])
    A = [list(r) for r in A[: t_max + 1]]
    B = [list(r) for r in B[: t_max + 1]]
    bound = sum(sum(r) for r in A) * max((max(r) for r in B), default=0)
    rows = min(len(A) + len(B) - 1, t_max + 1)
    if bound == 0:
        return [[0] * p for _ in range(rows)]
    stride = 2 * p - 1
    w = _width(bound)
    packed_a = _pack((x for r in A for x in [*r, *([0] * (p - 1))]), w)
    packed_b = _pack((x for r in B for x in [*r, *([0] * (p - 1))]), w)
    # Only the first (t_max+1) row blocks of the product are needed.
    prod = int(_mul(packed_a, packed_b)) & ((1 << (8 * w * stride * rows)) - 1)
    flat = _unpack(prod, w, stride * rows)
    return [_fold(flat[i * stride : (i + 1) * stride], p) for i in range(rows)]
