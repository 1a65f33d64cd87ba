"""Little-endian bit-vector helpers.

Bit vectors are plain tuples of 0/1 ints, index 0 being the least
significant bit. All bus-valued operations in the package use this
convention.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def to_bits(value: int, width: int) -> tuple[int, ...]:
    """Expand a non-negative integer into `width` bits, LSB first."""
    if value < 0:
        raise ValueError(f"cannot encode negative value {value}")
    if width < 0:
        raise ValueError(f"width must be non-negative, got {width}")
    if value >> width:
        raise ValueError(f"value {value} does not fit in {width} bits")
    return tuple((value >> i) & 1 for i in range(width))


def from_bits(bits: Iterable[int]) -> int:
    """Pack an LSB-first bit sequence into an integer."""
    value = 0
    for i, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"bit {i} is {b!r}, expected 0 or 1")
        value |= b << i
    return value


def hamming_weight(bits: Iterable[int]) -> int:
    return sum(bits)


def hamming_distance(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum(x != y for x, y in zip(a, b))
