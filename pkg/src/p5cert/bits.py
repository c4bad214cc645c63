"""Immutable bitstrings backed by Python integers.

A ``Bits`` value holds ``length`` bits; the bit appended first is the most
significant bit of ``value``.  Index 0 therefore refers to the first bit of
the stream, which keeps encoded certificates byte-compatible with the
documented layouts (integers are packed most-significant-bit first).
"""

from __future__ import annotations

from dataclasses import dataclass


class BitUnderflow(Exception):
    """Internal: a reader ran past the end of the stream."""


@dataclass(frozen=True, slots=True)
class Bits:
    value: int
    length: int

    def __post_init__(self):
        if self.length < 0 or self.value < 0 or self.value.bit_length() > self.length:
            raise ValueError("value does not fit in length")

    @staticmethod
    def empty() -> "Bits":
        return Bits(0, 0)

    @staticmethod
    def from01(s: str) -> "Bits":
        if s and set(s) - {"0", "1"}:
            raise ValueError("not a 0/1 string")
        return Bits(int(s, 2) if s else 0, len(s))

    @staticmethod
    def from_int(value: int, width: int) -> "Bits":
        return Bits(value, width)

    def to01(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""

    def __len__(self) -> int:
        return self.length

    def bit(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.value >> (self.length - 1 - i)) & 1

    def field(self, start: int, width: int) -> int:
        """Unsigned integer value of bits [start, start+width)."""
        if start < 0 or width < 0 or start + width > self.length:
            raise IndexError((start, width))
        return (self.value >> (self.length - start - width)) & ((1 << width) - 1)

    def slice(self, start: int, width: int) -> "Bits":
        return Bits(self.field(start, width), width)

    def concat(self, other: "Bits") -> "Bits":
        return Bits((self.value << other.length) | other.value, self.length + other.length)

    def __add__(self, other: "Bits") -> "Bits":
        return self.concat(other)

    def flip(self, i: int) -> "Bits":
        if not 0 <= i < self.length:
            raise IndexError(i)
        return Bits(self.value ^ (1 << (self.length - 1 - i)), self.length)

    def to_hex(self) -> str:
        """Hex dump, zero-padded on the right to a byte boundary."""
        nbytes = (self.length + 7) // 8
        if nbytes == 0:
            return ""
        padded = self.value << (nbytes * 8 - self.length)
        return format(padded, f"0{nbytes * 2}x")

    @staticmethod
    def from_hex(hexstr: str, bitlength: int) -> "Bits":
        nbytes = (bitlength + 7) // 8
        if len(hexstr) != nbytes * 2:
            raise ValueError("hex length does not match bit length")
        padded = int(hexstr, 16) if hexstr else 0
        pad = nbytes * 8 - bitlength
        if padded & ((1 << pad) - 1):
            raise ValueError("nonzero padding bits")
        return Bits(padded >> pad, bitlength)


class BitWriter:
    """Append-only accumulator; integers are written MSB first."""

    __slots__ = ("_value", "_length")

    def __init__(self):
        self._value = 0
        self._length = 0

    def push(self, value: int, width: int) -> None:
        if value < 0 or value.bit_length() > width:
            raise ValueError(f"{value} does not fit in {width} bits")
        self._value = (self._value << width) | value
        self._length += width

    def push_bits(self, b: Bits) -> None:
        self._value = (self._value << b.length) | b.value
        self._length += b.length

    def result(self) -> Bits:
        return Bits(self._value, self._length)

    def __len__(self) -> int:
        return self._length


class BitReader:
    """Sequential reader over a ``Bits``; raises ``BitUnderflow`` on overrun."""

    __slots__ = ("_bits", "pos")

    def __init__(self, bits: Bits):
        self._bits = bits
        self.pos = 0

    def read(self, width: int) -> int:
        if self.pos + width > self._bits.length:
            raise BitUnderflow()
        v = self._bits.field(self.pos, width)
        self.pos += width
        return v

    def read_bits(self, width: int) -> Bits:
        return Bits(self.read(width), width)

    def remaining(self) -> int:
        return self._bits.length - self.pos

    def exhausted(self) -> bool:
        return self.pos == self._bits.length
