"""Fixed-width bitstrings and the composition/decomposition maps.

Convention used across the package: the leftmost bit of a string is the
most significant one, so bit_compose("101") == 5 and the k-bit
decomposition of 5 is "0101" for k = 4.
"""

from __future__ import annotations

from typing import Iterable, Union

BitsLike = Union[str, "Bitstring", Iterable[int]]


class Bitstring:
    """Immutable fixed-width vector of bits, most significant bit first."""

    __slots__ = ("width", "value")

    width: int
    value: int

    def __init__(self, bits: BitsLike):
        if isinstance(bits, Bitstring):
            width, value = bits.width, bits.value
        elif isinstance(bits, str):
            if not bits or any(c not in "01" for c in bits):
                raise ValueError(f"not a bitstring: {bits!r}")
            width, value = len(bits), int(bits, 2)
        else:
            seq = tuple(bits)
            if not seq or any(b not in (0, 1) for b in seq):
                raise ValueError(f"not a bit sequence: {seq!r}")
            width = len(seq)
            value = 0
            for b in seq:
                value = (value << 1) | b
        object.__setattr__(self, "width", width)
        object.__setattr__(self, "value", value)

    @classmethod
    def from_int(cls, value: int, width: int) -> "Bitstring":
        if width < 1:
            raise ValueError("width must be >= 1")
        if value < 0 or value >= (1 << width):
            raise ValueError(f"value {value} out of range for width {width}")
        self = object.__new__(cls)
        object.__setattr__(self, "width", width)
        object.__setattr__(self, "value", value)
        return self

    def __setattr__(self, name, val):
        raise AttributeError("Bitstring is immutable")

    @property
    def bits(self) -> tuple:
        return tuple((self.value >> (self.width - 1 - i)) & 1 for i in range(self.width))

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b")

    def __repr__(self) -> str:
        return f"Bitstring({str(self)!r})"

    def __len__(self) -> int:
        return self.width

    def __iter__(self):
        return iter(self.bits)

    def __getitem__(self, i):
        if isinstance(i, slice):
            sub = self.bits[i]
            if not sub:
                raise ValueError("empty bitstring slice")
            return Bitstring(sub)
        return (self.value >> (self.width - 1 - i)) & 1

    def __eq__(self, other) -> bool:
        if isinstance(other, Bitstring):
            return self.width == other.width and self.value == other.value
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.width, self.value))

    def __xor__(self, other: "Bitstring") -> "Bitstring":
        if self.width != other.width:
            raise ValueError("width mismatch in xor")
        return Bitstring.from_int(self.value ^ other.value, self.width)

    def __add__(self, other: "Bitstring") -> "Bitstring":
        """Concatenation."""
        return Bitstring.from_int(
            (self.value << other.width) | other.value, self.width + other.width
        )


def ceil_log2(s: int) -> int:
    """Number of bits needed to index a set of s >= 1 elements."""
    if s < 1:
        raise ValueError("s must be positive")
    return (s - 1).bit_length()


def bit_compose(x: BitsLike) -> int:
    """Value of a bitstring read most significant bit first."""
    return Bitstring(x).value


def bit_decompose(a: int, width: int) -> Bitstring:
    """The unique width-bit representation of a, with leading zeroes."""
    if a < 0 or a >= (1 << width):
        raise ValueError(f"{a} not representable in {width} bits")
    return Bitstring.from_int(a, width)


def bit_decompose_minimal(a: int) -> Bitstring:
    """Binary representation without leading zeroes; 0 maps to "0".

    The single-bit image of 0 means an exponentiation driven by this
    map performs exactly one squaring step on input 0, which every
    indexing-function identity in this package relies on.
    """
    if a < 0:
        raise ValueError("a must be nonnegative")
    if a == 0:
        return Bitstring("0")
    return Bitstring.from_int(a, a.bit_length())


def mod_shift(u: BitsLike, w: BitsLike, sign: str = "+") -> Bitstring:
    """Fixed-width add/subtract with the carry out of the top bit ignored."""
    ub, wb = Bitstring(u), Bitstring(w)
    if ub.width != wb.width:
        raise ValueError(f"width mismatch: {ub.width} vs {wb.width}")
    if sign == "+":
        v = (ub.value + wb.value) % (1 << ub.width)
    elif sign == "-":
        v = (ub.value - wb.value) % (1 << ub.width)
    else:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return Bitstring.from_int(v, ub.width)
