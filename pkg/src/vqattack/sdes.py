"""Classical S-DES: 8-bit block, 10-bit key, two Feistel-style rounds."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

# Permutation tables, 1-based source positions (left-most bit = position 1).
P10 = (3, 5, 2, 7, 4, 10, 1, 9, 8, 6)
P8 = (6, 3, 7, 4, 8, 5, 10, 9)
IP = (2, 6, 3, 1, 4, 8, 5, 7)
IP_INV = (4, 1, 3, 5, 7, 2, 8, 6)
EP = (4, 1, 2, 3, 2, 3, 4, 1)
P4 = (2, 4, 3, 1)

# S-box row is selected by input bits (1, 4), column by bits (2, 3).
S0 = (
    (1, 0, 3, 2),
    (3, 2, 1, 0),
    (0, 2, 1, 3),
    (3, 1, 3, 2),
)
S1 = (
    (0, 1, 2, 3),
    (2, 0, 1, 3),
    (3, 0, 1, 0),
    (2, 1, 0, 3),
)


@dataclass(frozen=True, slots=True)
class BitBlock:
    """Fixed-width bit string, MSB first."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.bits:
            raise ValueError("BitBlock cannot be empty")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"bits must be 0 or 1, got {self.bits!r}")

    @classmethod
    def from_str(cls, text: str) -> "BitBlock":
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def from_int(cls, value: int, width: int) -> "BitBlock":
        if width < 1:
            raise ValueError("width must be positive")
        if value < 0 or value >= 1 << width:
            raise ValueError(f"{value} does not fit in {width} bits")
        return cls(tuple((value >> (width - 1 - i)) & 1 for i in range(width)))

    @property
    def width(self) -> int:
        return len(self.bits)

    def to_str(self) -> str:
        return "".join(str(b) for b in self.bits)

    def to_int(self) -> int:
        value = 0
        for b in self.bits:
            value = (value << 1) | b
        return value

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"BitBlock('{self.to_str()}')"


@dataclass(frozen=True, slots=True)
class SubKeyPair:
    """The two 8-bit round keys derived from a 10-bit key."""

    k1: BitBlock
    k2: BitBlock

    def __post_init__(self) -> None:
        if self.k1.width != 8 or self.k2.width != 8:
            raise ValueError("sub-keys must both be 8 bits wide")


def _require_width(block: BitBlock, width: int, name: str) -> None:
    if block.width != width:
        raise ValueError(f"{name} must be {width} bits wide, got {block.width}")


def permute(block: BitBlock, table: Sequence[int]) -> BitBlock:
    """Reorder bits by a table of 1-based source positions."""
    bits = block.bits
    width = len(bits)
    out = []
    for pos in table:
        if not 1 <= pos <= width:
            raise ValueError(f"table entry {pos} out of range for width {width}")
        out.append(bits[pos - 1])
    return BitBlock(tuple(out))


def rotate_halves(block: BitBlock, shift: int) -> BitBlock:
    """Left-rotate the two 5-bit halves of a 10-bit block independently."""
    _require_width(block, 10, "block")
    if shift not in (1, 2):
        raise ValueError(f"shift must be 1 or 2, got {shift}")
    left, right = block.bits[:5], block.bits[5:]
    return BitBlock(left[shift:] + left[:shift] + right[shift:] + right[:shift])


@lru_cache(maxsize=4096)
def key_schedule(key: BitBlock) -> SubKeyPair:
    """Derive the two round keys: K1 = P8(Shift1(P10(key))), K2 adds a double shift."""
    _require_width(key, 10, "key")
    shifted = rotate_halves(permute(key, P10), 1)
    k1 = permute(shifted, P8)
    k2 = permute(rotate_halves(shifted, 2), P8)
    return SubKeyPair(k1, k2)


def xor(a: BitBlock, b: BitBlock) -> BitBlock:
    if a.width != b.width:
        raise ValueError(f"XOR width mismatch: {a.width} vs {b.width}")
    return BitBlock(tuple(x ^ y for x, y in zip(a.bits, b.bits)))


def sbox_lookup(nibble: BitBlock, box: Sequence[Sequence[int]]) -> BitBlock:
    """Look up a 4-bit input in an S-box; bits (1,4) pick the row, (2,3) the column."""
    _require_width(nibble, 4, "nibble")
    b = nibble.bits
    row = (b[0] << 1) | b[3]
    col = (b[1] << 1) | b[2]
    return BitBlock.from_int(box[row][col], 2)


def feistel_f(right: BitBlock, subkey: BitBlock) -> BitBlock:
    """The keyed 4-bit map: expand, XOR with the sub-key, S-boxes, then P4."""
    _require_width(right, 4, "right half")
    _require_width(subkey, 8, "subkey")
    mixed = xor(permute(right, EP), subkey)
    s0_out = sbox_lookup(BitBlock(mixed.bits[:4]), S0)
    s1_out = sbox_lookup(BitBlock(mixed.bits[4:]), S1)
    return permute(BitBlock(s0_out.bits + s1_out.bits), P4)


def fk(
    block: BitBlock,
    subkey: BitBlock,
    f: Callable[[BitBlock, BitBlock], BitBlock] = feistel_f,
) -> BitBlock:
    """One round: XOR the left half with f(right half, subkey); right half passes through."""
    _require_width(block, 8, "block")
    left = BitBlock(block.bits[:4])
    right = BitBlock(block.bits[4:])
    new_left = xor(left, f(right, subkey))
    return BitBlock(new_left.bits + right.bits)


def swap_halves(block: BitBlock) -> BitBlock:
    _require_width(block, 8, "block")
    return BitBlock(block.bits[4:] + block.bits[:4])


def encrypt(plaintext: BitBlock, key: BitBlock) -> BitBlock:
    """Encrypt one 8-bit block under a 10-bit key."""
    _require_width(plaintext, 8, "plaintext")
    keys = key_schedule(key)
    state = permute(plaintext, IP)
    state = fk(state, keys.k1)
    state = swap_halves(state)
    state = fk(state, keys.k2)
    return permute(state, IP_INV)


def decrypt(ciphertext: BitBlock, key: BitBlock) -> BitBlock:
    """Invert :func:`encrypt`: the sub-keys are applied in reverse order."""
    _require_width(ciphertext, 8, "ciphertext")
    keys = key_schedule(key)
    state = permute(ciphertext, IP)
    state = fk(state, keys.k2)
    state = swap_halves(state)
    state = fk(state, keys.k1)
    return permute(state, IP_INV)
