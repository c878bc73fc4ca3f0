"""Byte-encoded block necklaces for fast conjugacy-class enumeration.

A cyclically reduced word with 2n syllables is the alternating form
``i g^k1 ... i g^kn``; its conjugacy class is the rotation class of the
block tuple ``(k1, ..., kn)``.  Blocks are encoded one byte per exponent
in the fixed syllable order (g^1 < g^-1 < g^2 < g^-2 < ... < g^r), so
lexicographic comparison of the byte strings matches the class-key order
and reversal/negation is a C-speed ``translate``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .words import DomainError, GroupParams


def exponent_ordinal(k: int) -> int:
    """Position of g^k in the syllable order, 0-based."""
    return 2 * abs(k) - 2 + (0 if k > 0 else 1)


def ordinal_exponent(o: int) -> int:
    a = o // 2 + 1
    return a if o % 2 == 0 else -a


@dataclass(frozen=True)
class BlockAlphabet:
    """Canonical nonzero exponents of Z_p, byte-encoded."""

    p: int
    exponents: tuple[int, ...]     # sorted by ordinal
    weights: tuple[int, ...]       # 1 + |k|, aligned with exponents
    neg_table: bytes               # ordinal -> ordinal of canonical(-k)

    @staticmethod
    @lru_cache(maxsize=None)
    def for_p(p: int) -> "BlockAlphabet":
        exps = []
        for a in range(1, p // 2 + 1):
            exps.append(a)
            if 2 * a < p:  # -a is canonical unless 2a == p
                exps.append(-a)
        exps.sort(key=exponent_ordinal)
        table = bytearray(256)
        for k in exps:
            nk = -k
            if 2 * nk <= -p:
                nk += p
            table[exponent_ordinal(k)] = exponent_ordinal(nk)
        return BlockAlphabet(
            p=p,
            exponents=tuple(exps),
            weights=tuple(1 + abs(k) for k in exps),
            neg_table=bytes(table),
        )

    @staticmethod
    def for_params(params: GroupParams) -> "BlockAlphabet":
        return BlockAlphabet.for_p(params.p)

    def encode(self, blocks: tuple[int, ...]) -> bytes:
        return bytes(exponent_ordinal(k) for k in blocks)

    def decode(self, s: bytes) -> tuple[int, ...]:
        return tuple(ordinal_exponent(o) for o in s)

    def rev_neg(self, s: bytes) -> bytes:
        """Byte string of the inverse class (reverse and negate)."""
        return s[::-1].translate(self.neg_table)


def is_minimal_rotation(s: bytes) -> bool:
    n = len(s)
    if n <= 1:
        return True
    s2 = s + s
    first = s[0:1]
    i = s2.find(first, 1)
    while 0 < i < n:
        if s2[i : i + n] < s:
            return False
        i = s2.find(first, i + 1)
    return True


def minimal_rotation(s: bytes) -> bytes:
    n = len(s)
    if n <= 1:
        return s
    s2 = s + s
    return min(s2[i : i + n] for i in range(n))


def reversal_offsets_bytes(alphabet: BlockAlphabet, s: bytes) -> list[int]:
    """Offsets t such that the inverse class rotated left by t equals s."""
    n = len(s)
    u2 = alphabet.rev_neg(s) * 2
    return [t for t in range(n) if u2[t : t + n] == s]


def is_reciprocal_bytes(alphabet: BlockAlphabet, s: bytes) -> bool:
    return s in alphabet.rev_neg(s) * 2


def fixed_positions(n: int, t: int) -> tuple[int, int]:
    """Syllable positions fixed by the reversal at offset t.

    The reversal acts on the 2n syllable positions as the reflection
    ``pos -> 2c - pos (mod 2n)`` with ``c = -t mod n``; its fixed points
    are ``c`` and ``c + n``.
    """
    c = (-t) % n
    return c, c + n


def offset_types(params: GroupParams, blocks: tuple[int, ...], t: int) -> set[str]:
    """Reciprocator families fixed by the reversal at offset t.

    Even syllable positions carry ``i``, odd positions carry a gamma
    block; a fixed gamma block must equal its own negative, hence r.
    """
    n = len(blocks)
    types: set[str] = set()
    for pos in fixed_positions(n, t):
        pos %= 2 * n
        if pos % 2 == 0:
            types.add("iota")
        else:
            k = blocks[(pos - 1) // 2]
            if params.canonical_exponent(-k) != k:
                raise DomainError(f"invalid reversal offset {t} for blocks {blocks}")
            types.add("tilde_gamma")
    return types
