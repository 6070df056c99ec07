"""Disturbance-vector bookkeeping: message expansion, weights and encoding."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

from .errors import EncodingError

MASK32 = 0xFFFFFFFF
SEED_WORDS = 16
DV_WORDS = 80


def rotl32(x: int, r: int = 1) -> int:
    return ((x << r) | (x >> (32 - r))) & MASK32


def rotr32(x: int, r: int = 1) -> int:
    return ((x >> r) | (x << (32 - r))) & MASK32


def _words(values, length, what):
    words = tuple(int(v) for v in values)
    if len(words) != length:
        raise ValueError(f"{what} needs exactly {length} words, got {len(words)}")
    for i, v in enumerate(words):
        if not 0 <= v <= MASK32:
            raise ValueError(f"{what} word {i} = {v:#x} is not a 32-bit value")
    return words


@dataclass(frozen=True)
class DvSeed:
    words: tuple

    def __post_init__(self):
        object.__setattr__(self, "words", _words(self.words, SEED_WORDS, "seed"))


@dataclass(frozen=True)
class DisturbanceVector:
    words: tuple

    def __post_init__(self):
        object.__setattr__(self, "words", _words(self.words, DV_WORDS, "disturbance vector"))

    def satisfies_expansion(self) -> bool:
        v = self.words
        return all(
            v[i] == rotl32(v[i - 3] ^ v[i - 8] ^ v[i - 14] ^ v[i - 16])
            for i in range(SEED_WORDS, DV_WORDS)
        )

    @property
    def seed(self) -> DvSeed:
        return DvSeed(self.words[:SEED_WORDS])


def expand_forward(seed: DvSeed | Sequence[int]) -> DisturbanceVector:
    """Grow 16 seed words to 80 with the SHA-1 schedule recurrence."""
    if not isinstance(seed, DvSeed):
        seed = DvSeed(seed)
    v = list(seed.words)
    for i in range(SEED_WORDS, DV_WORDS):
        v.append(rotl32(v[i - 3] ^ v[i - 8] ^ v[i - 14] ^ v[i - 16]))
    return DisturbanceVector(tuple(v))


def expand_backward(window: Sequence[int], steps: int) -> tuple:
    """Recover the ``steps`` words that precede a 16-word window.

    ``window`` holds ``v_i .. v_{i+15}``; the result is ``v_{i-steps} .. v_{i-1}``
    in index order. Uses ``v_{j-16} = rotr1(v_j) ^ v_{j-3} ^ v_{j-8} ^ v_{j-14}``.
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    w = list(_words(window, SEED_WORDS, "window"))
    earlier = []
    for _ in range(steps):
        # w[15] plays v_j; its predecessor 16 back is what we are solving for
        prev = rotr32(w[15]) ^ w[12] ^ w[7] ^ w[1]
        earlier.append(prev)
        w = [prev] + w[:15]
    return tuple(reversed(earlier))


def hamming_weight(dv) -> tuple[int, tuple]:
    """Total set bits and per-word counts of a seed, DV or raw word list."""
    words = dv.words if hasattr(dv, "words") else tuple(dv)
    per_word = tuple(int(w).bit_count() for w in words)
    return sum(per_word), per_word


@dataclass(frozen=True)
class CandidateEncoding:
    """Which ``lam`` bit positions of every seed word may be set.

    A candidate is the concatenation X^0 X^1 ... X^15 of the 16 per-word
    ``lam``-bit strings, with the first bit of X^0 least significant, giving an
    ``n = 16*lam`` bit address.
    """

    lam: int
    positions: tuple = None

    def __post_init__(self):
        if not 1 <= self.lam <= 32:
            raise ValueError(f"bit weight must be in [1, 32], got {self.lam}")
        pos = tuple(range(self.lam)) if self.positions is None else tuple(int(p) for p in self.positions)
        if len(pos) != self.lam:
            raise ValueError(f"need {self.lam} positions, got {len(pos)}")
        if any(not 0 <= p <= 31 for p in pos):
            raise ValueError(f"positions must lie in [0, 31]: {pos}")
        if any(a >= b for a, b in zip(pos, pos[1:])):
            raise ValueError(f"positions must be strictly increasing: {pos}")
        object.__setattr__(self, "positions", pos)

    @property
    def n(self) -> int:
        return SEED_WORDS * self.lam

    @property
    def word_mask(self) -> int:
        m = 0
        for p in self.positions:
            m |= 1 << p
        return m


EDGES = CandidateEncoding(4, (0, 1, 30, 31))


def encode(seed: DvSeed | Sequence[int], enc: CandidateEncoding) -> int:
    if not isinstance(seed, DvSeed):
        seed = DvSeed(seed)
    mask = enc.word_mask
    zeta = 0
    for i, word in enumerate(seed.words):
        if word & ~mask:
            raise EncodingError(
                f"word {i} = {word:08x} has bits outside positions {list(enc.positions)}"
            )
        for k, p in enumerate(enc.positions):
            if (word >> p) & 1:
                zeta |= 1 << (i * enc.lam + k)
    return zeta


def decode(zeta: int, enc: CandidateEncoding) -> DvSeed:
    if not 0 <= zeta < (1 << enc.n):
        raise ValueError(f"candidate index {zeta} outside [0, 2**{enc.n})")
    words = []
    for i in range(SEED_WORDS):
        word = 0
        for k, p in enumerate(enc.positions):
            if (zeta >> (i * enc.lam + k)) & 1:
                word |= 1 << p
        words.append(word)
    return DvSeed(tuple(words))


# Starting lines of six-step local collisions for the first 18 lines of the
# expanded Type-I disturbance-vector table.
_TYPE_I_STARTS = (0, 6, 0, 10, 1, 1, 5, 2, 0, 6, 1, 1, 1, 0, 0, 2, 0, 5)


@dataclass(frozen=True)
class TypeITable:
    entries: tuple

    def start(self, line: int) -> int:
        return self.entries[line][1]

    def zero_start_lines(self) -> tuple:
        return tuple(l for l, u in self.entries if u == 0)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["line", "start"])
        writer.writerows(self.entries)
        return buf.getvalue()


_TYPE_I = TypeITable(tuple(enumerate(_TYPE_I_STARTS)))


def type_i_table() -> TypeITable:
    return _TYPE_I
