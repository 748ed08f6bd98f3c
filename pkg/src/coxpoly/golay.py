"""The binary [24, 12, 8] code underlying the Leech lattice membership test.

Built as the extended quadratic-residue code of length 23: the twelve
cyclic shifts of the generator polynomial, each closed with an overall
parity bit.  The weight distribution (1, 759, 2576, 759, 1) is the
contract; any generator achieving it would do equally well.  The code is
self-dual, which makes membership a twelve-parity check.
"""

from __future__ import annotations

import hashlib
from functools import cached_property

import numpy as np

# x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1
_GENPOLY = (1 << 11) | (1 << 10) | (1 << 6) | (1 << 5) | (1 << 4) | (1 << 2) | 1


def _popcount(x: int) -> int:
    return bin(x).count("1")


class GolayCode:
    """4096 binary words of length 24, stored as a 12-dimensional span."""

    def __init__(self):
        rows = []
        for i in range(12):
            word = _GENPOLY << i  # within 23 bits
            parity = _popcount(word) & 1
            rows.append(word | (parity << 23))
        self.generators: tuple[int, ...] = tuple(rows)
        for g in rows:
            for h in rows:
                if _popcount(g & h) % 2:
                    raise AssertionError("generator is not self-orthogonal")

    @cached_property
    def words(self) -> list[int]:
        out = [0]
        for g in self.generators:
            out += [w ^ g for w in out]
        return out

    @cached_property
    def weight_distribution(self) -> dict[int, int]:
        dist: dict[int, int] = {}
        for w in self.words:
            k = _popcount(w)
            dist[k] = dist.get(k, 0) + 1
        return dist

    def contains(self, word) -> bool:
        """Membership of a 24-bit word (int or iterable of 24 bits)."""
        if not isinstance(word, int):
            bits = list(word)
            if len(bits) != 24:
                raise ValueError("word must have 24 bits")
            word = sum((1 << i) for i, b in enumerate(bits) if b & 1)
        # self-dual: member iff orthogonal to every generator
        return all(_popcount(word & g) % 2 == 0 for g in self.generators)

    @cached_property
    def generator_matrix(self) -> np.ndarray:
        return np.array(
            [[(g >> i) & 1 for i in range(24)] for g in self.generators],
            dtype=np.uint8,
        )

    def contains_batch(self, bits: np.ndarray) -> np.ndarray:
        """Vectorized membership for an (n, 24) 0/1 array."""
        syn = bits.astype(np.float32) @ self.generator_matrix.T.astype(np.float32)
        return (syn.astype(np.int64) & 1).sum(axis=1) == 0

    def words_of_weight(self, k: int) -> np.ndarray:
        """All weight-k codewords as an (m, 24) 0/1 array."""
        sel = [w for w in self.words if _popcount(w) == k]
        return np.array(
            [[(w >> i) & 1 for i in range(24)] for w in sel], dtype=np.int64
        )

    @cached_property
    def checksum(self) -> str:
        return hashlib.sha256(
            b",".join(str(g).encode() for g in self.generators)
        ).hexdigest()
