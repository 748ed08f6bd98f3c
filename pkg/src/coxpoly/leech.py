"""The Leech lattice in sqrt(8)-scaled integer coordinates.

A lattice point is a tuple of 24 integers x with the true vector x/sqrt(8),
so squared distances get scaled by 8: the minimal norm 4 corresponds to
sum-of-squares 32.  Membership is the classical congruence description
over the binary code: uniform parity, code-supported mod-4 pattern, and a
coordinate-sum condition.

Shell enumeration for norms 4 and 6 runs by coordinate-shape case over
the code (never by scanning a box) in numpy batches of O(batch) memory,
partitionable across workers by outer index.
"""

from __future__ import annotations

import itertools
import multiprocessing
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from coxpoly.diagram import PAR, ULTRA
from coxpoly.golay import GolayCode

Point = tuple[int, ...]

SQ8 = {4: 32, 6: 48}  # norm -> scaled sum of squares


def _sign_rows(n: int, parity: int) -> np.ndarray:
    """All +-1 rows of length n whose number of -1 entries has the parity."""
    rows = np.array(list(itertools.product((1, -1), repeat=n)), dtype=np.int64)
    neg = (rows == -1).sum(axis=1)
    return rows[neg % 2 == parity]


class LeechLattice:
    def __init__(self, code: GolayCode | None = None):
        self.code = code or GolayCode()

    # -- membership ---------------------------------------------------------------

    def contains(self, x: Iterable[int]) -> bool:
        x = tuple(int(v) for v in x)
        if len(x) != 24:
            raise ValueError("a lattice point has 24 coordinates")
        m = x[0] % 2
        if any(v % 2 != m for v in x):
            return False
        bits = [((v - m) % 4) // 2 for v in x]
        if not self.code.contains(bits):
            return False
        return sum(x) % 8 == (4 * m) % 8

    def contains_batch(self, arr: np.ndarray) -> np.ndarray:
        arr = np.asarray(arr, dtype=np.int64)
        m = arr[:, :1] % 2
        uniform = (arr % 2 == m).all(axis=1)
        bits = ((arr - m) % 4) // 2
        in_code = self.code.contains_batch(bits.astype(np.uint8))
        sums = arr.sum(axis=1) % 8 == (4 * m[:, 0]) % 8
        return uniform & in_code & sums

    @staticmethod
    def sq8(x: Iterable[int]) -> int:
        return sum(int(v) * int(v) for v in x)

    @classmethod
    def norm(cls, x: Iterable[int]) -> Fraction:
        return Fraction(cls.sq8(x), 8)

    @staticmethod
    def dist_sq8(x: Sequence[int], y: Sequence[int]) -> int:
        return sum((int(a) - int(b)) ** 2 for a, b in zip(x, y))

    # -- bond labels ----------------------------------------------------------------

    def bond(self, lam: Sequence[int], mu: Sequence[int]):
        """Diagram label between two distinct lattice points."""
        d = self.dist_sq8(lam, mu)
        if d == 32:
            return 2
        if d == 48:
            return 3
        if d == 64:
            return PAR
        if d > 64:
            return ULTRA
        raise ValueError(
            f"difference of squared length {Fraction(d, 8)} cannot separate "
            "distinct lattice points"
        )

    # -- shape tables ----------------------------------------------------------------

    @cached_property
    def _octads(self) -> np.ndarray:
        return np.nonzero(self.code.words_of_weight(8))[1].reshape(-1, 8)

    @cached_property
    def _dodecads(self) -> np.ndarray:
        return np.nonzero(self.code.words_of_weight(12))[1].reshape(-1, 12)

    @cached_property
    def _sign_bases(self) -> np.ndarray:
        """One +-1 row per codeword: -1 on the support."""
        words = np.array(
            [[(w >> i) & 1 for i in range(24)] for w in self.code.words],
            dtype=np.int64,
        )
        return 1 - 2 * words

    @cached_property
    def _even8(self) -> np.ndarray:
        return _sign_rows(8, 0)

    @cached_property
    def _odd8(self) -> np.ndarray:
        return _sign_rows(8, 1)

    @cached_property
    def _even12(self) -> np.ndarray:
        return _sign_rows(12, 0)

    @cached_property
    def _triples(self) -> np.ndarray:
        return np.array(list(itertools.combinations(range(24), 3)), dtype=np.int64)

    # -- shape batch generators (centered at the origin) -------------------------------

    _SHAPES = {
        4: (("pair4", 276), ("octad2", 759), ("code3single", 4096)),
        6: (("dodecad2", 2576), ("octad42", 759), ("code3triple", 4096),
            ("code5single", 4096)),
    }

    def _shape_batch(self, shape: str, start: int, end: int) -> Iterator[np.ndarray]:
        if shape == "pair4":
            pairs = np.array(
                list(itertools.combinations(range(24), 2)), dtype=np.int64
            )[start:end]
            out = np.zeros((4 * len(pairs), 24), dtype=np.int64)
            for t, (s0, s1) in enumerate(((4, 4), (4, -4), (-4, 4), (-4, -4))):
                rows = np.arange(t, 4 * len(pairs), 4)
                out[rows, pairs[:, 0]] = s0
                out[rows, pairs[:, 1]] = s1
            yield out
        elif shape == "octad2":
            for k in range(start, end, 64):
                octs = self._octads[k : min(k + 64, end)]
                out = np.zeros((len(octs) * 128, 24), dtype=np.int64)
                for i, oct_ in enumerate(octs):
                    out[i * 128 : (i + 1) * 128, oct_] = 2 * self._even8
                yield out
        elif shape == "code3single":
            diag = np.arange(24)
            for k in range(start, end, 128):
                bases = self._sign_bases[k : min(k + 128, end)]
                out = np.repeat(bases, 24, axis=0)
                rows = np.arange(len(out))
                out[rows, np.tile(diag, len(bases))] *= -3
                yield out
        elif shape == "dodecad2":
            for k in range(start, end, 8):
                dods = self._dodecads[k : min(k + 8, end)]
                out = np.zeros((len(dods) * 2048, 24), dtype=np.int64)
                for i, dod in enumerate(dods):
                    out[i * 2048 : (i + 1) * 2048, dod] = 2 * self._even12
                yield out
        elif shape == "octad42":
            all_pos = np.arange(24)
            for k in range(start, end):
                oct_ = self._octads[k]
                comp = np.setdiff1d(all_pos, oct_)
                out = np.zeros((4096, 24), dtype=np.int64)
                out[:, oct_] = np.tile(2 * self._odd8, (32, 1))
                j_col = np.repeat(comp, 256)
                s_col = np.tile(np.repeat(np.array([4, -4]), 128), 16)
                out[np.arange(4096), j_col] = s_col
                yield out
        elif shape == "code3triple":
            triples = self._triples
            rows_idx = np.arange(len(triples))[:, None]
            for k in range(start, end, 4):
                for base in self._sign_bases[k : min(k + 4, end)]:
                    out = np.tile(base, (len(triples), 1))
                    out[rows_idx, triples] *= -3
                    yield out
        elif shape == "code5single":
            diag = np.arange(24)
            for k in range(start, end, 128):
                bases = self._sign_bases[k : min(k + 128, end)]
                out = np.repeat(bases, 24, axis=0)
                rows = np.arange(len(out))
                out[rows, np.tile(diag, len(bases))] *= 5
                yield out
        else:
            raise ValueError(shape)

    def shell_batches(self, norm: int) -> Iterator[np.ndarray]:
        """Complete, duplicate-free batches of the origin-centered shell."""
        for shape, total in self._SHAPES[norm]:
            yield from self._shape_batch(shape, 0, total)

    def enum_sphere(self, center: Sequence[int], norm: int) -> Iterator[Point]:
        """Stream the lattice points at the given distance from the center."""
        if norm not in SQ8:
            raise ValueError("supported sphere norms are 4 and 6")
        c = np.asarray(tuple(center), dtype=np.int64)
        for batch in self.shell_batches(norm):
            for row in batch + c:
                yield tuple(int(v) for v in row)

    # -- census -------------------------------------------------------------------------

    def census_tasks(self, norm: int, chunk: int = 256) -> list[tuple[str, int, int]]:
        tasks = []
        for shape, total in self._SHAPES[norm]:
            for s in range(0, total, chunk):
                tasks.append((shape, s, min(s + chunk, total)))
        return tasks

    def shell_census(
        self, norm: int, workers: int = 1, verify: bool = True
    ) -> tuple[int, bool]:
        """Count the shell by complete enumeration.

        Returns (count, all_members) where the flag reports whether every
        generated vector passed the congruence membership test.
        """
        tasks = [(shape, s, e, verify) for shape, s, e in self.census_tasks(norm)]
        if workers <= 1:
            results = [_census_chunk(t) for t in tasks]
        else:
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(workers) as pool:
                results = pool.map(_census_chunk, tasks, chunksize=4)
        count = sum(r[0] for r in results)
        ok = all(r[1] for r in results)
        return count, ok

    # -- constrained search ----------------------------------------------------------------

    def sphere_search(
        self,
        anchor: Sequence[int],
        constraints: Sequence[tuple[Sequence[int], frozenset[int] | set[int]]],
        norms: Sequence[int] = (4, 6),
    ) -> list[Point]:
        """Points on the given shells around the anchor satisfying distance
        constraints: each (point, allowed) pair restricts the scaled squared
        distance to the allowed set.  Filtering happens batch by batch, so
        memory stays proportional to the result."""
        a = np.asarray(tuple(anchor), dtype=np.int64)
        cons = [
            (np.asarray(tuple(p), dtype=np.int64), frozenset(allowed))
            for p, allowed in constraints
        ]
        found: list[Point] = []
        for norm in norms:
            for batch in self.shell_batches(norm):
                pts = batch + a
                for p, allowed in cons:
                    if not len(pts):
                        break
                    diff = pts - p
                    sq = np.einsum("ij,ij->i", diff, diff)
                    mask = np.zeros(len(pts), dtype=bool)
                    for s in allowed:
                        mask |= sq == s
                    pts = pts[mask]
                for row in pts:
                    found.append(tuple(int(v) for v in row))
        return found


_CENSUS_LATTICE: Optional[LeechLattice] = None


def _census_chunk(args) -> tuple[int, bool]:
    global _CENSUS_LATTICE
    if _CENSUS_LATTICE is None:
        _CENSUS_LATTICE = LeechLattice()
    shape, start, end, verify = args
    lat = _CENSUS_LATTICE
    count, ok = 0, True
    for batch in lat._shape_batch(shape, start, end):
        count += len(batch)
        if verify and not bool(lat.contains_batch(batch).all()):
            ok = False
    return count, ok
