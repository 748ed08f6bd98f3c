"""Symbolic names for the extensions of the chosen D6: duads, synthemes
and dryads over the six-point set {∞, 0, 1, 2, 3, 4}.

A duad is a two-point subset, written "01" or "3∞".  A syntheme is a
partition of all six points into three duads, written dot-joined in
sorted order, e.g. "01.24.3∞".  A dryad "ab|cde" names an equivalence
class of symbols: cyclic permutations after the bar, or a transposition
after the bar combined with reversal before it, give the same dryad.
"""

from __future__ import annotations

import itertools

INF = "∞"
POINTS = ("0", "1", "2", "3", "4")


def canon_duad(s: str) -> str:
    a, b = sorted(s, key=lambda ch: (ch == INF, ch))
    if a == b:
        raise ValueError(f"degenerate duad {s!r}")
    return a + b


def canon_syntheme(s: str) -> str:
    parts = sorted(canon_duad(p) for p in s.split("."))
    if len(parts) != 3 or len(set("".join(parts))) != 6:
        raise ValueError(f"not a partition into three duads: {s!r}")
    return ".".join(parts)


def dryad_spellings(s: str) -> list[str]:
    pre, post = s.split("|")
    (a, b), (c, d, e) = tuple(pre), tuple(post)
    forms = [
        (a, b, c, d, e),
        (a, b, e, c, d),
        (a, b, d, e, c),
        (b, a, e, d, c),
        (b, a, d, c, e),
        (b, a, c, e, d),
    ]
    return [f"{x0}{x1}|{x2}{x3}{x4}" for x0, x1, x2, x3, x4 in forms]


def canon_dryad(s: str) -> str:
    if sorted(s.replace("|", "")) != sorted(POINTS):
        raise ValueError(f"dryad must use 0..4 once each: {s!r}")
    return min(dryad_spellings(s))


def canon_name(s: str) -> str:
    """Canonicalize any duad / syntheme / dryad spelling."""
    if "|" in s:
        return canon_dryad(s)
    if "." in s:
        return canon_syntheme(s)
    if len(s) == 2:
        return canon_duad(s)
    return s


def dryad_parity(s: str) -> int:
    """Parity (0 even, 1 odd) of the symbol as a permutation of 0..4;
    well-defined across the equivalent spellings."""
    seq = [int(ch) for ch in canon_dryad(s).replace("|", "")]
    inversions = sum(
        1 for i, j in itertools.combinations(range(5), 2) if seq[i] > seq[j]
    )
    return inversions % 2


def all_duads() -> list[str]:
    return [a + b for a, b in itertools.combinations(POINTS, 2)]


def all_inf_duads() -> list[str]:
    return [p + INF for p in POINTS]


def all_synthemes() -> list[str]:
    out = []
    for duad in all_duads():
        rest = [p for p in POINTS if p not in duad]
        for partner in rest:
            others = [p for p in rest if p != partner]
            out.append(canon_syntheme(f"{duad}.{INF}{partner}.{others[0]}{others[1]}"))
    return sorted(set(out))


def all_dryads() -> list[str]:
    return sorted(
        {canon_dryad(f"{p[0]}{p[1]}|{p[2]}{p[3]}{p[4]}")
         for p in itertools.permutations(POINTS)}
    )


def syntheme_duads(s: str) -> list[str]:
    return canon_syntheme(s).split(".")


def synthemes_of_duad(duad: str) -> list[str]:
    duad = canon_duad(duad)
    return [s for s in all_synthemes() if duad in syntheme_duads(s)]


def dryad_duads(s: str) -> list[str]:
    """The duads joined to a dryad: its own pair plus the two ∞-duads."""
    pre = canon_dryad(s).split("|")[0]
    return [canon_duad(pre), canon_duad(INF + pre[0]), canon_duad(INF + pre[1])]


def dryad_synthemes(s: str) -> list[str]:
    """The three synthemes joined to a dryad ab|cde:
    ∞c.ad.be, ∞e.ac.bd and ∞d.ae.bc."""
    a, b, c, d, e = tuple(canon_dryad(s).replace("|", ""))
    return sorted(
        canon_syntheme(f"{INF}{x}.{a}{y}.{b}{z}")
        for x, y, z in ((c, d, e), (e, c, d), (d, e, c))
    )


def dryad_neighbors(s: str) -> list[str]:
    """The three dryads joined to ab|cde: dc|abe, ce|abd and ed|abc."""
    a, b, c, d, e = tuple(canon_dryad(s).replace("|", ""))
    return sorted(
        canon_dryad(f"{x}{y}|{a}{b}{z}")
        for x, y, z in ((d, c, e), (c, e, d), (e, d, c))
    )


def apply_permutation(name: str, perm: dict[str, str]) -> str:
    """Image of a duad/syntheme/dryad name under a permutation of 0..4."""
    mapped = "".join(
        perm.get(ch, ch) if ch not in (".", "|", INF) else ch for ch in name
    )
    return canon_name(mapped)
