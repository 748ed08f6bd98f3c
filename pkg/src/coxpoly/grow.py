"""Assembling polyhedra along trees of reflections.

Pairwise disjoint doubling walls generate a free product of order-2
groups whose Cayley graph is a regular tree; gluing copies of the
polyhedron over a finite subtree yields a new Coxeter polyhedron.  The
module also enumerates abstract trivalent trees (every vertex of degree
1 or 3) by canonical form, and produces families of branch-spaced
subtrees realizing each trivalent shape inside the Cayley tree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from coxpoly.diagram import PAR, ULTRA
from coxpoly.polyhedron import Polyhedron, build, doubling_walls
from coxpoly.qspace import projective_key

Word = tuple[int, ...]


class TreeError(ValueError):
    pass


@dataclass(frozen=True)
class DoublingTree:
    """A finite subtree of the Cayley tree of a free product of
    reflections, stored as reduced words with no immediate repetition."""

    k: int
    words: frozenset[Word]

    def __post_init__(self):
        if () not in self.words:
            raise TreeError("tree must contain the identity vertex")
        for w in self.words:
            if any(a == b for a, b in zip(w, w[1:])):
                raise TreeError(f"word {w} is not reduced")
            if any(g < 0 or g >= self.k for g in w):
                raise TreeError(f"word {w} uses an unknown generator")
            if w and w[:-1] not in self.words:
                raise TreeError(f"word {w} is disconnected from the root")

    def __len__(self) -> int:
        return len(self.words)

    def sorted_words(self) -> list[Word]:
        return sorted(self.words, key=lambda w: (len(w), w))

    def edges(self) -> Iterator[tuple[Word, Word, int]]:
        for w in self.sorted_words():
            if w:
                yield w[:-1], w, w[-1]

    @classmethod
    def path(cls, k: int, length: int) -> DoublingTree:
        """The path with `length` vertices alternating the first two
        generators (a single vertex needs no generator at all)."""
        if length < 1:
            raise TreeError("need at least one vertex")
        if length > 1 and k < 2:
            raise TreeError("paths need at least two generators")
        words: list[Word] = [()]
        for i in range(1, length):
            words.append(words[-1] + (0 if i % 2 == 1 else 1,))
        return cls(k, frozenset(words))

    @classmethod
    def single(cls, k: int) -> DoublingTree:
        return cls(k, frozenset({()}))

    def abstract(self) -> "AbstractTree":
        idx = {w: i for i, w in enumerate(self.sorted_words())}
        return AbstractTree(
            frozenset((idx[p], idx[w]) for p, w, _ in self.edges())
        )

    def to_json(self) -> dict:
        order = self.sorted_words()
        idx = {w: i for i, w in enumerate(order)}
        parents = [-1] + [idx[w[:-1]] for w in order[1:]]
        gens = [None] + [w[-1] for w in order[1:]]
        return {"k": self.k, "parents": parents, "gens": gens}

    @classmethod
    def from_json(cls, data) -> DoublingTree:
        parents, gens = data["parents"], data["gens"]
        words: list[Word] = [None] * len(parents)  # type: ignore[list-item]
        for i, (p, g) in enumerate(zip(parents, gens)):
            words[i] = () if p < 0 else words[p] + (int(g),)
        return cls(int(data["k"]), frozenset(words))


@dataclass(frozen=True)
class AbstractTree:
    """Unrooted tree on vertices 0..n-1 with a relabeling-invariant
    canonical form."""

    edge_set: frozenset[tuple[int, int]]

    @cached_property
    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {}
        if not self.edge_set:
            return {0: []}
        for u, v in self.edge_set:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        return adj

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @cached_property
    def canonical_form(self) -> str:
        return _canonical_form(self.adjacency)

    def degrees(self) -> list[int]:
        return sorted(len(v) for v in self.adjacency.values())


def _encode(adj, v, parent) -> str:
    return "(" + "".join(sorted(_encode(adj, u, v) for u in adj[v] if u != parent)) + ")"


def _centroids(adj) -> list[int]:
    n = len(adj)
    if n == 1:
        return [next(iter(adj))]
    degree = {v: len(ns) for v, ns in adj.items()}
    leaves = [v for v, d in degree.items() if d <= 1]
    removed = len(leaves)
    while removed < n:
        nxt = []
        for leaf in leaves:
            for u in adj[leaf]:
                degree[u] -= 1
                if degree[u] == 1:
                    nxt.append(u)
        degree.update({leaf: 0 for leaf in leaves})
        if removed + len(nxt) >= n:
            return nxt if len(nxt) <= 2 else nxt[:2]
        removed += len(nxt)
        leaves = nxt
    return leaves


def _canonical_form(adj) -> str:
    cents = _centroids(adj)
    if len(cents) == 1:
        return _encode(adj, cents[0], None)
    a, b = cents
    return "(" + "".join(sorted((_encode(adj, a, b), _encode(adj, b, a)))) + ")"


# -- gluing copies along a tree --------------------------------------------------------


def _check_walls(poly: Polyhedron, walls: Sequence[str]) -> None:
    dw = set(doubling_walls(poly))
    for w in walls:
        if w not in dw:
            raise ValueError(f"wall {w!r} is not a doubling wall")
    for u, v in itertools.combinations(walls, 2):
        if poly.label(u, v) not in (PAR, ULTRA):
            raise ValueError(f"walls {u!r} and {v!r} meet; they must be disjoint")


def assemble_copies(
    poly: Polyhedron, walls: Sequence[str], tree: DoublingTree
) -> dict[Word, list]:
    """Root sets of every copy, keyed by tree word.

    The copy at a word equals the parent copy reflected across the parent's
    image of the shared wall; copies keep the original root order.
    """
    if tree.k != len(walls):
        raise TreeError("tree valence must match the number of walls")
    _check_walls(poly, walls)
    wall_idx = [poly.names.index(w) for w in walls]
    copies: dict[Word, list] = {(): list(poly.roots)}
    for parent, w, g in tree.edges():
        mirror = copies[parent][wall_idx[g]]
        copies[w] = [poly.space.reflect(mirror, r) for r in copies[parent]]
    return copies


def tree_double(
    poly: Polyhedron,
    walls: Sequence[str],
    tree: DoublingTree,
    max_walls: int = 4000,
) -> Polyhedron:
    """The union of copies of the polyhedron over a subtree of the Cayley
    tree of the wall reflections.

    Walls shared between adjacent copies become interior and are dropped;
    the rest are deduplicated projectively.  Copy walls are named by
    appending ``^wall`` per reflection step.
    """
    copies = assemble_copies(poly, walls, tree)
    wall_idx = [poly.names.index(w) for w in walls]
    interior: dict[Word, set[int]] = {w: set() for w in copies}
    for parent, w, g in tree.edges():
        interior[parent].add(wall_idx[g])
        interior[w].add(wall_idx[g])
    kept: dict[tuple, tuple] = {}
    for w in tree.sorted_words():
        suffix = "".join(f"^{walls[g]}" for g in w)
        for i, name in enumerate(poly.names):
            if i in interior[w]:
                continue
            root = copies[w][i]
            kept.setdefault(projective_key(root), (root, f"{name}{suffix}"))
    if len(kept) > max_walls:
        raise ValueError(
            f"assembled polyhedron would have {len(kept)} walls "
            f"(budget {max_walls})"
        )
    roots, names = zip(*kept.values())
    return build(poly.space, list(roots), list(names))


def tree_double_wall_count(
    poly: Polyhedron, walls: Sequence[str], tree: DoublingTree
) -> int:
    """Closed wall-count formula for the tree double: every edge buries one
    shared hyperplane (removed from both incident copies), and each wall
    orthogonal to a gluing wall coincides with its mirror image."""
    orth = {
        w: sum(1 for v in poly.names if v != w and poly.label(w, v) == 2)
        for w in walls
    }
    edges = list(tree.edges())
    return (
        len(tree) * len(poly)
        - 2 * len(edges)
        - sum(orth[walls[g]] for _, _, g in edges)
    )


def index_subgroup(poly: Polyhedron, walls: Sequence[str], index: int) -> Polyhedron:
    """A fundamental domain for an index-`index` reflection subgroup:
    the tree double over a canonical path with that many vertices."""
    if index < 1:
        raise ValueError("index must be positive")
    if index == 1:
        return poly
    if len(walls) < 2:
        raise ValueError("need at least two disjoint doubling walls")
    tree = DoublingTree.path(len(walls), index)
    return tree_double(poly, walls, tree)


# -- trivalent tree enumeration ----------------------------------------------------------


def _grow_leaf(adj: dict[int, list[int]]) -> Iterator[dict[int, list[int]]]:
    """All trees obtained by subdividing an edge and hanging a new leaf."""
    n = len(adj)
    seen_edges = {tuple(sorted((u, v))) for u in adj for v in adj[u]}
    for u, v in sorted(seen_edges):
        mid, leaf = n, n + 1
        new = {x: list(ys) for x, ys in adj.items()}
        new[u].remove(v)
        new[v].remove(u)
        new[u].append(mid)
        new[v].append(mid)
        new[mid] = [u, v, leaf]
        new[leaf] = [mid]
        yield new


def trivalent_trees(edge_count: int) -> list[AbstractTree]:
    """All isomorphism classes of trees with the given number of edges and
    every vertex of degree 1 or 3, by canonical-form growth."""
    if edge_count < 1 or edge_count % 2 == 0:
        return []
    level = [{0: [1], 1: [0]}]  # the single edge
    e = 1
    while e < edge_count:
        grown: dict[str, dict[int, list[int]]] = {}
        for adj in level:
            for new in _grow_leaf(adj):
                form = _canonical_form(new)
                grown.setdefault(form, new)
        level = [grown[f] for f in sorted(grown)]
        e += 2
    out = []
    for adj in level:
        edges = frozenset(
            (min(u, v), max(u, v)) for u in adj for v in adj[u]
        )
        out.append(AbstractTree(edges))
    return out


def count_trivalent_trees(max_edges: int) -> dict[int, int]:
    """Isomorphism-class counts of degree-{1,3} trees per edge count.

    Counts at even edge counts are structurally zero (the degree
    constraint forces an odd number of edges).
    """
    if max_edges < 1:
        raise ValueError("max_edges must be at least 1")
    counts = {}
    for e in range(1, max_edges + 1):
        counts[e] = len(trivalent_trees(e)) if e % 2 == 1 else 0
    return counts


def cumulative_trivalent_counts(max_edges: int) -> dict[int, int]:
    """Number of classes with at most E edges, for each odd E."""
    per = count_trivalent_trees(max_edges)
    out, running = {}, 0
    for e in range(1, max_edges + 1, 2):
        running += per[e]
        out[e] = running
    return out


# -- branch-spaced subtrees -----------------------------------------------------------------


def _subdivide(tree: AbstractTree, parts: int) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {v: [] for v in tree.adjacency}
    nxt = max(adj) + 1
    for u, v in sorted(tree.edge_set):
        chain = [u] + list(range(nxt, nxt + parts - 1)) + [v]
        nxt += parts - 1
        for a, b in zip(chain, chain[1:]):
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
    return adj


def _extend_path(adj: dict[int, list[int]], extra: int) -> dict[int, list[int]]:
    if extra <= 0:
        return adj
    leaf = min(v for v, ns in adj.items() if len(ns) == 1)
    nxt = max(adj) + 1
    out = {v: list(ns) for v, ns in adj.items()}
    prev = leaf
    for _ in range(extra):
        out[prev].append(nxt)
        out[nxt] = [prev]
        prev = nxt
        nxt += 1
    return out


def _embed(adj: dict[int, list[int]], k: int) -> DoublingTree:
    root = min(adj)
    words: dict[int, Word] = {root: ()}
    stack = [(root, None, None)]
    while stack:
        v, parent, incoming = stack.pop()
        free = [g for g in range(k) if g != incoming]
        children = [u for u in adj[v] if u != parent]
        if len(children) > len(free):
            raise TreeError("tree degree exceeds the Cayley-tree valence")
        for child, g in zip(children, free):
            words[child] = words[v] + (g,)
            stack.append((child, v, g))
    return DoublingTree(k, frozenset(words.values()))


def branch_spaced_subtrees(k: int, vertices: int, spacing: int) -> list[DoublingTree]:
    """Pairwise non-isomorphic subtrees of the k-regular tree with the
    given vertex count whose branch points sit at distance >= spacing.

    One subtree per trivalent shape with at most (vertices-1)//spacing
    edges, realized by subdividing every edge into `spacing` parts and
    padding a leaf path up to the vertex count; plus the plain path.
    """
    if k < 3:
        raise ValueError("need valence at least 3")
    if spacing < 1 or vertices < 1:
        raise ValueError("spacing and vertex count must be positive")
    family = [DoublingTree.path(k, vertices)]
    max_edges = (vertices - 1) // spacing
    for e in range(3, max_edges + 1, 2):
        for shape in trivalent_trees(e):
            adj = _subdivide(shape, spacing)
            adj = _extend_path(adj, vertices - len(adj))
            family.append(_embed(adj, k))
    for tree in family:
        if len(tree) != vertices:
            raise TreeError("padding failed to reach the vertex count")
    return family
