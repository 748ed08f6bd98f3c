"""Coxeter diagrams as labeled graphs.

Bond labels are integers ``m >= 2`` for a dihedral angle of pi/m
(``2`` meaning orthogonal walls, drawn as no bond), or the string
constants :data:`PAR` / :data:`ULTRA` for walls that do not meet.

Diagram synthesis from a Gram matrix, recognition of the spherical and
affine types, spherical-subdiagram enumeration, ear/tail bookkeeping for
D- and E-type components, isomorphism testing and DOT export all live
here.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

import networkx as nx
from networkx.algorithms import isomorphism as nxiso

from coxpoly.field import FieldScalar

PAR = "par"
ULTRA = "ultra"

BondLabel = int | str


class NotCoxeterError(ValueError):
    """An angle is not an integral submultiple of pi (carries the pair)."""

    def __init__(self, message: str, pair: tuple | None = None):
        super().__init__(message)
        self.pair = pair


def _check_label(label: BondLabel) -> BondLabel:
    if label in (PAR, ULTRA):
        return label
    if isinstance(label, int) and label >= 2:
        return label
    raise ValueError(f"invalid bond label {label!r}")


class CoxDiagram:
    """Node set with symmetric bond labels; label 2 pairs are stored implicitly."""

    def __init__(self, nodes: Sequence[str], bonds: dict | None = None):
        self.nodes: tuple[str, ...] = tuple(str(n) for n in nodes)
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("duplicate node names")
        self._index = {n: i for i, n in enumerate(self.nodes)}
        self._bonds: dict[frozenset[str], BondLabel] = {}
        for pair, label in (bonds or {}).items():
            u, v = tuple(pair)
            self.set_label(u, v, label)

    def set_label(self, u: str, v: str, label: BondLabel) -> None:
        if u == v:
            raise ValueError("no self-bonds")
        if u not in self._index or v not in self._index:
            raise KeyError(f"unknown node in bond ({u!r}, {v!r})")
        label = _check_label(label)
        key = frozenset((u, v))
        if label == 2:
            self._bonds.pop(key, None)
        else:
            self._bonds[key] = label

    def label(self, u: str, v: str) -> BondLabel:
        if u == v:
            raise ValueError("no self-bonds")
        return self._bonds.get(frozenset((u, v)), 2)

    def bonds(self) -> Iterator[tuple[str, str, BondLabel]]:
        for key, label in self._bonds.items():
            u, v = sorted(key, key=self._index.__getitem__)
            yield u, v, label

    def neighbors(self, u: str) -> list[str]:
        return [v for v in self.nodes if v != u and self.label(u, v) != 2]

    def degree(self, u: str) -> int:
        return len(self.neighbors(u))

    def induced(self, nodes: Iterable[str]) -> CoxDiagram:
        keep = [n for n in self.nodes if n in set(nodes)]
        sub = CoxDiagram(keep)
        keepset = set(keep)
        for key, label in self._bonds.items():
            if key <= keepset:
                u, v = tuple(key)
                sub.set_label(u, v, label)
        return sub

    def components(self) -> list[frozenset[str]]:
        seen: set[str] = set()
        out = []
        for start in self.nodes:
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for v in self.neighbors(u):
                    if v not in comp:
                        comp.add(v)
                        queue.append(v)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def __len__(self) -> int:
        return len(self.nodes)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CoxDiagram)
            and self.nodes == other.nodes
            and self._bonds == other._bonds
        )

    def __hash__(self):
        return hash((self.nodes, frozenset(self._bonds.items())))

    def to_json(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "bonds": [
                [self._index[u], self._index[v], label] for u, v, label in self.bonds()
            ],
        }

    @classmethod
    def from_json(cls, data) -> CoxDiagram:
        diag = cls(data["nodes"])
        for i, j, label in data["bonds"]:
            diag.set_label(data["nodes"][i], data["nodes"][j], label)
        return diag

    def __repr__(self) -> str:
        return f"CoxDiagram({len(self.nodes)} nodes, {len(self._bonds)} bonds)"


# -- exact cosine table --------------------------------------------------------


def _cos2_table(d: int) -> dict[int, FieldScalar]:
    """Exact cos^2(pi/m) for every m realizable over Q(sqrt(d))."""
    table = {
        2: FieldScalar(0, 0, 1, d),
        3: FieldScalar(1, 0, 4, d),
        4: FieldScalar(1, 0, 2, d),
        6: FieldScalar(3, 0, 4, d),
    }
    if d == 2:
        table[8] = FieldScalar(2, 1, 4, 2)
    if d == 3:
        table[12] = FieldScalar(2, 1, 4, 3)
    if d == 5:
        table[5] = FieldScalar(3, 1, 8, 5)
        table[10] = FieldScalar(5, 1, 8, 5)
    return table


def supported_cos2(m: int, d: int = 0) -> FieldScalar:
    """cos^2(pi/m) as an exact field element, for the supported marks."""
    table = _cos2_table(d)
    if m not in table:
        raise NotCoxeterError(f"cos^2(pi/{m}) is not an element of Q(sqrt({d}))")
    return table[m]


def diagram_from_gram(
    gram: Sequence[Sequence[FieldScalar]],
    d: int = 0,
    names: Sequence[str] | None = None,
) -> CoxDiagram:
    """Coxeter diagram of a set of roots given by their Gram matrix.

    Labels come from the exact ratio q = (r_i . r_j)^2 / (r_i^2 r_j^2):
    orthogonal at q = 0, a finite mark m at q = cos^2(pi/m), parallel at
    q = 1 and ultraparallel beyond.  Any other value of q raises
    :class:`NotCoxeterError` naming the offending pair.
    """
    n = len(gram)
    names = [str(i) for i in range(n)] if names is None else list(names)
    diag = CoxDiagram(names)
    table = _cos2_table(d)
    by_value = {v: m for m, v in table.items()}
    one = FieldScalar(1, 0, 1, d)
    for i in range(n):
        if gram[i][i].sign() <= 0:
            raise NotCoxeterError(f"root {names[i]} has nonpositive norm", (names[i],))
    for i in range(n):
        for j in range(i + 1, n):
            gij = gram[i][j]
            if gij.sign() > 0:
                raise NotCoxeterError(
                    f"roots {names[i]}, {names[j]} have positive inner product",
                    (names[i], names[j]),
                )
            q = (gij * gij) / (gram[i][i] * gram[j][j])
            if q in by_value:
                diag.set_label(names[i], names[j], by_value[q])
            elif q == one:
                diag.set_label(names[i], names[j], PAR)
            elif q > one:
                diag.set_label(names[i], names[j], ULTRA)
            else:
                raise NotCoxeterError(
                    f"angle between {names[i]} and {names[j]} is not an integral "
                    f"submultiple of pi (cos^2 = {q})",
                    (names[i], names[j]),
                )
    return diag


# -- type classification -------------------------------------------------------


@dataclass(frozen=True)
class DiagramType:
    """Multiset of connected-component types."""

    components: tuple[tuple[frozenset[str], str], ...]

    @property
    def multiset(self) -> Counter:
        return Counter(t for _, t in self.components)

    @property
    def is_spherical(self) -> bool:
        return all(_is_spherical_type(t) for _, t in self.components)

    @property
    def is_affine(self) -> bool:
        return bool(self.components) and all(
            t.startswith(("A~", "B~", "C~", "D~", "E~", "F~", "G~"))
            for _, t in self.components
        )

    def has_affine_component(self) -> bool:
        return any(
            t.startswith(("A~", "B~", "C~", "D~", "E~", "F~", "G~"))
            for _, t in self.components
        )

    def component_of(self, node: str) -> tuple[frozenset[str], str]:
        for nodes, t in self.components:
            if node in nodes:
                return nodes, t
        raise KeyError(node)

    def __str__(self) -> str:
        return "+".join(sorted(t for _, t in self.components)) or "empty"


_SPHERICAL_FAMILIES = ("A", "B", "D", "E", "F", "G", "H", "I")


def _is_spherical_type(t: str) -> bool:
    return t != "Other" and t[0] in _SPHERICAL_FAMILIES and "~" not in t


def _classify_component(diag: CoxDiagram, comp: frozenset[str]) -> str:
    nodes = sorted(comp)
    n = len(nodes)
    labels = {
        frozenset((u, v)): diag.label(u, v)
        for i, u in enumerate(nodes)
        for v in nodes[i + 1 :]
        if diag.label(u, v) != 2
    }
    if any(l == ULTRA for l in labels.values()):
        return "Other"
    if any(l == PAR for l in labels.values()):
        return "A~1" if n == 2 and len(labels) == 1 else "Other"
    if n == 1:
        return "A1"
    adj = {u: [v for v in nodes if v != u and frozenset((u, v)) in labels] for u in nodes}
    deg = {u: len(adj[u]) for u in nodes}
    edge_count = len(labels)
    if n == 2:
        m = next(iter(labels.values()))
        return {3: "A2", 4: "B2", 6: "G2"}.get(m, f"I2({m})")
    if edge_count == n:  # unique cycle
        if all(d == 2 for d in deg.values()) and all(l == 3 for l in labels.values()):
            return f"A~{n - 1}"
        return "Other"
    if edge_count != n - 1:
        return "Other"
    # it is a tree from here on
    maxdeg = max(deg.values())
    if maxdeg == 2:
        return _classify_path(nodes, adj, labels, n)
    if maxdeg == 4:
        center = next(u for u in nodes if deg[u] == 4)
        if n == 5 and all(l == 3 for l in labels.values()) and deg[center] == 4:
            return "D~4"
        return "Other"
    if maxdeg > 4:
        return "Other"
    branch = [u for u in nodes if deg[u] == 3]
    if len(branch) == 1:
        return _classify_one_branch(branch[0], adj, labels, n)
    if len(branch) == 2:
        # D~n: two branch nodes, each carrying two pendant tips, all marks 3
        if any(l != 3 for l in labels.values()):
            return "Other"
        for b in branch:
            tips = [v for v in adj[b] if len(adj[v]) == 1]
            if len(tips) != 2:
                return "Other"
        return f"D~{n - 1}"
    return "Other"


def _path_order(nodes, adj) -> list[str]:
    start = next(u for u in nodes if len(adj[u]) == 1)
    order = [start]
    prev = None
    while True:
        nxt = [v for v in adj[order[-1]] if v != prev]
        if not nxt:
            return order
        prev = order[-1]
        order.append(nxt[0])


def _classify_path(nodes, adj, labels, n) -> str:
    order = _path_order(nodes, adj)
    marks = [labels[frozenset((order[i], order[i + 1]))] for i in range(n - 1)]
    marks = max(marks, marks[::-1])  # canonical reading direction
    big = sorted(m for m in marks if m != 3)
    if not big:
        return f"A{n}"
    if big == [4]:
        if marks[0] == 4:
            return f"B{n}"
        if n == 4 and marks[1] == 4:
            return "F4"
        if n == 5 and marks.index(4) in (1, 2):
            return "F~4"
        return "Other"
    if big == [4, 4]:
        return f"C~{n - 1}" if marks[0] == 4 and marks[-1] == 4 else "Other"
    if big == [5]:
        if marks[0] == 5 and n == 3:
            return "H3"
        if marks[0] == 5 and n == 4:
            return "H4"
        return "Other"
    if big == [6]:
        return "G~2" if n == 3 and marks[0] == 6 else "Other"
    return "Other"


def _classify_one_branch(branch, adj, labels, n) -> str:
    # walk the three arms off the branch point
    arms = []
    for first in adj[branch]:
        arm = [first]
        prev = branch
        while True:
            nxt = [v for v in adj[arm[-1]] if v != prev]
            if not nxt:
                break
            prev = arm[-1]
            arm.append(nxt[0])
        arms.append(arm)
    arms.sort(key=len)
    lengths = tuple(len(a) for a in arms)
    marked = {k: l for k, l in labels.items() if l != 3}
    if not marked:
        if lengths[0] == 1 and lengths[1] == 1:
            return f"D{n}"
        table = {
            (1, 2, 2): "E6",
            (1, 2, 3): "E7",
            (1, 2, 4): "E8",
            (2, 2, 2): "E~6",
            (1, 3, 3): "E~7",
            (1, 2, 5): "E~8",
        }
        return table.get(lengths, "Other")
    if len(marked) == 1 and set(marked.values()) == {4}:
        # B~n: two pendant tips at the fork, a 4 on the outermost bond of
        # the remaining arm
        (mk,) = marked
        for arm in arms:
            others = [a for a in arms if a is not arm]
            end_pair = frozenset((arm[-2] if len(arm) > 1 else branch, arm[-1]))
            if end_pair == mk and all(len(a) == 1 for a in others):
                return f"B~{n - 1}"
    return "Other"


def classify(diag: CoxDiagram) -> DiagramType:
    """Connected-component decomposition with exact type recognition."""
    comps = tuple(
        (comp, _classify_component(diag, comp)) for comp in diag.components()
    )
    return DiagramType(comps)


def is_spherical(diag: CoxDiagram) -> bool:
    return classify(diag).is_spherical


# -- spherical subdiagram enumeration -------------------------------------------


def spherical_subdiagrams(
    diag: CoxDiagram,
    type_filter: Optional[Callable[[DiagramType], bool]] = None,
) -> Iterator[frozenset[str]]:
    """Every node subset inducing a spherical diagram, lazily.

    Enumeration prunes by heredity: a non-spherical subset is never
    extended.  ``type_filter``, when given, filters the yielded subsets
    by the classification of the induced diagram without affecting the
    search.
    """

    def emit(nodes: frozenset[str]) -> Iterator[frozenset[str]]:
        if type_filter is None or type_filter(classify(diag.induced(nodes))):
            yield nodes

    def extend(current: list[str], start: int) -> Iterator[frozenset[str]]:
        for k in range(start, len(diag.nodes)):
            cand = current + [diag.nodes[k]]
            if is_spherical(diag.induced(cand)):
                yield from emit(frozenset(cand))
                yield from extend(cand, k + 1)

    yield from emit(frozenset())
    yield from extend([], 0)


# -- ears and tails --------------------------------------------------------------


def ears_tails(
    diag: CoxDiagram, comp: Iterable[str]
) -> tuple[frozenset[str], frozenset[str]]:
    """Ears and tails of a D- or E-type component.

    A tip at distance 1 from the branch point is an ear; a tip at
    maximal distance is a tail.  For D4 the three tips are both.
    """
    comp = frozenset(comp)
    sub = diag.induced(comp)
    ctype = _classify_component(sub, comp)
    if not (ctype.startswith("D") or ctype.startswith("E")) or "~" in ctype:
        raise ValueError(f"component has type {ctype}, need Dn or En")
    branch = next(u for u in sub.nodes if sub.degree(u) == 3)
    dist = {branch: 0}
    queue = deque([branch])
    while queue:
        u = queue.popleft()
        for v in sub.neighbors(u):
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    tips = [u for u in sub.nodes if sub.degree(u) == 1]
    maxdist = max(dist[t] for t in tips)
    ears = frozenset(t for t in tips if dist[t] == 1)
    tails = frozenset(t for t in tips if dist[t] == maxdist)
    return ears, tails


# -- isomorphism ------------------------------------------------------------------


def _to_nx(diag: CoxDiagram, colors: dict | None = None) -> nx.Graph:
    g = nx.Graph()
    for n in diag.nodes:
        g.add_node(n, color=None if colors is None else colors.get(n))
    for u, v, label in diag.bonds():
        g.add_edge(u, v, label=label)
    return g


def is_isomorphic(
    d1: CoxDiagram,
    d2: CoxDiagram,
    colors1: dict | None = None,
    colors2: dict | None = None,
) -> Optional[dict[str, str]]:
    """A label-preserving node bijection between diagrams, or None.

    Optional node colorings constrain the matching (a node may only map
    to a node of equal color).
    """
    g1, g2 = _to_nx(d1, colors1), _to_nx(d2, colors2)
    gm = nxiso.GraphMatcher(
        g1,
        g2,
        node_match=nxiso.categorical_node_match("color", None),
        edge_match=nxiso.categorical_edge_match("label", None),
    )
    if gm.is_isomorphic():
        return dict(gm.mapping)
    return None


def automorphism_count(diag: CoxDiagram, colors: dict | None = None) -> int:
    g = _to_nx(diag, colors)
    gm = nxiso.GraphMatcher(
        g,
        g,
        node_match=nxiso.categorical_node_match("color", None),
        edge_match=nxiso.categorical_edge_match("label", None),
    )
    return sum(1 for _ in gm.isomorphisms_iter())


# -- export ----------------------------------------------------------------------


def export_dot(diag: CoxDiagram, name: str = "coxeter") -> str:
    """DOT text with the usual styling: marks on bonds, heavy for parallel
    (rendered bold), dashed for ultraparallel."""
    lines = [f"graph {name} {{"]
    for n in diag.nodes:
        lines.append(f'  "{n}";')
    for u, v, label in diag.bonds():
        if label == PAR:
            attr = ' [style=bold]'
        elif label == ULTRA:
            attr = ' [style=dashed]'
        elif label == 3:
            attr = ""
        else:
            attr = f' [label="{label}"]'
        lines.append(f'  "{u}" -- "{v}"{attr};')
    lines.append("}")
    return "\n".join(lines)
