"""Coxeter polyhedra given by simple roots.

A polyhedron is a quadratic space plus an ordered list of positive-norm
roots with pairwise nonpositive inner products; the Coxeter diagram is
derived and cached at build time.  On top of that sit the doubling
construction (reflecting across a wall all of whose angles are even
submultiples of pi) and face extraction, computed two independent ways:
exact orthogonal projection, and the combinatorial angle rules driven
purely by the diagram.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from coxpoly.diagram import (
    PAR,
    ULTRA,
    CoxDiagram,
    NotCoxeterError,
    classify,
    diagram_from_gram,
    is_spherical,
)
from coxpoly.field import FieldScalar
from coxpoly.qspace import QSpace, QVector, projective_key


class HypothesisError(ValueError):
    """The structural hypotheses of a face rule are violated."""


class Polyhedron:
    """Immutable set of simple roots with its derived Coxeter diagram."""

    def __init__(self, space: QSpace, roots: Sequence[QVector], names: Sequence[str],
                 diagram: CoxDiagram):
        self.space = space
        self.roots = tuple(roots)
        self.names = tuple(names)
        self.diagram = diagram
        self._index = {n: i for i, n in enumerate(self.names)}

    @property
    def walls(self) -> tuple[str, ...]:
        return self.names

    def root_of(self, name: str) -> QVector:
        return self.roots[self._index[name]]

    def label(self, u: str, v: str):
        return self.diagram.label(u, v)

    def __len__(self) -> int:
        return len(self.roots)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polyhedron)
            and self.space == other.space
            and self.roots == other.roots
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.space, self.roots))

    def to_json(self) -> dict:
        return {
            "space": self.space.to_json(),
            "roots": [r.to_json() for r in self.roots],
            "names": list(self.names),
        }

    @classmethod
    def from_json(cls, data) -> Polyhedron:
        space = QSpace.from_json(data["space"])
        roots = [QVector.from_json(r, space.d) for r in data["roots"]]
        return build(space, roots, data.get("names"))

    def __repr__(self) -> str:
        return f"Polyhedron({len(self.roots)} walls, dim {self.space.dim}, d={self.space.d})"


def build(
    space: QSpace, roots: Sequence[QVector], names: Sequence[str] | None = None
) -> Polyhedron:
    """Validate roots as simple roots and derive the diagram.

    Raises :class:`NotCoxeterError` on a nonpositive-norm root, a positive
    off-diagonal inner product, or an angle that is not an integral
    submultiple of pi.
    """
    roots = [space.vector(r.coords) if not isinstance(r, QVector) else r for r in roots]
    if names is None:
        names = [str(i + 1) for i in range(len(roots))]
    names = [str(n) for n in names]
    gram = space.gram(roots)
    diagram = diagram_from_gram(gram, space.d, names)
    return Polyhedron(space, roots, names, diagram)


def from_gram(
    gram: Sequence[Sequence[FieldScalar]],
    d: int = 0,
    names: Sequence[str] | None = None,
) -> Polyhedron:
    """Realize a Gram matrix as explicit roots via exact LDL^T factorization.

    Requires nonzero leading principal minors (true for the small
    catalog examples this backs).
    """
    n = len(gram)
    zero = FieldScalar(0, 0, 1, d)
    low = [[zero] * n for _ in range(n)]
    diag: list[FieldScalar] = []
    for j in range(n):
        s = gram[j][j]
        for k in range(j):
            s = s - low[j][k] * low[j][k] * diag[k]
        if s.is_zero():
            raise ValueError("zero pivot: leading minors must be nonzero")
        diag.append(s)
        low[j][j] = FieldScalar(1, 0, 1, d)
        for i in range(j + 1, n):
            t = gram[i][j]
            for k in range(j):
                t = t - low[i][k] * low[j][k] * diag[k]
            low[i][j] = t / s
    space = QSpace(diag, d)
    roots = [space.vector(low[i]) for i in range(n)]
    return build(space, roots, names)


# -- doubling --------------------------------------------------------------------


def doubling_walls(poly: Polyhedron) -> list[str]:
    """Walls whose angles with every wall they meet are even submultiples of pi."""
    out = []
    for w in poly.names:
        ok = True
        for v in poly.names:
            if v == w:
                continue
            label = poly.label(w, v)
            if isinstance(label, int) and label % 2 != 0:
                ok = False
                break
        if ok:
            out.append(w)
    return out


def _disjoint(poly: Polyhedron, u: str, v: str) -> bool:
    return poly.label(u, v) in (PAR, ULTRA)


def is_redoublable(poly: Polyhedron) -> Optional[tuple[str, str]]:
    """A pair of doubling walls that do not meet, or None."""
    dw = doubling_walls(poly)
    for u, v in itertools.combinations(dw, 2):
        if _disjoint(poly, u, v):
            return (u, v)
    return None


def disjoint_doubling_triple(poly: Polyhedron) -> Optional[tuple[str, str, str]]:
    """Three pairwise non-meeting doubling walls, or None (exhaustive)."""
    dw = doubling_walls(poly)
    for u, v, w in itertools.combinations(dw, 3):
        if _disjoint(poly, u, v) and _disjoint(poly, u, w) and _disjoint(poly, v, w):
            return (u, v, w)
    return None


def reflected_name(name: str, wall: str) -> str:
    """Name of the mirror image of ``name`` across ``wall``."""
    return f"{name}^{wall}"


def double(poly: Polyhedron, wall: str) -> Polyhedron:
    """The union of the polyhedron and its reflection across a doubling wall.

    The root set keeps every wall other than ``wall`` plus the reflections
    of the walls that meet it non-orthogonally, deduplicated up to
    positive scaling.  Mirror walls are named ``name^wall``.
    """
    if wall not in poly.names:
        raise KeyError(f"unknown wall {wall!r}")
    if wall not in doubling_walls(poly):
        raise ValueError(f"wall {wall!r} is not a doubling wall")
    others = [v for v in poly.names if v != wall]
    if all(poly.label(wall, v) == 2 for v in others):
        raise ValueError(
            f"wall {wall!r} is orthogonal to every other wall; "
            "its mirror copy coincides with the original"
        )
    rw = poly.root_of(wall)
    kept: dict[tuple, tuple[QVector, str]] = {}
    for v in others:
        r = poly.root_of(v)
        kept.setdefault(projective_key(r), (r, v))
    for v in others:
        if poly.label(wall, v) == 2:
            continue
        r = poly.space.reflect(rw, poly.root_of(v))
        kept.setdefault(projective_key(r), (r, reflected_name(v, wall)))
    roots, names = zip(*kept.values())
    return build(poly.space, list(roots), list(names))


def double_wall_count(poly: Polyhedron, wall: str) -> int:
    """Predicted wall count of the double: every wall except the doubling
    wall appears once, and each wall meeting it non-orthogonally gains a
    mirror copy."""
    n = len(poly)
    orth = sum(1 for v in poly.names if v != wall and poly.label(wall, v) == 2)
    return 2 * (n - 1) - orth


# -- faces -----------------------------------------------------------------------


def spherical_extensions(poly_or_diagram, sigma: Iterable[str]) -> list[str]:
    """Nodes extending sigma to a larger spherical diagram, in node order."""
    diag = (
        poly_or_diagram.diagram
        if isinstance(poly_or_diagram, Polyhedron)
        else poly_or_diagram
    )
    sigma = set(sigma)
    if not is_spherical(diag.induced(sigma)):
        raise HypothesisError("sigma is not spherical")
    return [
        a
        for a in diag.nodes
        if a not in sigma and is_spherical(diag.induced(sigma | {a}))
    ]


@dataclass(frozen=True)
class Face:
    """Result of projecting a polyhedron onto a face.

    ``polyhedron`` is None when some projected angle fails to be an
    integral submultiple of pi; the offending wall pairs are then listed
    in ``bad_pairs``.
    """

    space: QSpace
    roots: tuple[QVector, ...]
    names: tuple[str, ...]
    polyhedron: Optional[Polyhedron]
    bad_pairs: tuple[tuple[str, str], ...] = field(default_factory=tuple)

    @property
    def is_coxeter(self) -> bool:
        return self.polyhedron is not None

    @property
    def diagram(self) -> Optional[CoxDiagram]:
        return self.polyhedron.diagram if self.polyhedron else None


def face_projection(poly: Polyhedron, sigma: Iterable[str]) -> Face:
    """The face of the polyhedron below a spherical subdiagram, by projection.

    Walls are the spherical extensions of sigma; their roots are the
    components of the original roots orthogonal to sigma's span,
    rewritten in an exact diagonalizing basis of that complement.
    """
    sigma = list(dict.fromkeys(sigma))
    exts = spherical_extensions(poly, sigma)
    span = [poly.root_of(s) for s in sigma]
    space = poly.space
    comp_basis = space.orth_complement_basis(span)
    obasis = space.orthogonal_basis(comp_basis)
    new_space = QSpace([norm for _, norm in obasis], space.d)
    new_roots = []
    for name in exts:
        p = space.orth_project(span, poly.root_of(name))
        coords = [space.inner(p, b) / bn for b, bn in obasis]
        new_roots.append(new_space.vector(coords))
    bad: list[tuple[str, str]] = []
    gram = new_space.gram(new_roots)
    for i in range(len(exts)):
        for j in range(i + 1, len(exts)):
            try:
                diagram_from_gram(
                    [[gram[i][i], gram[i][j]], [gram[j][i], gram[j][j]]], space.d
                )
            except NotCoxeterError:
                bad.append((exts[i], exts[j]))
    if bad:
        return Face(new_space, tuple(new_roots), tuple(exts), None, tuple(bad))
    return Face(
        new_space,
        tuple(new_roots),
        tuple(exts),
        build(new_space, new_roots, exts),
    )


def _attachment(diag: CoxDiagram, sigma: set[str], node: str) -> Optional[str]:
    """The unique sigma node that ``node`` is joined to (checked single)."""
    joined = [s for s in sigma if diag.label(node, s) != 2]
    if not joined:
        return None
    if len(joined) > 1 or diag.label(node, joined[0]) != 3:
        raise HypothesisError(
            f"extension {node!r} must attach to sigma by at most one single bond"
        )
    return joined[0]


def _check_face_hypotheses(diag: CoxDiagram, sigma: set[str]):
    stype = classify(diag.induced(sigma))
    if not stype.is_spherical:
        raise HypothesisError("sigma is not spherical")
    for _, t in stype.components:
        if t[0] == "A" or t == "D5":
            raise HypothesisError(f"sigma has a forbidden component of type {t}")
    return stype


def face_combinatorial(poly_or_diagram, sigma: Iterable[str]) -> CoxDiagram:
    """The face diagram computed purely from the ambient diagram.

    Requires sigma spherical with no A-type or D5 component.  Bond labels
    follow the angle transfer rules for attached extensions; non-meeting
    pairs are refined to parallel exactly when adjoining both walls to
    sigma produces an affine component, else ultraparallel.
    """
    diag = (
        poly_or_diagram.diagram
        if isinstance(poly_or_diagram, Polyhedron)
        else poly_or_diagram
    )
    sigma = set(sigma)
    stype = _check_face_hypotheses(diag, sigma)
    exts = spherical_extensions(diag, sigma)
    attach = {a: _attachment(diag, sigma, a) for a in exts}
    face = CoxDiagram(exts)
    for i, a in enumerate(exts):
        for b in exts[i + 1 :]:
            face.set_label(a, b, _face_label(diag, sigma, stype, attach, a, b))
    return face


def _face_label(diag, sigma, stype, attach, a, b):
    lab = diag.label(a, b)
    att_a, att_b = attach[a], attach[b]

    def no_meet():
        union = classify(diag.induced(sigma | {a, b}))
        return PAR if union.has_affine_component() else ULTRA

    if att_a is None and att_b is None:
        return lab
    if att_a is None or att_b is None:
        comp, _ = stype.component_of(att_a or att_b)
        if lab == 2:
            return 2
        if lab == 3:
            t = _single_type(diag, comp | {a, b})
            if t is not None and (
                (t[0] in "BD" and "~" not in t) or t in ("E8", "H4")
            ):
                return {"E8": 6, "H4": 10}.get(t, 4)
        return no_meet()
    comp_a, _ = stype.component_of(att_a)
    comp_b, _ = stype.component_of(att_b)
    if comp_a != comp_b:
        return 2 if lab == 2 else no_meet()
    if lab == 2:
        t = _single_type(diag, comp_a | {a, b})
        if t == "E6":
            return 3
        if t in ("E8", "F4"):
            return 4
    return no_meet()


def _single_type(diag: CoxDiagram, nodes: frozenset[str] | set[str]) -> Optional[str]:
    parts = classify(diag.induced(nodes)).components
    if len(parts) != 1:
        return None
    return parts[0][1]


# -- doubling-wall prediction ------------------------------------------------------


@dataclass(frozen=True)
class DoublingPrediction:
    """Doubling walls of a face predicted from attachment data alone."""

    walls: tuple[str, ...]
    disjoint_pairs: tuple[tuple[str, str], ...]
    meeting_pairs: tuple[tuple[str, str], ...]


def face_doubling_walls_cor(poly_or_diagram, sigma: Iterable[str]) -> DoublingPrediction:
    """Predicted doubling walls: extensions attached to a D(n>=6), E6 or E7
    component.  Two such extensions of the same component give disjoint
    walls, except when adjoining both enlarges a D6 to E8 (those meet)."""
    diag = (
        poly_or_diagram.diagram
        if isinstance(poly_or_diagram, Polyhedron)
        else poly_or_diagram
    )
    sigma = set(sigma)
    stype = _check_face_hypotheses(diag, sigma)
    exts = spherical_extensions(diag, sigma)
    attach = {a: _attachment(diag, sigma, a) for a in exts}
    walls = []
    comp_of = {}
    for a in exts:
        if attach[a] is None:
            continue
        comp, t = stype.component_of(attach[a])
        good = t in ("E6", "E7") or (
            t[0] == "D" and "~" not in t and int(t[1:]) >= 6
        )
        if good:
            walls.append(a)
            comp_of[a] = (comp, t)
    disjoint, meeting = [], []
    for u, v in itertools.combinations(walls, 2):
        if comp_of[u][0] != comp_of[v][0]:
            continue
        comp, t = comp_of[u]
        if t == "D6" and _single_type(diag, comp | {u, v}) == "E8":
            meeting.append((u, v))
        else:
            disjoint.append((u, v))
    return DoublingPrediction(tuple(walls), tuple(disjoint), tuple(meeting))
