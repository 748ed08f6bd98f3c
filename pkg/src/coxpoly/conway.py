"""The infinite right Coxeter polyhedron on the Leech lattice and its faces.

Walls correspond to lattice points; two walls are orthogonal, joined,
parallel or ultraparallel according to the difference norm 4 / 6 / 8 /
more.  The module finds a D6 subdiagram, enumerates and names its 50
spherical extensions (duads, synthemes and dryads over {∞,0,...,4}),
builds the named sigma chain D6D4 ... D7D16 and D6D6D4, and extracts
faces as honest polyhedra in signature (25, 1) coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from coxpoly import cache, names as nm
from coxpoly.diagram import (
    CoxDiagram,
    classify,
    ears_tails,
    is_isomorphic,
    is_spherical,
)
from coxpoly.field import FieldScalar
from coxpoly.leech import LeechLattice, Point
from coxpoly.polyhedron import Face, Polyhedron, build, face_projection
from coxpoly.qspace import QSpace

D6_NODE_NAMES = ("c", "e1", "e2", "p1", "p2", "t")
_D6_JOINS = {("c", "e1"), ("c", "e2"), ("c", "p1"), ("p1", "p2"), ("p2", "t")}

CHAIN_ADJOINS = (
    "24", "30.24.1∞", "30", "12.30.4∞", "12",
    "12.34.0∞", "34", "02.34.1∞", "02", "02.13.4∞",
)


def _sq(arr: np.ndarray, p: np.ndarray) -> np.ndarray:
    d = arr - p
    return np.einsum("ij,ij->i", d, d)


class ConwayStructure:
    """Face bookkeeping for the lattice polyhedron, with disk caching."""

    def __init__(self, lattice: LeechLattice | None = None, use_cache: bool = True):
        self.lattice = lattice or LeechLattice()
        self.use_cache = use_cache

    # -- the D6 ------------------------------------------------------------------

    def _search_d6(self) -> dict[str, Point]:
        lat = self.lattice
        c: Point = (0,) * 24
        e1: Point = (5,) + (1,) * 23
        assert lat.contains(e1)
        pool = np.array(
            lat.sphere_search(c, [(e1, {32, 48})]), dtype=np.int64
        )
        d_c = np.einsum("ij,ij->i", pool, pool)
        d_e1 = _sq(pool, np.array(e1, dtype=np.int64))

        p1s = pool[(d_c == 48) & (d_e1 == 32)]
        for p1 in p1s:
            m2 = (d_c == 32) & (d_e1 == 32) & (_sq(pool, p1) == 48)
            for p2 in pool[m2]:
                m3 = (
                    (d_c == 32) & (d_e1 == 32)
                    & (_sq(pool, p1) == 32) & (_sq(pool, p2) == 48)
                )
                for t in pool[m3]:
                    m4 = (
                        (d_c == 48) & (d_e1 == 32) & (_sq(pool, p1) == 32)
                        & (_sq(pool, p2) == 32) & (_sq(pool, t) == 32)
                    )
                    e2s = pool[m4]
                    if len(e2s):
                        found = {
                            "c": c,
                            "e1": e1,
                            "e2": tuple(int(v) for v in e2s[0]),
                            "p1": tuple(int(v) for v in p1),
                            "p2": tuple(int(v) for v in p2),
                            "t": tuple(int(v) for v in t),
                        }
                        self._verify_d6(found)
                        return found
        raise RuntimeError("no D6 found, which should be impossible")

    def _verify_d6(self, d6: dict[str, Point]) -> None:
        diag = self._named_diagram(d6)
        t = classify(diag)
        assert len(t.components) == 1 and t.components[0][1] == "D6"
        ears, tails = ears_tails(diag, diag.nodes)
        assert ears == frozenset({"e1", "e2"}) and tails == frozenset({"t"})

    def _named_diagram(self, named: dict[str, Point]) -> CoxDiagram:
        items = list(named.items())
        diag = CoxDiagram([n for n, _ in items])
        for i, (u, pu) in enumerate(items):
            for v, pv in items[i + 1 :]:
                diag.set_label(u, v, self.lattice.bond(pu, pv))
        return diag

    # -- extension search -----------------------------------------------------------

    def extensions(
        self, sigma: Sequence[Point], within: Iterable[Point] | None = None
    ) -> list[Point]:
        """All lattice points extending sigma to a larger spherical diagram.

        A candidate must sit at difference norm 4 or 6 from every sigma
        point; candidates come from the shells around one anchor (or the
        supplied superset for nested sigmas) and survive an exact
        classification check.
        """
        pts = [tuple(int(v) for v in p) for p in sigma]
        if not pts:
            raise ValueError("sigma must be nonempty; the ambient polyhedron "
                             "has infinitely many walls")
        ptset = set(pts)
        if within is not None:
            cands = [
                q
                for q in within
                if q not in ptset
                and all(self.lattice.dist_sq8(q, p) in (32, 48) for p in pts)
            ]
        else:
            key = None
            if self.use_cache:
                import hashlib
                import json

                digest = hashlib.sha256(
                    json.dumps(sorted(pts)).encode()
                    + self.lattice.code.checksum.encode()
                ).hexdigest()[:24]
                key = f"extscan_{digest}"
                blob = cache.load(key)
                if blob is not None:
                    return sorted(tuple(p) for p in blob["extensions"])
            anchor = min(pts)
            constraints = [(p, {32, 48}) for p in pts if p != anchor]
            cands = self.lattice.sphere_search(anchor, constraints)
        sigma_diag = self._named_diagram({f"s{i}": p for i, p in enumerate(pts)})
        if not is_spherical(sigma_diag):
            raise ValueError("sigma is not spherical")
        out = []
        for q in cands:
            ext = CoxDiagram(list(sigma_diag.nodes) + ["?"])
            for u, v, l in sigma_diag.bonds():
                ext.set_label(u, v, l)
            for i, p in enumerate(pts):
                ext.set_label(f"s{i}", "?", self.lattice.bond(p, q))
            if is_spherical(ext):
                out.append(q)
        out = sorted(set(out))
        if within is None and self.use_cache and key is not None:
            cache.store(key, {"extensions": [list(p) for p in out]})
        return out

    # -- the fifty extensions, named ---------------------------------------------------

    @cached_property
    def fifty(self) -> "FiftySet":
        key = f"fifty_{self.lattice.code.checksum[:24]}_v1"
        if self.use_cache:
            blob = cache.load(key)
            if blob is not None:
                return FiftySet(
                    self,
                    {k: tuple(v) for k, v in blob["d6"].items()},
                    {k: tuple(v) for k, v in blob["points"].items()},
                    dict(blob["roles"]),
                )
        d6 = self._search_d6()
        points = self.extensions(list(d6.values()))
        if len(points) != 50:
            raise RuntimeError(f"expected 50 extensions of D6, got {len(points)}")
        named, roles = self._name_extensions(d6, points)
        out = FiftySet(self, d6, named, roles)
        if self.use_cache:
            cache.store(
                key,
                {
                    "d6": {k: list(v) for k, v in d6.items()},
                    "points": {k: list(v) for k, v in named.items()},
                    "roles": roles,
                },
            )
        return out

    def _roles_by_structure(
        self, d6: dict[str, Point], points: list[Point]
    ) -> dict[Point, str]:
        lat = self.lattice
        roles: dict[Point, str] = {}
        unattached = []
        for q in points:
            att = [n for n in D6_NODE_NAMES if lat.dist_sq8(d6[n], q) == 48]
            if not att:
                unattached.append(q)
            elif att == ["t"]:
                roles[q] = "infduad"
            elif len(att) == 1 and att[0] in ("e1", "e2"):
                roles[q] = "dryad"
            else:
                raise RuntimeError(f"unexpected attachment pattern {att}")
        for q in unattached:
            deg = sum(
                1 for r in unattached if r != q and lat.dist_sq8(q, r) == 48
            )
            if deg == 3:
                roles[q] = "duad"
            elif deg == 2:
                roles[q] = "syntheme"
            else:
                raise RuntimeError(f"unattached extension of join degree {deg}")
        return roles

    def _model_graph(self) -> tuple[CoxDiagram, dict[str, str]]:
        """The symbolic join graph over {∞,0..4} plus the D6 itself."""
        nodes = list(D6_NODE_NAMES) + nm.all_duads() + nm.all_inf_duads() \
            + nm.all_synthemes() + nm.all_dryads()
        diag = CoxDiagram(nodes)
        colors: dict[str, str] = {}
        for n in D6_NODE_NAMES:
            colors[n] = "ear" if n in ("e1", "e2") else n
        for u, v in _D6_JOINS:
            diag.set_label(u, v, 3)
        for d in nm.all_duads():
            colors[d] = "duad"
        for d in nm.all_inf_duads():
            colors[d] = "infduad"
            diag.set_label(d, "t", 3)
        for s in nm.all_synthemes():
            colors[s] = "syntheme"
            for d in nm.syntheme_duads(s):
                diag.set_label(s, d, 3)
        for y in nm.all_dryads():
            colors[y] = "dryad"
            for d in nm.dryad_duads(y):
                diag.set_label(y, d, 3)
            for s in nm.dryad_synthemes(y):
                diag.set_label(y, s, 3)
            for z in nm.dryad_neighbors(y):
                diag.set_label(y, z, 3)
            diag.set_label(y, "e1" if nm.dryad_parity(y) == 0 else "e2", 3)
        return diag, colors

    def _name_extensions(
        self, d6: dict[str, Point], points: list[Point]
    ) -> tuple[dict[str, Point], dict[str, str]]:
        lat = self.lattice
        roles = self._roles_by_structure(d6, points)
        ids = {f"x{i}": q for i, q in enumerate(points)}
        comp = CoxDiagram(list(D6_NODE_NAMES) + list(ids))
        comp_colors = {}
        for n in D6_NODE_NAMES:
            comp_colors[n] = "ear" if n in ("e1", "e2") else n
        for u, v in _D6_JOINS:
            comp.set_label(u, v, 3)
        for i, q in ids.items():
            comp_colors[i] = roles[q]
            for n in D6_NODE_NAMES:
                if lat.dist_sq8(d6[n], q) == 48:
                    comp.set_label(i, n, 3)
            for j, r in ids.items():
                if i < j and lat.dist_sq8(q, r) == 48:
                    comp.set_label(i, j, 3)
        model, model_colors = self._model_graph()
        mapping = is_isomorphic(model, comp, model_colors, comp_colors)
        if mapping is None:
            raise RuntimeError(
                "join structure of the 50 extensions does not match the "
                "duad/syntheme/dryad model"
            )
        named: dict[str, Point] = {}
        role_by_name: dict[str, str] = {}
        for model_name, comp_id in mapping.items():
            if model_name in D6_NODE_NAMES:
                continue
            named[model_name] = ids[comp_id]
            role_by_name[model_name] = comp_colors[comp_id]
        return named, role_by_name

    # -- chain of named sigmas -----------------------------------------------------------

    @cached_property
    def chain(self) -> dict[str, list[str]]:
        """Named sigma node lists: D6, D7, E6, E7, the D6D4 ... D7D16 ladder
        and D6D6D4; each is verified to classify to its advertised type."""
        d6n = list(D6_NODE_NAMES)
        two_inf = nm.canon_duad("∞2")
        chains: dict[str, list[str]] = {}
        chains["D6"] = d6n
        chains["D7"] = d6n + [two_inf]
        dryad0 = nm.canon_dryad("01|234")
        chains["E7"] = d6n + [dryad0]
        chains["E6"] = [n for n in chains["E7"] if n != "t"]
        chains["D6D4"] = d6n + ["23"] + nm.synthemes_of_duad("23")
        chains["D7D4"] = chains["D6D4"] + [two_inf]
        chains["D6D6"] = chains["D6D4"] + ["01", nm.canon_syntheme("01.24.3∞")]
        chains["D7D6"] = chains["D6D6"] + [two_inf]
        prev = "D7D6"
        for k, adjoin in enumerate(CHAIN_ADJOINS):
            name = f"D7D{7 + k}"
            chains[name] = chains[prev] + [nm.canon_name(adjoin)]
            prev = name
        chains["D6D6D4"] = chains["D6D6"] + ["13"] + nm.synthemes_of_duad("13")
        for name, sigma in chains.items():
            got = classify(self.fifty.diagram.induced(sigma)).multiset
            want = _expected_multiset(name)
            if got != want:
                raise RuntimeError(f"chain {name} classifies as {dict(got)}")
        return chains

    # -- faces ------------------------------------------------------------------------------

    def ambient_space(self) -> QSpace:
        eighth = FieldScalar(1, 0, 8)
        return QSpace([eighth] * 24 + [FieldScalar(2), FieldScalar(-2)], 0)

    def root_coords(self, p: Point) -> list[FieldScalar]:
        sq8 = self.lattice.sq8(p)
        if sq8 % 16:
            raise ValueError("not an even lattice point")
        n = sq8 // 16 - 1
        return [FieldScalar(int(v)) for v in p] + [
            FieldScalar(1 - n, 0, 2),
            FieldScalar(1 + n, 0, 2),
        ]

    def subpolyhedron(self, named: dict[str, Point]) -> Polyhedron:
        """A finite set of walls of the ambient polyhedron, as honest roots
        of self inner product 2 in signature (25, 1)."""
        space = self.ambient_space()
        roots = [space.vector(self.root_coords(p)) for p in named.values()]
        return build(space, roots, list(named.keys()))

    def face_context(self, sigma_names: Sequence[str]) -> tuple[Polyhedron, list[str]]:
        """The finite subpolyhedron on sigma plus all of its extensions.

        Extensions come from the named 56-point universe when sigma
        contains the D6 (heredity makes that complete), otherwise from a
        fresh shell search around sigma.
        """
        fifty = self.fifty
        sigma = list(sigma_names)
        missing = [n for n in sigma if n not in fifty.all_points]
        if missing:
            raise KeyError(f"unknown sigma nodes {missing}")
        sig_pts = [fifty.all_points[n] for n in sigma]
        named = {n: fifty.all_points[n] for n in sigma}
        if set(D6_NODE_NAMES) <= set(sigma):
            for n in fifty.extension_names(sigma):
                named[n] = fifty.all_points[n]
        else:
            fresh = 0
            for q in self.extensions(sig_pts):
                known = fifty.name_of(q)
                if known is None:
                    named[f"x{fresh}"] = q
                    fresh += 1
                else:
                    named[known] = q
        return self.subpolyhedron(named), sigma

    def face(self, sigma_names: Sequence[str]) -> Face:
        """The face below a named spherical sigma, by exact projection."""
        sub, sigma = self.face_context(sigma_names)
        return face_projection(sub, sigma)

    def chain_face(self, name: str) -> Face:
        return self.face(self.chain[name])


def _expected_multiset(name: str):
    from collections import Counter
    import re

    return Counter(
        f"{letter}{digits}" for letter, digits in re.findall(r"([A-Z])(\d+)", name)
    )


@dataclass
class FiftySet:
    """The found D6 and its 50 named spherical extensions."""

    structure: ConwayStructure
    d6: dict[str, Point]
    points: dict[str, Point]
    roles: dict[str, str]

    @cached_property
    def all_points(self) -> dict[str, Point]:
        return {**self.d6, **self.points}

    @cached_property
    def _inverse(self) -> dict[Point, str]:
        return {p: n for n, p in self.all_points.items()}

    def name_of(self, p: Point) -> Optional[str]:
        return self._inverse.get(tuple(int(v) for v in p))

    @cached_property
    def diagram(self) -> CoxDiagram:
        """Full bond labels (orthogonal / joined / parallel / ultraparallel)
        on the 56 named points."""
        return self.structure._named_diagram(self.all_points)

    def extension_names(self, sigma_names: Sequence[str]) -> list[str]:
        """Names extending a sigma that contains the D6 (complete by
        heredity: any such extension already lies among the fifty)."""
        sigma = set(sigma_names)
        out = []
        for n in self.points:
            if n in sigma:
                continue
            if is_spherical(self.diagram.induced(sigma | {n})):
                out.append(n)
        return sorted(out)

    def role_census(self) -> dict[str, int]:
        from collections import Counter

        return dict(Counter(self.roles.values()))

    def extension_role(
        self, sigma_names: Sequence[str], ext: str
    ) -> tuple[Optional[frozenset[str]], str]:
        """How an extension enlarges a sigma: the component it attaches to
        (None when unattached) and the type of the enlarged component
        ("A1" for a fresh orthogonal node)."""
        sigma = list(sigma_names)
        diag = self.diagram
        stype = classify(diag.induced(sigma))
        attached = [s for s in sigma if diag.label(s, ext) != 2]
        if not attached:
            return None, "A1"
        comp, _ = stype.component_of(attached[0])
        enlarged = classify(diag.induced(comp | {ext}))
        if len(enlarged.components) != 1:
            raise ValueError(f"extension {ext!r} attaches across components")
        return comp, enlarged.components[0][1]

    def dryads(self) -> list[str]:
        return sorted(n for n, r in self.roles.items() if r == "dryad")

    def apply_permutation(self, perm: dict[str, str]) -> dict[str, str]:
        """The induced relabeling of the 50 extension names under a
        permutation of {0,...,4}."""
        return {n: nm.apply_permutation(n, perm) for n in self.points}
