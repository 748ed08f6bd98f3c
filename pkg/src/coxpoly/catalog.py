"""Named quadratic forms and polyhedra.

The 34-wall compact polyhedron in H^6 over Z[sqrt 2] ships as embedded
root data guarded by a checksum.  Its bond table is never stored as an
input: the expected table lives in a separate fixture that computations
are compared against (see :func:`bugaenko_expected_bonds`).
"""

from __future__ import annotations

import hashlib
import json
import re
from importlib import resources

from coxpoly.field import FieldScalar
from coxpoly.polyhedron import Polyhedron, build, from_gram
from coxpoly.qspace import QSpace


class UnknownCatalogEntry(KeyError):
    pass


def _data_text(name: str) -> str:
    return resources.files("coxpoly.data").joinpath(name).read_text()


def bugaenko_root_table() -> list[list[list[int]]]:
    """The 34 x 7 table of (a, b) pairs, verified against its checksum."""
    blob = json.loads(_data_text("bugaenko_roots.json"))
    coords = blob["coords"]
    canonical = json.dumps(coords, separators=(",", ":")).encode()
    if hashlib.sha256(canonical).hexdigest() != blob["sha256"]:
        raise ValueError("embedded root table failed its checksum")
    return coords


def bugaenko_space(n: int = 6) -> QSpace:
    return QSpace([FieldScalar(-1, -1, 1, 2)] + [1] * n, 2)


def bugaenko_h6() -> Polyhedron:
    space = bugaenko_space(6)
    roots = [
        space.vector([FieldScalar(a, b, 1, 2) for a, b in row])
        for row in bugaenko_root_table()
    ]
    return build(space, roots, [str(i + 1) for i in range(len(roots))])


def bugaenko_expected_bonds() -> list[list[str]]:
    """Fixture: the expected 34 x 34 bond table, tokens 2/3/4/8/u ('x' on
    the diagonal).  Recomputations are compared cell by cell against this."""
    rows = [line.split() for line in _data_text("bugaenko_bonds.txt").splitlines()]
    assert len(rows) == 34 and all(len(r) == 34 for r in rows)
    return rows


def triangle_444() -> Polyhedron:
    two = FieldScalar(2, 0, 1, 2)
    mr = FieldScalar(0, -1, 1, 2)
    g = [[two, mr, mr], [mr, two, mr], [mr, mr, two]]
    return from_gram(g, 2, ["1", "2", "3"])


def triangle_248() -> Polyhedron:
    """Hyperbolic triangle with angles pi/2, pi/4, pi/8; all walls doubling."""
    n1 = FieldScalar(2, 1, 1, 2)
    two = FieldScalar(2, 0, 1, 2)
    zero = FieldScalar(0, 0, 1, 2)
    m = FieldScalar(-1, -1, 1, 2)
    g = [[n1, zero, m], [zero, two, m], [m, m, n1]]
    return from_gram(g, 2, ["1", "2", "3"])


_FORM_RE = re.compile(r"^form_(I|2I|bugaenko)_(\d+)_1$")


def catalog_get(name: str):
    """Look up a catalog entry by name; polyhedra and form-only spaces."""
    if name == "bugaenko_h6":
        return bugaenko_h6()
    if name == "triangle_444":
        return triangle_444()
    if name == "triangle_248":
        return triangle_248()
    m = _FORM_RE.match(name)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if n < 1:
            raise UnknownCatalogEntry(name)
        if kind == "I":
            return QSpace([-1] + [1] * n, 0)
        if kind == "2I":
            return QSpace([-2] + [1] * n, 0)
        return bugaenko_space(n)
    raise UnknownCatalogEntry(name)


def catalog_names() -> list[str]:
    return [
        "bugaenko_h6",
        "triangle_444",
        "triangle_248",
        "form_I_<n>_1",
        "form_2I_<n>_1",
        "form_bugaenko_<n>_1",
    ]
