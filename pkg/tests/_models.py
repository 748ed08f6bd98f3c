"""Standard root-system models shared by the test modules."""

from __future__ import annotations

from coxpoly.field import FieldScalar
from coxpoly.diagram import CoxDiagram, PAR
from coxpoly.qspace import QSpace


def _unit(space, entries):
    return space.vector(entries)


def a_n(n: int):
    space = QSpace([1] * (n + 1), 0)
    roots = []
    for i in range(n):
        row = [0] * (n + 1)
        row[i], row[i + 1] = 1, -1
        roots.append(space.vector(row))
    return space, roots


def b_n(n: int):
    space = QSpace([1] * n, 0)
    roots = []
    for i in range(n - 1):
        row = [0] * n
        row[i], row[i + 1] = 1, -1
        roots.append(space.vector(row))
    short = [0] * n
    short[n - 1] = 1
    roots.append(space.vector(short))
    return space, roots


def d_n(n: int):
    space = QSpace([1] * n, 0)
    roots = []
    for i in range(n - 1):
        row = [0] * n
        row[i], row[i + 1] = 1, -1
        roots.append(space.vector(row))
    last = [0] * n
    last[n - 2], last[n - 1] = 1, 1
    roots.append(space.vector(last))
    return space, roots


def e_n(n: int):
    """E6, E7 or E8 as the first n Bourbaki simple roots of E8."""
    space = QSpace([1] * 8, 0)
    half = FieldScalar(1, 0, 2)
    rows = [
        [half, -half, -half, -half, -half, -half, -half, half],
        [1, 1, 0, 0, 0, 0, 0, 0],
        [-1, 1, 0, 0, 0, 0, 0, 0],
        [0, -1, 1, 0, 0, 0, 0, 0],
        [0, 0, -1, 1, 0, 0, 0, 0],
        [0, 0, 0, -1, 1, 0, 0, 0],
        [0, 0, 0, 0, -1, 1, 0, 0],
        [0, 0, 0, 0, 0, -1, 1, 0],
    ]
    return space, [space.vector(r) for r in rows[:n]]


def f4():
    space = QSpace([1] * 4, 0)
    half = FieldScalar(1, 0, 2)
    rows = [
        [0, 1, -1, 0],
        [0, 0, 1, -1],
        [0, 0, 0, 1],
        [half, -half, -half, -half],
    ]
    return space, [space.vector(r) for r in rows]


def g2_gram():
    two = FieldScalar(2)
    return [[two, FieldScalar(-3)], [FieldScalar(-3), FieldScalar(6)]]


def h_n(n: int):
    """H3 or H4 over Q(sqrt 5), realized from the Gram matrix."""
    phi = FieldScalar(1, 1, 2, 5)
    two = FieldScalar(2, 0, 1, 5)
    mone = FieldScalar(-1, 0, 1, 5)
    zero = FieldScalar(0, 0, 1, 5)
    g = [[zero] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = two
    g[0][1] = g[1][0] = -phi
    for i in range(1, n - 1):
        g[i][i + 1] = g[i + 1][i] = mone
    return g


def i2_gram(m: int):
    """A rank-2 Gram matrix realizing the dihedral angle pi/m exactly."""
    if m == 5:
        phi = FieldScalar(1, 1, 2, 5)
        return [[FieldScalar(2, 0, 1, 5), -phi], [-phi, FieldScalar(2, 0, 1, 5)]]
    if m == 8:
        return [
            [FieldScalar(2, 0, 1, 2), FieldScalar(-1, -1, 1, 2)],
            [FieldScalar(-1, -1, 1, 2), FieldScalar(2, 1, 1, 2)],
        ]
    if m == 10:
        return [
            [FieldScalar(2, 0, 1, 5), FieldScalar(-5, -1, 2, 5)],
            [FieldScalar(-5, -1, 2, 5), FieldScalar(5, 1, 1, 5)],
        ]
    if m == 12:
        return [
            [FieldScalar(2, 0, 1, 3), FieldScalar(-2, -1, 1, 3)],
            [FieldScalar(-2, -1, 1, 3), FieldScalar(4, 2, 1, 3)],
        ]
    raise ValueError(m)


def path_diagram(marks, prefix="n"):
    """A path with the given bond marks."""
    n = len(marks) + 1
    diag = CoxDiagram([f"{prefix}{i}" for i in range(n)])
    for i, m in enumerate(marks):
        diag.set_label(f"{prefix}{i}", f"{prefix}{i + 1}", m)
    return diag


def cycle_diagram(n, mark=3):
    diag = CoxDiagram([f"c{i}" for i in range(n)])
    for i in range(n):
        diag.set_label(f"c{i}", f"c{(i + 1) % n}", mark)
    return diag


def branched_diagram(arms, marks=None):
    """A tree with one branch point and arms of the given lengths."""
    names = ["b"]
    diag_edges = []
    for ai, length in enumerate(arms):
        prev = "b"
        for k in range(length):
            node = f"a{ai}_{k}"
            names.append(node)
            diag_edges.append((prev, node))
            prev = node
    diag = CoxDiagram(names)
    for u, v in diag_edges:
        diag.set_label(u, v, 3)
    for pair, m in (marks or {}).items():
        diag.set_label(pair[0], pair[1], m)
    return diag


def affine_a1():
    diag = CoxDiagram(["p", "q"])
    diag.set_label("p", "q", PAR)
    return diag


def d_tilde(n):
    """Affine D~n: two forks joined by a path (n+1 nodes); D~4 is a star."""
    if n == 4:
        diag = CoxDiagram(["c", "t0", "t1", "t2", "t3"])
        for t in ("t0", "t1", "t2", "t3"):
            diag.set_label("c", t, 3)
        return diag
    names = ["l0", "l1"] + [f"p{i}" for i in range(n - 3)] + ["r0", "r1"]
    diag = CoxDiagram(names)
    spine = [f"p{i}" for i in range(n - 3)]
    diag.set_label("l0", spine[0], 3)
    diag.set_label("l1", spine[0], 3)
    for a, b in zip(spine, spine[1:]):
        diag.set_label(a, b, 3)
    diag.set_label("r0", spine[-1], 3)
    diag.set_label("r1", spine[-1], 3)
    return diag


def b_tilde(n):
    """Affine B~n: fork at one end, mark 4 at the other (n+1 nodes)."""
    names = ["l0", "l1"] + [f"p{i}" for i in range(n - 1)]
    diag = CoxDiagram(names)
    spine = [f"p{i}" for i in range(n - 1)]
    diag.set_label("l0", spine[0], 3)
    diag.set_label("l1", spine[0], 3)
    for a, b in zip(spine, spine[1:]):
        diag.set_label(a, b, 3)
    diag.set_label(spine[-2] if len(spine) > 1 else "l0", spine[-1], 4)
    return diag
