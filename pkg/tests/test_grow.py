"""Tree doubling, trivalent-tree counting, branch-spaced families."""

from __future__ import annotations

import pytest

from coxpoly.catalog import bugaenko_h6
from coxpoly.grow import (
    AbstractTree,
    DoublingTree,
    TreeError,
    assemble_copies,
    branch_spaced_subtrees,
    count_trivalent_trees,
    cumulative_trivalent_counts,
    index_subgroup,
    tree_double,
    tree_double_wall_count,
    trivalent_trees,
)
from coxpoly.polyhedron import double, doubling_walls, is_redoublable


@pytest.fixture(scope="module")
def bug():
    return bugaenko_h6()


# -- DoublingTree ------------------------------------------------------------------


def test_tree_validation():
    with pytest.raises(TreeError):
        DoublingTree(2, frozenset({(0,)}))  # missing root
    with pytest.raises(TreeError):
        DoublingTree(2, frozenset({(), (0, 0)}))  # not reduced
    with pytest.raises(TreeError):
        DoublingTree(2, frozenset({(), (0, 1)}))  # disconnected


def test_tree_path_and_json():
    tree = DoublingTree.path(3, 5)
    assert len(tree) == 5
    again = DoublingTree.from_json(tree.to_json())
    assert again == tree


def test_abstract_tree_canonical_form_invariance():
    t1 = AbstractTree(frozenset({(0, 1), (1, 2), (1, 3)}))
    t2 = AbstractTree(frozenset({(5, 2), (2, 7), (2, 0)}))
    assert t1.canonical_form == t2.canonical_form


# -- tree_double -----------------------------------------------------------------------


def test_single_vertex_is_identity(bug):
    q = tree_double(bug, ["9", "19"], DoublingTree.single(2))
    assert sorted(q.names) == sorted(n + "" for n in bug.names)
    assert len(q) == len(bug)


def test_one_edge_equals_double(bug):
    q = tree_double(bug, ["9", "19"], DoublingTree.path(2, 2))
    d = double(bug, "9")
    assert sorted(q.names) == sorted(d.names)


def test_path3_wall_count_and_validity(bug):
    tree = DoublingTree(2, frozenset({(), (0,), (0, 1)}))
    q = tree_double(bug, ["9", "19"], tree)
    assert len(q) == tree_double_wall_count(bug, ["9", "19"], tree)


def test_copy_count_invariant(bug):
    tree = DoublingTree(2, frozenset({(), (0,), (1,), (0, 1)}))
    copies = assemble_copies(bug, ["9", "19"], tree)
    assert len(copies) == len(tree)
    assert sum(len(v) for v in copies.values()) == len(tree) * len(bug)


def test_tree_double_rejects_meeting_walls(bug):
    assert bug.label("7", "9") == 8
    with pytest.raises(ValueError):
        tree_double(bug, ["7", "9"], DoublingTree.path(2, 2))


def test_tree_double_wall_budget(bug):
    with pytest.raises(ValueError, match="budget"):
        tree_double(bug, ["9", "19"], DoublingTree.path(2, 4), max_walls=50)


def test_index_subgroup(bug):
    assert index_subgroup(bug, ["9", "19"], 1) is bug
    q2 = index_subgroup(bug, ["9", "19"], 2)
    assert sorted(q2.names) == sorted(double(bug, "9").names)
    q5 = index_subgroup(bug, ["9", "19"], 5)
    assert len(q5) == tree_double_wall_count(
        bug, ["9", "19"], DoublingTree.path(2, 5)
    )
    assert is_redoublable(q5) is not None


def test_nonisomorphic_trees_give_nonisomorphic_diagrams(bug):
    from coxpoly.diagram import is_isomorphic

    walls = ["9", "19", "25"]
    t_path = DoublingTree.path(3, 4)
    t_star = DoublingTree(3, frozenset({(), (0,), (1,), (2,)}))
    assert t_path.abstract().canonical_form != t_star.abstract().canonical_form
    q1 = tree_double(bug, walls, t_path)
    q2 = tree_double(bug, walls, t_star)
    assert is_isomorphic(q1.diagram, q2.diagram) is None


# -- trivalent tree counting ----------------------------------------------------------------


def test_counts_small():
    counts = count_trivalent_trees(3)
    assert counts == {1: 1, 2: 0, 3: 1}


def test_counts_match_bruteforce_oracle():
    import networkx as nx

    counts = count_trivalent_trees(15)
    for e in range(1, 16):
        oracle = sum(
            1
            for t in nx.nonisomorphic_trees(e + 1)
            if all(d in (1, 3) for _, d in t.degree)
        )
        assert counts[e] == oracle, (e, counts[e], oracle)


def test_cumulative_growth_ratio():
    cum = cumulative_trivalent_counts(15)
    seq = [cum[e] for e in sorted(cum)]
    tail = seq[-5:]
    assert all(b > a for a, b in zip(tail, tail[1:]))
    assert all(b / a >= 1.3 for a, b in zip(tail, tail[1:]))


def test_trivalent_trees_have_right_degrees():
    for e in (5, 9, 13):
        for t in trivalent_trees(e):
            assert set(t.degrees()) <= {1, 3}
            assert len(t.edge_set) == e


# -- branch-spaced subtrees ---------------------------------------------------------------------


def test_small_instance_is_single_path():
    fam = branch_spaced_subtrees(3, 4, 3)
    assert len(fam) == 1
    assert fam[0] == DoublingTree.path(3, 4)


def test_family_cardinality_and_distinctness():
    for vertices in (10, 25, 40):
        fam = branch_spaced_subtrees(3, vertices, 3)
        expected = 1 + sum(
            len(trivalent_trees(e)) for e in range(3, (vertices - 1) // 3 + 1, 2)
        )
        assert len(fam) == expected
        forms = [t.abstract().canonical_form for t in fam]
        assert len(set(forms)) == len(fam)
        assert all(len(t) == vertices for t in fam)


def test_branch_points_spacing():
    fam = branch_spaced_subtrees(3, 40, 3)
    for tree in fam:
        abstract = tree.abstract()
        adj = abstract.adjacency
        branches = [v for v, ns in adj.items() if len(ns) >= 3]
        # pairwise tree distance between branch points is at least 3
        import networkx as nx

        g = nx.Graph(list(abstract.edge_set))
        for i, u in enumerate(branches):
            for v in branches[i + 1 :]:
                assert nx.shortest_path_length(g, u, v) >= 3


def test_embedding_respects_valence():
    fam = branch_spaced_subtrees(3, 22, 3)
    for tree in fam:
        for w in tree.words:
            children = sum(
                1 for u in tree.words if len(u) == len(w) + 1 and u[: len(w)] == w
            )
            assert children + (1 if w else 0) <= 3
