"""Lorentzian linear algebra over the field."""

from __future__ import annotations

import random

import pytest

from coxpoly.field import FieldScalar
from coxpoly.qspace import (
    DegenerateGramError,
    QSpace,
    QVector,
    projective_key,
    proportional,
)


def bugaenko_space(n=6):
    # -(1+sqrt 2) x0^2 + x1^2 + ... + xn^2
    return QSpace([FieldScalar(-1, -1, 1, 2)] + [1] * n, 2)


def d6_model_space():
    """Positive-definite R^8 hosting the standard D6 roots plus 2 spare dims."""
    return QSpace([1] * 8, 0)


def d6_roots(space):
    """Simple roots of D6: two ears at the front, tail at the end."""
    rows = [
        [-1, -1, 0, 0, 0, 0, 0, 0],
        [1, -1, 0, 0, 0, 0, 0, 0],
        [0, 1, -1, 0, 0, 0, 0, 0],
        [0, 0, 1, -1, 0, 0, 0, 0],
        [0, 0, 0, 1, -1, 0, 0, 0],
        [0, 0, 0, 0, 1, -1, 0, 0],
    ]
    return [space.vector(r) for r in rows]


def rand_vector(space, rng):
    return space.vector(
        [FieldScalar(rng.randint(-4, 4), rng.randint(-2, 2), rng.randint(1, 3), space.d)
         for _ in range(space.dim)]
    )


def test_inner_bugaenko_r1():
    sp = bugaenko_space()
    r1 = sp.vector([0, -1, 1, 0, 0, 0, 0])
    assert sp.inner(r1, r1) == 2


def test_inner_bugaenko_r7():
    sp = bugaenko_space()
    r7 = sp.vector([1, FieldScalar(1, 1, 1, 2), 0, 0, 0, 0, 0])
    # -(1+r) + (1+r)^2 = 2 + r
    assert sp.inner(r7, r7) == FieldScalar(2, 1, 1, 2)


def test_inner_with_zero_vector():
    sp = bugaenko_space()
    v = rand_vector(sp, random.Random(1))
    assert sp.inner(v, sp.zero()) == 0


def test_reflect_root_to_its_negative():
    sp = bugaenko_space()
    r = sp.vector([0, -1, 1, 0, 0, 0, 0])
    assert sp.reflect(r, r) == -r


def test_reflect_fixes_orthogonal_vectors():
    sp = bugaenko_space()
    r = sp.vector([0, -1, 1, 0, 0, 0, 0])
    v = sp.vector([0, 0, 0, 1, 0, 0, 0])
    assert sp.inner(r, v) == 0
    assert sp.reflect(r, v) == v


def test_reflect_is_involution_and_isometry():
    sp = bugaenko_space()
    rng = random.Random(7)
    r = sp.vector([0, -1, 1, 0, 0, 0, 0])
    for _ in range(20):
        v, w = rand_vector(sp, rng), rand_vector(sp, rng)
        rv, rw = sp.reflect(r, v), sp.reflect(r, w)
        assert sp.reflect(r, rv) == v
        assert sp.inner(rv, rw) == sp.inner(v, w)


def test_reflect_rejects_nonpositive_norm():
    sp = QSpace([-1, 1, 1], 0)
    null = sp.vector([1, 1, 0])
    assert sp.norm(null) == 0
    with pytest.raises(Exception):
        sp.reflect(null, sp.vector([0, 0, 1]))


def test_gram_empty_and_diagonal():
    sp = QSpace([1, 1, 1], 0)
    assert sp.gram([]) == []
    es = [sp.vector([1, 0, 0]), sp.vector([0, 2, 0])]
    g = sp.gram(es)
    assert g[0][1] == 0 and g[0][0] == 1 and g[1][1] == 4


def test_signature_validation():
    with pytest.raises(ValueError):
        QSpace([-1, -1, 1], 0)
    QSpace([1, 1], 0)  # positive definite allowed
    QSpace([1, -1, 1], 0)  # Lorentzian allowed


def test_projection_of_ear_attached_root():
    """s attaches to an ear of D6: the projections have norms 3/2 and 1/2."""
    sp = d6_model_space()
    span = d6_roots(sp)
    half = FieldScalar(1, 0, 2)
    s = sp.vector([half, half, half, half, half, half, half, half])
    assert sp.inner(s, span[0]) == -1
    for r in span[1:]:
        assert sp.inner(s, r) == 0
    p, q = sp.span_projection(span, s)
    assert p == sp.vector([half] * 6 + [0, 0])
    assert sp.norm(p) == FieldScalar(3, 0, 2)
    assert sp.norm(q) == FieldScalar(1, 0, 2)


def test_projection_of_tail_attached_root():
    sp = d6_model_space()
    span = d6_roots(sp)
    t = sp.vector([0, 0, 0, 0, 0, 1, -1, 0])
    assert sp.inner(t, span[5]) == -1
    p, q = sp.span_projection(span, t)
    assert p == sp.vector([0, 0, 0, 0, 0, 1, 0, 0])
    assert sp.norm(p) == 1
    assert sp.norm(q) == 1


def test_projection_cross_term_gives_pi_over_4():
    sp = d6_model_space()
    span = d6_roots(sp)
    half = FieldScalar(1, 0, 2)
    s = sp.vector([half] * 6 + [half, half])
    t = sp.vector([0, 0, 0, 0, 0, 1, -1, 0])
    qs, qt = sp.orth_project(span, s), sp.orth_project(span, t)
    assert sp.inner(qs, qt) == FieldScalar(-1, 0, 2)
    # cos^2 = (1/4) / (1/2 * 1) = 1/2, i.e. an angle of pi/4
    q = sp.inner(qs, qt) ** 2 / (sp.norm(qs) * sp.norm(qt))
    assert q == FieldScalar(1, 0, 2)


def test_orth_project_idempotent_and_orthogonal():
    sp = bugaenko_space()
    rng = random.Random(11)
    span = [sp.vector([0, -1, 1, 0, 0, 0, 0]), sp.vector([0, 0, 0, 1, -1, 0, 0])]
    for _ in range(10):
        v = rand_vector(sp, rng)
        q = sp.orth_project(span, v)
        for s in span:
            assert sp.inner(q, s) == 0
        assert sp.orth_project(span, q) == q


def test_projection_preserves_inner_product_splitting():
    sp = bugaenko_space()
    rng = random.Random(13)
    span = [sp.vector([0, -1, 1, 0, 0, 0, 0]), sp.vector([0, 0, 0, 0, 1, -1, 0])]
    for _ in range(10):
        v, w = rand_vector(sp, rng), rand_vector(sp, rng)
        pv, qv = sp.span_projection(span, v)
        pw, qw = sp.span_projection(span, w)
        assert sp.inner(qv, qw) == sp.inner(v, w) - sp.inner(pv, pw)


def test_vector_already_orthogonal_projects_to_itself():
    sp = QSpace([1, 1, 1], 0)
    span = [sp.vector([1, 0, 0])]
    v = sp.vector([0, 2, 3])
    assert sp.orth_project(span, v) == v


def test_solve_degenerate_raises():
    sp = QSpace([1, 1], 0)
    one = FieldScalar(1)
    with pytest.raises(DegenerateGramError):
        sp.solve([[one, one], [one, one]], [one, one])


def test_orth_complement_basis_lorentzian():
    sp = bugaenko_space()
    span = [sp.vector([0, -1, 1, 0, 0, 0, 0])]
    comp = sp.orth_complement_basis(span)
    assert len(comp) == 6
    for b in comp:
        assert sp.inner(b, span[0]) == 0
    obasis = sp.orthogonal_basis(comp)
    signs = [n.sign() for _, n in obasis]
    assert signs.count(-1) == 1 and signs.count(1) == 5


def test_orthogonal_basis_handles_isotropic_pivot():
    sp = QSpace([-1, 1, 1], 0)
    vs = [sp.vector([1, 1, 0]), sp.vector([1, -1, 0])]  # both isotropic
    obasis = sp.orthogonal_basis(vs)
    assert len(obasis) == 2
    assert sorted(n.sign() for _, n in obasis) == [-1, 1]


def test_proportional_and_projective_key():
    sp = QSpace([1, 1], 2)
    u = sp.vector([FieldScalar(1, 1, 1, 2), 2])
    v = u.scale(FieldScalar(1, 1, 1, 2))  # positive unit multiple
    w = u.scale(FieldScalar(-1, 0, 1, 2))
    assert proportional(u, v)
    assert projective_key(u) == projective_key(v)
    assert not proportional(u, w)
    assert projective_key(u) != projective_key(w)


def test_json_round_trip():
    sp = bugaenko_space()
    v = sp.vector([1, FieldScalar(1, 1, 1, 2), 0, 0, 0, 0, 0])
    assert QSpace.from_json(sp.to_json()) == sp
    assert QVector.from_json(v.to_json(), 2) == v
