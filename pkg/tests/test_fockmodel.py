from __future__ import annotations

import itertools

import numpy as np
import pytest

from lambdastar import catalog
from lambdastar.checkers import tmu_star_tmu
from lambdastar.fockmodel import (
    BoundExceeded,
    FockSpace,
    TCKFamily,
    alpha,
    check_nica,
    check_nica_bulk,
    cross_check_checker,
    cross_check_family,
    minimal_projection_count,
    p_color,
    q,
    source_projection,
    t,
    t_direct,
    t_star,
)
from lambdastar.language import Language, enumerate_words
from lambdastar.multiword import MultiDegree, parse_degree, parse_word


def W(text, alphabet=(3, 3)):
    return parse_word(text, alphabet)


@pytest.fixture(scope="module")
def space(dichfail):
    return FockSpace(dichfail, parse_degree("3,4"))


@pytest.fixture(scope="module")
def small(dichfail):
    return FockSpace(dichfail, parse_degree("2,2"))


def test_identity_and_forbidden(space):
    assert t(space, W("-|-")).equals(space.identity())
    assert t(space, W("0|2")).is_zero()


def test_recursive_matches_direct(small, dichfail):
    for mu in enumerate_words(dichfail, parse_degree("2,2")):
        assert t(small, mu).equals(t_direct(small, mu))


def test_homomorphism(small, dichfail):
    ws = enumerate_words(dichfail, parse_degree("1,1"))
    for mu, nu in itertools.product(ws, ws):
        assert (t(small, mu) @ t(small, nu)).equals(t_direct(small, mu * nu))


def test_isometry_on_members(small, dichfail):
    for mu in enumerate_words(dichfail, parse_degree("1,1")):
        P = source_projection(small, mu)
        assert P.is_zero_one()
        assert (P @ P).equals(P)


def test_validity_is_sound(dichfail, small):
    # columns declared exact in the small space agree with a larger space
    big = FockSpace(dichfail, parse_degree("3,3"))
    ws = enumerate_words(dichfail, parse_degree("1,1"))
    for mu, nu in itertools.product(ws, ws):
        op_s = t_star(small, nu) @ t(small, mu)
        op_b = t_star(big, nu) @ t(big, mu)
        dense_b = op_b.matrix.toarray()
        dense_s = op_s.matrix.toarray()
        for j in small.valid_columns(op_s.valid):
            jb = big.index[small.basis[j]]
            col = dense_b[:, jb]
            rows = {big.basis[r]: col[r] for r in np.nonzero(col)[0]}
            assert all(w in small.index for w in rows)
            assert {small.basis[r]: dense_s[r, j] for r in np.nonzero(dense_s[:, j])[0]} == rows


def test_bound_exceeded(small):
    with pytest.raises(BoundExceeded):
        t(small, W("000|-"))


def test_q_full_is_vacuum_projection(space):
    Q = q(space, [1, 2])
    cols = space.valid_columns(Q.valid)
    vals = Q.diagonal_values()[cols]
    empty = space.index[W("-|-")]
    assert vals[list(cols).index(empty)] == 1
    assert vals.sum() == 1
    P1 = p_color(space, 1)
    assert (P1 @ P1).equals(P1)


def test_example_element(space, dichfail_graph):
    s = lambda text: source_projection(space, W(text))
    a = s("-|1") @ s("-|2") @ (space.identity() - s("-|0"))
    e = space.index[W("-|2")]
    assert a.matrix[e, e] == 1
    assert (a @ q(space, [2])).is_zero()
    for k in range(3):
        assert alpha(space, W(f"{k}|-"), a).is_zero()
    sc = lambda text: tmu_star_tmu(dichfail_graph, W(text))
    checker = sc("-|1") * sc("-|2") * sc("-|0").complement()
    assert cross_check_checker(space, checker, a)


def test_nica(small, dichfail):
    assert check_nica(small, W("1|-"), W("-|1"))
    rep = check_nica_bulk(small)
    assert rep.holds and rep.pairs > 0


def test_nica_non_product(doubledoors):
    sp = FockSpace(doubledoors, parse_degree("3,3"))
    rep = check_nica_bulk(sp)
    assert rep.holds


def test_minimal_projection_count_matches_classes(doubledoors, dichfail, doubledoors_graph, dichfail_graph):
    sp = FockSpace(doubledoors, parse_degree("3,3"))
    assert minimal_projection_count(sp, parse_degree("1,1")) == len(doubledoors_graph.vertices)
    # exact columns must reach every class representative, here up to (2,2)
    sp = FockSpace(dichfail, parse_degree("3,4"))
    assert minimal_projection_count(sp, parse_degree("1,2")) == len(dichfail_graph.vertices)


def test_family_relations(dichfail, dichfail_graph):
    sp = FockSpace(dichfail, parse_degree("3,3"))
    rep = cross_check_family(sp, dichfail_graph)
    for name in ("P-projection", "P-orthogonal", "P-sum", "HR-source", "HR-range", "HR", "NC", "CK-defect-is-pvQF"):
        assert rep.holds(name), name


def test_family_defect_can_vanish(doubledoors, doubledoors_graph):
    # at the class of (-,1) every word w with w*(-,1) a member still has a
    # continuation in both colors, so the (CK') defect there is zero
    sp = FockSpace(doubledoors, parse_degree("3,3"))
    fam = TCKFamily(sp, doubledoors_graph)
    assert fam.ck_defect(1, [1, 2]).is_zero()
    assert not fam.ck_defect(0, [1, 2]).is_zero()
