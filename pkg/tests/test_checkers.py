from __future__ import annotations

import itertools

import numpy as np
import pytest

from lambdastar import catalog
from lambdastar.checkers import (
    CheckerElement,
    alpha,
    blocking_words,
    dichotomy_report,
    i_ideal,
    i_ideal_fixpoint,
    i_ideal_tracing,
    j_ideal,
    ker_phi,
    q_annihilator,
    q_in_A,
    times_q_is_zero,
    tmu_star_tmu,
)
from lambdastar.follower import follower_graph
from lambdastar.language import Language, enumerate_words
from lambdastar.multiword import parse_degree, parse_word


@pytest.fixture(scope="module")
def example_element(dichfail_graph):
    G = dichfail_graph
    s = lambda t: tmu_star_tmu(G, parse_word(t, (3, 3)))
    return s("-|1") * s("-|2") * s("-|0").complement()


def test_unit_for_empty_word(dichfail_graph):
    G = dichfail_graph
    assert tmu_star_tmu(G, parse_word("-|-", (3, 3))) == CheckerElement.unit(G)


def test_example_element(dichfail_graph, example_element):
    G, a = dichfail_graph, example_element
    assert not a.is_zero()
    assert a.in_ideal(ker_phi(G, [1]))
    assert times_q_is_zero(a, [2])
    assert a.in_ideal(q_annihilator(G, [2]))
    assert [str(G.representatives[v]) for v in sorted(a.support())] == ["-|2", "-|21"]


def test_dichfail_ideals(dichfail_graph):
    G = dichfail_graph
    assert ker_phi(G, [1, 2]).is_zero()
    assert j_ideal(G, [1, 2]).is_everything()
    assert i_ideal(G, [1, 2]).is_everything()
    assert not ker_phi(G, [1]).is_zero()


def test_doubledoors_ideals(doubledoors_graph):
    for F in ([1], [2], [1, 2]):
        assert i_ideal(doubledoors_graph, F).is_everything()


def test_sourceless_graph():
    G = follower_graph(Language.full((2, 2)))
    for F in ([1], [2], [1, 2]):
        assert ker_phi(G, F).is_zero()
        assert j_ideal(G, F).is_everything()
        assert i_ideal(G, F).is_everything()
    assert q_annihilator(G, [1, 2]).is_zero()


def test_dichotomy_dichfail(dichfail, dichfail_graph):
    r = dichotomy_report(dichfail, dichfail_graph, [1, 2])
    assert (r.iii, r.iv, r.v, r.vi) == (False, False, False, False)
    # every coordinate-1 letter has a blocking word, so (iii) holds for F={1}
    r = dichotomy_report(dichfail, dichfail_graph, [1])
    assert (r.i, r.ii, r.iii) == (True, True, True)
    blocks = {k: str(w) for k, w in blocking_words(dichfail, [1], (2, 2)).items()}
    assert blocks == {(1, 0): "-|2", (1, 1): "-|1", (1, 2): "-|2"}
    for (i, k), w in blocking_words(dichfail, [1], (2, 2)).items():
        assert dichfail.member(w) and not dichfail.member(w * dichfail.generator(i, k))


def test_dichotomy_full_shift():
    L = Language.full((2, 2))
    G = follower_graph(L)
    for F in ([1], [2], [1, 2]):
        d = dichotomy_report(L, G, F).as_dict()
        assert not any(v for k, v in d.items() if k in ("i", "ii", "iii", "iv", "v", "vi"))


def test_q_in_A_with_blocking_everywhere():
    # every letter is blocked by some member: 0 after 1 and 1 after 0
    L = Language.from_forbidden((2,), ["00", "11"])
    G = follower_graph(L)
    assert q_in_A(G, [1])
    assert dichotomy_report(L, G, [1]).vi


def test_alpha_reverses_products(dichfail, dichfail_graph):
    G = dichfail_graph
    ws = enumerate_words(dichfail, parse_degree("1,1"))
    for mu, nu in itertools.product(ws, ws):
        lhs = alpha(G, mu * nu).matrix
        rhs = alpha(G, mu).then(alpha(G, nu)).matrix
        assert np.array_equal(lhs != 0, rhs != 0)


@pytest.mark.parametrize("seed", range(4))
def test_i_ideal_two_ways_and_dichotomy(seed):
    for L in catalog.random_forbidden_corpus(100 + seed, 6):
        G = follower_graph(L)
        for r in range(1, L.rank + 1):
            for F in itertools.combinations(range(1, L.rank + 1), r):
                assert i_ideal_fixpoint(G, F).vertices == i_ideal_tracing(G, F).vertices
                assert i_ideal(G, F) <= j_ideal(G, F)
                dichotomy_report(L, G, F)  # raises on an equivalence failure
