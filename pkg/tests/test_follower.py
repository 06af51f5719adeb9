from __future__ import annotations

import itertools

import numpy as np
import pytest

from lambdastar import catalog
from lambdastar.follower import (
    LabeledRankGraph,
    class_automaton,
    connecting_map,
    distinguishing_word,
    equivalent,
    follower_graph,
    is_bijective,
    is_sofic,
    isomorphic,
    labeled_path_language_equals,
    omega,
    path_labels,
    product_graph,
    quantized_dynamics,
    truncate_representative,
    truncation_is_faithful,
)
from lambdastar.language import Language, enumerate_words, projection
from lambdastar.multiword import MultiDegree, parse_degree, parse_word, words_up_to


def _brute_classes(L, level):
    """Group members by their left-extension sets inside a finite window."""
    members = enumerate_words(L, level)
    keys = {frozenset(w for w in members if L.member(w * mu)) for mu in members}
    return len(keys)


def test_doubledoors_graph_shape(doubledoors_graph):
    G = doubledoors_graph
    assert len(G.vertices) == 2
    assert len(G.edges) == 6
    assert [str(r) for r in G.representatives] == ["-|-", "-|1"]
    assert G.is_deterministic() and G.is_source_resolving()


def test_doubledoors_class_count_brute(doubledoors):
    assert _brute_classes(doubledoors, parse_degree("2,2")) == 2


def test_dichfail_class_count(dichfail, dichfail_graph):
    assert len(dichfail_graph.vertices) == 10
    assert _brute_classes(dichfail, parse_degree("2,2")) == 10


def test_hand_drawn_three_class_graph(doubledoors_graph):
    F3 = catalog.three_class_graph()
    assert (len(F3.vertices), len(F3.edges)) == (3, 8)
    assert equivalent(doubledoors_graph, F3)
    assert distinguishing_word(doubledoors_graph, F3) is None
    assert not isomorphic(doubledoors_graph, F3)


def test_omega_and_connecting_map(doubledoors):
    low = omega(doubledoors, parse_degree("1,1"))
    high = omega(doubledoors, parse_degree("2,2"))
    assert [str(r) for r in low.representatives()] == ["-|-", "-|1"]
    theta = connecting_map(high, low)
    assert theta == [0, 1] and is_bijective(theta, low)


def test_is_sofic(dichfail, doubledoors):
    assert is_sofic(dichfail, parse_degree("3,3")).status == "sofic"
    assert is_sofic(doubledoors, parse_degree("2,2")).status == "sofic"


def test_path_language(dichfail, dichfail_graph):
    assert labeled_path_language_equals(dichfail, dichfail_graph, parse_degree("2,2"))
    labels = path_labels(dichfail_graph, parse_degree("1,1"))
    assert labels == set(enumerate_words(dichfail, parse_degree("1,1")))


def test_class_automaton_agrees_with_graph(dichfail, dichfail_graph):
    aut = class_automaton(dichfail)
    assert aut is not None
    for mu in enumerate_words(dichfail, parse_degree("2,2")):
        assert dichfail_graph.spells(mu)


def test_truncation_counterexample(dichfail):
    mu = parse_word("10|-", (3, 3))
    assert str(truncate_representative(dichfail, mu)) == "1|-"
    assert not truncation_is_faithful(dichfail, mu)


def test_quantized_dynamics_reverses_products():
    L = Language.from_forbidden((2,), ["01"])
    G = follower_graph(L)
    a, b = parse_word("0", (2,)), parse_word("1", (2,))
    Ma, Mb, Mab = (quantized_dynamics(G, x) for x in (a, b, a * b))
    assert not Mab.any()
    assert np.array_equal(Mab, Mb @ Ma)
    assert (Ma @ Mb).any()


def test_quantized_dynamics_composition(dichfail, dichfail_graph):
    ws = enumerate_words(dichfail, parse_degree("1,1"))
    for mu, nu in itertools.product(ws, ws):
        lhs = quantized_dynamics(dichfail_graph, mu * nu)
        rhs = quantized_dynamics(dichfail_graph, nu) @ quantized_dynamics(dichfail_graph, mu)
        assert np.array_equal(lhs, np.minimum(rhs, 1))


def test_json_roundtrip(dichfail_graph):
    H = LabeledRankGraph.from_json(dichfail_graph.to_json())
    assert isomorphic(H, dichfail_graph)
    assert "digraph" in dichfail_graph.to_dot()


def test_product_graph_of_split_language():
    L = Language.from_forbidden((2, 2), ["11|-", "-|00"])
    parts = [follower_graph(projection(L, i)) for i in (1, 2)]
    P = product_graph(parts)
    G = follower_graph(L)
    assert isomorphic(P, G)
    assert len(P.vertices) == len(parts[0].vertices) * len(parts[1].vertices)
