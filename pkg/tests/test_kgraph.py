from __future__ import annotations

import itertools
import random

import pytest

from lambdastar import catalog
from lambdastar.kgraph import (
    Edge,
    RankGraph,
    f_tracing,
    is_prefix,
    fan_graph,
    is_exhaustive,
    lambda_min,
    minimal_2graph,
    strong_alignment_census,
    validate_kgraph,
)
from lambdastar.multiword import MultiDegree


def test_minimal_2graph_valid():
    G = minimal_2graph()
    assert validate_kgraph(G) == []
    assert [G.format_path(p) for p in G.paths(0, [1, 1])] == ["e,f"]
    assert [p.is_vertex for p in G.paths(0, [0, 0])] == [True]


def test_missing_square_is_reported():
    G = RankGraph(2, ["v"], [Edge("e", 0, 0, 1), Edge("f", 0, 0, 2)])
    assert validate_kgraph(G)


def test_normal_form_is_order_independent():
    G = RankGraph.from_json(minimal_2graph().to_json())
    assert G.normalize(["f", "e"]) == G.normalize(["e", "f"])
    assert G.format_path(G.normalize(["f", "e"])) == "e,f"


def test_no_incoming_edges_gives_no_paths():
    G = fan_graph(2)
    w = G.vertex("b1")
    assert G.paths(w, [1, 0]) == []


def test_lambda_min():
    G = minimal_2graph()
    e, f = G.edge_path("e"), G.edge_path("f")
    pairs = lambda_min(G, e, f)
    assert [(G.format_path(a), G.format_path(b)) for a, b in pairs] == [("f", "e")]
    same = lambda_min(G, e, e)
    assert len(same) == 1 and all(p.is_vertex for p in same[0])


def test_lambda_min_brute_force():
    # minimal common extensions are exactly the paths of degree d(lam) v d(mu)
    # having both lam and mu as prefixes
    for G in catalog.random_kgraph_corpus(3, 6):
        paths = G.all_paths(MultiDegree.constant(G.rank, 1))
        for lam, mu in itertools.product(paths, paths):
            deg = lam.degree | mu.degree
            want = {p for p in paths if p.degree == deg and is_prefix(G, lam, p) and is_prefix(G, mu, p)}
            got = set()
            for alpha, beta in lambda_min(G, lam, mu):
                joined = G.compose(lam, alpha)
                assert joined == G.compose(mu, beta)
                got.add(joined)
            assert got == want


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_strong_alignment_census(n):
    G = fan_graph(n)
    count, _ = strong_alignment_census(G, G.edge_path("e"), 1)
    assert count == n
    count, names = strong_alignment_census(minimal_2graph(), minimal_2graph().edge_path("e"), 2)
    assert (count, names) == (1, ["f"])


def test_f_tracing():
    G = fan_graph(2)
    # b-vertices receive nothing, so neither they nor their color-2 ancestors trace F={1}
    tr = f_tracing(G, [1])
    assert G.vertex("b1") not in tr and G.vertex("b2") not in tr
    assert f_tracing(minimal_2graph(), [1, 2]) == {0}


def test_exhaustive():
    G = minimal_2graph()
    edges = [G.edge_path("e"), G.edge_path("f")]
    assert is_exhaustive(G, 0, edges, MultiDegree((2, 2))).status == "yes"
    v = is_exhaustive(G, 0, [], MultiDegree((1, 1)))
    assert v.status == "no"


def test_random_corpus_valid():
    for G in catalog.random_kgraph_corpus(11, 10):
        assert validate_kgraph(G) == []
