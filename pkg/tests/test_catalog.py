from __future__ import annotations

from lambdastar import catalog
from lambdastar.follower import follower_graph
from lambdastar.kgraph import validate_kgraph
from lambdastar.language import validate


def test_registries_build():
    for make in catalog.LANGUAGES.values():
        assert validate(make()) == []
    for make in catalog.KGRAPHS.values():
        assert validate_kgraph(make()) == []


def test_corpora_are_seeded():
    a = [L.forbidden for L in catalog.random_forbidden_corpus(5, 8)]
    b = [L.forbidden for L in catalog.random_forbidden_corpus(5, 8)]
    assert a == b
    ga = [G.to_json() for G in catalog.random_kgraph_corpus(5, 4)]
    gb = [G.to_json() for G in catalog.random_kgraph_corpus(5, 4)]
    assert ga == gb


def test_three_class_graph_spells_doubledoors(doubledoors):
    H = catalog.three_class_graph()
    G = follower_graph(doubledoors)
    for w in ("1|-", "-|1", "01|00", "1|0"):
        from lambdastar.multiword import parse_word
        mu = parse_word(w, (2, 2))
        assert H.spells(mu) == doubledoors.member(mu) == G.spells(mu)
