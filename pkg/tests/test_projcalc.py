from __future__ import annotations

import pytest

from lambdastar import catalog
from lambdastar.kgraph import RankGraph, Edge, fan_graph, minimal_2graph
from lambdastar.projcalc import (
    ProjectionSum,
    alternating_sum,
    ck_prime_expand,
    cnp_check,
    evaluate_on_path_space,
    multiply,
    nonempty_subsets,
    vanishes_on_path_space,
)


def test_multiply_rules():
    G = minimal_2graph()
    e, f = ProjectionSum.of(G, G.edge_path("e")), ProjectionSum.of(G, G.edge_path("f"))
    assert multiply(e, e) == e
    assert multiply(e, f).format() == "[e,f]"
    H = fan_graph(1)
    a = ProjectionSum.of(H, H.vertex_path("v"))
    b = ProjectionSum.of(H, H.vertex_path("w"))
    assert multiply(a, b) == ProjectionSum.zero(H)


def test_ck_prime_minimal():
    G = minimal_2graph()
    want = "[@v] - [f] - [e] + [e,f]"
    assert ck_prime_expand(G, 0, [1, 2]).format() == want
    assert alternating_sum(G, 0, [1, 2]).format() == want


def test_ck_prime_no_edges():
    H = fan_graph(1)
    b = H.vertex("b1")
    assert ck_prime_expand(H, b, [1]).format() == "[@b1]"


def test_rank_one_defect():
    G = RankGraph(1, ["v", "u"], [Edge("a", 1, 0, 1), Edge("b", 1, 0, 1)])
    assert alternating_sum(G, 0, [1]).format() == "[@v] - [a] - [b]"


def test_evaluation():
    G = minimal_2graph()
    v = G.vertex_path(0)
    e = G.edge_path("e")
    assert evaluate_on_path_space(ProjectionSum.of(G, v), e) == 1
    diff = ProjectionSum.of(G, v) - ProjectionSum.of(G, e)
    assert evaluate_on_path_space(diff, e) == 0
    p = ck_prime_expand(G, 0, [1, 2])
    assert evaluate_on_path_space(p, v) == 1
    assert evaluate_on_path_space(p, G.normalize(["e", "f"])) == 0
    # the defect is nonzero: it is not a relation in the path space model
    assert not vanishes_on_path_space(p)


@pytest.mark.parametrize("seed", range(3))
def test_cnp_on_random_graphs(seed):
    for G in catalog.random_kgraph_corpus(seed, 5):
        for F in nonempty_subsets(G.rank):
            for v in range(len(G.vertices)):
                rep = cnp_check(G, v, F)
                assert rep.formal_equal and rep.evaluation_equal
