from __future__ import annotations

import pytest

from lambdastar import catalog
from lambdastar.language import (
    Language,
    ResourceLimitError,
    enumerate_words,
    is_product,
    is_subshift_language,
    perpendicular_witness,
    product_of_projections,
    projection,
    validate,
)
from lambdastar.multiword import MultiDegree, parse_degree, parse_word, words_up_to


def W(text, alphabet=(3, 3)):
    return parse_word(text, alphabet)


def D(text):
    return parse_degree(text)


def test_member(dichfail):
    assert not dichfail.member(W("0|2"))
    assert dichfail.member(W("-|2"))
    assert dichfail.member(dichfail.empty_word())


def test_enumerate_full_rank_one():
    L = Language.full((2,))
    got = [str(w) for w in enumerate_words(L, D("2"))]
    assert got == ["-", "0", "1", "00", "01", "10", "11"]


def test_enumerate_with_forbidden_word():
    L = Language.from_forbidden((2,), ["11"])
    got = [str(w) for w in enumerate_words(L, D("2"))]
    assert got == ["-", "0", "1", "00", "01", "10"]


def test_enumerate_matches_subword_filter(dichfail):
    bound = D("2,2")
    expect = [w for w in words_up_to(dichfail.alphabet, bound)
              if not any(f.is_subword(w) for f in dichfail.forbidden)]
    got = enumerate_words(dichfail, bound)
    assert sorted(got, key=lambda w: w.sort_key()) == sorted(expect, key=lambda w: w.sort_key())
    assert W("-|02") not in enumerate_words(dichfail, D("0,2"))


def test_enumerate_cap(dichfail):
    with pytest.raises(ResourceLimitError):
        enumerate_words(dichfail, D("4,4"), max_words=10)


def test_projection_of_finite_type(dichfail):
    P = projection(dichfail, 2)
    assert P.alphabet == (3,)
    assert [str(f) for f in P.forbidden] == ["02"]


def test_projection_of_full_language():
    P = projection(Language.full((2, 3)), 2)
    assert P.alphabet == (3,)
    assert all(P.member(w) for w in words_up_to((3,), D("3")))


def test_projection_of_doubledoors(doubledoors):
    P = projection(doubledoors, 1)
    for w in words_up_to((2,), D("4")):
        assert P.member(w) == (w.coords[0].count(1) <= 1)


def test_is_product(doubledoors):
    v = is_product(doubledoors, D("1,1"))
    assert v.status == "not-product"
    assert tuple(str(x) for x in v.witness) == ("1|-", "-|1")
    split = Language.from_forbidden((3, 3), ["11|-", "-|22"])
    assert is_product(split, D("2,2")).status == "product"
    v = is_product(Language.from_forbidden((2, 2), ["1|1"]), D("1,1"))
    assert v.status == "not-product"
    assert tuple(str(x) for x in v.witness) == ("1|-", "-|1")


def test_product_of_projections_contains_language(doubledoors):
    PP = product_of_projections(doubledoors)
    for w in words_up_to((2, 2), D("2,2")):
        if doubledoors.member(w):
            assert PP.member(w)
    assert PP.member(W("1|1", (2, 2))) and not doubledoors.member(W("1|1", (2, 2)))


def test_perpendicular_witness(doubledoors):
    a, b = perpendicular_witness(doubledoors, D("1,1"))
    assert doubledoors.member(a) and doubledoors.member(b)
    assert a.perp(b) and not doubledoors.member(a * b)


def test_subshift(doubledoors):
    assert is_subshift_language(doubledoors, D("2,2"), D("2,2")).status == "yes"
    assert is_subshift_language(Language.full((2, 2)), D("1,1"), D("2,2")).status == "yes"
    v = is_subshift_language(Language.from_forbidden((2,), ["10", "11"]), D("1"), D("2"))
    assert v.status == "no"
    assert str(v.witness[0]) == "1"


def test_subshift_needs_sofic_certificate(doubledoors):
    # a horizon below the certificate cannot settle the question
    assert is_subshift_language(doubledoors, D("1,1"), D("2,2")).status == "inconclusive"


def test_validate():
    v = validate(Language.from_forbidden((2, 2), ["0|-", "1|-"]))
    assert [x.kind for x in v] == ["axiom-1"]
    v = validate(Language.from_forbidden((2, 2), ["1|1", "11|1"]))
    assert [x.kind for x in v] == ["redundant"]
    assert validate(catalog.dichfail()) == []


@pytest.mark.parametrize("seed", range(5))
def test_random_corpus_is_valid(seed):
    for L in catalog.random_forbidden_corpus(seed, 5):
        assert validate(L) == []
        for w in words_up_to(L.alphabet, MultiDegree.constant(L.rank, 1)):
            assert L.member(w) == (not any(f.is_subword(w) for f in L.forbidden))
