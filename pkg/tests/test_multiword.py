from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from lambdastar.multiword import (
    MultiDegree,
    MultiWord,
    StructuralError,
    coordinate_words,
    format_word,
    parse_degree,
    parse_word,
    words_up_to,
)

A = (3, 3)


def W(text, alphabet=A):
    return parse_word(text, alphabet)


def words(alphabet=A, max_len=3):
    coord = [st.lists(st.integers(0, d - 1), max_size=max_len) for d in alphabet]
    return st.tuples(*coord).map(lambda cs: MultiWord(cs, alphabet))


def test_parse_format_roundtrip():
    for text in ["-|-", "01|-", "-|2", "012|210"]:
        assert format_word(W(text)) == text


def test_parse_rejects_bad_input():
    with pytest.raises(StructuralError):
        W("01|-", (2,))
    with pytest.raises(StructuralError):
        W("3|-")


def test_concat_examples():
    assert W("01|-") * W("-|2") == W("01|2")
    assert W("01|-").concat(MultiWord.empty(A)) == W("01|-")
    assert W("1|-", (2, 2)) * W("-|1", (2, 2)) == W("1|1", (2, 2))


def test_concat_alphabet_mismatch():
    with pytest.raises(StructuralError):
        W("0|-") * W("0|-", (2, 2))


def test_join_examples():
    assert W("01|-").join(W("0|1")) == W("01|1")
    assert W("01|-").join(W("10|-")) is None
    assert W("01|-").join(MultiWord.empty(A)) == W("01|-")


def test_subword_examples():
    assert W("11|-").is_subword(W("0110|-"))
    assert MultiWord.empty(A).is_subword(W("012|1"))
    assert not W("1|1").is_subword(W("01|0"))


def test_support_perp_generator():
    assert W("01|-").support() == frozenset({1})
    assert W("1|-").perp(W("-|02"))
    assert not W("1|-").perp(W("0|2"))
    assert MultiWord.generator(A, 1, 2) == W("2|-")
    with pytest.raises(StructuralError):
        MultiWord.generator(A, 1, 3)


def test_degree_lattice():
    a, b = parse_degree("1,0"), parse_degree("0,2")
    assert a | b == MultiDegree((1, 2))
    assert a & b == MultiDegree((0, 0))
    assert a.perp(b)
    assert a <= a | b and not a <= b
    assert W("01|2").multilength() == MultiDegree((2, 1))
    assert W("01|2").total_length == 3


def test_words_up_to_counts():
    # one coordinate over two letters: 1 + 2 + 4
    assert len(words_up_to((2,), MultiDegree((2,)))) == 7
    # product of per-coordinate counts
    assert len(words_up_to((2, 3), MultiDegree((1, 2)))) == 3 * 13
    assert len(coordinate_words(3, 2)) == 13


def test_sort_key_is_shortlex():
    ws = words_up_to((2, 2), MultiDegree((1, 1)))
    assert ws[0].is_empty()
    assert [w.total_length for w in ws] == sorted(w.total_length for w in ws)


@given(words(), words(), words())
def test_concat_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(words(), words())
def test_prefix_order_and_join(a, b):
    assert a.is_prefix_of(a * b)
    assert (a * b).strip_prefix(a) == b
    j = a.join(b)
    if j is not None:
        assert a.is_prefix_of(j) and b.is_prefix_of(j)
        assert j.multilength() == a.multilength() | b.multilength()
    else:
        assert any(
            not (x.startswith(y) or y.startswith(x)) for x, y in zip(a.coords, b.coords)
        )


@given(words(), words(), words())
def test_subword_of_product(p, mid, q):
    assert mid.is_subword(p * mid * q)


def test_subword_brute_force():
    # factor scan against an explicit enumeration of all (p, q) decompositions
    alphabet = (2, 2)
    ws = words_up_to(alphabet, MultiDegree((2, 1)))
    for inner, outer in itertools.product(ws, ws):
        brute = any(p * inner * q == outer for p in ws for q in ws)
        assert inner.is_subword(outer) == brute
