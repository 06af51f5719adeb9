"""Named example languages and graphs, and seeded random corpora."""

from __future__ import annotations

import itertools
import random
from typing import Callable

from .follower import LabeledEdge, LabeledRankGraph
from .kgraph import Edge, RankGraph, fan_graph, minimal_2graph, validate_kgraph
from .language import Language, normalize_forbidden, validate
from .multiword import MultiWord, parse_word


def doubledoors() -> Language:
    """(0^n, 0^m), (0^k 1 0^l, 0^m), (0^n, 0^k 1 0^l) over {0, 1} x {0, 1}."""
    return Language.from_oracle("doubledoors", (2, 2))


def dichfail() -> Language:
    return Language.from_forbidden((3, 3), ["1|1", "2|2", "0|2", "-|02"], name="dichfail")


def full_shift(alphabet=(2, 2)) -> Language:
    return Language.full(alphabet)


def three_class_graph() -> LabeledRankGraph:
    """The hand-drawn three-class graph: classes of the empty word, (1, -)
    and (-, 1), 0-loops of both colors everywhere, and the two 1-edges."""
    A = (2, 2)
    reps = [parse_word(x, A) for x in ("-|-", "1|-", "-|1")]
    edges = [LabeledEdge(v, v, c, 0) for v in range(3) for c in (1, 2)]
    edges += [LabeledEdge(0, 1, 1, 1), LabeledEdge(0, 2, 2, 1)]
    return LabeledRankGraph(A, ["e", "a", "b"], sorted(edges), reps)


LANGUAGES: dict[str, Callable[[], Language]] = {
    "doubledoors": doubledoors,
    "dichfail": dichfail,
    "full22": lambda: full_shift((2, 2)),
}

KGRAPHS: dict[str, Callable[[], RankGraph]] = {
    "min2": minimal_2graph,
    **{f"fan-{n}": (lambda n=n: fan_graph(n)) for n in range(1, 6)},
}


# ---------------------------------------------------------------- random languages


def _random_word(rng: random.Random, alphabet, max_len) -> MultiWord:
    coords = []
    for d, m in zip(alphabet, max_len):
        n = rng.choice([0, 0] + list(range(1, m + 1)))
        coords.append([rng.randrange(d) for _ in range(n)])
    return MultiWord(coords, alphabet)


def random_forbidden_language(rng: random.Random, max_rank: int = 3, max_letters: int = 3, max_words: int = 4, max_len: int = 2) -> Language:
    """A finite-type language with a normalized, nonempty forbidden set.

    Small parameters are favoured so that the class automata stay small.
    """
    while True:
        N = min(rng.choice([1, 2, 2, 2, 3, 3]), max_rank)
        alphabet = tuple(min(rng.choice([2, 2, 3]), max_letters) for _ in range(N))
        k = rng.randint(1, max_words)
        words = {_random_word(rng, alphabet, (max_len,) * N) for _ in range(k)}
        words = {w for w in words if not w.is_empty()}
        if not words:
            continue
        words = sorted(words, key=MultiWord.sort_key)
        if normalize_forbidden(words):
            continue
        L = Language.from_forbidden(alphabet, words)
        if not validate(L):
            return L


def random_forbidden_corpus(seed: int, count: int, **kw) -> list[Language]:
    rng = random.Random(seed)
    return [random_forbidden_language(rng, **kw) for _ in range(count)]


# ---------------------------------------------------------------- random k-graphs


def random_kgraph(rng: random.Random, rank: int, max_vertices: int = 4, max_edges: int = 3, tries: int = 200) -> RankGraph | None:
    """Rejection sampling: random colored edges, then random square
    bijections between the two factorization orders of each color pair."""
    for _ in range(tries):
        n = rng.randint(1, max_vertices)
        verts = [f"v{j}" for j in range(n)]
        edges = []
        for c in range(1, rank + 1):
            for j in range(rng.randint(0, max_edges)):
                edges.append(Edge(f"{'abcdefgh'[c - 1]}{j}", rng.randrange(n), rng.randrange(n), c))
        G = RankGraph(rank, verts, edges)
        squares = []
        ok = True
        for c1, c2 in itertools.combinations(range(1, rank + 1), 2):
            left: dict = {}
            right: dict = {}
            for a in sorted(G.edges):
                if G.color(a) == c1:
                    for b in G.edges_into(G.s(a), c2):
                        left.setdefault((G.r(a), G.s(b)), []).append((a, b))
                elif G.color(a) == c2:
                    for b in G.edges_into(G.s(a), c1):
                        right.setdefault((G.r(a), G.s(b)), []).append((a, b))
            if set(left) != set(right) or any(len(left[k]) != len(right[k]) for k in left):
                ok = False
                break
            for key in sorted(left):
                rs = list(right[key])
                rng.shuffle(rs)
                squares.extend(zip(left[key], rs))
        if not ok:
            continue
        H = RankGraph(rank, verts, edges, squares)
        if not validate_kgraph(H):
            return H
    return None


def random_kgraph_corpus(seed: int, count: int) -> list[RankGraph]:
    """Validated 2- and 3-graphs with at most 4 vertices and 3 edges per
    color, each with at least one two-colored path."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        G = random_kgraph(rng, rng.choice([2, 2, 3]))
        if G is not None and G.squares:
            out.append(G)
    return out
