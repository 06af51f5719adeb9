"""Factorial languages: presentations, membership, enumeration, projections.

Three presentations are supported:

* ``ForbiddenWords``: mu is a member iff no forbidden tuple occurs in mu
  coordinatewise (the containment ideal generated by the list).
* ``LabeledGraph``: mu is a member iff it labels some path of a finite
  labeled rank-N graph (see :mod:`lambdastar.follower`).
* ``Oracle``: a named built-in predicate, optionally carrying a
  stabilization certificate used by the soficity test.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import kernels
from .multiword import (
    MultiDegree,
    MultiWord,
    StructuralError,
    format_word,
    words_up_to,
)

DEFAULT_MAX_WORDS = 2_000_000
DEFAULT_MAX_LENGTH = 24


class ResourceLimitError(RuntimeError):
    """A bounded computation would exceed its configured cap."""


@dataclass(frozen=True)
class Verdict:
    """A three-valued answer with an optional witness.

    ``status`` is one of the strings listed by each producing operation,
    e.g. ``"product" | "not-product" | "inconclusive"``.
    """

    status: str
    witness: Any = None
    data: dict = field(default_factory=dict, compare=False)

    @property
    def conclusive(self) -> bool:
        return self.status != "inconclusive"

    def __bool__(self) -> bool:
        return self.status in ("yes", "product", "sofic")


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    data: Any = None


# ---------------------------------------------------------------- sources


@dataclass(frozen=True)
class ForbiddenWords:
    words: tuple[MultiWord, ...]

    def max_multilength(self, rank: int) -> MultiDegree:
        m = MultiDegree.zero(rank)
        for f in self.words:
            m = m | f.multilength()
        return m


@dataclass(frozen=True)
class LabeledGraph:
    graph: Any  # follower.LabeledRankGraph


@dataclass(frozen=True)
class Oracle:
    """A named predicate.

    ``certificate`` is a level n such that ~_n already equals ~ (when the
    predicate's construction proves it), else None.
    """

    name: str
    params: tuple = ()
    predicate: Callable[[MultiWord], bool] = field(default=None, compare=False, repr=False)
    certificate: MultiDegree | None = field(default=None, compare=False)


@dataclass(frozen=True)
class LanguageSpec:
    rank: int
    alphabet: tuple[int, ...]
    source: ForbiddenWords | LabeledGraph | Oracle
    name: str = ""

    def __post_init__(self):
        if len(self.alphabet) != self.rank:
            raise StructuralError(
                f"alphabet profile {self.alphabet} does not have rank {self.rank}"
            )
        if any(d < 1 for d in self.alphabet):
            raise StructuralError("alphabet sizes must be positive")


# ---------------------------------------------------------------- oracles


def _letter_budget(alphabet, letter: int, per_coordinate, total):
    """Words with at most ``per_coordinate`` copies of ``letter`` in each
    coordinate and at most ``total`` overall (None means unbounded)."""
    rank = len(alphabet)
    if per_coordinate is None and total is None:
        raise StructuralError("letter-budget needs per_coordinate or total")

    def pred(mu: MultiWord) -> bool:
        counts = [c.count(letter) for c in mu.coords]
        if per_coordinate is not None and max(counts, default=0) > per_coordinate:
            return False
        if total is not None and sum(counts) > total:
            return False
        return True

    # extension sets depend only on the letter counts; a distinguishing
    # word never needs more than min(per, total) copies per coordinate
    caps = [c for c in (per_coordinate, total) if c is not None]
    cert = MultiDegree(
        min(caps) if letter < d else 0 for d in alphabet
    ) if rank else MultiDegree(())
    return pred, cert


def _oracle_full(alphabet, **_):
    return (lambda mu: True), MultiDegree.zero(len(alphabet))


def _oracle_budget(alphabet, letter=1, per_coordinate=None, total=None):
    return _letter_budget(alphabet, int(letter), per_coordinate, total)


def _oracle_at_most(alphabet, letter=1, k=1):
    return _letter_budget(alphabet, int(letter), int(k), None)


def _oracle_coupled(alphabet, letter=1, k=1):
    return _letter_budget(alphabet, int(letter), int(k), int(k))


def _oracle_doubledoors(alphabet, **_):
    if tuple(alphabet) != (2, 2):
        raise StructuralError("doubledoors is defined for alphabet profile (2, 2)")
    return _letter_budget(alphabet, 1, 1, 1)


ORACLES: dict[str, Callable] = {
    "full": _oracle_full,
    "letter-budget": _oracle_budget,
    "at-most-k": _oracle_at_most,
    "coupled-exclusion": _oracle_coupled,
    "doubledoors": _oracle_doubledoors,
}


def make_oracle(name: str, alphabet: Sequence[int], params: dict | None = None) -> Oracle:
    params = dict(params or {})
    try:
        factory = ORACLES[name]
    except KeyError:
        raise StructuralError(
            f"unknown oracle {name!r}; known: {', '.join(sorted(ORACLES))}"
        ) from None
    pred, cert = factory(tuple(alphabet), **params)
    return Oracle(name, tuple(sorted(params.items())), pred, cert)


# ---------------------------------------------------------------- language


class Language:
    """An immutable factorial language with a synchronized membership memo."""

    def __init__(self, spec: LanguageSpec):
        self.spec = spec
        self._memo: dict[MultiWord, bool] = {}
        self._lock = threading.Lock()
        src = spec.source
        if isinstance(src, ForbiddenWords):
            for f in src.words:
                if f.alphabet != spec.alphabet:
                    raise StructuralError(
                        f"forbidden word {format_word(f)} does not match profile {spec.alphabet}"
                    )
            self._forbidden = tuple(f.coords for f in src.words)
        else:
            self._forbidden = None

    # convenience constructors

    @classmethod
    def from_forbidden(cls, alphabet: Sequence[int], words, name: str = "") -> Language:
        from .multiword import parse_word

        alphabet = tuple(int(d) for d in alphabet)
        ws = []
        for w in words:
            ws.append(parse_word(w, alphabet) if isinstance(w, str) else w)
        return cls(LanguageSpec(len(alphabet), alphabet, ForbiddenWords(tuple(ws)), name))

    @classmethod
    def full(cls, alphabet: Sequence[int]) -> Language:
        return cls.from_forbidden(alphabet, [], name="full")

    @classmethod
    def from_oracle(cls, name: str, alphabet: Sequence[int], params: dict | None = None) -> Language:
        alphabet = tuple(int(d) for d in alphabet)
        return cls(LanguageSpec(len(alphabet), alphabet, make_oracle(name, alphabet, params), name))

    @classmethod
    def from_graph(cls, graph, name: str = "") -> Language:
        return cls(LanguageSpec(graph.rank, tuple(graph.alphabet), LabeledGraph(graph), name))

    @property
    def rank(self) -> int:
        return self.spec.rank

    @property
    def alphabet(self) -> tuple[int, ...]:
        return self.spec.alphabet

    @property
    def source(self):
        return self.spec.source

    @property
    def forbidden(self) -> tuple[MultiWord, ...] | None:
        src = self.spec.source
        return src.words if isinstance(src, ForbiddenWords) else None

    def empty_word(self) -> MultiWord:
        return MultiWord.empty(self.alphabet)

    def generator(self, i: int, k: int) -> MultiWord:
        return MultiWord.generator(self.alphabet, i, k)

    def generators(self):
        """All (i, k, delta_i(k)) in color-then-letter order."""
        for i in range(1, self.rank + 1):
            for k in range(self.alphabet[i - 1]):
                yield i, k, self.generator(i, k)

    def member(self, mu: MultiWord) -> bool:
        if mu.alphabet != self.alphabet:
            raise StructuralError(
                f"word profile {mu.alphabet} does not match language profile {self.alphabet}"
            )
        if self._forbidden is not None:
            return kernels.forbidden_free(mu.coords, self._forbidden)
        hit = self._memo.get(mu)
        if hit is not None:
            return hit
        src = self.spec.source
        if isinstance(src, LabeledGraph):
            value = bool(src.graph.spells(mu))
        else:
            value = bool(src.predicate(mu))
        with self._lock:
            self._memo[mu] = value
        return value

    __contains__ = member

    def __repr__(self) -> str:
        src = self.spec.source
        if isinstance(src, ForbiddenWords):
            desc = "forbidden=[" + ", ".join(format_word(f) for f in src.words) + "]"
        elif isinstance(src, Oracle):
            desc = f"oracle={src.name}{dict(src.params)}"
        else:
            desc = "graph"
        return f"Language(alphabet={self.alphabet}, {desc})"


# ---------------------------------------------------------------- enumeration


def check_bound(L: Language, bound: MultiDegree, max_length: int = DEFAULT_MAX_LENGTH) -> None:
    if len(bound) != L.rank:
        raise StructuralError(f"bound {bound} does not have rank {L.rank}")
    if any(b > max_length for b in bound):
        raise ResourceLimitError(f"bound {bound} exceeds the per-coordinate cap {max_length}")


def enumerate_words(
    L: Language,
    bound: MultiDegree,
    max_words: int = DEFAULT_MAX_WORDS,
    max_length: int = DEFAULT_MAX_LENGTH,
) -> list[MultiWord]:
    """All members with multilength <= bound in sort_key order.

    Breadth-first over left extensions (prepend one letter); a candidate is
    tested only if deleting its first or last letter in any coordinate
    leaves a known member.
    """
    check_bound(L, bound, max_length)
    alphabet = L.alphabet
    root = L.empty_word()
    found = {root}
    frontier = [root]
    while frontier:
        nxt = set()
        for mu in frontier:
            for i, n in enumerate(bound):
                if len(mu.coords[i]) >= n:
                    continue
                for k in range(alphabet[i]):
                    coords = list(mu.coords)
                    coords[i] = bytes([k]) + coords[i]
                    cand = MultiWord._raw(tuple(coords), alphabet)
                    if cand in nxt or not _truncations_known(cand, found):
                        continue
                    if L.member(cand):
                        nxt.add(cand)
        found.update(nxt)
        if len(found) > max_words:
            raise ResourceLimitError(f"more than {max_words} members below {bound}")
        frontier = list(nxt)
    return sorted(found, key=MultiWord.sort_key)


def _truncations_known(w: MultiWord, found: set) -> bool:
    coords = w.coords
    for i, c in enumerate(coords):
        if not c:
            continue
        for shorter in (c[1:], c[:-1]):
            t = coords[:i] + (shorter,) + coords[i + 1:]
            if MultiWord._raw(t, w.alphabet) not in found:
                return False
    return True


# ---------------------------------------------------------------- projections


def projection(L: Language, i: int) -> Language:
    """The rank-one language {u : delta_i(u) is a member}."""
    if not 1 <= i <= L.rank:
        raise StructuralError(f"coordinate {i} outside [1, {L.rank}]")
    d = L.alphabet[i - 1]
    src = L.source
    name = f"{L.spec.name or 'L'}[{i}]"
    if isinstance(src, ForbiddenWords):
        ws = [
            MultiWord._raw((f.coords[i - 1],), (d,))
            for f in src.words
            if f.support() == frozenset({i})
        ]
        return Language(LanguageSpec(1, (d,), ForbiddenWords(tuple(ws)), name))
    if isinstance(src, LabeledGraph):
        return Language.from_graph(src.graph.color_subgraph(i), name=name)
    params = dict(src.params)
    if src.name in ("letter-budget", "at-most-k", "coupled-exclusion", "doubledoors"):
        letter = int(params.get("letter", 1))
        caps = [
            params.get(key)
            for key in ("per_coordinate", "total", "k")
            if params.get(key) is not None
        ]
        if src.name == "doubledoors":
            caps = [1]
        oracle = make_oracle("at-most-k", (d,), {"letter": letter, "k": min(int(c) for c in caps)})
        return Language(LanguageSpec(1, (d,), oracle, name))
    if src.name == "full":
        return Language.full((d,))

    def pred(u: MultiWord) -> bool:
        return L.member(MultiWord.on_coordinate(L.alphabet, i, u.coords[0]))

    return Language(LanguageSpec(1, (d,), Oracle(f"projection:{src.name}", (("i", i),), pred), name))


def lift(u: MultiWord, alphabet: Sequence[int], i: int) -> MultiWord:
    return MultiWord.on_coordinate(alphabet, i, u.coords[0])


def product_of_projections(L: Language) -> Language:
    """The product language of the coordinate projections of L."""
    alphabet = L.alphabet
    src = L.source
    name = f"prod({L.spec.name or 'L'})"
    if isinstance(src, ForbiddenWords):
        ws = tuple(f for f in src.words if len(f.support()) == 1)
        return Language(LanguageSpec(L.rank, alphabet, ForbiddenWords(ws), name))
    projs = [projection(L, i) for i in range(1, L.rank + 1)]
    if isinstance(src, LabeledGraph):
        from .follower import product_graph

        return Language.from_graph(product_graph([p.source.graph for p in projs]), name=name)

    def pred(mu: MultiWord) -> bool:
        return all(
            p.member(MultiWord._raw((c,), (d,)))
            for p, c, d in zip(projs, mu.coords, alphabet)
        )

    cert = None
    certs = [p.source.certificate for p in projs]
    if all(c is not None for c in certs):
        cert = MultiDegree(c[0] for c in certs)
    return Language(LanguageSpec(L.rank, alphabet, Oracle(f"product:{src.name}", (), pred, cert), name))


def perpendicular_witness(L: Language, bound: MultiDegree):
    """The least (mu, nu), mu perp nu both members, mu*nu not a member, |mu*nu| <= bound.

    Pairs are ordered by the sort key of mu*nu; within a pair mu holds the
    lower coordinates.
    """
    members = enumerate_words(L, bound)
    by_support: dict[frozenset, list[MultiWord]] = {}
    for w in members:
        if not w.is_empty():
            by_support.setdefault(w.support(), []).append(w)
    best = None
    supports = sorted(by_support, key=lambda s: (len(s), sorted(s)))
    for s in supports:
        for t in supports:
            if s & t or min(s) > min(t):
                continue
            for mu in by_support[s]:
                for nu in by_support[t]:
                    w = mu * nu
                    if not (w.multilength() <= bound) or L.member(w):
                        continue
                    key = (w.sort_key(), mu.sort_key())
                    if best is None or key < best[0]:
                        best = (key, mu, nu)
    return None if best is None else (best[1], best[2])


def is_product(L: Language, bound: MultiDegree, max_level: MultiDegree | None = None) -> Verdict:
    """Three-valued test for L being a product of rank-one languages."""
    witness = perpendicular_witness(L, bound)
    if witness is not None:
        return Verdict("not-product", witness, {"method": "bounded-search"})
    from .follower import NotSoficError, distinguishing_word, follower_graph, is_sofic

    if max_level is None:
        max_level = bound
    if not is_sofic(L, max_level):
        return Verdict("inconclusive", None, {"reason": "soficity not established"})
    P = product_of_projections(L)
    if not is_sofic(P, max_level):
        return Verdict("inconclusive", None, {"reason": "product soficity not established"})
    try:
        G = follower_graph(L, max_level)
        H = follower_graph(P, max_level)
    except NotSoficError:
        return Verdict("inconclusive", None, {"reason": "follower graph unavailable"})
    word = distinguishing_word(G, H)
    if word is None:
        return Verdict("product", None, {"method": "follower-graph-equivalence"})
    witness = _witness_from_word(L, word)
    return Verdict("not-product", witness, {"method": "follower-graph-equivalence", "word": word})


def _witness_from_word(L: Language, w: MultiWord):
    # w is in the product but not in L; peel coordinates off from the left
    rank = L.rank
    empty = (b"",) * rank
    prev = None
    for k in range(1, rank + 1):
        u = MultiWord._raw(w.coords[:k] + empty[k:], L.alphabet)
        if not L.member(u):
            mu = prev
            nu = MultiWord.on_coordinate(L.alphabet, k, w.coords[k - 1])
            return (mu, nu)
        prev = u
    return None


# ---------------------------------------------------------------- subshifts


def is_subshift_language(L: Language, horizon: MultiDegree, bound: MultiDegree) -> Verdict:
    """Does every member extend by one letter on both sides in each color?

    Returns ``"no"`` with a witness (mu, i) found up to ``bound``.  For
    sofic languages (certified within ``horizon``) the follower graph gives
    an exact answer; otherwise ``"inconclusive"``.
    """
    words = enumerate_words(L, bound)
    for mu in words:
        for i in range(1, L.rank + 1):
            if not _two_sided(L, mu, i):
                return Verdict("no", (mu, i), {"method": "bounded-search"})
    from .follower import NotSoficError, follower_graph, is_sofic

    if is_sofic(L, horizon):
        try:
            G = follower_graph(L, horizon)
        except NotSoficError:
            G = None
        if G is not None:
            bad = _sofic_subshift_search(L, G)
            if bad is None:
                return Verdict("yes", None, {"method": "follower-graph product search"})
            return Verdict("no", bad, {"method": "follower-graph product search"})
    return Verdict("inconclusive", None, {"reason": "no exact argument available"})


def _two_sided(L: Language, mu: MultiWord, i: int) -> bool:
    d = L.alphabet[i - 1]
    for k in range(d):
        left = L.generator(i, k)
        lm = left * mu
        if not L.member(lm):
            continue
        for l in range(d):
            if L.member(lm * L.generator(i, l)):
                return True
    return False


def _sofic_subshift_search(L: Language, G):
    """Exact two-sided extension check through the follower graph.

    delta_i(k)*mu*delta_i(l) is a member iff the path labelled mu from the
    class of delta_i(l) ends at a vertex emitting a color-i edge.  States
    track the end of mu read from the root and from every [delta_i(l)].
    """
    from collections import deque

    root = G.root
    starts = []
    for i, k, g in L.generators():
        if L.member(g):
            starts.append((i, k, G.vertex_of_word(g)))
    start = (root, tuple(v for _, _, v in starts))
    seen = {start: L.empty_word()}
    queue = deque([start])
    gens = list(L.generators())
    while queue:
        state = queue.popleft()
        mu = seen[state]
        end_root, ends = state
        for i in range(1, L.rank + 1):
            ok = False
            for (j, _, _), v in zip(starts, ends):
                if j == i and v is not None and G.emits_color(v, i):
                    ok = True
                    break
            if not ok:
                return (mu, i)
        for i, k, g in gens:
            nr = G.step(end_root, i, k)
            if nr is None:
                continue
            nends = tuple(None if v is None else G.step(v, i, k) for v in ends)
            nstate = (nr, nends)
            if nstate not in seen:
                seen[nstate] = g * mu
                queue.append(nstate)
    return None


# ---------------------------------------------------------------- validation


def normalize_forbidden(words: Sequence[MultiWord]) -> list[Violation]:
    out = []
    for f in words:
        if f.is_empty():
            out.append(Violation("empty-forbidden", "the empty word is forbidden"))
    for a in words:
        for b in words:
            if a is not b and a != b and a.is_subword(b):
                out.append(
                    Violation(
                        "redundant",
                        f"{format_word(a)} is a subword of {format_word(b)}",
                        (a, b),
                    )
                )
    seen = set()
    for f in words:
        if f in seen:
            out.append(Violation("redundant", f"{format_word(f)} listed twice", (f, f)))
        seen.add(f)
    return out


def validate(L: Language, bound: MultiDegree | None = None) -> list[Violation]:
    """Axiom (1), normalization of forbidden lists, and sampled factoriality."""
    out: list[Violation] = []
    src = L.source
    if isinstance(src, ForbiddenWords):
        out.extend(normalize_forbidden(src.words))
    if L.rank == 0:
        return out
    if not L.member(L.empty_word()):
        out.append(Violation("empty-word", "the empty word is not a member"))
    for i in range(1, L.rank + 1):
        if not any(L.member(L.generator(i, k)) for k in range(L.alphabet[i - 1])):
            out.append(
                Violation("axiom-1", f"no letter of coordinate {i} is a member", i)
            )
    if bound is None:
        bound = MultiDegree.constant(L.rank, 2)
    if not isinstance(src, ForbiddenWords):
        out.extend(_factoriality_sample(L, bound))
    return out


def _factoriality_sample(L: Language, bound: MultiDegree) -> list[Violation]:
    out = []
    for w in words_up_to(L.alphabet, bound):
        if not L.member(w):
            continue
        for i, c in enumerate(w.coords):
            for shorter in (c[1:], c[:-1]):
                if len(shorter) == len(c):
                    continue
                t = MultiWord._raw(w.coords[:i] + (shorter,) + w.coords[i + 1:], L.alphabet)
                if not L.member(t):
                    out.append(
                        Violation(
                            "factoriality",
                            f"{format_word(w)} is a member but {format_word(t)} is not",
                            (w, t),
                        )
                    )
                    return out
    return out
