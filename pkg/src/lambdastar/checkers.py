"""The checkers algebra A = C(Omega) of a sofic language.

Elements are functions on the vertices of the follower set graph (the
follower classes), ideals are vertex subsets, and the quantized dynamics
alpha_mu acts by the 0/1 matrix of paths labelled mu:

    alpha_mu(a)(u) = sum_v M_mu[u, v] a(v),

where M_mu[u, v] = 1 iff a path with source u and range v is labelled mu.
Since a T_mu = T_mu alpha_mu(a), alpha is contravariant:
M_{mu*nu} = M_nu M_mu.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .follower import LabeledRankGraph, quantized_dynamics
from .kgraph import f_tracing
from .language import Language
from .multiword import MultiWord, StructuralError


class InternalConsistencyError(AssertionError):
    """Two computations that must agree did not."""


@dataclass(frozen=True)
class CheckerElement:
    graph: LabeledRankGraph
    values: tuple[Fraction, ...]

    @classmethod
    def from_values(cls, G: LabeledRankGraph, values: Iterable) -> CheckerElement:
        vals = tuple(Fraction(x) for x in values)
        if len(vals) != len(G):
            raise StructuralError("value vector does not match the vertex count")
        return cls(G, vals)

    @classmethod
    def unit(cls, G: LabeledRankGraph) -> CheckerElement:
        return cls(G, (Fraction(1),) * len(G))

    @classmethod
    def zero(cls, G: LabeledRankGraph) -> CheckerElement:
        return cls(G, (Fraction(0),) * len(G))

    @classmethod
    def indicator(cls, G: LabeledRankGraph, vertices: Iterable[int]) -> CheckerElement:
        vs = set(vertices)
        return cls(G, tuple(Fraction(1 if v in vs else 0) for v in range(len(G))))

    @classmethod
    def p(cls, G: LabeledRankGraph, v: int) -> CheckerElement:
        """The minimal projection p_v."""
        return cls.indicator(G, [v])

    def _same(self, other: CheckerElement) -> None:
        if other.graph is not self.graph:
            raise StructuralError("checker elements over different graphs")

    def __add__(self, other: CheckerElement) -> CheckerElement:
        self._same(other)
        return CheckerElement(self.graph, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: CheckerElement) -> CheckerElement:
        self._same(other)
        return CheckerElement(self.graph, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, other) -> CheckerElement:
        if isinstance(other, CheckerElement):
            self._same(other)
            return CheckerElement(self.graph, tuple(a * b for a, b in zip(self.values, other.values)))
        c = Fraction(other)
        return CheckerElement(self.graph, tuple(a * c for a in self.values))

    __rmul__ = __mul__

    def complement(self) -> CheckerElement:
        """1 - a."""
        return CheckerElement.unit(self.graph) - self

    def support(self) -> frozenset[int]:
        return frozenset(v for v, x in enumerate(self.values) if x)

    def is_zero(self) -> bool:
        return not any(self.values)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def in_ideal(self, ideal: CheckerIdeal) -> bool:
        return self.support() <= ideal.vertices


@dataclass(frozen=True)
class CheckerEndomorphism:
    word: MultiWord
    matrix: np.ndarray

    def __call__(self, a: CheckerElement) -> CheckerElement:
        vals = [Fraction(0)] * len(self.matrix)
        for u, v in zip(*np.nonzero(self.matrix)):
            vals[u] += int(self.matrix[u, v]) * a.values[v]
        return CheckerElement(a.graph, tuple(vals))

    def then(self, other: CheckerEndomorphism) -> CheckerEndomorphism:
        """other o self, as the matrix product other.M @ self.M."""
        return CheckerEndomorphism(self.word, other.matrix @ self.matrix)


@dataclass(frozen=True)
class CheckerIdeal:
    """The functions supported on ``vertices``."""

    graph: LabeledRankGraph
    vertices: frozenset[int]

    def is_zero(self) -> bool:
        return not self.vertices

    def is_everything(self) -> bool:
        return len(self.vertices) == len(self.graph)

    def complement(self) -> CheckerIdeal:
        return CheckerIdeal(self.graph, frozenset(range(len(self.graph))) - self.vertices)

    def __and__(self, other: CheckerIdeal) -> CheckerIdeal:
        return CheckerIdeal(self.graph, self.vertices & other.vertices)

    def __le__(self, other: CheckerIdeal) -> bool:
        return self.vertices <= other.vertices

    def names(self) -> list[str]:
        out = []
        for v in sorted(self.vertices):
            rep = self.graph.representatives[v]
            out.append(self.graph.vertices[v] if rep is None else f"[{rep}]")
        return out


def _colors(G: LabeledRankGraph, F: Iterable[int]) -> frozenset[int]:
    F = frozenset(F)
    for c in F:
        if not 1 <= c <= G.rank:
            raise StructuralError(f"color {c} outside [1, {G.rank}]")
    return F


def tmu_star_tmu(G: LabeledRankGraph, mu: MultiWord) -> CheckerElement:
    """Indicator of the classes [w] with mu*w a member."""
    return CheckerElement.indicator(G, [u for u in range(len(G)) if G.follow([u], mu)])


def alpha(G: LabeledRankGraph, mu: MultiWord) -> CheckerEndomorphism:
    return CheckerEndomorphism(mu, quantized_dynamics(G, mu))


def ker_phi(G: LabeledRankGraph, F: Iterable[int]) -> CheckerIdeal:
    """Span of the p_v with v receiving no edge of a color in F."""
    F = _colors(G, F)
    return CheckerIdeal(
        G, frozenset(v for v in range(len(G)) if not any(G.receives_color(v, c) for c in F))
    )


def j_ideal(G: LabeledRankGraph, F: Iterable[int]) -> CheckerIdeal:
    return ker_phi(G, F).complement()


def i_ideal_fixpoint(G: LabeledRankGraph, F: Iterable[int]) -> CheckerIdeal:
    """Largest S inside J_F with alpha_delta(p_v) supported in S for v in S
    and every generator delta of a color outside F."""
    F = _colors(G, F)
    S = set(j_ideal(G, F).vertices)
    mats = [
        quantized_dynamics(G, MultiWord.generator(G.alphabet, i, k))
        for i, k in G.generators()
        if i not in F
    ]
    changed = True
    while changed:
        changed = False
        for v in sorted(S):
            for M in mats:
                if any(M[u, v] and u not in S for u in range(len(G))):
                    S.discard(v)
                    changed = True
                    break
    return CheckerIdeal(G, frozenset(S))


def i_ideal_fixpoint_kgraph(K, F: Iterable[int]) -> frozenset[int]:
    """The same greatest fixpoint on an unlabeled k-graph: start from the
    vertices receiving an F-colored edge and drop v while some edge of a
    color outside F enters v from a dropped vertex."""
    F = frozenset(F)
    S = {v for v in range(len(K.vertices)) if any(K.receives(v, c) for c in F)}
    others = [c for c in range(1, K.rank + 1) if c not in F]
    changed = True
    while changed:
        changed = False
        for v in sorted(S):
            if any(K.s(e) not in S for c in others for e in K.edges_into(v, c)):
                S.discard(v)
                changed = True
    return frozenset(S)


def i_ideal_tracing(G: LabeledRankGraph, F: Iterable[int]) -> CheckerIdeal:
    F = _colors(G, F)
    return CheckerIdeal(G, frozenset(f_tracing(G.to_rank_graph(), F)))


def i_ideal(G: LabeledRankGraph, F: Iterable[int]) -> CheckerIdeal:
    """I_F by the alpha-invariance fixpoint, cross-checked against F-tracing."""
    a = i_ideal_fixpoint(G, F)
    b = i_ideal_tracing(G, F)
    if a != b:
        raise InternalConsistencyError(f"I_F fixpoint {sorted(a.vertices)} != F-tracing {sorted(b.vertices)}")
    return a


def _reach(G: LabeledRankGraph, start: int, colors: frozenset[int]) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for e in G.edges:
            if e.src == u and e.color in colors and e.dst not in seen:
                seen.add(e.dst)
                queue.append(e.dst)
    return seen


def perp_classes(G: LabeledRankGraph, F: Iterable[int]) -> set[int]:
    """Classes of the words supported perpendicular to F."""
    F = _colors(G, F)
    return _reach(G, G.root, frozenset(range(1, G.rank + 1)) - F)


def q_annihilator(G: LabeledRankGraph, F: Iterable[int]) -> CheckerIdeal:
    """{a in A : a Q_F = 0}."""
    return CheckerIdeal(G, frozenset(range(len(G))) - perp_classes(G, F))


def times_q_is_zero(a: CheckerElement, F: Iterable[int]) -> bool:
    return not (a.support() & perp_classes(a.graph, F))


def q_in_A(G: LabeledRankGraph, F: Iterable[int]) -> bool:
    """Q_F lies in A iff no class holds both a word perpendicular to F and
    a word using a color of F."""
    F = _colors(G, F)
    start = (G.root, False)
    seen = {start}
    queue = deque([start])
    while queue:
        u, used = queue.popleft()
        for e in G.edges:
            if e.src != u:
                continue
            nxt = (e.dst, used or e.color in F)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    clean = {u for u, used in seen if not used}
    dirty = {u for u, used in seen if used}
    return not (clean & dirty)


def minimal_projections(G: LabeledRankGraph) -> list[CheckerElement]:
    return [CheckerElement.p(G, v) for v in range(len(G))]


@dataclass
class DichotomyReport:
    colors: tuple[int, ...]
    i: bool
    ii: bool
    iii: bool
    iii_search: bool | None
    iv: bool | None = None
    v: bool | None = None
    vi: bool | None = None
    blocking: dict | None = None

    def as_dict(self) -> dict:
        out = {"F": list(self.colors), "i": self.i, "ii": self.ii, "iii": self.iii, "iii_search": self.iii_search}
        if self.iv is not None:
            out.update({"iv": self.iv, "v": self.v, "vi": self.vi})
        if self.blocking is not None:
            out["blocking"] = self.blocking
        return out


def blocking_words(L: Language, F: Iterable[int], bound) -> dict[tuple[int, int], MultiWord | None]:
    """For each member delta_i(k), i in F: the least mu with |mu| <= bound
    and mu*delta_i(k) not a member, or None."""
    from .language import enumerate_words

    words = enumerate_words(L, bound)
    out = {}
    for i in sorted(set(F)):
        for k in range(L.alphabet[i - 1]):
            g = L.generator(i, k)
            if not L.member(g):
                continue
            out[(i, k)] = next((mu for mu in words if not L.member(mu * g)), None)
    return out


def dichotomy_report(L: Language, G: LabeledRankGraph, F: Iterable[int], search_bound=None) -> DichotomyReport:
    """Evaluate the blocking-word dichotomy clauses independently and check
    that they agree."""
    F = _colors(G, F)
    root = G.root
    # (iii) from classes: [delta] != [empty] for every member delta of a color in F
    iii = True
    for i in sorted(F):
        for k in range(G.alphabet[i - 1]):
            g = MultiWord.generator(G.alphabet, i, k)
            if L.member(g) and G.vertex_of_word(g) == root:
                iii = False
    # (iii) by bounded search for blocking words
    iii_search = None
    blocking = None
    if search_bound is not None:
        found = blocking_words(L, F, search_bound)
        blocking = {f"{i}:{k}": (None if w is None else str(w)) for (i, k), w in found.items()}
        iii_search = all(w is not None for w in found.values())
    K = ker_phi(G, F).vertices
    i_clause = bool(K & _reach(G, root, F))
    ii_clause = root not in _nonempty_reach(G, root, F)
    report = DichotomyReport(tuple(sorted(F)), i_clause, ii_clause, iii, iii_search, blocking=blocking)
    if F == frozenset(range(1, G.rank + 1)):
        report.iv = K == {root}
        report.v = bool(K)
        report.vi = q_in_A(G, F)
        clauses = [iii, report.iv, report.v, report.vi]
        if len(set(clauses)) != 1:
            raise InternalConsistencyError(f"(iii)-(vi) disagree: {clauses}")
    if len({i_clause, ii_clause, iii}) != 1:
        raise InternalConsistencyError(f"(i)-(iii) disagree: {(i_clause, ii_clause, iii)}")
    return report


def _nonempty_reach(G: LabeledRankGraph, start: int, colors: frozenset[int]) -> set[int]:
    first = {e.dst for e in G.edges if e.src == start and e.color in colors}
    out = set()
    for v in first:
        out |= _reach(G, v, colors)
    return out
