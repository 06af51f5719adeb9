"""Integer combinations of range projections T_lam T_lam^* in a k-graph.

A :class:`ProjectionSum` maps normal-form paths to nonzero integers.  The
product of two range projections is the sum of [mu alpha] over
(alpha, beta) in Lambda^min(mu, nu); everything here is built from that
rule and from path enumeration.

On the path space, [lam] acts as the indicator of the paths that extend
lam, so a sum is evaluated at nu by adding the coefficients of its
prefixes.  That evaluation is multiplicative, and a sum vanishes iff it
vanishes at every nu with d(nu) at most the join of its term degrees.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .kgraph import Path, RankGraph, f_tracing, is_prefix, lambda_min
from .multiword import MultiDegree, StructuralError


@dataclass
class ProjectionSum:
    graph: RankGraph
    terms: dict[Path, int] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {p: c for p, c in self.terms.items() if c}

    @classmethod
    def of(cls, graph: RankGraph, path: Path, coeff: int = 1) -> ProjectionSum:
        return cls(graph, {path: coeff})

    @classmethod
    def zero(cls, graph: RankGraph) -> ProjectionSum:
        return cls(graph, {})

    def _same(self, other: ProjectionSum) -> None:
        if other.graph is not self.graph:
            raise StructuralError("projection sums over different graphs")

    def __add__(self, other: ProjectionSum) -> ProjectionSum:
        self._same(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return ProjectionSum(self.graph, out)

    def __neg__(self) -> ProjectionSum:
        return ProjectionSum(self.graph, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: ProjectionSum) -> ProjectionSum:
        return self + (-other)

    def __mul__(self, other: ProjectionSum) -> ProjectionSum:
        return multiply(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjectionSum) and other.graph is self.graph and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def max_degree(self) -> MultiDegree:
        D = MultiDegree.zero(self.graph.rank)
        for p in self.terms:
            D = D | p.degree
        return D

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for p, c in self.items():
            name = f"[{self.graph.format_path(p)}]"
            if c == 1:
                parts.append(f"+ {name}")
            elif c == -1:
                parts.append(f"- {name}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {abs(c)}{name}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    __str__ = format


def multiply(a: ProjectionSum, b: ProjectionSum) -> ProjectionSum:
    """Bilinear extension of [mu][nu] = sum over Lambda^min(mu, nu) of [mu alpha]."""
    a._same(b)
    G = a.graph
    out: dict[Path, int] = {}
    for mu, c in a.terms.items():
        for nu, d in b.terms.items():
            for alpha, _ in lambda_min(G, mu, nu):
                p = G.compose(mu, alpha)
                out[p] = out.get(p, 0) + c * d
    return ProjectionSum(G, out)


def _colors(F: Iterable[int], rank: int) -> list[int]:
    F = sorted(set(F))
    if not F:
        raise StructuralError("F must be nonempty")
    for c in F:
        if not 1 <= c <= rank:
            raise StructuralError(f"color {c} outside [1, {rank}]")
    return F


def ck_prime_expand(G: RankGraph, v: int | str, F: Iterable[int]) -> ProjectionSum:
    """The multiplied-out product of ([v] - [mu]) over mu in v Lambda^{e_i}, i in F."""
    v = G.vertex(v)
    F = _colors(F, G.rank)
    vp = ProjectionSum.of(G, G.vertex_path(v))
    acc = vp
    for i in F:
        for e in G.edges_into(v, i):
            acc = multiply(acc, vp - ProjectionSum.of(G, G.edge_path(e)))
    return acc


def alternating_sum(G: RankGraph, v: int | str, F: Iterable[int]) -> ProjectionSum:
    """Sum over n <= 1_F and lam in v Lambda^n of (-1)^|n| [lam]."""
    v = G.vertex(v)
    F = _colors(F, G.rank)
    out: dict[Path, int] = {}
    for n in MultiDegree.unit(G.rank, F).below():
        sign = -1 if n.total % 2 else 1
        for lam in G.paths(v, n):
            out[lam] = out.get(lam, 0) + sign
    return ProjectionSum(G, out)


def evaluate_on_path_space(p: ProjectionSum, nu: Path) -> int:
    """Sum of the coefficients of the terms that are prefixes of nu."""
    G = p.graph
    return sum(c for lam, c in p.terms.items() if is_prefix(G, lam, nu))


evaluate = evaluate_on_path_space


def evaluation_table(p: ProjectionSum, v: int | str, bound: MultiDegree | None = None) -> list[tuple[Path, int]]:
    """(nu, p(nu)) for every nu in v Lambda with d(nu) <= bound."""
    G = p.graph
    v = G.vertex(v)
    if bound is None:
        bound = p.max_degree()
    return [(nu, evaluate_on_path_space(p, nu)) for nu in G.paths_below(v, bound)]


def vanishes_on_path_space(p: ProjectionSum) -> bool:
    G = p.graph
    D = p.max_degree()
    ranges = sorted({lam.range for lam in p.terms})
    return all(val == 0 for v in ranges for _, val in evaluation_table(p, v, D))


@dataclass
class CnpReport:
    vertex: int
    colors: tuple[int, ...]
    expanded: ProjectionSum
    alternating: ProjectionSum
    formal_equal: bool
    evaluation_equal: bool
    table: list[tuple[Path, int, int]]
    f_tracing: bool

    @property
    def holds(self) -> bool:
        return self.formal_equal and self.evaluation_equal


def cnp_check(G: RankGraph, v: int | str, F: Iterable[int]) -> CnpReport:
    """Compare both expansions formally and on the path space."""
    v = G.vertex(v)
    F = _colors(F, G.rank)
    a = ck_prime_expand(G, v, F)
    b = alternating_sum(G, v, F)
    D = MultiDegree.unit(G.rank, F) | a.max_degree() | b.max_degree()
    table = [(nu, evaluate_on_path_space(a, nu), evaluate_on_path_space(b, nu)) for nu in G.paths_below(v, D)]
    return CnpReport(
        vertex=v,
        colors=tuple(F),
        expanded=a,
        alternating=b,
        formal_equal=a == b,
        evaluation_equal=all(x == y for _, x, y in table),
        table=table,
        f_tracing=v in f_tracing(G, F),
    )


def nonempty_subsets(rank: int):
    colors = range(1, rank + 1)
    for size in range(1, rank + 1):
        yield from itertools.combinations(colors, size)
