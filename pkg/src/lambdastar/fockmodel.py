"""Exact truncations of the operators T_mu on l^2(Lambda*).

The basis is every member w with |w| <= L.  A truncated operator is exact
on the columns e_w with |w| <= ``valid``; ``up`` bounds the change of
multilength it can cause, so that a product AB is exact on the columns w
with |w| <= valid(B) and |w| + up(B) <= valid(A).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .follower import LabeledRankGraph
from .kgraph import Path, RankGraph, lambda_min
from .language import Language, enumerate_words
from .multiword import MultiDegree, MultiWord, StructuralError


class BoundExceeded(StructuralError):
    """An operator was requested beyond the truncation bound."""


@dataclass(frozen=True)
class FockSpace:
    language: Language
    bound: MultiDegree
    basis: tuple[MultiWord, ...] = field(init=False, repr=False)
    index: dict = field(init=False, repr=False, compare=False)
    degrees: np.ndarray = field(init=False, repr=False, compare=False)
    _cache: dict = field(init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        bound = MultiDegree(self.bound)
        object.__setattr__(self, "bound", bound)
        basis = tuple(enumerate_words(self.language, bound))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "index", {w: j for j, w in enumerate(basis)})
        degrees = np.array([[len(c) for c in w.coords] for w in basis], dtype=np.int64)
        object.__setattr__(self, "degrees", degrees.reshape(len(basis), self.rank))

    @property
    def rank(self) -> int:
        return self.language.rank

    @property
    def dim(self) -> int:
        return len(self.basis)

    def valid_columns(self, valid: Sequence[int]) -> np.ndarray:
        return np.nonzero(np.all(self.degrees <= np.asarray(valid), axis=1))[0]

    def identity(self) -> FockOperator:
        return self.diagonal(np.ones(self.dim, dtype=np.int64))

    def zero(self) -> FockOperator:
        return self.diagonal(np.zeros(self.dim, dtype=np.int64))

    def diagonal(self, values) -> FockOperator:
        values = np.asarray(values, dtype=np.int64)
        return FockOperator(self, sp.diags(values, format="csr", dtype=np.int64), tuple(self.bound), (0,) * self.rank)


@dataclass(frozen=True)
class FockOperator:
    space: FockSpace
    matrix: sp.csr_matrix
    valid: tuple[int, ...]
    up: tuple[int, ...]

    def _same(self, other: FockOperator) -> None:
        if other.space is not self.space:
            raise StructuralError("operators on different Fock spaces")

    def __matmul__(self, other: FockOperator) -> FockOperator:
        self._same(other)
        valid = tuple(
            min(b, a - u, n) for a, b, u, n in zip(self.valid, other.valid, other.up, self.space.bound)
        )
        up = tuple(x + y for x, y in zip(self.up, other.up))
        return FockOperator(self.space, (self.matrix @ other.matrix).tocsr(), valid, up)

    __mul__ = __matmul__

    def __add__(self, other: FockOperator) -> FockOperator:
        self._same(other)
        return FockOperator(
            self.space,
            (self.matrix + other.matrix).tocsr(),
            tuple(map(min, self.valid, other.valid)),
            tuple(map(max, self.up, other.up)),
        )

    def __sub__(self, other: FockOperator) -> FockOperator:
        return self + other.scaled(-1)

    def scaled(self, c: int) -> FockOperator:
        return FockOperator(self.space, (self.matrix * c).tocsr(), self.valid, self.up)

    def columns(self) -> np.ndarray:
        return self.space.valid_columns(self.valid)

    def restricted(self) -> sp.csr_matrix:
        """The exact part: the valid columns."""
        return self.matrix[:, self.columns()]

    def is_zero(self) -> bool:
        return self.restricted().count_nonzero() == 0

    def equals(self, other: FockOperator) -> bool:
        """Equality on the columns where both are exact."""
        cols = self.space.valid_columns(tuple(map(min, self.valid, other.valid)))
        return (self.matrix[:, cols] != other.matrix[:, cols]).nnz == 0

    def mismatches(self, other: FockOperator, limit: int = 5) -> list[MultiWord]:
        cols = self.space.valid_columns(tuple(map(min, self.valid, other.valid)))
        diff = (self.matrix[:, cols] != other.matrix[:, cols]).tocsc()
        bad = sorted(set(diff.nonzero()[1].tolist()))[:limit]
        return [self.space.basis[cols[j]] for j in bad]

    def is_zero_one(self) -> bool:
        data = self.matrix.data
        return bool(np.all((data == 0) | (data == 1)))

    def diagonal_values(self) -> np.ndarray:
        return self.matrix.diagonal()


def _check(space: FockSpace, mu: MultiWord) -> None:
    if mu.alphabet != space.language.alphabet:
        raise StructuralError("word over a different alphabet")
    if not mu.multilength() <= space.bound:
        raise BoundExceeded(f"|{mu}| exceeds the bound {space.bound}")


def t_direct(space: FockSpace, mu: MultiWord) -> FockOperator:
    """T_mu e_w = e_{mu*w} when mu*w is a member, entry by entry."""
    _check(space, mu)
    rows, cols = [], []
    for j, w in enumerate(space.basis):
        i = space.index.get(mu * w)
        if i is not None:
            rows.append(i)
            cols.append(j)
    n = space.dim
    M = sp.csr_matrix((np.ones(len(rows), dtype=np.int64), (rows, cols)), shape=(n, n))
    d = tuple(mu.multilength())
    return FockOperator(space, M, tuple(b - x for b, x in zip(space.bound, d)), d)


def t(space: FockSpace, mu: MultiWord) -> FockOperator:
    """T_mu as the product T_delta T_mu' over the first letter delta of mu
    (in the highest nonempty coordinate); generators are built directly."""
    _check(space, mu)
    cached = space._cache.get(mu)
    if cached is not None:
        return cached
    if mu.total_length <= 1:
        out = t_direct(space, mu)
    else:
        i = max(j for j, c in enumerate(mu.coords) if c)
        head = MultiWord.generator(mu.alphabet, i + 1, mu.coords[i][0])
        rest = mu.strip_prefix(head)
        out = t(space, head) @ t(space, rest)
    space._cache[mu] = out
    return out


def t_star(space: FockSpace, mu: MultiWord) -> FockOperator:
    """The adjoint of T_mu, exact on every basis vector."""
    T = t(space, mu)
    d = tuple(mu.multilength())
    return FockOperator(space, T.matrix.T.tocsr(), tuple(space.bound), tuple(-x for x in d))


def range_projection(space: FockSpace, mu: MultiWord) -> FockOperator:
    """T_mu T_mu^*, computed as a product."""
    return t(space, mu) @ t_star(space, mu)


def source_projection(space: FockSpace, mu: MultiWord) -> FockOperator:
    """T_mu^* T_mu."""
    return t_star(space, mu) @ t(space, mu)


def p_color(space: FockSpace, i: int) -> FockOperator:
    """P_i: 1 at the words with a nonempty i-th coordinate."""
    if not 1 <= i <= space.rank:
        raise StructuralError(f"color {i} outside [1, {space.rank}]")
    return space.diagonal((space.degrees[:, i - 1] > 0).astype(np.int64))


def q(space: FockSpace, colors: Iterable[int]) -> FockOperator:
    """Q_F, the product of I - P_i over i in F."""
    out = space.identity()
    for i in sorted(set(colors)):
        out = out @ (space.identity() - p_color(space, i))
    return out


# ---------------------------------------------------------------- Nica covariance


def check_nica(space: FockSpace, mu: MultiWord, nu: MultiWord) -> bool:
    """T_mu T_mu^* T_nu T_nu^* against T_{mu v nu} T_{mu v nu}^* or 0."""
    lhs = range_projection(space, mu) @ range_projection(space, nu)
    j = mu.join(nu)
    if j is None or not space.language.member(j):
        return lhs.is_zero()
    return lhs.equals(range_projection(space, j))


@dataclass
class NicaReport:
    pairs: int
    projections_checked: int
    failures: list

    @property
    def holds(self) -> bool:
        return not self.failures


def check_nica_bulk(space: FockSpace, bound: MultiDegree | None = None) -> NicaReport:
    """Nica covariance for every member pair with |mu v nu| <= bound.

    Each range projection is built as a matrix product and checked to be the
    diagonal of its prefix set; the pairwise identities are then products of
    diagonals, compared as packed bitsets.  Joins are looked up in
    per-coordinate tables.
    """
    bound = space.bound if bound is None else MultiDegree(bound)
    members = [w for w in space.basis if w.multilength() <= bound]
    rows = []
    for mu in members:
        P = range_projection(space, mu)
        diag = P.diagonal_values()
        if P.matrix.count_nonzero() != int(np.count_nonzero(diag)) or not P.is_zero_one():
            return NicaReport(0, len(rows), [("not-diagonal", str(mu))])
        rows.append(diag != 0)
    if not members:
        return NicaReport(0, 0, [])
    B = np.packbits(np.array(rows), axis=1)
    B = np.vstack([B, np.zeros((1, B.shape[1]), dtype=B.dtype)])
    zero_row = len(members)
    # coordinate words below the bound, their join tables and a code for each member
    codes = np.zeros(len(members), dtype=np.int64)
    coord_idx, tables, radix = [], [], 1
    for i, n in enumerate(bound):
        words = sorted({w.coords[i] for w in members}, key=lambda c: (len(c), c))
        pos = {c: k for k, c in enumerate(words)}
        T = np.full((len(words), len(words)), -1, dtype=np.int64)
        for a, x in enumerate(words):
            for b, y in enumerate(words):
                if y.startswith(x):
                    T[a, b] = pos.get(y, -1)
                elif x.startswith(y):
                    T[a, b] = pos.get(x, -1)
        col = np.array([pos[w.coords[i]] for w in members], dtype=np.int64)
        coord_idx.append(col)
        tables.append((T, radix))
        codes += col * radix
        radix *= len(words)
    lookup = dict(zip(codes.tolist(), range(len(members))))
    failures = []
    pairs = 0
    for a in range(len(members)):
        rest = np.arange(a, len(members))
        code = np.zeros(len(rest), dtype=np.int64)
        dead = np.zeros(len(rest), dtype=bool)
        for col, (T, r) in zip(coord_idx, tables):
            j = T[col[a], col[rest]]
            dead |= j < 0
            code += np.where(j < 0, 0, j) * r
        target = np.array([zero_row if d else lookup.get(c, zero_row) for c, d in zip(code.tolist(), dead.tolist())])
        bad = np.any((B[a] & B[rest]) != B[target], axis=1)
        pairs += len(rest)
        for b in rest[bad][:5]:
            failures.append((str(members[a]), str(members[b])))
    return NicaReport(pairs, len(members), failures)


# ---------------------------------------------------------------- checkers avatar


def class_diagonal(space: FockSpace, G: LabeledRankGraph, values) -> FockOperator:
    """The diagonal operator e_w -> values[[w]] e_w."""
    out = []
    for w in space.basis:
        v = G.vertex_of_word(w)
        if v is None:
            raise StructuralError(f"{w} has no class in the graph")
        out.append(values[v])
    return space.diagonal(np.array([int(x) for x in out], dtype=np.int64))


def cross_check_checker(space: FockSpace, a, operator: FockOperator) -> bool:
    """A checker element pulled back through classes against a Fock operator."""
    if any(x.denominator != 1 for x in a.values):
        raise StructuralError("only integral checker elements have a Fock avatar here")
    return class_diagonal(space, a.graph, a.values).equals(operator)


def alpha(space: FockSpace, mu: MultiWord, a: FockOperator) -> FockOperator:
    """T_mu^* a T_mu."""
    return t_star(space, mu) @ a @ t(space, mu)


def minimal_projection_count(space: FockSpace, n: MultiDegree) -> int:
    """Atoms of the Boolean algebra generated by the T_mu^* T_mu, |mu| <= n,
    counted over the basis vectors where all of them are exact."""
    n = MultiDegree(n)
    gens = [source_projection(space, mu) for mu in space.basis if mu.multilength() <= n]
    valid = tuple(b - x for b, x in zip(space.bound, n))
    cols = space.valid_columns(valid)
    if not len(cols):
        return 0
    sig = np.stack([P.diagonal_values()[cols] for P in gens], axis=1) if gens else np.zeros((len(cols), 0))
    return len({row.tobytes() for row in sig.astype(np.int8)})


# ---------------------------------------------------------------- TCK family


def path_label(G: LabeledRankGraph, K: RankGraph, lam: Path) -> MultiWord:
    coords = [bytearray() for _ in range(G.rank)]
    for eid in lam.edges:
        e = G.edges[int(eid[1:])]
        coords[e.color - 1].append(e.letter)
    return MultiWord(coords, G.alphabet)


@dataclass
class FamilyReport:
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def record(self, name: str, ok: bool, detail=None) -> None:
        total, bad = self.checks.get(name, (0, 0))
        self.checks[name] = (total + 1, bad + (0 if ok else 1))
        if not ok:
            self.failures.append((name, detail))

    def holds(self, name: str | None = None) -> bool:
        if name is None:
            return not self.failures
        total, bad = self.checks.get(name, (0, 0))
        return total > 0 and bad == 0

    def as_dict(self) -> dict:
        return {
            "checks": {k: {"total": a, "failed": b} for k, (a, b) in sorted(self.checks.items())},
            "failures": [[n, d] for n, d in self.failures[:20]],
        }


class TCKFamily:
    """t_lam = T_{label(lam)} p_{s(lam)} for the paths of a labeled graph."""

    def __init__(self, space: FockSpace, G: LabeledRankGraph):
        self.space = space
        self.graph = G
        self.kgraph = G.to_rank_graph()
        classes = []
        for w in space.basis:
            v = G.vertex_of_word(w)
            if v is None:
                raise StructuralError(f"{w} is not spelled from the root")
            classes.append(v)
        self.classes = np.array(classes, dtype=np.int64)

    def p(self, v: int) -> FockOperator:
        return self.space.diagonal((self.classes == v).astype(np.int64))

    def label(self, lam: Path) -> MultiWord:
        return path_label(self.graph, self.kgraph, lam)

    def t(self, lam: Path) -> FockOperator:
        return t(self.space, self.label(lam)) @ self.p(lam.source)

    def t_star(self, lam: Path) -> FockOperator:
        return self.p(lam.source) @ t_star(self.space, self.label(lam))

    def ck_defect(self, v: int, colors: Iterable[int]) -> FockOperator:
        out = self.p(v)
        for i in sorted(set(colors)):
            for eid in self.kgraph.edges_into(v, i):
                lam = self.kgraph.edge_path(eid)
                out = out @ (self.p(v) - self.t(lam) @ self.t_star(lam))
        return out


def cross_check_family(space: FockSpace, G: LabeledRankGraph, degree: MultiDegree | None = None) -> FamilyReport:
    """(P), (HR), (NC) for paths of degree <= ``degree`` and the (CK') defects."""
    from .kgraph import f_tracing
    from .projcalc import nonempty_subsets

    fam = TCKFamily(space, G)
    K = fam.kgraph
    rep = FamilyReport()
    degree = MultiDegree.constant(G.rank, 1) if degree is None else MultiDegree(degree)
    ps = [fam.p(v) for v in range(len(G))]
    total = space.zero()
    for v, P in enumerate(ps):
        total = total + P
        rep.record("P-projection", (P @ P).equals(P) and P.is_zero_one(), G.vertices[v])
        for u in range(v + 1, len(G)):
            rep.record("P-orthogonal", (P @ ps[u]).is_zero(), (G.vertices[v], G.vertices[u]))
    rep.record("P-sum", total.equals(space.identity()))
    paths = K.all_paths(degree)
    ts = {lam: fam.t(lam) for lam in paths}
    tss = {lam: fam.t_star(lam) for lam in paths}
    for lam in paths:
        rep.record("HR-source", (tss[lam] @ ts[lam]).equals(ps[lam.source]), K.format_path(lam))
        rep.record("HR-range", (ps[lam.range] @ ts[lam]).equals(ts[lam]), K.format_path(lam))
    for lam, mu in itertools.product(paths, repeat=2):
        prod = ts[lam] @ ts[mu]
        if lam.source == mu.range:
            comp = K.compose(lam, mu)
            want = fam.t(comp)
            ok = prod.equals(want) and prod.is_zero_one()
        else:
            ok = prod.is_zero()
        rep.record("HR", ok, (K.format_path(lam), K.format_path(mu)))
        lhs = tss[lam] @ ts[mu]
        rhs = space.zero()
        for a, b in lambda_min(K, lam, mu):
            rhs = rhs + fam.t(a) @ fam.t_star(b)
        rep.record("NC", lhs.equals(rhs), (K.format_path(lam), K.format_path(mu)))
    for F in nonempty_subsets(G.rank):
        tracing = f_tracing(K, F)
        Q = q(space, F)
        for v in range(len(G)):
            D = fam.ck_defect(v, F)
            rep.record("CK-defect-is-pvQF", D.equals(ps[v] @ Q), (G.vertices[v], list(F)))
            if v in tracing:
                rep.record("CK-defect-nonzero", not D.is_zero(), (G.vertices[v], list(F)))
    return rep
