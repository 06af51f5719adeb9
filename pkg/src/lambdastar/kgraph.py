"""Finite higher-rank graphs given by colored edges and factorization squares.

Conventions: an edge runs from its source ``s`` to its range ``r``, and a
path ``e_1 e_2 ... e_t`` is read right to left, so ``s(e_i) = r(e_{i+1})``,
``r(path) = r(e_1)`` and ``s(path) = s(e_t)``.  Paths are kept in
color-sorted normal form: all color-1 edges first (range side), then
color 2, and so on.

A square maps a two-edge path ``(a, b)`` with distinct colors to the path
``(b', a')`` that has the colors swapped and the same range and source.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .language import Verdict, Violation
from .multiword import MultiDegree, StructuralError


@dataclass(frozen=True)
class Edge:
    id: str
    src: int
    dst: int
    color: int


@dataclass(frozen=True, order=True)
class Path:
    """A normal-form path; a vertex path has no edges."""

    sort_key: tuple = field(init=False, repr=False, compare=True)
    edges: tuple[str, ...] = field(compare=False)
    range: int = field(compare=False)
    source: int = field(compare=False)
    degree: MultiDegree = field(compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "sort_key", (sum(self.degree), tuple(self.degree), self.edges, self.range)
        )

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    def __hash__(self) -> int:
        return hash(self.sort_key)

    def __eq__(self, other) -> bool:
        return isinstance(other, Path) and self.sort_key == other.sort_key

    def __len__(self) -> int:
        return len(self.edges)


class RankGraph:
    """A finite k-graph; build with :meth:`from_json` or the constructor."""

    def __init__(
        self,
        rank: int,
        vertices: Sequence[str],
        edges: Iterable[Edge],
        squares: dict[tuple[str, str], tuple[str, str]] | Iterable = (),
    ):
        self.rank = int(rank)
        self.vertices = list(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise StructuralError("duplicate vertex ids")
        self.vertex_index = {v: j for j, v in enumerate(self.vertices)}
        self.edges: dict[str, Edge] = {}
        for e in edges:
            if e.id in self.edges:
                raise StructuralError(f"duplicate edge id {e.id!r}")
            if not 1 <= e.color <= self.rank:
                raise StructuralError(f"edge {e.id} has color {e.color} outside [1, {self.rank}]")
            if not (0 <= e.src < len(self.vertices) and 0 <= e.dst < len(self.vertices)):
                raise StructuralError(f"edge {e.id} refers to a missing vertex")
            self.edges[e.id] = e
        sq: dict[tuple[str, str], tuple[str, str]] = {}
        pairs = squares.items() if isinstance(squares, dict) else squares
        for left, right in pairs:
            left, right = tuple(left), tuple(right)
            for a in left + right:
                if a not in self.edges:
                    raise StructuralError(f"square mentions unknown edge {a!r}")
            for x, y in ((left, right), (right, left)):
                if x in sq and sq[x] != y:
                    raise StructuralError(f"path {x} has two square images")
                sq[x] = y
        self.squares = sq
        self._into: dict[tuple[int, int], list[str]] = {}
        for e in self.edges.values():
            self._into.setdefault((e.dst, e.color), []).append(e.id)
        for lst in self._into.values():
            lst.sort()

    # basic queries

    def r(self, eid: str) -> int:
        return self.edges[eid].dst

    def s(self, eid: str) -> int:
        return self.edges[eid].src

    def color(self, eid: str) -> int:
        return self.edges[eid].color

    def edges_into(self, v: int, color: int) -> list[str]:
        """Edges of the given color with range v, i.e. v Lambda^{e_color}."""
        return self._into.get((v, color), [])

    def receives(self, v: int, color: int) -> bool:
        return bool(self._into.get((v, color)))

    def vertex(self, name: str | int) -> int:
        if isinstance(name, int):
            return name
        try:
            return self.vertex_index[name]
        except KeyError:
            raise StructuralError(f"unknown vertex {name!r}") from None

    def vertex_path(self, v: int | str) -> Path:
        v = self.vertex(v)
        return Path(edges=(), range=v, source=v, degree=MultiDegree.zero(self.rank))

    def edge_path(self, eid: str) -> Path:
        e = self.edges[eid]
        return Path(edges=(eid,), range=e.dst, source=e.src, degree=MultiDegree.unit(self.rank, [e.color]))

    # normal forms

    def _check_chain(self, edges: Sequence[str]) -> None:
        for a, b in zip(edges, edges[1:]):
            if self.s(a) != self.r(b):
                raise StructuralError(f"edges {a} and {b} do not compose")

    def _swap(self, a: str, b: str) -> tuple[str, str]:
        try:
            return self.squares[(a, b)]
        except KeyError:
            raise StructuralError(f"path {a}{b} has no opposite-color factorization") from None

    def reorder(self, edges: Sequence[str], colors: Sequence[int]) -> list[str]:
        """The representative of ``edges`` whose color sequence is ``colors``."""
        seq = list(edges)
        if sorted(self.color(e) for e in seq) != sorted(colors):
            raise StructuralError("target color sequence has the wrong census")
        for p, c in enumerate(colors):
            q = p
            while self.color(seq[q]) != c:
                q += 1
            while q > p:
                seq[q - 1], seq[q] = self._swap(seq[q - 1], seq[q])
                q -= 1
        return seq

    def normalize(self, edges: Sequence[str], vertex: int | None = None) -> Path:
        """Color-sorted normal form of a composable edge list."""
        edges = list(edges)
        for e in edges:
            if e not in self.edges:
                raise StructuralError(f"unknown edge {e!r}")
        if not edges:
            if vertex is None:
                raise StructuralError("an empty path needs a vertex")
            return self.vertex_path(vertex)
        self._check_chain(edges)
        seq = edges
        changed = True
        # bubble sort with squares; each swap removes one inversion
        while changed:
            changed = False
            for j in range(len(seq) - 1):
                if self.color(seq[j]) > self.color(seq[j + 1]):
                    seq[j], seq[j + 1] = self._swap(seq[j], seq[j + 1])
                    changed = True
        deg = [0] * self.rank
        for e in seq:
            deg[self.color(e) - 1] += 1
        return Path(edges=tuple(seq), range=self.r(seq[0]), source=self.s(seq[-1]), degree=MultiDegree(deg))

    def compose(self, lam: Path, mu: Path) -> Path | None:
        """lam mu, or None when s(lam) != r(mu)."""
        if lam.source != mu.range:
            return None
        if lam.is_vertex:
            return mu
        if mu.is_vertex:
            return lam
        return self.normalize(lam.edges + mu.edges)

    def parse_path(self, text: str) -> Path:
        """``"@v"`` for a vertex, else comma-separated edge ids."""
        text = text.strip()
        if text.startswith("@"):
            return self.vertex_path(text[1:])
        ids = [t.strip() for t in text.split(",") if t.strip()]
        return self.normalize(ids)

    def format_path(self, p: Path) -> str:
        if p.is_vertex:
            return "@" + self.vertices[p.range]
        return ",".join(p.edges)

    # enumeration

    def paths(self, v: int | str, n: MultiDegree | Sequence[int]) -> list[Path]:
        """All normal-form paths with range v and degree n."""
        v = self.vertex(v)
        n = MultiDegree(n)
        if len(n) != self.rank:
            raise StructuralError(f"degree {n} does not have rank {self.rank}")
        colors = [c + 1 for c in range(self.rank) for _ in range(n[c])]
        out: list[Path] = []

        def grow(prefix: list[str], at: int, pos: int):
            if pos == len(colors):
                if prefix:
                    out.append(Path(tuple(prefix), v, at, n))
                else:
                    out.append(self.vertex_path(v))
                return
            for e in self.edges_into(at, colors[pos]):
                prefix.append(e)
                grow(prefix, self.s(e), pos + 1)
                prefix.pop()

        grow([], v, 0)
        out.sort()
        return out

    def paths_below(self, v: int | str, bound: MultiDegree) -> list[Path]:
        out = []
        for n in MultiDegree(bound).below():
            out.extend(self.paths(v, n))
        out.sort()
        return out

    def all_paths(self, bound: MultiDegree) -> list[Path]:
        out = []
        for v in range(len(self.vertices)):
            out.extend(self.paths_below(v, bound))
        out.sort()
        return out

    # serialization

    def to_json(self) -> dict:
        seen = set()
        squares = []
        for left, right in sorted(self.squares.items()):
            if right in seen:
                continue
            seen.add(left)
            squares.append([list(left), list(right)])
        return {
            "rank": self.rank,
            "vertices": list(self.vertices),
            "edges": [
                {"id": e.id, "src": self.vertices[e.src], "dst": self.vertices[e.dst], "color": e.color}
                for e in sorted(self.edges.values(), key=lambda e: e.id)
            ],
            "squares": squares,
        }

    @classmethod
    def from_json(cls, data: dict) -> RankGraph:
        vertices = [str(v["id"]) if isinstance(v, dict) else str(v) for v in data["vertices"]]
        index = {v: j for j, v in enumerate(vertices)}
        edges = []
        for e in data["edges"]:
            try:
                edges.append(Edge(str(e["id"]), index[str(e["src"])], index[str(e["dst"])], int(e["color"])))
            except KeyError as exc:
                raise StructuralError(f"edge {e} refers to unknown vertex {exc}") from None
        squares = [(tuple(map(str, a)), tuple(map(str, b))) for a, b in data.get("squares", [])]
        return cls(int(data["rank"]), vertices, edges, squares)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_dot(self, name: str = "kgraph") -> str:
        styles = ("solid", "dotted", "dashed", "bold", "tapered")
        lines = [f"digraph {name} {{"]
        for j, v in enumerate(self.vertices):
            lines.append(f'  v{j} [label="{v}"];')
        for e in sorted(self.edges.values(), key=lambda e: e.id):
            lines.append(
                f'  v{e.src} -> v{e.dst} [label="{e.id}", style={styles[(e.color - 1) % len(styles)]}];'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"RankGraph(rank={self.rank}, vertices={len(self.vertices)}, edges={len(self.edges)})"


# ---------------------------------------------------------------- validation


def composable_pairs(G: RankGraph):
    """All (a, b) with s(a) = r(b) and distinct colors, sorted."""
    for a in sorted(G.edges):
        at = G.s(a)
        for c in range(1, G.rank + 1):
            if c == G.color(a):
                continue
            for b in G.edges_into(at, c):
                yield a, b


def validate_kgraph(G: RankGraph) -> list[Violation]:
    """Square totality, bijectivity, range/source preservation, hexagons."""
    out: list[Violation] = []
    for x, y in sorted(G.squares.items()):
        a, b = x
        bp, ap = y
        if G.s(a) != G.r(b):
            out.append(Violation("square-not-path", f"square side {a}{b} is not a path", x))
            continue
        if G.s(bp) != G.r(ap):
            out.append(Violation("square-not-path", f"square side {bp}{ap} is not a path", y))
            continue
        if G.color(a) == G.color(b):
            out.append(Violation("square-colors", f"square side {a}{b} is single-colored", x))
        if (G.color(bp), G.color(ap)) != (G.color(b), G.color(a)):
            out.append(Violation("square-colors", f"square {a}{b} ~ {bp}{ap} does not swap colors", (x, y)))
        if G.r(a) != G.r(bp) or G.s(b) != G.s(ap):
            out.append(Violation("square-endpoints", f"square {a}{b} ~ {bp}{ap} changes range or source", (x, y)))
        if G.squares.get(y) != x:
            out.append(Violation("square-bijective", f"square {a}{b} ~ {bp}{ap} is not involutive", (x, y)))
    for a, b in composable_pairs(G):
        if (a, b) not in G.squares:
            out.append(
                Violation("square-missing", f"path {a}{b} has no opposite-color factorization", (a, b))
            )
    if out:
        return out
    if G.rank >= 3:
        out.extend(_hexagons(G))
    return out


def _hexagons(G: RankGraph) -> list[Violation]:
    out = []
    for a in sorted(G.edges):
        for b in _into_other(G, G.s(a), {G.color(a)}):
            for c in _into_other(G, G.s(b), {G.color(a), G.color(b)}):
                x = [a, b, c]
                r1 = _apply(G, x, (0, 1, 0))
                r2 = _apply(G, x, (1, 0, 1))
                if r1 != r2:
                    out.append(
                        Violation(
                            "hexagon",
                            f"non-confluent triple {a}{b}{c}: {''.join(r1)} vs {''.join(r2)}",
                            (tuple(x), tuple(r1), tuple(r2)),
                        )
                    )
    return out


def _into_other(G: RankGraph, v: int, avoid: set[int]):
    for c in range(1, G.rank + 1):
        if c not in avoid:
            yield from G.edges_into(v, c)


def _apply(G: RankGraph, seq: list[str], positions) -> list[str]:
    seq = list(seq)
    for p in positions:
        seq[p], seq[p + 1] = G._swap(seq[p], seq[p + 1])
    return seq


# ---------------------------------------------------------------- alignment


def lambda_min(G: RankGraph, lam: Path, mu: Path) -> list[tuple[Path, Path]]:
    """Pairs (alpha, beta) with lam alpha = mu beta at degree d(lam) v d(mu)."""
    if lam.range != mu.range:
        return []
    D = lam.degree | mu.degree
    target = [c + 1 for c in range(G.rank) for _ in range(mu.degree[c])]
    rest = D - mu.degree
    target += [c + 1 for c in range(G.rank) for _ in range(rest[c])]
    out = []
    for alpha in G.paths(lam.source, D - lam.degree):
        full = list(lam.edges + alpha.edges)
        if not full:
            out.append((alpha, G.vertex_path(lam.source)))
            continue
        seq = G.reorder(full, target)
        k = len(mu.edges)
        if tuple(seq[:k]) != mu.edges:
            continue
        tail = seq[k:]
        beta = G.normalize(tail) if tail else G.vertex_path(mu.source)
        out.append((alpha, beta))
    out.sort()
    return out


def strong_alignment_census(G: RankGraph, lam: Path, i: int) -> tuple[int, list[str]]:
    """Color-i edges e with Lambda^min(lam, e) nonempty."""
    if lam.degree[i - 1]:
        raise StructuralError(f"color {i} is not perpendicular to d(lambda) = {lam.degree}")
    hits = [
        e
        for e in sorted(G.edges)
        if G.color(e) == i and lambda_min(G, lam, G.edge_path(e))
    ]
    return len(hits), hits


def f_tracing(G: RankGraph, F: Iterable[int]) -> set[int]:
    """Vertices v such that every source of a path into v with degree
    perpendicular to F receives an edge of some color in F."""
    F = set(F)
    if not F:
        raise StructuralError("F must be nonempty")
    others = [c for c in range(1, G.rank + 1) if c not in F]
    good = [any(G.receives(u, c) for c in F) for u in range(len(G.vertices))]
    out = set()
    for v in range(len(G.vertices)):
        seen = {v}
        stack = [v]
        ok = True
        while stack and ok:
            u = stack.pop()
            if not good[u]:
                ok = False
                break
            for c in others:
                for e in G.edges_into(u, c):
                    w = G.s(e)
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        if ok:
            out.add(v)
    return out


def is_exhaustive(
    G: RankGraph,
    v: int | str,
    S: Sequence[Path],
    degree_bound: MultiDegree,
) -> Verdict:
    """Three-valued test that S meets every path of v Lambda via Lambda^min.

    ``"yes"`` is returned when S contains every color-i edge into v for all
    i in some F with v F-tracing, or when every path lam at v with d(lam)
    below the join D of the degrees in S either has a prefix in S, or meets
    S and cannot be extended past D (s(lam) receives no edge of a color in
    which lam already reaches D).
    """
    v = G.vertex(v)
    S = list(S)
    for mu in S:
        if mu.range != v:
            raise StructuralError(f"{G.format_path(mu)} does not have range {G.vertices[v]}")
    candidates = G.paths_below(v, degree_bound)
    for lam in candidates:
        if not any(lambda_min(G, lam, mu) for mu in S):
            return Verdict("no", lam, {"method": "bounded-search"})
    edge_set = {mu.edges[0] for mu in S if len(mu.edges) == 1}
    colors = range(1, G.rank + 1)
    for size in range(1, G.rank + 1):
        for F in itertools.combinations(colors, size):
            needed = {e for c in F for e in G.edges_into(v, c)}
            if needed <= edge_set and v in f_tracing(G, F):
                return Verdict("yes", None, {"method": "F-tracing edge set", "F": F})
    D = MultiDegree.zero(G.rank)
    for mu in S:
        D = D | mu.degree
    if S and D <= degree_bound:
        saturated = True
        for lam in G.paths_below(v, D):
            if any(_is_prefix(G, mu, lam) for mu in S):
                continue
            boundary = [c for c in colors if lam.degree[c - 1] == D[c - 1]]
            if all(not G.receives(lam.source, c) for c in boundary):
                continue
            saturated = False
            break
        if saturated:
            return Verdict("yes", None, {"method": "saturation", "D": D})
    return Verdict("inconclusive", None, {"checked": len(candidates)})


def _is_prefix(G: RankGraph, mu: Path, lam: Path) -> bool:
    """lam = mu lam' for some path lam'."""
    if mu.range != lam.range or not mu.degree <= lam.degree:
        return False
    if mu.is_vertex:
        return True
    colors = [c + 1 for c in range(G.rank) for _ in range(mu.degree[c])]
    rest = lam.degree - mu.degree
    colors += [c + 1 for c in range(G.rank) for _ in range(rest[c])]
    seq = G.reorder(list(lam.edges), colors)
    return tuple(seq[: len(mu.edges)]) == mu.edges


def is_prefix(G: RankGraph, mu: Path, lam: Path) -> bool:
    return _is_prefix(G, mu, lam)


# ---------------------------------------------------------------- builders


def labeled_to_rank_graph(LG) -> RankGraph:
    """Underlying k-graph of a labeled graph with label-induced squares.

    ab ~ b'a' when the labels agree letterwise; each composable two-color
    path must have exactly one partner.
    """
    edges = [Edge(f"e{j}", e.src, e.dst, e.color) for j, e in enumerate(LG.edges)]
    lab = {f"e{j}": (e.color, e.letter) for j, e in enumerate(LG.edges)}
    G = RankGraph(LG.rank, LG.vertices, edges)
    squares = {}
    for a, b in composable_pairs(G):
        matches = []
        for bp in G.edges_into(G.r(a), G.color(b)):
            if lab[bp] != lab[b]:
                continue
            for ap in G.edges_into(G.s(bp), G.color(a)):
                if lab[ap] == lab[a] and G.s(ap) == G.s(b):
                    matches.append((bp, ap))
        if len(matches) > 1:
            raise StructuralError(f"labels do not determine a square for {a}{b}")
        if matches:
            squares[(a, b)] = matches[0]
    return RankGraph(LG.rank, LG.vertices, edges, squares)


def minimal_2graph() -> RankGraph:
    """One vertex, one blue edge e (color 1), one red edge f, ef ~ fe."""
    return RankGraph(2, ["v"], [Edge("e", 0, 0, 1), Edge("f", 0, 0, 2)], [(("e", "f"), ("f", "e"))])


def fan_graph(n: int) -> RankGraph:
    """n branches of a 2-graph that is not strongly compactly aligned, bold = color 1.

    Vertices v, w, a_k = s(h_k) = r(f_k), b_k = s(g_k) = s(f_k); dotted e
    from w to v; squares e g_k ~ h_k f_k.
    """
    verts = ["v", "w"] + [f"a{k}" for k in range(1, n + 1)] + [f"b{k}" for k in range(1, n + 1)]
    idx = {x: j for j, x in enumerate(verts)}
    edges = [Edge("e", idx["w"], idx["v"], 2)]
    squares = []
    for k in range(1, n + 1):
        edges.append(Edge(f"h{k}", idx[f"a{k}"], idx["v"], 1))
        edges.append(Edge(f"g{k}", idx[f"b{k}"], idx["w"], 1))
        edges.append(Edge(f"f{k}", idx[f"b{k}"], idx[f"a{k}"], 2))
        squares.append((("e", f"g{k}"), (f"h{k}", f"f{k}")))
    return RankGraph(2, verts, edges, squares)


def product_rank_graph(graphs: Sequence[tuple[list[str], list[tuple[str, int, int]]]]) -> RankGraph:
    """Cartesian product of directed graphs, factor i giving color i.

    Each factor is (vertex ids, [(edge id, src, dst)]).  Squares pair the
    two orders of a step in factor i and a step in factor j.
    """
    rank = len(graphs)
    verts = list(itertools.product(*(range(len(vs)) for vs, _ in graphs)))
    vidx = {v: j for j, v in enumerate(verts)}
    names = [".".join(graphs[i][0][c] for i, c in enumerate(v)) for v in verts]
    edges = []
    moves = {}
    for v in verts:
        for i, (_, es) in enumerate(graphs):
            for eid, src, dst in es:
                if v[i] != src:
                    continue
                w = v[:i] + (dst,) + v[i + 1:]
                name = f"{eid}@{names[vidx[v]]}"
                edges.append(Edge(name, vidx[v], vidx[w], i + 1))
                moves[(vidx[v], i, eid)] = name
    squares = []
    G0 = RankGraph(rank, names, edges)
    for a, b in composable_pairs(G0):
        ea, eb = G0.edges[a], G0.edges[b]
        ia, ib = ea.color - 1, eb.color - 1
        base_a = a.split("@")[0]
        base_b = b.split("@")[0]
        # b then a from s(b); swapped: a-step first from s(b), then b-step
        src = G0.edges[b].src
        ap = moves.get((src, ia, base_a))
        if ap is None:
            continue
        bp = moves.get((G0.edges[ap].dst, ib, base_b))
        if bp is None:
            continue
        squares.append(((a, b), (bp, ap)))
    return RankGraph(rank, names, edges, _dedupe(squares))


def _dedupe(squares):
    out = {}
    for x, y in squares:
        if y in out and out[y] == x:
            continue
        out[x] = y
    return list(out.items())
