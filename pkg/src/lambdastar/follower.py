"""Follower-set equivalence, soficity, and the labeled follower set graph.

For a level n, mu ~_n nu when {w : w*mu member, |w| <= n} equals the same
set for nu, where |w| <= n is read coordinatewise.  Extension sets are
stored as packed bitmasks over the grid of all multi-words below n (grid
order is ``itertools.product`` of the per-coordinate word lists), so two
words are equivalent iff their keys are equal bytes.
"""

from __future__ import annotations

import functools
import heapq
import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .language import (
    ForbiddenWords,
    LabeledGraph,
    Language,
    Oracle,
    ResourceLimitError,
    Verdict,
    enumerate_words,
)
from .multiword import (
    MultiDegree,
    MultiWord,
    StructuralError,
    coordinate_words,
    format_word,
    parse_word,
)

MAX_GRID = 4_000_000
MAX_STATES = 200_000
DEFAULT_MAX_LEVEL = 4

_DOT_STYLES = ("solid", "dotted", "dashed", "bold", "tapered")


class NotSoficError(ValueError):
    """The follower graph was requested for a language not shown sofic."""


# ---------------------------------------------------------------- labeled graphs


@dataclass(frozen=True, order=True)
class LabeledEdge:
    src: int
    dst: int
    color: int
    letter: int


class LabeledRankGraph:
    """A finite colored graph whose color-i edges carry labels delta_i(k).

    Paths are read right to left: a path from source u to range v labelled
    mu is found by reading the letters of mu starting at u, coordinate N
    first, each coordinate from its last letter to its first.
    """

    def __init__(
        self,
        alphabet: Sequence[int],
        vertices: Sequence[str],
        edges: Iterable[LabeledEdge | tuple],
        representatives: Sequence[MultiWord | None] | None = None,
    ):
        self.alphabet = tuple(int(d) for d in alphabet)
        self.vertices = list(vertices)
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise StructuralError("duplicate vertex ids")
        self.representatives = list(representatives) if representatives else [None] * n
        es = []
        for e in edges:
            e = e if isinstance(e, LabeledEdge) else LabeledEdge(*e)
            if not (0 <= e.src < n and 0 <= e.dst < n):
                raise StructuralError(f"edge {e} refers to a missing vertex")
            if not 1 <= e.color <= self.rank:
                raise StructuralError(f"edge {e} has color outside [1, {self.rank}]")
            if not 0 <= e.letter < self.alphabet[e.color - 1]:
                raise StructuralError(f"edge {e} has letter outside its alphabet")
            es.append(e)
        self.edges = es
        self._out: dict[tuple[int, int, int], list[int]] = {}
        self._colors_out: list[set[int]] = [set() for _ in range(n)]
        self._colors_in: list[set[int]] = [set() for _ in range(n)]
        for e in es:
            self._out.setdefault((e.src, e.color, e.letter), []).append(e.dst)
            self._colors_out[e.src].add(e.color)
            self._colors_in[e.dst].add(e.color)

    @property
    def rank(self) -> int:
        return len(self.alphabet)

    @property
    def root(self) -> int:
        for v, rep in enumerate(self.representatives):
            if rep is not None and rep.is_empty():
                return v
        return 0

    def __len__(self) -> int:
        return len(self.vertices)

    def generators(self):
        for i in range(1, self.rank + 1):
            for k in range(self.alphabet[i - 1]):
                yield i, k

    def successors(self, v: int, color: int, letter: int) -> list[int]:
        return self._out.get((v, color, letter), [])

    def step(self, v: int | None, color: int, letter: int) -> int | None:
        """The unique target from v by (color, letter), or None."""
        if v is None:
            return None
        ts = self._out.get((v, color, letter))
        if not ts:
            return None
        if len(ts) > 1:
            raise StructuralError(f"vertex {self.vertices[v]} is not deterministic")
        return ts[0]

    def emits_color(self, v: int, color: int) -> bool:
        return color in self._colors_out[v]

    def receives_color(self, v: int, color: int) -> bool:
        return color in self._colors_in[v]

    def advance(self, states: Iterable[int], color: int, letter: int) -> frozenset[int]:
        out = set()
        for v in states:
            out.update(self._out.get((v, color, letter), ()))
        return frozenset(out)

    def follow(self, starts: Iterable[int], mu: MultiWord) -> frozenset[int]:
        """Ranges of the paths labelled mu whose source lies in ``starts``."""
        cur = frozenset(starts)
        for i in range(self.rank, 0, -1):
            for letter in reversed(mu.coords[i - 1]):
                if not cur:
                    return cur
                cur = self.advance(cur, i, letter)
        return cur

    def spells(self, mu: MultiWord) -> bool:
        return bool(self.follow(range(len(self.vertices)), mu))

    def vertex_of_word(self, mu: MultiWord, start: int | None = None) -> int | None:
        ends = self.follow([self.root if start is None else start], mu)
        if not ends:
            return None
        if len(ends) > 1:
            raise StructuralError("graph is not deterministic")
        return next(iter(ends))

    def is_deterministic(self) -> bool:
        return all(len(ts) <= 1 for ts in self._out.values())

    def is_source_resolving(self) -> bool:
        # per-color determinism at each source gives unique lifting of labels
        return self.is_deterministic()

    def color_subgraph(self, i: int) -> LabeledRankGraph:
        es = [LabeledEdge(e.src, e.dst, 1, e.letter) for e in self.edges if e.color == i]
        return LabeledRankGraph((self.alphabet[i - 1],), self.vertices, es)

    def to_rank_graph(self):
        """The underlying k-graph, with squares induced by the labels."""
        from .kgraph import labeled_to_rank_graph

        return labeled_to_rank_graph(self)

    # serialization

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "alphabet": list(self.alphabet),
            "vertices": [
                {"id": v, "representative": None if r is None else format_word(r)}
                for v, r in zip(self.vertices, self.representatives)
            ],
            "edges": [
                {
                    "src": self.vertices[e.src],
                    "dst": self.vertices[e.dst],
                    "color": e.color,
                    "letter": e.letter,
                }
                for e in self.edges
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> LabeledRankGraph:
        alphabet = data.get("alphabet")
        if alphabet is None:
            raise StructuralError("graph JSON needs an 'alphabet' list")
        if "rank" in data and int(data["rank"]) != len(alphabet):
            raise StructuralError("graph rank does not match its alphabet profile")
        ids, reps = [], []
        for v in data["vertices"]:
            if isinstance(v, dict):
                ids.append(str(v["id"]))
                r = v.get("representative")
                reps.append(None if r is None else parse_word(r, alphabet))
            else:
                ids.append(str(v))
                reps.append(None)
        index = {v: j for j, v in enumerate(ids)}
        edges = []
        for e in data["edges"]:
            try:
                edges.append(
                    LabeledEdge(index[str(e["src"])], index[str(e["dst"])], int(e["color"]), int(e["letter"]))
                )
            except KeyError as exc:
                raise StructuralError(f"edge {e} refers to unknown vertex {exc}") from None
        return cls(alphabet, ids, edges, reps)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    def to_dot(self, name: str = "follower") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for j, v in enumerate(self.vertices):
            rep = self.representatives[j]
            text = v if rep is None else f"[{format_word(rep)}]"
            lines.append(f'  v{j} [label="{text}"];')
        for e in self.edges:
            label = format_word(MultiWord.generator(self.alphabet, e.color, e.letter))
            style = _DOT_STYLES[(e.color - 1) % len(_DOT_STYLES)]
            lines.append(f'  v{e.src} -> v{e.dst} [label="{label}", style={style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"LabeledRankGraph(vertices={len(self.vertices)}, edges={len(self.edges)})"


def product_graph(graphs: Sequence[LabeledRankGraph]) -> LabeledRankGraph:
    """Cartesian product of rank-one labeled graphs; color i moves factor i."""
    alphabet = tuple(g.alphabet[0] for g in graphs)
    verts = list(itertools.product(*(range(len(g)) for g in graphs)))
    index = {v: j for j, v in enumerate(verts)}
    edges = []
    for v in verts:
        for i, g in enumerate(graphs):
            for e in g.edges:
                if e.src == v[i]:
                    w = v[:i] + (e.dst,) + v[i + 1:]
                    edges.append(LabeledEdge(index[v], index[w], i + 1, e.letter))
    ids = [",".join(g.vertices[c] for g, c in zip(graphs, v)) for v in verts]
    reps = None
    if all(r is not None for g in graphs for r in g.representatives):
        reps = [
            MultiWord([g.representatives[c].coords[0] for g, c in zip(graphs, v)], alphabet) for v in verts
        ]
    return LabeledRankGraph(alphabet, ids, edges, reps)


# ---------------------------------------------------------------- class automata


class ClassAutomaton:
    """A finite deterministic automaton whose states refine ~ on Lambda*.

    Transitions prepend a generator: state(delta_i(k) * mu) is a function of
    (state(mu), i, k).  States are explored cheapest word first, so
    ``words[s]`` is the shortest-lex word reaching s.  Moore refinement of
    the live states (missing transition = leaves the language) gives
    exactly the follower classes.
    """

    def __init__(self, L: Language, start, advance, state_of_word):
        self.L = L
        self._advance = advance
        self._state_of_word = state_of_word
        gens = list(L.generators())
        self.gens = gens
        empty = L.empty_word()
        index: dict = {}
        states: list = []
        words: list[MultiWord] = []
        counter = itertools.count()
        # Dijkstra over words in sort_key order; prepending is monotone
        frontier = [(empty.sort_key(), next(counter), empty, start)]
        while frontier:
            _, _, mu, st = heapq.heappop(frontier)
            if st in index:
                continue
            index[st] = len(states)
            states.append(st)
            words.append(mu)
            if len(states) > MAX_STATES:
                raise ResourceLimitError(f"class automaton exceeds {MAX_STATES} states")
            for i, k, g in gens:
                t = advance(st, i, k)
                if t is not None and t not in index:
                    w = g * mu
                    heapq.heappush(frontier, (w.sort_key(), next(counter), w, t))
        trans: list[list[int]] = []
        for st in states:
            row = []
            for i, k, _ in gens:
                t = advance(st, i, k)
                row.append(-1 if t is None else index[t])
            trans.append(row)
        self.states = states
        self.index = index
        self.words = words
        self.trans = trans
        self.block = _moore(trans)
        self.n_blocks = len(set(self.block))

    def state(self, mu: MultiWord) -> int | None:
        st = self._state_of_word(mu)
        return None if st is None else self.index.get(st)

    def class_representatives(self) -> list[tuple[MultiWord, list[int]]]:
        """(shortest-lex word, states) per Moore block, in word order."""
        groups: dict[int, list[int]] = {}
        for s, b in enumerate(self.block):
            groups.setdefault(b, []).append(s)
        out = [(min((self.words[s] for s in ss), key=MultiWord.sort_key), ss) for ss in groups.values()]
        out.sort(key=lambda t: t[0].sort_key())
        return out


def _forbidden_automaton(L: Language) -> ClassAutomaton:
    # state: per coordinate (prefix of length <= m_i - 1, frozenset of f
    # indices whose i-th component is a factor of the coordinate)
    forb = L.forbidden
    rank = L.rank
    m = L.source.max_multilength(rank)
    keep = [max(mi - 1, 0) for mi in m]
    comps = [[f.coords[i] for f in forb] for i in range(rank)]

    def coord_state(i, word: bytes, flags=frozenset()):
        hits = frozenset(j for j, p in enumerate(comps[i]) if j in flags or p in word)
        return (word[: keep[i]], hits)

    def live(st) -> bool:
        common = set(range(len(forb)))
        for _, hits in st:
            common &= hits
            if not common:
                return True
        return not common

    def advance(st, i, k):
        pre, hits = st[i - 1]
        head = bytes([k]) + pre
        new = list(st)
        new[i - 1] = coord_state(i - 1, head, hits)
        new = tuple(new)
        return new if live(new) else None

    def state_of_word(mu: MultiWord):
        st = tuple(coord_state(i, c) for i, c in enumerate(mu.coords))
        return st if live(st) else None

    start = state_of_word(L.empty_word())
    return ClassAutomaton(L, start, advance, state_of_word)


def _graph_automaton(L: Language) -> ClassAutomaton:
    # state: C_mu, the set of ranges of paths labelled mu
    graph = L.source.graph
    everything = frozenset(range(len(graph)))

    def advance(st, i, k):
        t = graph.advance(st, i, k)
        return t or None

    def state_of_word(mu):
        return graph.follow(everything, mu) or None

    if not everything:
        raise StructuralError("graph has no vertices")
    return ClassAutomaton(L, everything, advance, state_of_word)


def class_automaton(L: Language) -> ClassAutomaton | None:
    """The exact class automaton when the presentation provides one."""
    cached = getattr(L, "_class_automaton", None)
    if cached is not None:
        return cached
    if isinstance(L.source, ForbiddenWords):
        A = _forbidden_automaton(L)
    elif isinstance(L.source, LabeledGraph):
        A = _graph_automaton(L)
    else:
        return None
    L._class_automaton = A
    return A


# ---------------------------------------------------------------- Omega_n


@dataclass
class FollowerClass:
    index: int
    representative: MultiWord
    key: bytes
    members: list[MultiWord]
    _partition: "OmegaPartition" = field(repr=False, compare=False, default=None)

    @functools.cached_property
    def extension_set(self) -> list[MultiWord]:
        """Canonically sorted left extensions up to the partition level."""
        return self._partition.decode(self.key)


class OmegaPartition:
    """The quotient by ~_n, with classes ordered by representative.

    ``members`` of a class are sample words: the shortest-lex word of each
    automaton state when the language has a class automaton, else every
    member below the level.
    """

    def __init__(self, language: Language, level: MultiDegree, reps: list[MultiWord], keys: list[bytes], grid, automaton=None):
        self.language = language
        self.level = level
        self.automaton = automaton
        self._grid = grid
        self.classes: list[FollowerClass] = []
        self.class_of: dict[MultiWord, int] = {}
        self.key_index: dict[bytes, int] = {}
        order = sorted(range(len(reps)), key=lambda j: reps[j].sort_key())
        for j in order:
            mu, key = reps[j], keys[j]
            idx = self.key_index.get(key)
            if idx is None:
                idx = len(self.classes)
                self.key_index[key] = idx
                self.classes.append(FollowerClass(idx, mu, key, [], self))
            self.classes[idx].members.append(mu)
            self.class_of[mu] = idx
        self._state_class = None
        if automaton is not None:
            self._state_class = [self.class_of[w] for w in automaton.words]

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    @property
    def complete(self) -> bool:
        """True when every member of the language has a class here."""
        return self.automaton is not None

    def representatives(self) -> list[MultiWord]:
        return [c.representative for c in self.classes]

    def class_index(self, mu: MultiWord) -> int | None:
        """Class of an arbitrary member, or None."""
        idx = self.class_of.get(mu)
        if idx is not None:
            return idx
        if self.automaton is not None:
            s = self.automaton.state(mu)
            return None if s is None else self._state_class[s]
        if not self.language.member(mu):
            return None
        return self.key_index.get(extension_keys(self.language, [mu], self.level, self._grid)[0])

    def decode(self, key: bytes) -> list[MultiWord]:
        bits = np.unpackbits(np.frombuffer(key, dtype=np.uint8))
        alphabet = self.language.alphabet
        out = []
        for flag, t in zip(bits, itertools.product(*self._grid)):
            if flag:
                out.append(MultiWord._raw(t, alphabet))
        out.sort(key=MultiWord.sort_key)
        return out

    def sizes(self) -> list[int]:
        return [len(c.members) for c in self.classes]


def _grid(alphabet, level):
    grid = [coordinate_words(d, n) for d, n in zip(alphabet, level)]
    size = 1
    for g in grid:
        size *= len(g)
    if size > MAX_GRID:
        raise ResourceLimitError(f"extension grid at level {level} has {size} cells")
    return grid


def extension_keys(L: Language, reps: list[MultiWord], level: MultiDegree, grid=None) -> list[bytes]:
    """Packed extension-set bitmasks of ``reps`` at ``level``."""
    if grid is None:
        grid = _grid(L.alphabet, level)
    if isinstance(L.source, ForbiddenWords):
        return _forbidden_keys(L, reps, grid)
    alphabet = L.alphabet
    cells = [MultiWord._raw(t, alphabet) for t in itertools.product(*grid)]
    live = [j for j, w in enumerate(cells) if L.member(w)]
    out = []
    for mu in reps:
        bits = np.zeros(len(cells), dtype=np.uint8)
        for j in live:
            if L.member(cells[j] * mu):
                bits[j] = 1
        out.append(np.packbits(bits).tobytes())
    return out


def _forbidden_keys(L: Language, reps: list[MultiWord], grid) -> list[bytes]:
    forb = L.forbidden
    rank = L.rank
    cells = 1
    for g in grid:
        cells *= len(g)
    if not forb:
        full = np.packbits(np.ones(cells, dtype=np.uint8)).tobytes()
        return [full] * len(reps)
    # per coordinate: factor tables over the distinct right parts
    tables = []
    sig_of = []
    for i in range(rank):
        rights = sorted({mu.coords[i] for mu in reps})
        col = {r: j for j, r in enumerate(rights)}
        mats = [kernels.factor_matrix(grid[i], rights, f.coords[i]) for f in forb]
        canon: dict[tuple, int] = {}
        sig_id = {r: canon.setdefault(tuple(mt[:, j].tobytes() for mt in mats), len(canon)) for r, j in col.items()}
        tables.append((mats, col))
        sig_of.append(sig_id)
    groups: dict[tuple, bytes] = {}
    out = []
    for mu in reps:
        g = tuple(sig_of[i][mu.coords[i]] for i in range(rank))
        key = groups.get(g)
        if key is None:
            hit = np.zeros(cells, dtype=bool)
            for fi in range(len(forb)):
                vecs = [tables[i][0][fi][:, tables[i][1][mu.coords[i]]] for i in range(rank)]
                outer = functools.reduce(np.multiply.outer, vecs)
                hit |= outer.reshape(-1).astype(bool)
            key = np.packbits(~hit).tobytes()
            groups[g] = key
        out.append(key)
    return out


def omega(L: Language, n: MultiDegree, max_words: int | None = None) -> OmegaPartition:
    """The partition Omega_n = Lambda* / ~_n.

    With a class automaton (forbidden-word and graph presentations) every
    member is covered, since ~_n is constant on automaton states.  For
    oracle languages only the members with |mu| <= n are partitioned.
    """
    if len(n) != L.rank:
        raise StructuralError(f"level {n} does not have rank {L.rank}")
    grid = _grid(L.alphabet, n)
    A = class_automaton(L)
    if A is not None:
        reps = list(A.words)
        return OmegaPartition(L, n, reps, extension_keys(L, reps, n, grid), grid, A)
    kwargs = {} if max_words is None else {"max_words": max_words}
    reps = enumerate_words(L, n, **kwargs)
    return OmegaPartition(L, n, reps, extension_keys(L, reps, n, grid), grid)


def connecting_map(high: OmegaPartition, low: OmegaPartition) -> list[int] | None:
    """theta: Omega_high -> Omega_low, [mu]_high -> [mu]_low; None if ill-defined."""
    out = []
    for c in high.classes:
        targets = {low.class_index(mu) for mu in c.members}
        if len(targets) != 1 or None in targets:
            return None
        out.append(targets.pop())
    return out


def is_bijective(theta: list[int] | None, low: OmegaPartition) -> bool:
    return theta is not None and sorted(theta) == list(range(len(low)))


def truncate_representative(L: Language, mu: MultiWord) -> MultiWord:
    """The left prefix of mu clipped to the maximal forbidden multilength.

    This prefix has the same extension sets as mu up to level m in each
    single coordinate, but not always jointly; see ``truncation_is_faithful``.
    """
    src = L.source
    if not isinstance(src, ForbiddenWords):
        raise StructuralError("truncation needs a forbidden-word presentation")
    return mu.prefix(src.max_multilength(L.rank))


def truncation_is_faithful(L: Language, mu: MultiWord) -> bool:
    """Whether mu and its truncation lie in the same follower class."""
    A = class_automaton(L)
    t = truncate_representative(L, mu)
    a, b = A.state(mu), A.state(t)
    return a is not None and b is not None and A.block[a] == A.block[b]


# ---------------------------------------------------------------- soficity


def _default_level(L: Language, max_level: MultiDegree | None) -> MultiDegree:
    if max_level is None:
        return MultiDegree.constant(L.rank, DEFAULT_MAX_LEVEL)
    if len(max_level) != L.rank:
        raise StructuralError(f"level {max_level} does not have rank {L.rank}")
    return max_level


def is_sofic(L: Language, max_level: MultiDegree | None = None) -> Verdict:
    """``"sofic"`` (witness |Omega|) or ``"inconclusive"``.

    ``data`` carries ``level`` (a level n with ~_n = ~ where known),
    ``size`` and, when available, ``omega`` and ``automaton``.
    """
    src = L.source
    A = class_automaton(L)
    if isinstance(src, ForbiddenWords):
        m = src.max_multilength(L.rank)
        P = omega(L, m)
        data = {"level": m, "size": A.n_blocks, "omega": P, "automaton": A, "method": "finite type"}
        data["stable_at_max_length"] = len(P) == A.n_blocks
        return Verdict("sofic", A.n_blocks, data)
    if A is not None:
        level = MultiDegree.constant(L.rank, max(A.n_blocks - 1, 0))
        return Verdict("sofic", A.n_blocks, {"level": level, "size": A.n_blocks, "automaton": A, "method": "labeled graph"})
    max_level = _default_level(L, max_level)
    cert = src.certificate
    levels: list[OmegaPartition] = []
    k = 0
    while True:
        n = MultiDegree.constant(L.rank, k) & max_level
        if levels and n == levels[-1].level:
            break
        P = omega(L, n)
        levels.append(P)
        if len(levels) >= 2:
            prev = levels[-2]
            if cert is not None and cert <= prev.level and is_bijective(connecting_map(P, prev), prev):
                return Verdict(
                    "sofic",
                    len(prev),
                    {"level": prev.level, "size": len(prev), "omega": prev, "method": "certificate"},
                )
        k += 1
    sizes = [(P.level, len(P)) for P in levels]
    return Verdict("inconclusive", None, {"sizes": sizes, "certificate": cert})


def _moore(trans: list[list[int]]) -> list[int]:
    """Coarsest partition compatible with ``trans`` (-1 is a dead target)."""
    n = len(trans)
    block = [0] * n
    count = 1 if n else 0
    while True:
        sigs: dict[tuple, int] = {}
        new = []
        for s in range(n):
            sig = (block[s],) + tuple(-1 if t < 0 else block[t] for t in trans[s])
            new.append(sigs.setdefault(sig, len(sigs)))
        if len(sigs) == count:
            return new
        block, count = new, len(sigs)


# ---------------------------------------------------------------- follower graph


def follower_graph(L: Language, max_level: MultiDegree | None = None) -> LabeledRankGraph:
    """Vertices Omega; an edge [mu] -> [delta_i(k)*mu] labelled delta_i(k)."""
    verdict = is_sofic(L, max_level)
    if not verdict:
        raise NotSoficError("soficity could not be established; raise --max-level")
    A: ClassAutomaton | None = verdict.data.get("automaton")
    if A is not None:
        pairs = A.class_representatives()
        reps = [w for w, _ in pairs]
        block_vertex = {A.block[ss[0]]: j for j, (_, ss) in enumerate(pairs)}

        def key(mu):
            s = A.state(mu)
            return None if s is None else block_vertex[A.block[s]]

    else:
        P: OmegaPartition = verdict.data["omega"]
        reps = P.representatives()
        key = P.class_index
    edges = []
    for j, mu in enumerate(reps):
        for i, k, g in L.generators():
            w = g * mu
            if L.member(w):
                t = key(w)
                if t is None:
                    raise NotSoficError(f"class of {format_word(w)} missing at the chosen level")
                edges.append(LabeledEdge(j, t, i, k))
    ids = [f"c{j}" for j in range(len(reps))]
    G = LabeledRankGraph(L.alphabet, ids, edges, reps)
    if not G.is_source_resolving():
        raise StructuralError("follower graph is not source-resolving")
    return G


# ---------------------------------------------------------------- comparisons


def equivalent(G: LabeledRankGraph, H: LabeledRankGraph) -> bool:
    """Labeled deterministic-automaton equivalence from the roots.

    Moore refinement on the disjoint union; every vertex accepts and a
    missing (color, letter) transition is a rejection.
    """
    if G.alphabet != H.alphabet:
        return False
    gens = list(G.generators())
    n = len(G)
    trans = []
    for graph, off in ((G, 0), (H, n)):
        for v in range(len(graph)):
            row = []
            for i, k in gens:
                t = graph.step(v, i, k)
                row.append(-1 if t is None else t + off)
            trans.append(row)
    block = _moore(trans)
    return block[G.root] == block[n + H.root]


def isomorphic(G: LabeledRankGraph, H: LabeledRankGraph) -> bool:
    """Equivalent, reachable from the roots, and of equal size.

    For deterministic automata whose vertices are pairwise inequivalent
    this is label-preserving isomorphism.
    """
    return (
        len(G) == len(H)
        and len(G.edges) == len(H.edges)
        and equivalent(G, H)
        and _minimal(G)
        and _minimal(H)
    )


def _minimal(G: LabeledRankGraph) -> bool:
    gens = list(G.generators())
    trans = [[-1 if (t := G.step(v, i, k)) is None else t for i, k in gens] for v in range(len(G))]
    return len(set(_moore(trans))) == len(G)


def distinguishing_word(G: LabeledRankGraph, H: LabeledRankGraph) -> MultiWord | None:
    """A shortest word spelled from one root but not the other, or None."""
    gens = list(G.generators())
    empty = MultiWord.empty(G.alphabet)
    start = (G.root, H.root)
    seen = {start: empty}
    queue = deque([start])
    while queue:
        a, b = queue.popleft()
        mu = seen[(a, b)]
        for i, k in gens:
            ta, tb = G.step(a, i, k), H.step(b, i, k)
            if (ta is None) != (tb is None):
                return MultiWord.generator(G.alphabet, i, k) * mu
            if ta is None:
                continue
            if (ta, tb) not in seen:
                seen[(ta, tb)] = MultiWord.generator(G.alphabet, i, k) * mu
                queue.append((ta, tb))
    return None


def path_labels(G: LabeledRankGraph, bound: MultiDegree) -> set[MultiWord]:
    """Labels of all paths of degree <= bound, from every vertex."""
    alphabet = G.alphabet
    empty = MultiWord.empty(alphabet)
    frontier = {empty: frozenset(range(len(G)))} if len(G) else {}
    out = set(frontier)
    while frontier:
        nxt = {}
        for mu, ends in frontier.items():
            for i, k in G.generators():
                if len(mu.coords[i - 1]) >= bound[i - 1]:
                    continue
                t = G.advance(ends, i, k)
                if t:
                    w = MultiWord.generator(alphabet, i, k) * mu
                    nxt[w] = nxt.get(w, frozenset()) | t
        out.update(nxt)
        frontier = nxt
    return out


def labeled_path_language_equals(L: Language, G: LabeledRankGraph, bound: MultiDegree) -> bool:
    return path_labels(G, bound) == set(enumerate_words(L, bound))


def quantized_dynamics(G: LabeledRankGraph, mu: MultiWord) -> np.ndarray:
    """M[u, v] = 1 iff some path with source u and range v is labelled mu."""
    n = len(G)
    M = np.zeros((n, n), dtype=np.int64)
    for u in range(n):
        for v in G.follow([u], mu):
            M[u, v] = 1
    return M
