"""Multi-words in a product of free semigroups and their multi-degrees.

A multi-word of rank N is an N-tuple of finite words; coordinate ``i``
(1-based, as in ``[N] = {1, ..., N}``) draws its letters from
``range(alphabet[i-1])``.  Letters are stored as byte values so that
per-coordinate factor tests reduce to ``bytes`` containment.

Text form: coordinates separated by ``|``, letters written as single
characters ``0-9a-z``, an empty coordinate written ``-``.  So ``"01|-"``
is the word with ``01`` in the first coordinate and nothing in the second.
"""

from __future__ import annotations

from typing import Iterable, Sequence

SYMBOLS = "0123456789abcdefghijklmnopqrstuvwxyz"
_SYMBOL_INDEX = {c: i for i, c in enumerate(SYMBOLS)}


class StructuralError(ValueError):
    """Rank or alphabet mismatch, or a letter outside its alphabet."""


class MultiDegree:
    """A vector in Z_+^N ordered coordinatewise."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[int]):
        entries = tuple(int(e) for e in entries)
        if any(e < 0 for e in entries):
            raise StructuralError(f"negative degree entry in {entries}")
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("MultiDegree is immutable")

    @classmethod
    def zero(cls, rank: int) -> MultiDegree:
        return cls((0,) * rank)

    @classmethod
    def unit(cls, rank: int, colors: Iterable[int]) -> MultiDegree:
        """The indicator 1_F of a set of (1-based) colors."""
        colors = set(colors)
        for c in colors:
            if not 1 <= c <= rank:
                raise StructuralError(f"color {c} outside [1, {rank}]")
        return cls(1 if i + 1 in colors else 0 for i in range(rank))

    @classmethod
    def constant(cls, rank: int, value: int) -> MultiDegree:
        return cls((value,) * rank)

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> int:
        return sum(self.entries)

    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i, e in enumerate(self.entries) if e)

    def perp(self, other: MultiDegree | Iterable[int]) -> bool:
        if isinstance(other, MultiDegree):
            other = other.support()
        return not (self.support() & set(other))

    def _check(self, other: MultiDegree) -> None:
        if len(other.entries) != len(self.entries):
            raise StructuralError(f"rank mismatch: {self} vs {other}")

    def __or__(self, other: MultiDegree) -> MultiDegree:
        self._check(other)
        return MultiDegree(max(a, b) for a, b in zip(self.entries, other.entries))

    def __and__(self, other: MultiDegree) -> MultiDegree:
        self._check(other)
        return MultiDegree(min(a, b) for a, b in zip(self.entries, other.entries))

    def __add__(self, other: MultiDegree) -> MultiDegree:
        self._check(other)
        return MultiDegree(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: MultiDegree) -> MultiDegree:
        self._check(other)
        return MultiDegree(a - b for a, b in zip(self.entries, other.entries))

    def __le__(self, other: MultiDegree) -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.entries, other.entries))

    def __ge__(self, other: MultiDegree) -> bool:
        return other <= self

    def __lt__(self, other: MultiDegree) -> bool:
        return self <= other and self != other

    def __gt__(self, other: MultiDegree) -> bool:
        return other < self

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiDegree) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(("MultiDegree", self.entries))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __repr__(self) -> str:
        return f"MultiDegree({self.entries})"

    def __str__(self) -> str:
        return ",".join(map(str, self.entries))

    def below(self) -> Iterable[MultiDegree]:
        """All degrees n with 0 <= n <= self, in lexicographic order."""
        import itertools

        for t in itertools.product(*(range(e + 1) for e in self.entries)):
            yield MultiDegree(t)


def parse_degree(text: str, rank: int | None = None) -> MultiDegree:
    """Parse ``"2,2"``; a single number is broadcast when ``rank`` is given."""
    parts = [p for p in text.replace(" ", "").split(",") if p != ""]
    try:
        values = [int(p) for p in parts]
    except ValueError as exc:
        raise StructuralError(f"bad degree {text!r}") from exc
    if rank is not None:
        if len(values) == 1 and rank != 1:
            values = values * rank
        if len(values) != rank:
            raise StructuralError(f"degree {text!r} does not have rank {rank}")
    return MultiDegree(values)


class MultiWord:
    """An element of F_+^{d_1} x ... x F_+^{d_N}; immutable and hashable."""

    __slots__ = ("coords", "alphabet", "_hash")

    def __init__(self, coords: Sequence[Sequence[int] | bytes], alphabet: Sequence[int]):
        alphabet = tuple(int(d) for d in alphabet)
        if len(coords) != len(alphabet):
            raise StructuralError(
                f"word has {len(coords)} coordinates but alphabet profile has {len(alphabet)}"
            )
        packed = []
        for i, (c, d) in enumerate(zip(coords, alphabet)):
            b = bytes(c)
            if b and max(b) >= d:
                raise StructuralError(
                    f"letter {max(b)} in coordinate {i + 1} outside alphabet of size {d}"
                )
            packed.append(b)
        object.__setattr__(self, "coords", tuple(packed))
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "_hash", hash(self.coords))

    @classmethod
    def _raw(cls, coords: tuple[bytes, ...], alphabet: tuple[int, ...]) -> MultiWord:
        # trusted constructor: no validation
        w = object.__new__(cls)
        object.__setattr__(w, "coords", coords)
        object.__setattr__(w, "alphabet", alphabet)
        object.__setattr__(w, "_hash", hash(coords))
        return w

    def __setattr__(self, name, value):
        raise AttributeError("MultiWord is immutable")

    def __reduce__(self):
        return (MultiWord, (self.coords, self.alphabet))

    @classmethod
    def empty(cls, alphabet: Sequence[int]) -> MultiWord:
        alphabet = tuple(alphabet)
        return cls._raw((b"",) * len(alphabet), alphabet)

    @classmethod
    def generator(cls, alphabet: Sequence[int], i: int, k: int) -> MultiWord:
        """delta_i(k): the letter ``k`` in coordinate ``i`` (1-based)."""
        alphabet = tuple(alphabet)
        if not 1 <= i <= len(alphabet):
            raise StructuralError(f"coordinate {i} outside [1, {len(alphabet)}]")
        if not 0 <= k < alphabet[i - 1]:
            raise StructuralError(f"letter {k} outside alphabet of coordinate {i}")
        coords = tuple(bytes([k]) if j == i - 1 else b"" for j in range(len(alphabet)))
        return cls._raw(coords, alphabet)

    @classmethod
    def on_coordinate(cls, alphabet: Sequence[int], i: int, word: Sequence[int] | bytes) -> MultiWord:
        """The word supported on coordinate ``i`` only."""
        alphabet = tuple(alphabet)
        coords = [b""] * len(alphabet)
        coords[i - 1] = bytes(word)
        return cls(coords, alphabet)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def multilength(self) -> MultiDegree:
        return MultiDegree(len(c) for c in self.coords)

    @property
    def total_length(self) -> int:
        return sum(len(c) for c in self.coords)

    def is_empty(self) -> bool:
        return not any(self.coords)

    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i, c in enumerate(self.coords) if c)

    def perp(self, other: MultiWord) -> bool:
        self._check(other)
        return not (self.support() & other.support())

    def _check(self, other: MultiWord) -> None:
        if self.alphabet != other.alphabet:
            raise StructuralError(
                f"alphabet profile mismatch: {self.alphabet} vs {other.alphabet}"
            )

    def __mul__(self, other: MultiWord) -> MultiWord:
        self._check(other)
        return MultiWord._raw(
            tuple(a + b for a, b in zip(self.coords, other.coords)), self.alphabet
        )

    def concat(self, other: MultiWord) -> MultiWord:
        return self * other

    def is_prefix_of(self, other: MultiWord) -> bool:
        """self <= other in the prefix order, i.e. other = self * w."""
        self._check(other)
        return all(b.startswith(a) for a, b in zip(self.coords, other.coords))

    def strip_prefix(self, prefix: MultiWord) -> MultiWord:
        """The w with self = prefix * w."""
        if not prefix.is_prefix_of(self):
            raise StructuralError(f"{format_word(prefix)} is not a prefix of {format_word(self)}")
        return MultiWord._raw(
            tuple(c[len(p):] for p, c in zip(prefix.coords, self.coords)), self.alphabet
        )

    def join(self, other: MultiWord) -> MultiWord | None:
        """Least upper bound in the prefix order, or None if incomparable."""
        self._check(other)
        out = []
        for a, b in zip(self.coords, other.coords):
            if b.startswith(a):
                out.append(b)
            elif a.startswith(b):
                out.append(a)
            else:
                return None
        return MultiWord._raw(tuple(out), self.alphabet)

    def is_subword(self, outer: MultiWord) -> bool:
        """self occurs in outer as outer = w * self * q."""
        self._check(outer)
        return all(a in b for a, b in zip(self.coords, outer.coords))

    def __contains__(self, inner: MultiWord) -> bool:
        return inner.is_subword(self)

    def prefix(self, lengths: MultiDegree | Sequence[int]) -> MultiWord:
        """Coordinatewise left prefix with the given lengths (clipped)."""
        return MultiWord._raw(
            tuple(c[:n] for c, n in zip(self.coords, lengths)), self.alphabet
        )

    def suffix(self, lengths: MultiDegree | Sequence[int]) -> MultiWord:
        return MultiWord._raw(
            tuple(c[len(c) - min(n, len(c)):] for c, n in zip(self.coords, lengths)),
            self.alphabet,
        )

    def coordinate(self, i: int) -> bytes:
        return self.coords[i - 1]

    def sort_key(self):
        """Shortest first, then by multilength, then lexicographically."""
        return (self.total_length, tuple(len(c) for c in self.coords), self.coords)

    def __lt__(self, other: MultiWord) -> bool:
        return self.sort_key() < other.sort_key()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiWord)
            and self.coords == other.coords
            and self.alphabet == other.alphabet
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"MultiWord({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)


def format_word(w: MultiWord) -> str:
    return "|".join("".join(SYMBOLS[x] for x in c) if c else "-" for c in w.coords)


def parse_word(text: str, alphabet: Sequence[int]) -> MultiWord:
    """Parse the canonical text form; ``"-"`` and ``""`` both mean empty."""
    alphabet = tuple(alphabet)
    parts = text.strip().split("|")
    if len(parts) != len(alphabet):
        raise StructuralError(
            f"word {text!r} has {len(parts)} coordinates, expected {len(alphabet)}"
        )
    coords = []
    for p in parts:
        p = p.strip()
        if p in ("-", "", "∅"):
            coords.append(b"")
            continue
        try:
            coords.append(bytes(_SYMBOL_INDEX[ch] for ch in p))
        except KeyError as exc:
            raise StructuralError(f"unknown letter {exc.args[0]!r} in {text!r}") from None
    return MultiWord(coords, alphabet)


def words_up_to(alphabet: Sequence[int], bound: MultiDegree) -> list[MultiWord]:
    """Every multi-word with multilength <= bound, in sort_key order."""
    import itertools

    alphabet = tuple(alphabet)
    per_coord = [coordinate_words(d, n) for d, n in zip(alphabet, bound)]
    out = [MultiWord._raw(t, alphabet) for t in itertools.product(*per_coord)]
    out.sort(key=MultiWord.sort_key)
    return out


def coordinate_words(d: int, n: int) -> list[bytes]:
    """All words over range(d) of length <= n, shortest first then lex."""
    import itertools

    out = []
    for length in range(n + 1):
        out.extend(bytes(t) for t in itertools.product(range(d), repeat=length))
    return out
