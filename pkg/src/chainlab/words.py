"""Words, presentations, and graph-group (RAAG) normal forms.

A word is a tuple of nonzero signed integers: letter +i is the i-th generator
(1-based), letter -i its inverse.  The empty tuple is the identity.

Normal forms in a graph group are computed by *piling*: each generator owns a
pile that records, left to right, its own occurrences (as +1/-1) and a marker
0 for every occurrence of a non-commuting generator.  Pushing a letter cancels
against the top of its own pile when the matching inverse is separated only by
commuting letters; reading the piles back greedily by least generator index
yields the shortlex-least geodesic representative.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

Word = tuple[int, ...]


def word(letters: Iterable[int]) -> Word:
    """Validate and return a word as a tuple of nonzero integers."""
    w = tuple(int(x) for x in letters)
    if any(x == 0 for x in w):
        raise ValueError("word letters must be nonzero integers")
    return w


def free_reduce(w: Sequence[int]) -> Word:
    """Delete adjacent inverse pairs until none remain."""
    out: list[int] = []
    for letter in w:
        if letter == 0:
            raise ValueError("word letters must be nonzero integers")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(int(letter))
    return tuple(out)


def inverse_word(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def concat(*ws: Sequence[int]) -> Word:
    out: list[int] = []
    for w in ws:
        out.extend(w)
    return tuple(out)


def conjugate(g: Sequence[int], w: Sequence[int]) -> Word:
    """g w g^{-1} (not reduced)."""
    return concat(g, w, inverse_word(g))


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    """u v u^{-1} v^{-1} (not reduced)."""
    return concat(u, v, inverse_word(u), inverse_word(v))


def power(w: Sequence[int], n: int) -> Word:
    if n >= 0:
        return tuple(w) * n
    return inverse_word(tuple(w) * (-n))


def max_letter(w: Sequence[int]) -> int:
    return max((abs(x) for x in w), default=0)


def parse_word(text: str) -> Word:
    """Parse a comma-separated signed-integer word, e.g. "1,2,-1"."""
    text = text.strip()
    if not text or text == "e":
        return ()
    try:
        return word(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ValueError(f"cannot parse word {text!r}: {exc}") from None


def format_word(w: Sequence[int], names: Optional[Sequence[str]] = None) -> str:
    if not w:
        return "e"
    if names is None:
        return ",".join(str(x) for x in w)
    parts = []
    for x in w:
        name = names[abs(x) - 1]
        parts.append(name if x > 0 else name + "^-1")
    return " ".join(parts)


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: named generators and freely reduced relators."""

    generator_names: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        if not self.generator_names:
            raise ValueError("a presentation needs at least one generator")
        if len(set(self.generator_names)) != len(self.generator_names):
            raise ValueError("generator names must be distinct")
        if any(not n for n in self.generator_names):
            raise ValueError("generator names must be nonempty")
        reduced = tuple(free_reduce(r) for r in self.relators)
        object.__setattr__(self, "relators", reduced)
        k = len(self.generator_names)
        for r in reduced:
            if max_letter(r) > k:
                raise ValueError(f"relator {r} uses a generator beyond the {k} declared")

    @property
    def rank(self) -> int:
        return len(self.generator_names)

    def check_word(self, w: Sequence[int]) -> Word:
        w = word(w)
        if max_letter(w) > self.rank:
            raise ValueError(f"word {w} uses a generator beyond the {self.rank} declared")
        return w


def presentation(names: Sequence[str], relators: Iterable[Sequence[int]] = ()) -> Presentation:
    return Presentation(tuple(names), tuple(word(r) for r in relators))


def free_presentation(rank: int, names: Optional[Sequence[str]] = None) -> Presentation:
    return Presentation(tuple(names) if names else default_names(rank), ())


def default_names(n: int) -> tuple[str, ...]:
    alphabet = "abcdefghijklmnopqrstuvwxyz"
    if n <= len(alphabet):
        return tuple(alphabet[:n])
    return tuple(f"g{i}" for i in range(1, n + 1))


@dataclass(frozen=True)
class RaagGraph:
    """A finite simple graph on vertices 1..vertex_count; edges mean commuting."""

    vertex_count: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("a graph needs at least one vertex")
        normalized = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise ValueError("self-loops are not allowed")
            if not (1 <= i <= self.vertex_count and 1 <= j <= self.vertex_count):
                raise ValueError(f"edge {e} out of range")
            normalized.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(normalized))

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def neighbors(self, i: int) -> tuple[int, ...]:
        return _neighbors(self, i)

    def degree(self, i: int) -> int:
        return len(self.neighbors(i))

    def is_connected(self) -> bool:
        seen = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for u in self.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.vertex_count

    def induced(self, vertices: Sequence[int]) -> "RaagGraph":
        """Induced subgraph, vertices relabeled 1..k in the order given."""
        vs = list(vertices)
        if len(set(vs)) != len(vs):
            raise ValueError("induced vertex list must be duplicate-free")
        pos = {v: i + 1 for i, v in enumerate(vs)}
        edges = frozenset(
            (min(pos[i], pos[j]), max(pos[i], pos[j]))
            for (i, j) in self.edges
            if i in pos and j in pos
        )
        return RaagGraph(len(vs), edges)

    def presentation(self, names: Optional[Sequence[str]] = None) -> Presentation:
        names = tuple(names) if names else default_names(self.vertex_count)
        rels = tuple(commutator((i,), (j,)) for i, j in sorted(self.edges))
        return Presentation(names, rels)


def raag_graph(vertex_count: int, edges: Iterable[Sequence[int]] = ()) -> RaagGraph:
    return RaagGraph(vertex_count, frozenset((int(i), int(j)) for i, j in edges))


def free_graph(n: int) -> RaagGraph:
    """Edgeless graph: the free group of rank n."""
    return RaagGraph(n)


def complete_graph(n: int) -> RaagGraph:
    """Complete graph: free abelian of rank n."""
    return RaagGraph(n, frozenset((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))


@lru_cache(maxsize=None)
def _neighbors(g: RaagGraph, i: int) -> tuple[int, ...]:
    return tuple(sorted(j for j in range(1, g.vertex_count + 1) if j != i and g.adjacent(i, j)))


@lru_cache(maxsize=None)
def _non_commuters(g: RaagGraph) -> tuple[tuple[int, ...], ...]:
    """For each vertex i (1-based), the other vertices not adjacent to i."""
    out = []
    for i in range(1, g.vertex_count + 1):
        nbrs = set(_neighbors(g, i))
        out.append(tuple(j for j in range(1, g.vertex_count + 1) if j != i and j not in nbrs))
    return tuple(out)


def raag_normal_form(w: Sequence[int], g: RaagGraph) -> Word:
    """Shortlex-least geodesic representative of w in the graph group of g.

    Two words map to equal normal forms exactly when they are related by free
    cancellations/insertions and swaps of adjacent commuting letters.
    """
    n = g.vertex_count
    w = word(w)
    if max_letter(w) > n:
        raise ValueError(f"word {w} uses a generator beyond the {n} declared")
    non_comm = _non_commuters(g)
    piles: list[deque[int]] = [deque() for _ in range(n + 1)]  # 1-based
    for letter in w:
        i, eps = abs(letter), (1 if letter > 0 else -1)
        pile = piles[i]
        if pile and pile[-1] == -eps:
            pile.pop()
            for j in non_comm[i - 1]:
                top = piles[j].pop()
                assert top == 0, "pile invariant broken"
        else:
            pile.append(eps)
            for j in non_comm[i - 1]:
                piles[j].append(0)
    out: list[int] = []
    while True:
        emitted = False
        for i in range(1, n + 1):
            pile = piles[i]
            if pile and pile[0] != 0:
                eps = pile.popleft()
                out.append(eps * i)
                for j in non_comm[i - 1]:
                    front = piles[j].popleft()
                    assert front == 0, "pile invariant broken"
                emitted = True
                break
        if not emitted:
            assert all(not p for p in piles), "pile invariant broken"
            return tuple(out)


def words_commute(u: Sequence[int], v: Sequence[int], g: RaagGraph) -> bool:
    return raag_normal_form(commutator(u, v), g) == ()
