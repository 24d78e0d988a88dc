"""Finite digraphs on integer vertices, with distances, closures and cycles.

Vertices are always ``0 .. n-1`` and arcs are ordered pairs without loops.
Every digraph keeps two synchronized views: a frozenset of arc pairs for
set algebra and serialization, and per-vertex out/in bitmasks that the
solvers and the search harness operate on directly.  Digraphs are
immutable; every operation returns a new value.

Distances are directed path lengths, with ``math.inf`` for unreachable
pairs.  The m-step closure of a digraph places an arc ``(u, v)`` exactly
when ``1 <= d(u, v) <= m``; iterated closures and kernel searches on them
are the workhorses behind every higher-level check in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator

INF = math.inf

Arc = tuple[int, int]


def _bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Digraph:
    """Immutable digraph on vertices 0..n-1.

    ``arcs`` is a frozenset of ordered pairs; loops are rejected and
    endpoints must lie in range.  ``out_masks[u]`` / ``in_masks[u]`` hold
    the out- and in-neighborhoods of ``u`` as bitmasks and are derived
    eagerly so hot paths never touch the arc set.
    """

    n: int
    arcs: frozenset[Arc]
    out_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)
    in_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        out = [0] * self.n
        inn = [0] * self.n
        for u, v in self.arcs:
            if u == v:
                raise ValueError(f"loop at vertex {u} is not allowed")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        object.__setattr__(self, "out_masks", tuple(out))
        object.__setattr__(self, "in_masks", tuple(inn))

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def vertices(self) -> range:
        return range(self.n)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def out_neighbors(self, u: int) -> tuple[int, ...]:
        return tuple(_bits(self.out_masks[u]))

    def in_neighbors(self, u: int) -> tuple[int, ...]:
        return tuple(_bits(self.in_masks[u]))

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)


def make_digraph(n: int, arcs: Iterable[Arc] = ()) -> Digraph:
    """Build a digraph, deduplicating arcs.

    Raises ValueError on loops or out-of-range endpoints.
    """
    return Digraph(n, frozenset((int(u), int(v)) for u, v in arcs))


def reverse(d: Digraph) -> Digraph:
    """The digraph with every arc reversed."""
    return Digraph(d.n, frozenset((v, u) for u, v in d.arcs))


@dataclass(frozen=True)
class ArcClass:
    """Partition of a digraph's arcs into symmetric and asymmetric ones.

    An arc is symmetric when its reversal is also present.  ``symmetric``
    therefore always contains both directions of each symmetric pair.
    """

    symmetric: frozenset[Arc]
    asymmetric: frozenset[Arc]

    def symmetric_pairs(self) -> frozenset[Arc]:
        """Unordered symmetric pairs, one (min, max) tuple per digon."""
        return frozenset((u, v) for u, v in self.symmetric if u < v)


def classify_arcs(d: Digraph) -> ArcClass:
    sym = frozenset(a for a in d.arcs if (a[1], a[0]) in d.arcs)
    return ArcClass(symmetric=sym, asymmetric=d.arcs - sym)


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs directed distances; ``math.inf`` marks unreachable pairs."""

    n: int
    rows: tuple[tuple[int | float, ...], ...]

    def dist(self, u: int, v: int) -> int | float:
        return self.rows[u][v]

    def __getitem__(self, pair: Arc) -> int | float:
        u, v = pair
        return self.rows[u][v]


def _bfs_row(n: int, out: tuple[int, ...] | list[int], src: int) -> list[int | float]:
    """Distances from src by breadth-first search over out-masks."""
    row: list[int | float] = [INF] * n
    row[src] = 0
    seen = frontier = 1 << src
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for u in _bits(frontier):
            nxt |= out[u]
        nxt &= ~seen
        for v in _bits(nxt):
            row[v] = d
        seen |= nxt
        frontier = nxt
    return row


def distances(d: Digraph) -> DistanceMatrix:
    """All-pairs directed distances via BFS from every vertex."""
    return DistanceMatrix(
        d.n, tuple(tuple(_bfs_row(d.n, d.out_masks, s)) for s in range(d.n))
    )


def _closure_masks(n: int, out: tuple[int, ...] | list[int], m: int) -> list[int]:
    """Out-masks of the m-step closure: v is a neighbor of u iff 1 <= d(u,v) <= m."""
    reach = list(out)
    for _ in range(m - 1):
        nxt = []
        for u in range(n):
            acc = reach[u]
            for v in _bits(reach[u]):
                acc |= out[v]
            nxt.append(acc)
        reach = nxt
    return [reach[u] & ~(1 << u) for u in range(n)]


def closure(d: Digraph, m: int) -> Digraph:
    """The m-step closure of d.

    Arc (u, v) is present, for u != v, exactly when d reaches v from u in
    at most m steps (and at least one).  Requires m >= 1; the 1-step
    closure is d itself.
    """
    if m < 1:
        raise ValueError("closure step bound must be >= 1")
    masks = _closure_masks(d.n, d.out_masks, m)
    arcs = frozenset((u, v) for u in range(d.n) for v in _bits(masks[u]))
    return Digraph(d.n, arcs)


@dataclass(frozen=True)
class Cycle:
    """A simple directed cycle in canonical rotation.

    ``vertices`` lists each vertex exactly once, starting from the
    smallest one; the closing arc back to the start is implicit.  Digons
    (length two) are the shortest cycles representable.
    """

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        vs = self.vertices
        if len(vs) < 2:
            raise ValueError("a cycle has at least two vertices")
        if len(set(vs)) != len(vs):
            raise ValueError("cycle vertices must be distinct")
        if vs[0] != min(vs):
            raise ValueError("cycle must be rotated to start at its smallest vertex")

    @staticmethod
    def from_vertices(seq: Iterable[int]) -> "Cycle":
        """Canonicalize an arbitrary rotation of a simple cycle."""
        vs = tuple(seq)
        if not vs:
            raise ValueError("a cycle has at least two vertices")
        pivot = vs.index(min(vs))
        return Cycle(vs[pivot:] + vs[:pivot])

    @property
    def length(self) -> int:
        return len(self.vertices)

    def arcs(self) -> tuple[Arc, ...]:
        vs = self.vertices
        return tuple((vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))


def _cycle_seqs(
    n: int,
    out: tuple[int, ...] | list[int],
    max_len: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield every simple cycle once, as a vertex tuple anchored at its minimum.

    Cycles are found by depth-first search from each anchor s, restricted
    to vertices above s, so each cycle appears exactly once and already in
    canonical rotation.  Yield order is deterministic: ascending anchor,
    then lexicographic by the DFS.
    """
    if max_len is not None and max_len < 2:
        return
    path: list[int] = []

    def extend(u: int, s: int, above: int, visited: int) -> Iterator[tuple[int, ...]]:
        row = out[u]
        if len(path) >= 2 and (row >> s) & 1:
            yield tuple(path)
        if max_len is None or len(path) < max_len:
            for v in _bits(row & above & ~visited):
                path.append(v)
                yield from extend(v, s, above, visited | (1 << v))
                path.pop()

    for s in range(n):
        above = ~((1 << (s + 1)) - 1)
        path.clear()
        path.append(s)
        yield from extend(s, s, above, 1 << s)


def enumerate_simple_cycles(d: Digraph, max_len: int | None = None) -> Iterator[Cycle]:
    """Yield every simple cycle of d exactly once, in canonical rotation.

    ``max_len`` caps the cycle length when given.  Digons are included;
    callers interested only in longer cycles filter on ``Cycle.length``.
    """
    for seq in _cycle_seqs(d.n, d.out_masks, max_len):
        yield Cycle(seq)


def cycle_symmetric_count(d: Digraph, cycle: Cycle) -> int:
    """Number of arcs of the cycle whose reversal is again an arc of d.

    Raises ValueError if some arc of the cycle is missing from d.
    """
    count = 0
    for u, v in cycle.arcs():
        if (u, v) not in d.arcs:
            raise ValueError(f"cycle arc ({u}, {v}) is not an arc of the digraph")
        if (v, u) in d.arcs:
            count += 1
    return count


def _asym_acyclic(n: int, out: tuple[int, ...] | list[int], inn: tuple[int, ...] | list[int]) -> bool:
    """True iff the subdigraph of non-symmetric arcs has no directed cycle.

    Peels vertices without remaining asymmetric in-arcs; a stuck nonempty
    remainder certifies a cycle of asymmetric arcs.
    """
    asym_in = [0] * n
    for u in range(n):
        asym_in[u] = inn[u] & ~out[u]
    remaining = (1 << n) - 1
    while remaining:
        progressed = False
        for u in _bits(remaining):
            if asym_in[u] & remaining == 0:
                remaining ^= 1 << u
                progressed = True
        if not progressed:
            return False
    return True


def asymmetric_part_is_acyclic(d: Digraph) -> bool:
    """Whether the asymmetric arcs of d form an acyclic subdigraph."""
    return _asym_acyclic(d.n, d.out_masks, d.in_masks)
