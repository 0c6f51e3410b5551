"""Core graph types: bitset graphs, oriented cycles/paths, segment assembly.

Vertices are integers 0..n-1. Adjacency is one bitmask per vertex, so
neighborhood intersections and component sweeps are word-parallel integer
operations. Cycles and paths are immutable; reversal returns a new object.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    InvalidAssembly,
    InvalidRotation,
    NotCycleEdge,
    ParseError,
)


def mask_of(vertices: Iterable[int]) -> int:
    """Bitmask with one bit per vertex."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "_adj", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [0] * n
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if adj[u] >> v & 1:
                continue
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            m += 1
        self.n = n
        self._adj = tuple(adj)
        self._m = m

    # -- basic queries ---------------------------------------------------

    @property
    def m(self) -> int:
        return self._m

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def adj_mask(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self._adj[v]))

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, ascending lexicographic."""
        out = []
        for u in range(self.n):
            rest = self._adj[u] >> (u + 1) << (u + 1)
            for v in bits(rest):
                out.append((u, v))
        return out

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def is_complete(self) -> bool:
        return self._m == self.n * (self.n - 1) // 2

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, self.edges() + list(extra))

    # -- equality / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._adj == other._adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"

    # -- text format -------------------------------------------------------
    # Line 1 is "n m", then m lines "u v" with 0 <= u < v < n in ascending
    # lexicographic order, newline-terminated ASCII.

    def to_text(self) -> str:
        lines = [f"{self.n} {self._m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "Graph":
        if not text.endswith("\n"):
            raise ParseError("missing trailing newline")
        lines = text.split("\n")[:-1]
        if not lines:
            raise ParseError("empty input", 1)
        head = lines[0].split(" ")
        if len(head) != 2 or not all(t.isdigit() for t in head):
            raise ParseError("expected header 'n m'", 1)
        n, m = int(head[0]), int(head[1])
        if len(lines) - 1 != m:
            raise ParseError(
                f"expected {m} edge lines, found {len(lines) - 1}", len(lines)
            )
        edges: list[tuple[int, int]] = []
        prev: tuple[int, int] | None = None
        for i, line in enumerate(lines[1:], start=2):
            toks = line.split(" ")
            if len(toks) != 2 or not all(t.isdigit() for t in toks):
                raise ParseError("expected edge line 'u v'", i)
            u, v = int(toks[0]), int(toks[1])
            if not (0 <= u < v < n):
                raise ParseError(f"edge ({u},{v}) violates 0 <= u < v < n", i)
            if prev is not None and (u, v) <= prev:
                raise ParseError("edges not in ascending lexicographic order", i)
            prev = (u, v)
            edges.append((u, v))
        return Graph(n, edges)

    def input_hash(self) -> str:
        digest = hashlib.sha256(self.to_text().encode("ascii")).hexdigest()
        return f"sha256:{digest}"


# -- connected components ---------------------------------------------------


def _as_mask(g: Graph, removed) -> int:
    if isinstance(removed, int):
        return removed
    return mask_of(removed)


def component_count(g: Graph, removed=0) -> int:
    """Number of connected components of g minus the removed vertex set.

    Mask-parallel BFS. Returns 0 when nothing remains.
    """
    rem = g.full_mask() & ~_as_mask(g, removed)
    count = 0
    while rem:
        count += 1
        comp = rem & -rem
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g._adj[v]
            nxt &= rem & ~comp
            comp |= nxt
            frontier = nxt
        rem &= ~comp
    return count


def component_count_unionfind(g: Graph, removed=0) -> int:
    """Same contract as component_count via union-find; redundant on purpose
    so the two routes can be cross-checked."""
    rem = g.full_mask() & ~_as_mask(g, removed)
    parent = {v: v for v in bits(rem)}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u in parent:
        for v in bits(g._adj[u] & rem):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    return len({find(v) for v in parent})


def components(g: Graph, removed=0) -> list[tuple[int, ...]]:
    """Vertex tuples of each component of g minus removed, ascending."""
    rem = g.full_mask() & ~_as_mask(g, removed)
    out = []
    while rem:
        comp = rem & -rem
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g._adj[v]
            nxt &= rem & ~comp
            comp |= nxt
            frontier = nxt
        out.append(tuple(bits(comp)))
        rem &= ~comp
    return out


# -- oriented cycles and paths ----------------------------------------------


@dataclass(frozen=True)
class OrientedCycle:
    """Cyclic vertex order with an explicit traversal direction."""

    order: tuple[int, ...]

    def __post_init__(self):
        if len(self.order) < 3:
            raise ValueError("cycle needs at least 3 vertices")
        if len(set(self.order)) != len(self.order):
            raise ValueError("cycle repeats a vertex")
        object.__setattr__(
            self, "_pos", {v: i for i, v in enumerate(self.order)}
        )
        object.__setattr__(self, "_mask", mask_of(self.order))

    def __len__(self) -> int:
        return len(self.order)

    def __contains__(self, v: int) -> bool:
        return v in self._pos

    @property
    def mask(self) -> int:
        return self._mask

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.order)

    def position(self, v: int) -> int:
        return self._pos[v]

    def succ(self, v: int) -> int:
        i = self._pos[v]
        return self.order[(i + 1) % len(self.order)]

    def pred(self, v: int) -> int:
        i = self._pos[v]
        return self.order[i - 1]

    def edges_on(self) -> list[tuple[int, int]]:
        """Cycle edges as normalized (min, max) pairs, in traversal order."""
        out = []
        for i, v in enumerate(self.order):
            w = self.order[(i + 1) % len(self.order)]
            out.append((v, w) if v < w else (w, v))
        return out

    def has_cycle_edge(self, u: int, v: int) -> bool:
        return u in self._pos and v in {self.succ(u), self.pred(u)}

    def arc(self, start: int, end: int, forward: bool = True) -> tuple[int, ...]:
        """Vertices from start to end inclusive, following (or opposing)
        the orientation. start == end yields the single vertex."""
        i, j = self._pos[start], self._pos[end]
        size = len(self.order)
        if forward:
            length = (j - i) % size + 1
            return tuple(self.order[(i + k) % size] for k in range(length))
        length = (i - j) % size + 1
        return tuple(self.order[(i - k) % size] for k in range(length))

    def reversed(self) -> "OrientedCycle":
        return OrientedCycle((self.order[0],) + tuple(reversed(self.order[1:])))

    def normalized(self) -> "OrientedCycle":
        """Rotate so the lowest vertex comes first; orientation unchanged."""
        i = self.order.index(min(self.order))
        return OrientedCycle(self.order[i:] + self.order[:i])

    def validate(self, g: Graph) -> None:
        for i, v in enumerate(self.order):
            w = self.order[(i + 1) % len(self.order)]
            if not g.has_edge(v, w):
                raise ValueError(f"({v},{w}) is not an edge of the host graph")


@dataclass(frozen=True)
class OrientedPath:
    """Vertex sequence with distinct vertices, traversed start to end."""

    order: tuple[int, ...]

    def __post_init__(self):
        if len(self.order) < 1:
            raise ValueError("empty path")
        if len(set(self.order)) != len(self.order):
            raise ValueError("path repeats a vertex")
        object.__setattr__(
            self, "_pos", {v: i for i, v in enumerate(self.order)}
        )

    def __len__(self) -> int:
        return len(self.order)

    def __contains__(self, v: int) -> bool:
        return v in self._pos

    @property
    def start(self) -> int:
        return self.order[0]

    @property
    def end(self) -> int:
        return self.order[-1]

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.order)

    def position(self, v: int) -> int:
        return self._pos[v]

    def succ(self, v: int) -> int:
        """Path successor; defined for every vertex but the end."""
        i = self._pos[v]
        if i + 1 == len(self.order):
            raise ValueError(f"{v} is the end of the path")
        return self.order[i + 1]

    def pred(self, v: int) -> int:
        i = self._pos[v]
        if i == 0:
            raise ValueError(f"{v} is the start of the path")
        return self.order[i - 1]

    def arc(self, start: int, end: int) -> tuple[int, ...]:
        """The unique portion between two path vertices, enumerated from
        start to end (direction inferred from positions)."""
        i, j = self._pos[start], self._pos[end]
        if i <= j:
            return self.order[i : j + 1]
        return tuple(reversed(self.order[j : i + 1]))

    def validate(self, g: Graph) -> None:
        for v, w in zip(self.order, self.order[1:]):
            if not g.has_edge(v, w):
                raise ValueError(f"({v},{w}) is not an edge of the host graph")


def rotate_path(g: Graph, path: OrientedPath, pivot: int) -> OrientedPath:
    """Reverse the prefix before pivot using the start--pivot chord.

    For path p0..pk and interior pivot p_i adjacent to p0, returns
    p_{i-1}, ..., p0, p_i, ..., pk: same vertex set, new start.
    """
    if pivot not in path:
        raise InvalidRotation(f"pivot {pivot} not on path")
    i = path.position(pivot)
    if i == 0 or i == len(path) - 1:
        raise InvalidRotation(f"pivot {pivot} is a path endpoint")
    if not g.has_edge(path.start, pivot):
        raise InvalidRotation(f"pivot {pivot} not adjacent to start {path.start}")
    order = path.order
    return OrientedPath(tuple(reversed(order[:i])) + order[i:])


# -- two-factors -------------------------------------------------------------


@dataclass(frozen=True)
class TwoFactor:
    """Disjoint cycles covering every vertex of the host graph."""

    cycles: tuple[OrientedCycle, ...]

    def __post_init__(self):
        where = {}
        for i, c in enumerate(self.cycles):
            for v in c.order:
                if v in where:
                    raise ValueError(f"vertex {v} appears in two cycles")
                where[v] = i
        object.__setattr__(self, "_where", where)

    def __len__(self) -> int:
        return len(self.cycles)

    def vertex_count(self) -> int:
        return len(self._where)

    def cycle_index(self, v: int) -> int:
        return self._where[v]

    def cycle_of(self, v: int) -> OrientedCycle:
        return self.cycles[self._where[v]]

    def succ(self, v: int) -> int:
        return self.cycle_of(v).succ(v)

    def pred(self, v: int) -> int:
        return self.cycle_of(v).pred(v)

    def validate(self, g: Graph) -> None:
        if self.vertex_count() != g.n:
            raise ValueError("cycles do not cover every vertex")
        for c in self.cycles:
            c.validate(g)

    @staticmethod
    def normalized(cycles: Iterable[OrientedCycle]) -> "TwoFactor":
        """Canonical form: each cycle rotated to its lowest vertex, cycles
        sorted by lowest vertex."""
        norm = sorted((c.normalized() for c in cycles), key=lambda c: c.order[0])
        return TwoFactor(tuple(norm))


# -- segment assembly ---------------------------------------------------------
# A merge construction is written down as a segment list. Expanding the
# segments in order yields the vertex order of the proposed cycle; the ends
# of consecutive runs must be joined by edges of the host graph, as must the
# final run's end and the first run's start.


@dataclass(frozen=True)
class CycleArc:
    cycle: OrientedCycle
    start: int
    end: int
    forward: bool = True

    def vertices(self) -> tuple[int, ...]:
        return self.cycle.arc(self.start, self.end, self.forward)


@dataclass(frozen=True)
class PathArc:
    path: OrientedPath
    start: int
    end: int

    def vertices(self) -> tuple[int, ...]:
        return self.path.arc(self.start, self.end)


@dataclass(frozen=True)
class SingleEdge:
    """Explicit connector between the surrounding runs; adds no vertices."""

    u: int
    v: int


Segment = Union[CycleArc, PathArc, SingleEdge]


def assemble_cycle(
    g: Graph, segments: Sequence[Segment], required: Iterable[int]
) -> OrientedCycle:
    """Validate a segment list and return the cycle it describes.

    Eagerly checks: arcs lie on their host cycle/path with consecutive
    vertices adjacent in g, junction and closing edges exist in g, no
    vertex repeats, and the covered set equals `required` exactly.
    """
    runs: list[tuple[int, ...]] = []
    connectors: list[tuple[int, int, int]] = []  # (preceding run index, u, v)
    for seg in segments:
        if isinstance(seg, SingleEdge):
            connectors.append((len(runs) - 1, seg.u, seg.v))
            continue
        try:
            run = seg.vertices()
        except KeyError as exc:
            raise InvalidAssembly(f"arc endpoint missing from host: {exc}")
        runs.append(run)
    if not runs:
        raise InvalidAssembly("no vertex-bearing segments")

    expansion: list[int] = []
    for run in runs:
        expansion.extend(run)
    if len(set(expansion)) != len(expansion):
        raise InvalidAssembly("segments overlap: repeated vertex")
    if len(expansion) < 3:
        raise InvalidAssembly("assembled cycle shorter than 3 vertices")

    required_set = frozenset(required)
    if frozenset(expansion) != required_set:
        missing = sorted(required_set - set(expansion))
        extra = sorted(set(expansion) - required_set)
        raise InvalidAssembly(
            f"coverage mismatch: missing {missing}, unexpected {extra}"
        )

    for run in runs:
        for a, b in zip(run, run[1:]):
            if not g.has_edge(a, b):
                raise InvalidAssembly(f"arc step ({a},{b}) is not an edge")
    for k, run in enumerate(runs):
        nxt = runs[(k + 1) % len(runs)]
        if not g.has_edge(run[-1], nxt[0]):
            raise InvalidAssembly(f"junction ({run[-1]},{nxt[0]}) is not an edge")
    for before, u, v in connectors:
        if not g.has_edge(u, v):
            raise InvalidAssembly(f"connector ({u},{v}) is not an edge")
        prev_end = runs[before][-1]
        next_start = runs[(before + 1) % len(runs)][0]
        if (prev_end, next_start) != (u, v):
            raise InvalidAssembly(
                f"connector ({u},{v}) does not join {prev_end} to {next_start}"
            )

    return OrientedCycle(tuple(expansion))
