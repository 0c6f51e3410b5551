"""Maximum cardinality matching in general graphs.

Augmenting-path search with blossom contraction, the classic O(V^3)
formulation with base pointers. A greedy pass seeds the matching so the
search only runs for the few remaining exposed vertices. Iteration is in
ascending vertex order throughout, so results are deterministic.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import Graph


@dataclass(frozen=True)
class Matching:
    """Vertex-disjoint edge set, edges normalized (min, max)."""

    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        seen: set[int] = set()
        for u, v in self.edges:
            if u in seen or v in seen:
                raise ValueError("matching edges share a vertex")
            seen.add(u)
            seen.add(v)

    @property
    def size(self) -> int:
        return len(self.edges)

    def covers(self, v: int) -> bool:
        return any(v in e for e in self.edges)

    def is_perfect(self, g: Graph) -> bool:
        return 2 * len(self.edges) == g.n


def max_matching(g: Graph) -> Matching:
    n = g.n
    adj = [g.neighbors(v) for v in range(n)]
    match = [-1] * n

    for v in range(n):
        if match[v] < 0:
            for u in adj[v]:
                if match[u] < 0:
                    match[v] = u
                    match[u] = v
                    break

    p = [-1] * n
    base = list(range(n))
    used = [False] * n
    blossom = [False] * n

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        x = a
        while True:
            x = base[x]
            seen[x] = True
            if match[x] < 0:
                break
            x = p[match[x]]
        y = b
        while True:
            y = base[y]
            if seen[y]:
                return y
            y = p[match[y]]

    def mark_path(v: int, b: int, child: int) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            p[v] = child
            child = match[v]
            v = p[match[v]]

    def find_path(root: int) -> bool:
        for i in range(n):
            used[i] = False
            p[i] = -1
            base[i] = i
        used[root] = True
        q: deque[int] = deque([root])
        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] >= 0 and p[match[to]] >= 0):
                    # Odd cycle through two outer vertices: contract it.
                    cur = lca(v, to)
                    for i in range(n):
                        blossom[i] = False
                    mark_path(v, cur, to)
                    mark_path(to, cur, v)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif p[to] < 0:
                    p[to] = v
                    if match[to] < 0:
                        # Exposed vertex reached: flip along parents.
                        while to >= 0:
                            pv = p[to]
                            nxt = match[pv]
                            match[to] = pv
                            match[pv] = to
                            to = nxt
                        return True
                    used[match[to]] = True
                    q.append(match[to])
        return False

    for v in range(n):
        if match[v] < 0:
            find_path(v)

    pairs = frozenset(
        (v, match[v]) for v in range(n) if 0 <= v < match[v]
    )
    return Matching(pairs)
