"""2-factor construction by reduction to perfect matching.

Every vertex v of the input becomes d(v) edge-copy vertices plus
d(v) - 2 inner vertices, copies joined completely to inners; each input
edge joins its two copies. Perfect matchings of the gadget correspond to
2-factors: the copies a perfect matching does NOT pair with an inner are
matched across their input edge, selecting exactly two edges per vertex.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DegreeTooSmall, TooSmall
from .graph import Graph, OrientedCycle, TwoFactor
from .matching import max_matching


@dataclass(frozen=True)
class GadgetGraph:
    host: Graph
    # copy_id[(v, u)] = gadget vertex standing for edge vu at endpoint v
    copy_id: dict[tuple[int, int], int]
    inner_count: int

    def external_pair(self, u: int, v: int) -> tuple[int, int]:
        return self.copy_id[(u, v)], self.copy_id[(v, u)]


def build_2factor_gadget(g: Graph) -> GadgetGraph:
    """Degree-constrained gadget whose perfect matchings are 2-factors.

    Inner vertices take ids 0..k-1 so a copy's sorted adjacency starts
    with its inners; the greedy matching seed then fills inners first and
    stays close to perfect.
    """
    for v in range(g.n):
        if g.degree(v) < 2:
            raise DegreeTooSmall(v)
    inner_of: list[list[int]] = [[] for _ in range(g.n)]
    next_id = 0
    for v in range(g.n):
        for _ in range(g.degree(v) - 2):
            inner_of[v].append(next_id)
            next_id += 1
    inner_count = next_id
    copy_id: dict[tuple[int, int], int] = {}
    for v in range(g.n):
        for u in g.neighbors(v):
            copy_id[(v, u)] = next_id
            next_id += 1
    edges: list[tuple[int, int]] = []
    for v in range(g.n):
        for u in g.neighbors(v):
            c = copy_id[(v, u)]
            for inner in inner_of[v]:
                edges.append((inner, c))
            if v < u:
                edges.append((c, copy_id[(u, v)]))
    return GadgetGraph(Graph(next_id, edges), copy_id, inner_count)


def _cycles_from_degree2(g: Graph, chosen: set[tuple[int, int]]) -> TwoFactor:
    nbr: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in chosen:
        nbr[u].append(v)
        nbr[v].append(u)
    for v in range(g.n):
        if len(nbr[v]) != 2:
            raise AssertionError(f"selected edges give degree {len(nbr[v])} at {v}")
        nbr[v].sort()
    visited = [False] * g.n
    cycles: list[OrientedCycle] = []
    for s in range(g.n):
        if visited[s]:
            continue
        order = [s]
        visited[s] = True
        prev, cur = s, nbr[s][0]
        while cur != s:
            order.append(cur)
            visited[cur] = True
            a, b = nbr[cur]
            prev, cur = cur, b if a == prev else a
        cycles.append(OrientedCycle(tuple(order)))
    return TwoFactor.normalized(cycles)


def find_two_factor(g: Graph) -> TwoFactor | None:
    """A 2-factor of g, or None when no spanning 2-regular subgraph exists."""
    if g.n < 3:
        raise TooSmall("2-factor needs at least 3 vertices")
    try:
        gadget = build_2factor_gadget(g)
    except DegreeTooSmall:
        return None
    matching = max_matching(gadget.host)
    if not matching.is_perfect(gadget.host):
        return None
    matched = {}
    for a, b in matching.edges:
        matched[a] = b
        matched[b] = a
    chosen: set[tuple[int, int]] = set()
    for u, v in g.edges():
        cu, cv = gadget.external_pair(u, v)
        if matched[cu] == cv:
            chosen.add((u, v))
    return _cycles_from_degree2(g, chosen)
