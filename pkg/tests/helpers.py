"""Brute-force oracles and graph builders shared across the test suite.

Every oracle here is written against the mathematical definition, with
no code shared with the library routines it checks. They are
deliberately naive: exhaustive subset scans and backtracking, usable up
to roughly n = 10.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from cyclecert.graph import (
    Graph,
    OrientedCycle,
    TwoFactor,
    component_count,
    mask_of,
)


# -- named graphs -------------------------------------------------------------


def complete(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def two_k2() -> Graph:
    return Graph(4, [(0, 1), (2, 3)])


def rand_graph(rng, n: int, p: float) -> Graph:
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def build_factor(n, cycles, extra=()):
    """Host graph from cycle edges plus extras, and the matching 2-factor."""
    edges = []
    for cyc in cycles:
        for i, u in enumerate(cyc):
            edges.append((u, cyc[(i + 1) % len(cyc)]))
    edges.extend(extra)
    g = Graph(n, edges)
    f = TwoFactor(tuple(OrientedCycle(tuple(c)) for c in cycles))
    return g, f


# -- oracles ------------------------------------------------------------------


def brute_2k2(g: Graph):
    """Quartic scan: four vertices inducing exactly two disjoint edges."""
    for quad in combinations(range(g.n), 4):
        sub = [e for e in combinations(quad, 2) if g.has_edge(*e)]
        if len(sub) != 2:
            continue
        (a, b), (c, d) = sub
        if len({a, b, c, d}) == 4:
            return (a, b), (c, d)
    return None


def is_induced_2k2_pair(g: Graph, first, second) -> bool:
    u, v = first
    x, y = second
    if len({u, v, x, y}) != 4:
        return False
    if not (g.has_edge(u, v) and g.has_edge(x, y)):
        return False
    return not any(g.has_edge(a, b) for a in (u, v) for b in (x, y))


def naive_toughness(g: Graph):
    """Exhaustive cutset scan. (None, None) for complete graphs,
    (0, ()) for disconnected ones, matching the library convention."""
    if component_count(g) >= 2:
        return Fraction(0), ()
    best = None
    best_cut = None
    for size in range(1, g.n - 1):
        for cut in combinations(range(g.n), size):
            c = component_count(g, mask_of(cut))
            if c < 2:
                continue
            ratio = Fraction(size, c)
            if best is None or ratio < best:
                best, best_cut = ratio, cut
    return best, best_cut


def brute_alpha(g: Graph) -> int:
    """Maximum independent set size by scanning all vertex subsets."""
    best = 0
    for mask in range(1 << g.n):
        size = mask.bit_count()
        if size <= best:
            continue
        if all(not g.adj_mask(v) & mask for v in range(g.n) if mask >> v & 1):
            best = size
    return best


def brute_two_factor_exists(g: Graph) -> bool:
    """Edge-subset backtracking for a spanning 2-regular subgraph."""
    edges = g.edges()
    deg = [0] * g.n
    remaining = [g.degree(v) for v in range(g.n)]
    if any(r < 2 for r in remaining):
        return False

    def rec(i: int) -> bool:
        if i == len(edges):
            return all(d == 2 for d in deg)
        u, v = edges[i]
        remaining[u] -= 1
        remaining[v] -= 1
        found = False
        if deg[u] + remaining[u] >= 2 and deg[v] + remaining[v] >= 2:
            found = rec(i + 1)
        if not found and deg[u] < 2 and deg[v] < 2:
            deg[u] += 1
            deg[v] += 1
            found = rec(i + 1)
            deg[u] -= 1
            deg[v] -= 1
        remaining[u] += 1
        remaining[v] += 1
        return found

    return rec(0)


def brute_max_matching_size(g: Graph) -> int:
    """Bitmask DP over uncovered vertex sets."""

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if mask == 0:
            return 0
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        out = best(rest)  # leave v uncovered
        live = g.adj_mask(v) & rest
        while live:
            u = (live & -live).bit_length() - 1
            live &= live - 1
            out = max(out, 1 + best(rest & ~(1 << u)))
        return out

    return best(g.full_mask())


def brute_hamiltonian_cycle(g: Graph):
    """Backtracking search anchored at vertex 0; order tuple or None."""
    if g.n < 3:
        return None
    order = [0]

    def rec(v: int, visited: int) -> bool:
        if visited == g.full_mask():
            return g.has_edge(v, 0)
        live = g.adj_mask(v) & ~visited
        while live:
            u = (live & -live).bit_length() - 1
            live &= live - 1
            order.append(u)
            if rec(u, visited | 1 << u):
                return True
            order.pop()
        return False

    return tuple(order) if rec(0, 1) else None


def alternating_squares():
    """Three 4-cycles where every vertex type alternates on every cycle.

    Not 2K2-free (the typing machinery does not require it); built so
    each even vertex sees a consecutive pair on the next cycle around.
    """
    return build_factor(
        12,
        [(0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11)],
        [
            (0, 4), (0, 5), (2, 6), (2, 7),
            (4, 8), (4, 9), (6, 10), (6, 11),
            (0, 8), (1, 8), (2, 10), (3, 10),
        ],
    )


def saturated_pair():
    """Two squares; C = (0,1,2,3) is all-B, D alternates, 0 is bad for D."""
    return build_factor(
        8, [(0, 1, 2, 3), (4, 5, 6, 7)],
        [(5, 2), (5, 3), (7, 2), (7, 3), (0, 4), (0, 6)],
    )
