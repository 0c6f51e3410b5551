"""Deterministic graph generators and exhaustive small-order enumeration.

All randomness is counter-based: every decision hashes (seed, label,
indices) with sha256, so a (kind, n, seed) triple names the same graph
on every platform and Python version. Generators either guarantee the
2K2-free property by construction (split, complement-of-chordal,
complete multipartite) or reject until it holds.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .errors import GenerationFailed, TooLarge
from .graph import Graph
from .recognize import find_induced_2k2

__all__ = [
    "GenSpec",
    "generate",
    "gen_split",
    "gen_cochordal",
    "gen_complete_multipartite",
    "gen_random_2k2_rejection",
    "canonical_form",
    "enumerate_2k2_free",
]


def _unit(seed: int, *key) -> float:
    """Uniform float in [0, 1) from a hashed counter."""
    material = ":".join([str(seed), *map(str, key)]).encode()
    digest = hashlib.sha256(material).digest()
    return int.from_bytes(digest[:7], "big") / float(1 << 56)


def _randint(seed: int, lo: int, hi: int, *key) -> int:
    """Uniform integer in [lo, hi]."""
    return lo + int(_unit(seed, *key) * (hi - lo + 1))


@dataclass(frozen=True)
class GenSpec:
    """Names a generated graph reproducibly."""

    kind: str
    n: int
    seed: int = 0
    params: tuple[tuple[str, int], ...] = ()

    def label(self) -> str:
        extra = "".join(f",{k}={v}" for k, v in self.params)
        return f"{self.kind}(n={self.n},seed={self.seed}{extra})"


def generate(spec: GenSpec) -> Graph:
    if spec.kind == "split":
        return gen_split(spec.n, spec.seed)
    if spec.kind == "cochordal":
        return gen_cochordal(spec.n, spec.seed)
    if spec.kind == "multipartite":
        parts = [v for k, v in spec.params if k == "part"]
        if not parts or sum(parts) != spec.n:
            raise GenerationFailed("multipartite spec needs parts summing to n")
        return gen_complete_multipartite(parts)
    if spec.kind == "random":
        percent = dict(spec.params).get("p", 50)
        return gen_random_2k2_rejection(spec.n, percent / 100, spec.seed)
    raise GenerationFailed(f"unknown generator kind {spec.kind!r}")


def gen_split(n: int, seed: int) -> Graph:
    """Random split graph: a clique, an independent set, and dense
    cross edges. Split graphs never contain an induced 2K2."""
    if n < 4:
        raise GenerationFailed("split generator needs n >= 4")
    s = _randint(seed, 2, max(2, n // 4), "parts")
    k = n - s
    edges = [(u, v) for u in range(k) for v in range(u + 1, k)]
    for v in range(k, n):
        # high cross degree keeps most samples 3-tough
        d = _randint(seed, max(1, k - 2), k, "deg", v)
        scored = sorted(range(k), key=lambda u: _unit(seed, "pick", v, u))
        for u in scored[:d]:
            edges.append((u, v))
    return Graph(n, edges)


def gen_cochordal(n: int, seed: int) -> Graph:
    """Complement of a random chordal graph, grown one simplicial
    vertex at a time. Chordal graphs have no induced cycle above a
    triangle, so their complements have no induced 2K2."""
    if n < 1:
        raise GenerationFailed("cochordal generator needs n >= 1")
    cliques: list[tuple[int, ...]] = [(0,)]
    chordal_edges: set[tuple[int, int]] = set()
    for v in range(1, n):
        base = cliques[_randint(seed, 0, len(cliques) - 1, "clique", v)]
        size = _randint(seed, 0, len(base), "size", v)
        scored = sorted(base, key=lambda u: _unit(seed, "member", v, u))
        chosen = tuple(sorted(scored[:size]))
        for u in chosen:
            chordal_edges.add((u, v))
        cliques.append(chosen + (v,))
    complement = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if (u, v) not in chordal_edges
    ]
    return Graph(n, complement)


def gen_complete_multipartite(parts: list[int]) -> Graph:
    n = sum(parts)
    bounds, start = [], 0
    for p in parts:
        bounds.append(range(start, start + p))
        start += p
    edges = [
        (u, v)
        for i in range(len(parts))
        for j in range(i + 1, len(parts))
        for u in bounds[i]
        for v in bounds[j]
    ]
    return Graph(n, edges)


def gen_random_2k2_rejection(
    n: int, p: float, seed: int, cap: int = 2000
) -> Graph:
    """Erdos-Renyi samples filtered to the 2K2-free ones."""
    for attempt in range(cap):
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if _unit(seed, "edge", attempt, u, v) < p
        ]
        g = Graph(n, edges)
        if find_induced_2k2(g) is None:
            return g
    raise GenerationFailed(
        f"no 2K2-free sample in {cap} attempts (n={n}, p={p}, seed={seed})"
    )


def canonical_form(g: Graph) -> str:
    """Lexicographically minimal row-major adjacency bitstring over all
    vertex orderings. Exact, so only sensible for small n; prefix
    pruning keeps n <= 8 fast."""
    n = g.n
    if n == 0:
        return ""
    best: list[str] | None = None

    def extend(perm: list[int], rows: list[str], used: set[int]) -> None:
        nonlocal best
        if len(perm) == n:
            if best is None or rows < best:
                best = list(rows)
            return
        for v in range(n):
            if v in used:
                continue
            row = "".join("1" if g.has_edge(v, u) else "0" for u in perm)
            candidate = rows + [row]
            if best is not None and candidate > best[: len(candidate)]:
                continue
            perm.append(v)
            used.add(v)
            extend(perm, candidate, used)
            perm.pop()
            used.remove(v)

    extend([], [], set())
    assert best is not None
    return "".join(best)


def enumerate_2k2_free(max_n: int) -> dict[int, list[Graph]]:
    """Every 2K2-free graph up to isomorphism, by vertex count.

    Grows order by order: the property is closed under induced
    subgraphs, so each n-vertex representative extends some
    (n-1)-vertex one by a single vertex with an arbitrary back
    neighborhood.
    """
    if max_n > 7:
        raise TooLarge(f"exhaustive enumeration capped at 7 vertices, got {max_n}")
    levels: dict[int, list[Graph]] = {}
    if max_n < 1:
        return levels
    levels[1] = [Graph(1)]
    for n in range(2, max_n + 1):
        seen: dict[str, Graph] = {}
        for base in levels[n - 1]:
            base_edges = base.edges()
            for nb_mask in range(1 << (n - 1)):
                extra = [
                    (u, n - 1) for u in range(n - 1) if nb_mask >> u & 1
                ]
                h = Graph(n, base_edges + extra)
                if find_induced_2k2(h) is not None:
                    continue
                key = canonical_form(h)
                if key not in seen:
                    seen[key] = h
        levels[n] = [seen[k] for k in sorted(seen)]
    return levels
