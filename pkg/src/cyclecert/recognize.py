"""Recognition and exact toughness.

find_induced_2k2 scans edge pairs with bitmask rejection. Toughness is
computed by exhaustive enumeration of vertex cuts organized around the
kept side: every disconnected induced subgraph is generated once as a
union of connected pieces with pairwise disjoint closed neighborhoods,
and branches whose optimistic |S|/c bound cannot beat the incumbent are
pruned. The pruning is ratio-sound, so results are exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import TooLarge
from .graph import Graph, bits, component_count, mask_of

EXHAUSTIVE_BOUND = 24


def find_induced_2k2(g: Graph):
    """Lexicographically first pair of edges inducing a 2K2, or None.

    Two edges induce a 2K2 when they share no vertex and no endpoint of
    one is adjacent to an endpoint of the other.
    """
    edges = g.edges()
    for i, (u, v) in enumerate(edges):
        blocked = g.adj_mask(u) | g.adj_mask(v) | 1 << u | 1 << v
        for x, y in edges[i + 1 :]:
            if not (blocked >> x & 1) and not (blocked >> y & 1):
                return ((u, v), (x, y))
    return None


def is_independent(g: Graph, vertices: Iterable[int]) -> bool:
    m = mask_of(vertices)
    for v in bits(m):
        if g.adj_mask(v) & m:
            return False
    return True


@dataclass(frozen=True)
class ToughnessResult:
    """Exact toughness. value is None for complete graphs (no cutset with
    two or more leftover components exists); witness attains the minimum."""

    value: Fraction | None
    witness: tuple[int, ...] | None

    @property
    def infinite(self) -> bool:
        return self.value is None

    def at_least(self, t) -> bool:
        return self.value is None or self.value >= Fraction(t)


def _closed(g: Graph, m: int) -> int:
    out = m
    for v in bits(m):
        out |= g.adj_mask(v)
    return out


def independence_number(g: Graph) -> int:
    """Exact maximum independent set size, branch and bound on bitmasks."""
    adj = g.adj_mask
    best = 0

    def rec(mask: int, size: int) -> None:
        nonlocal best
        if size + mask.bit_count() <= best:
            return
        if not mask:
            best = max(best, size)
            return
        v = max(bits(mask), key=lambda u: (adj(u) & mask).bit_count())
        rec(mask & ~(adj(v) | 1 << v), size + 1)
        rec(mask & ~(1 << v), size)

    rec(g.full_mask(), 0)
    return best


def _search_cuts_anticomplete(g: Graph, stop_below: Fraction | None, alpha: int):
    """Cut search specialized to 2K2-free inputs.

    Without an induced 2K2, at most one leftover component can carry an
    edge: two edges in distinct components would be anticomplete, hence
    induced. So some minimizing cut is exactly N(T) for an independent
    set T (the singleton components), with everything outside N[T]
    surviving as the remaining components. Enumerating independent sets
    is exponentially cheaper than enumerating kept sides when alpha is
    small, which dense inputs guarantee.
    """
    n = g.n
    full = g.full_mask()
    adj = g.adj_mask
    best: Fraction | None = None
    best_cut: tuple[int, ...] | None = None

    def candidate(cut_mask: int) -> bool:
        nonlocal best, best_cut
        comps = component_count(g, cut_mask)
        if comps < 2:
            return False
        ratio = Fraction(cut_mask.bit_count(), comps)
        cut = tuple(bits(cut_mask))
        if best is None or ratio < best or (ratio == best and cut < best_cut):
            best, best_cut = ratio, cut
        return stop_below is not None and ratio < stop_below

    if candidate(0):
        return best, best_cut

    def rec(start: int, team: int, nbrs: int) -> bool:
        # The denominator never exceeds alpha, so a grown neighborhood
        # alone can rule a branch out.
        limit = Fraction(nbrs.bit_count(), alpha)
        if stop_below is not None:
            if limit >= stop_below:
                return False
        elif best is not None and limit > best:
            return False
        for v in range(start, n):
            if team & adj(v):
                continue
            new_team = team | 1 << v
            new_nbrs = (nbrs | adj(v)) & ~new_team
            if candidate(new_nbrs):
                return True
            if rec(v + 1, new_team, new_nbrs):
                return True
        return False

    rec(0, 0, 0)
    return best, best_cut


def _search_cuts(g: Graph, stop_below: Fraction | None):
    """Core enumeration shared by toughness_exact and is_t_tough.

    Yields nothing; returns (best_ratio, best_cut). With stop_below set,
    returns immediately on the first cut with ratio < stop_below.
    """
    n = g.n
    full = g.full_mask()
    # One vertex per leftover component is an independent set, so the
    # component count can never exceed alpha; capping the optimistic
    # denominator with it sharpens the bound a lot on dense inputs.
    alpha = independence_number(g)
    if alpha <= 12 and find_induced_2k2(g) is None:
        return _search_cuts_anticomplete(g, stop_below, alpha)
    best: Fraction | None = None
    best_cut: tuple[int, ...] | None = None

    def candidate(kept: int, comps: int):
        nonlocal best, best_cut
        cut_mask = full & ~kept
        ratio = Fraction(cut_mask.bit_count(), comps)
        cut = tuple(bits(cut_mask))
        if best is None or ratio < best or (ratio == best and cut < best_cut):
            best, best_cut = ratio, cut

    def prune(kept_size: int, comps: int, mask: int) -> bool:
        # Optimistic completion: every remaining vertex joins the kept
        # side as its own component, up to the alpha cap.
        free = mask.bit_count()
        opt_num = n - kept_size - free
        opt_den = min(comps + free, alpha)
        if opt_den < 2:
            return True
        if stop_below is not None:
            return Fraction(opt_num, opt_den) >= stop_below
        if best is None:
            return False
        return Fraction(opt_num, opt_den) > best

    def rec(mask: int, kept: int, comps: int) -> bool:
        # True signals early stop (violation found in stop_below mode).
        if comps >= 2:
            candidate(kept, comps)
            if stop_below is not None and best is not None and best < stop_below:
                return True
        if not mask or prune(kept.bit_count(), comps, mask):
            return False
        v_bit = mask & -mask
        v = v_bit.bit_length() - 1
        # Branch 1: v joins the kept side, seeding the next component.
        # Enumerate connected supersets of {v} inside mask; the remainder
        # of the kept side must avoid the component's closed neighborhood.
        adj = g.adj_mask

        def grow(cur: int, frontier: int, banned: int) -> bool:
            closed = _closed(g, cur)
            if rec(mask & ~closed, kept | cur, comps + 1):
                return True
            f = frontier
            local_ban = banned
            while f:
                b = f & -f
                f ^= b
                u = b.bit_length() - 1
                new_frontier = (f | (adj(u) & mask & ~local_ban)) & ~(cur | b)
                if grow(cur | b, new_frontier, local_ban | b):
                    return True
                local_ban |= b
            return False

        if grow(v_bit, adj(v) & mask & ~v_bit, 0):
            return True
        # Branch 2: v goes into the cut.
        return rec(mask & ~v_bit, kept, comps)

    rec(full, 0, 0)
    return best, best_cut


def toughness_exact(g: Graph, max_n: int = EXHAUSTIVE_BOUND) -> ToughnessResult:
    """Exact toughness with a minimizing cutset witness.

    The witness is deterministic: lexicographically smallest among the
    minimizing cuts the active search route enumerates. The value is
    route-independent; the tuple may differ between the general search
    and the 2K2-free specialization.
    """
    if g.n > max_n:
        raise TooLarge(f"toughness bound is n <= {max_n}, got n = {g.n}")
    value, witness = _search_cuts(g, None)
    return ToughnessResult(value, witness)


def is_t_tough(g: Graph, t, max_n: int = EXHAUSTIVE_BOUND):
    """(True, None) if no cutset violates t-toughness, else (False, cut).

    Terminates on the first violating cut found in deterministic search
    order, so the returned cut is reproducible but not necessarily the
    toughness minimizer.
    """
    if g.n > max_n:
        raise TooLarge(f"toughness bound is n <= {max_n}, got n = {g.n}")
    t = Fraction(t)
    value, witness = _search_cuts(g, t)
    if value is not None and value < t:
        return False, witness
    return True, None
