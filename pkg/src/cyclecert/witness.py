"""Cut builders for stalled 2-factor states.

A stalled state (every merge rule checked out) pins down enough structure
to name a vertex set S whose removal shatters the graph into more than
|S| / t pieces. Each builder proposes S from a different stall shape; the
proposal is only emitted after an exact numeric check, so a builder whose
structural expectations fail simply logs the attempt and yields nothing.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classify import (
    TypingContext,
    bad_vertices,
    build_closures,
    closure_union,
    i_xy,
    rotation_closure,
)
from .graph import Graph, OrientedCycle, TwoFactor, bits, components, mask_of
from .merge import co_absorb
from .recognize import is_independent

__all__ = [
    "ToughnessWitness",
    "verify_witness",
    "witness_all_alternating",
    "witness_two_b_cycles",
    "witness_member_cut",
    "witness_high_degree",
    "witness_adjacent_members",
    "build_witness",
]


@dataclass(frozen=True)
class ToughnessWitness:
    """A cutset certifying toughness below `threshold`."""

    rule: str
    s: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    ratio: Fraction
    threshold: Fraction

    def to_json(self) -> dict:
        return {
            "type": "toughness_witness",
            "rule": self.rule,
            "S": list(self.s),
            "components": [list(c) for c in self.components],
            "ratio": {"num": self.ratio.numerator, "den": self.ratio.denominator},
            "threshold": {
                "num": self.threshold.numerator,
                "den": self.threshold.denominator,
            },
        }


def verify_witness(g: Graph, w: ToughnessWitness) -> tuple[bool, str]:
    """Recompute everything the witness asserts from the graph alone."""
    s = set(w.s)
    if len(w.s) != len(s) or list(w.s) != sorted(s):
        return False, "cutset is not a sorted set"
    if any(v < 0 or v >= g.n for v in s):
        return False, "cutset vertex out of range"
    comps = tuple(tuple(c) for c in components(g, mask_of(s)))
    if comps != w.components:
        return False, "component list does not match recomputation"
    if len(comps) < 2:
        return False, "removal leaves the graph connected"
    if Fraction(len(s), len(comps)) != w.ratio:
        return False, "stored ratio is wrong"
    if not w.ratio < w.threshold:
        return False, "ratio does not beat the threshold"
    return True, "ok"


def _finalize(
    g: Graph, rule: str, s: set[int], t: Fraction, attempts: list[dict]
) -> ToughnessWitness | None:
    comps = tuple(tuple(c) for c in components(g, mask_of(s)))
    if len(comps) < 2:
        attempts.append(
            {"rule": rule, "outcome": "failed", "detail": "cut leaves one component"}
        )
        return None
    ratio = Fraction(len(s), len(comps))
    if not ratio < t:
        attempts.append(
            {
                "rule": rule,
                "outcome": "failed",
                "detail": f"ratio {ratio} not below {t}",
            }
        )
        return None
    w = ToughnessWitness(rule, tuple(sorted(s)), comps, ratio, t)
    attempts.append({"rule": rule, "outcome": "ok", "detail": f"ratio {ratio}"})
    return w


def _note(attempts: list[dict], rule: str, detail: str) -> None:
    attempts.append({"rule": rule, "outcome": "failed", "detail": detail})


# -- builders -----------------------------------------------------------------


def witness_all_alternating(
    g: Graph, f: TwoFactor, ctx: TypingContext, t: Fraction, attempts: list[dict]
) -> ToughnessWitness | None:
    """Every cycle alternates types: cutting all A-type vertices leaves
    one isolated successor per cut vertex."""
    if ctx.cycles_with_b_edge():
        _note(attempts, "all_alternating", "a cycle has a B-typed edge")
        return None
    if not is_independent(g, ctx.a_plus):
        _note(attempts, "all_alternating", "successor set is not independent")
    return _finalize(g, "all_alternating", set(ctx.a_vertices), t, attempts)


def witness_two_b_cycles(
    g: Graph, f: TwoFactor, ctx: TypingContext, t: Fraction, attempts: list[dict]
) -> ToughnessWitness | None:
    """Two cycles carry B-typed edges: everything but the common
    non-neighborhood of the shorter cycle's B-edge is a cut."""
    b_cycles = ctx.cycles_with_b_edge()
    if len(b_cycles) < 2:
        _note(attempts, "two_b_cycles", "fewer than two cycles with B-typed edges")
        return None
    ci = min(b_cycles, key=lambda i: (len(f.cycles[i]), i))
    c = f.cycles[ci]
    x, y = ctx.b_edges(ci)[0]
    island = set(i_xy(g, f, c, x, y)) | {x}
    if not is_independent(g, island):
        _note(attempts, "two_b_cycles", "non-neighborhood is not independent")
    return _finalize(
        g, "two_b_cycles", set(range(g.n)) - island, t, attempts
    )


def witness_member_cut(
    g: Graph,
    f: TwoFactor,
    ctx: TypingContext,
    ci: int,
    t: Fraction,
    attempts: list[dict],
) -> ToughnessWitness | None:
    """The designated cycle's rotation-closure members and all A-type
    vertices: S = A plus the members' neighbors on the cycle."""
    c = f.cycles[ci]
    closures = build_closures(g, f, c, ctx)
    members = closure_union(closures)
    if not is_independent(g, members | ctx.a_plus):
        _note(
            attempts,
            "member_cut",
            "members and successors do not form an independent set",
        )
    touched: set[int] = set()
    for v in members:
        touched |= set(bits(g.adj_mask(v) & c.mask))
    if len(touched) > 2 * len(members):
        _note(attempts, "member_cut", "cycle neighborhood exceeds twice the members")
    s = set(ctx.a_vertices) | touched
    return _finalize(g, "member_cut", s, t, attempts)


def witness_high_degree(
    g: Graph,
    f: TwoFactor,
    ctx: TypingContext,
    ci: int,
    t: Fraction,
    attempts: list[dict],
) -> ToughnessWitness | None:
    """A closure member with at least (n-1)/3 neighbors: absorb the rest
    of its cycle, then cut all successors of its neighbors."""
    c = f.cycles[ci]
    vb = bad_vertices(g, f, c, ctx)
    closures = {x: rotation_closure(g, f, c, x, vb) for x in sorted(vb)}
    candidates = sorted(
        v for v in closure_union(closures) if 3 * g.degree(v) >= g.n - 1
    )
    if not candidates:
        _note(attempts, "high_degree", "no member has enough neighbors")
        return None
    for v in candidates:
        for x in sorted(closures):
            cl = closures[x]
            if v not in cl.members:
                continue
            absorbed = co_absorb(g, f, ctx, cl, v, vb)
            if absorbed is None:
                _note(attempts, "high_degree", f"no absorption for member {v}")
                continue
            combined, di = absorbed
            rest = [cyc for i, cyc in enumerate(f.cycles) if i not in (ci, di)]
            succ_of: dict[int, int] = {}
            for cyc in [combined, *rest]:
                for w in cyc.order:
                    succ_of[w] = cyc.succ(w)
            plus = {succ_of[w] for w in g.neighbors(v)}
            s = set(range(g.n)) - plus - {v}
            w = _finalize(g, "high_degree", s, t, attempts)
            if w is not None:
                return w
    return None


def witness_adjacent_members(
    g: Graph,
    f: TwoFactor,
    ctx: TypingContext,
    ci: int,
    t: Fraction,
    attempts: list[dict],
) -> ToughnessWitness | None:
    """Two adjacent closure members: their joint neighborhood minus one
    of them is a cut isolating that one and every common non-neighbor."""
    c = f.cycles[ci]
    closures = build_closures(g, f, c, ctx)
    members = sorted(closure_union(closures))
    pair = None
    for i, u in enumerate(members):
        for v in members[i + 1 :]:
            if g.has_edge(u, v):
                pair = (u, v)
                break
        if pair:
            break
    if pair is None:
        _note(attempts, "adjacent_members", "members are pairwise nonadjacent")
        return None
    u, v = pair
    s = (set(g.neighbors(u)) | set(g.neighbors(v))) - {u}
    return _finalize(g, "adjacent_members", s, t, attempts)


def build_witness(
    g: Graph, f: TwoFactor, ctx: TypingContext, t: Fraction
) -> tuple[ToughnessWitness | None, list[dict]]:
    """Dispatch on the stall shape and return the first verified cut.

    No cycle with a B-typed edge: cut the A-type vertices. Two or more:
    cut around the shorter one's B-edge. Exactly one: that cycle anchors
    the rotation closures; try the member cut, then the degree and
    adjacency fallbacks.
    """
    attempts: list[dict] = []
    b_cycles = ctx.cycles_with_b_edge()
    if not b_cycles:
        w = witness_all_alternating(g, f, ctx, t, attempts)
        return w, attempts
    if len(b_cycles) >= 2:
        w = witness_two_b_cycles(g, f, ctx, t, attempts)
        return w, attempts
    ci = b_cycles[0]
    for builder in (witness_member_cut, witness_high_degree, witness_adjacent_members):
        w = builder(g, f, ctx, ci, t, attempts)
        if w is not None:
            return w, attempts
    return None, attempts
