"""Vertex/edge typing over a 2-factor, rotation closures, state checks.

A vertex is A-type when it is adjacent to two consecutive vertices of a
cycle other than its own; otherwise B-type. Edge types on a cycle follow
from endpoint types (A, B, or mixed AB). The rotation closure of a base
vertex collects the cycle vertices reachable by repeated spanning-path
rotations; its stored paths feed the end-game witness constructions.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import SingleCycle
from .graph import (
    Graph,
    OrientedCycle,
    OrientedPath,
    TwoFactor,
    bits,
    mask_of,
    rotate_path,
)
from .recognize import is_independent

EDGE_A = "A"
EDGE_B = "B"
EDGE_AB = "AB"


@dataclass(frozen=True)
class TypingContext:
    """Typing of every vertex and cycle edge for one 2-factor state."""

    factor: TwoFactor
    a_vertices: frozenset[int]
    b_vertices: frozenset[int]
    a_witness: dict[int, tuple[int, int]]
    edge_types: dict[tuple[int, int], str]
    alternating: tuple[bool, ...]
    bad_map: dict[int, tuple[int, ...]]

    def type_of(self, v: int) -> str:
        return EDGE_A if v in self.a_vertices else EDGE_B

    @property
    def a_plus(self) -> frozenset[int]:
        return frozenset(self.factor.succ(x) for x in self.a_vertices)

    def plus_origin(self, w: int) -> int | None:
        """The A-type vertex whose cycle successor is w, if any."""
        x = self.factor.pred(w)
        return x if x in self.a_vertices else None

    def b_edges(self, ci: int) -> list[tuple[int, int]]:
        """B-type edges of cycle ci as normalized pairs, lexicographic."""
        cyc = self.factor.cycles[ci]
        out = [e for e in cyc.edges_on() if self.edge_types[e] == EDGE_B]
        return sorted(out)

    def cycles_with_b_edge(self) -> list[int]:
        return [
            ci for ci in range(len(self.factor.cycles)) if self.b_edges(ci)
        ]


def witnesses_for(g: Graph, f: TwoFactor, x: int):
    """All A-type witnesses for x: pairs (cycle index, u) with u, succ(u)
    consecutive on another cycle and both adjacent to x. Ascending by
    cycle index, then by u."""
    own = f.cycle_index(x)
    ax = g.adj_mask(x)
    for di, d in enumerate(f.cycles):
        if di == own or not (ax & d.mask):
            continue
        for u in sorted(d.order):
            if ax >> u & 1 and ax >> d.succ(u) & 1:
                yield di, u


def classify(g: Graph, f: TwoFactor) -> TypingContext:
    """Type every vertex and cycle edge. Needs at least two cycles."""
    if len(f.cycles) < 2:
        raise SingleCycle("typing needs a 2-factor with >= 2 cycles")
    a_witness: dict[int, tuple[int, int]] = {}
    for x in range(g.n):
        for wit in witnesses_for(g, f, x):
            a_witness[x] = wit
            break
    a_set = frozenset(a_witness)
    b_set = frozenset(range(g.n)) - a_set

    edge_types: dict[tuple[int, int], str] = {}
    alternating = []
    for cyc in f.cycles:
        alt = True
        for u, v in cyc.edges_on():
            ta, tb = u in a_set, v in a_set
            if ta and tb:
                edge_types[(u, v)] = EDGE_A
                alt = False
            elif not ta and not tb:
                edge_types[(u, v)] = EDGE_B
                alt = False
            else:
                edge_types[(u, v)] = EDGE_AB
        alternating.append(alt)

    b_mask_by_cycle = [c.mask & mask_of(b_set) for c in f.cycles]
    bad_map: dict[int, tuple[int, ...]] = {}
    for x in range(g.n):
        own = f.cycle_index(x)
        hits = []
        for di, d in enumerate(f.cycles):
            if di == own:
                continue
            bm = b_mask_by_cycle[di]
            if bm and (g.adj_mask(x) & d.mask) == bm:
                hits.append(di)
        if hits:
            bad_map[x] = tuple(hits)

    return TypingContext(
        factor=f,
        a_vertices=a_set,
        b_vertices=b_set,
        a_witness=a_witness,
        edge_types=edge_types,
        alternating=tuple(alternating),
        bad_map=bad_map,
    )


def neighbor_profile(g: Graph, f: TwoFactor, x: int, d: OrientedCycle) -> frozenset[int]:
    """V_d(x): neighbors of x on cycle d."""
    return frozenset(bits(g.adj_mask(x) & d.mask))


def i_xy(g: Graph, f: TwoFactor, c: OrientedCycle, x: int, y: int) -> frozenset[int]:
    """Vertices outside c adjacent to neither endpoint of cycle edge xy."""
    from .errors import NotCycleEdge

    if not c.has_cycle_edge(x, y):
        raise NotCycleEdge(f"({x},{y}) is not an edge of the given cycle")
    outside = ((1 << g.n) - 1) & ~c.mask
    return frozenset(bits(outside & ~g.adj_mask(x) & ~g.adj_mask(y)))


def bad_vertices(g: Graph, f: TwoFactor, c: OrientedCycle, ctx: TypingContext) -> frozenset[int]:
    """Vertices of c that are bad w.r.t. some other cycle or A-type.

    x is bad w.r.t. D when its neighbors on D are exactly D's B-type
    vertices and there is at least one.
    """
    out = set()
    for x in c.order:
        if x in ctx.bad_map or x in ctx.a_vertices:
            out.add(x)
    return frozenset(out)


# -- rotation closures --------------------------------------------------------


@dataclass(frozen=True)
class RotationClosure:
    """Vertices reachable from base's successor by spanning-path rotations.

    paths[v] spans the base cycle from v to base; provenance[v] replays
    how v was discovered: None for the seed, else (parent member, pivot).
    """

    base: int
    cycle: OrientedCycle
    layers: tuple[frozenset[int], ...]
    paths: dict[int, OrientedPath]
    provenance: dict[int, tuple[int, int] | None]

    @property
    def members(self) -> frozenset[int]:
        return frozenset(self.paths)


def rotation_closure(
    g: Graph, f: TwoFactor, c: OrientedCycle, x: int, v_bad: frozenset[int]
) -> RotationClosure:
    """Breadth-first rotation closure of base x on cycle c.

    Seed member is x's successor with the spanning path back to x. Each
    member's path is scanned in position order; a pivot is any interior
    or terminal path vertex adjacent to the member and outside v_bad, and
    contributes the pivot's path predecessor as a new member. The first
    discovery of a member fixes its stored path.
    """
    if x not in v_bad:
        raise ValueError(f"base {x} is not in v_bad")
    seed = c.succ(x)
    seed_path = OrientedPath(c.arc(seed, x, forward=True))
    paths: dict[int, OrientedPath] = {seed: seed_path}
    provenance: dict[int, tuple[int, int] | None] = {seed: None}
    layer_of = {seed: 0}
    queue = [seed]
    head = 0
    while head < len(queue):
        w = queue[head]
        head += 1
        path = paths[w]
        aw = g.adj_mask(w)
        for i in range(1, len(path.order)):
            pivot = path.order[i]
            if not (aw >> pivot & 1) or pivot in v_bad:
                continue
            u = path.order[i - 1]
            if u in paths:
                continue
            paths[u] = rotate_path(g, path, pivot)
            provenance[u] = (w, pivot)
            layer_of[u] = layer_of[w] + 1
            queue.append(u)
    depth = max(layer_of.values()) + 1
    layers = tuple(
        frozenset(v for v, k in layer_of.items() if k == i) for i in range(depth)
    )
    return RotationClosure(x, c, layers, paths, provenance)


def replay_closure(g: Graph, closure: RotationClosure, v_bad: frozenset[int]) -> None:
    """Independent re-check of a closure: every stored path spans the
    cycle and ends at the base, and every discovery replays. Raises
    AssertionError on any mismatch."""
    cyc_set = closure.cycle.vertex_set
    for v, path in closure.paths.items():
        assert path.start == v and path.end == closure.base
        assert path.vertex_set == cyc_set
        path.validate(g)
        prov = closure.provenance[v]
        if prov is None:
            assert v == closure.cycle.succ(closure.base)
            continue
        parent, pivot = prov
        parent_path = closure.paths[parent]
        assert g.has_edge(parent, pivot)
        assert pivot not in v_bad
        assert parent_path.pred(pivot) == v
        assert rotate_path(g, parent_path, pivot).order == path.order


def closure_union(closures: dict[int, RotationClosure]) -> frozenset[int]:
    """U over all bases of the closure member sets."""
    out: set[int] = set()
    for cl in closures.values():
        out |= cl.members
    return frozenset(out)


def build_closures(
    g: Graph, f: TwoFactor, c: OrientedCycle, ctx: TypingContext
) -> dict[int, RotationClosure]:
    vb = bad_vertices(g, f, c, ctx)
    return {x: rotation_closure(g, f, c, x, vb) for x in sorted(vb)}


# -- stalled-state consistency checks ----------------------------------------
# Each check returns violation records; an empty list means the state has
# the property the merge argument would guarantee at this point.


def check_ixy_independent(g: Graph, f: TwoFactor, ctx: TypingContext) -> list[dict]:
    # the independence property is specific to B-typed cycle edges; the
    # outside set of a mixed edge may legitimately contain adjacencies
    out = []
    for ci, cyc in enumerate(f.cycles):
        for x, y in ctx.b_edges(ci):
            s = i_xy(g, f, cyc, x, y)
            if not is_independent(g, s):
                out.append(
                    {"check": "i_xy_independent", "cycle": ci, "edge": [x, y]}
                )
    return out


def check_b_edge_alternation(g: Graph, f: TwoFactor, ctx: TypingContext) -> list[dict]:
    out = []
    for ci, cyc in enumerate(f.cycles):
        for x, y in ctx.b_edges(ci):
            s = i_xy(g, f, cyc, x, y)
            for di, d in enumerate(f.cycles):
                if di == ci:
                    continue
                for a in d.order:
                    if (a in s) == (d.succ(a) in s):
                        out.append(
                            {
                                "check": "b_edge_alternation",
                                "cycle": ci,
                                "edge": [x, y],
                                "other": di,
                                "at": a,
                            }
                        )
                        break
    return out


def check_b_edge_count(g: Graph, f: TwoFactor, ctx: TypingContext) -> list[dict]:
    out = []
    for ci, cyc in enumerate(f.cycles):
        for x, y in ctx.b_edges(ci):
            s = i_xy(g, f, cyc, x, y)
            if 2 * len(s) != g.n - len(cyc):
                out.append(
                    {
                        "check": "b_edge_count",
                        "cycle": ci,
                        "edge": [x, y],
                        "size": len(s),
                    }
                )
    return out


def check_no_consecutive_bad(
    g: Graph, f: TwoFactor, c: OrientedCycle, ctx: TypingContext
) -> list[dict]:
    out = []
    vb = bad_vertices(g, f, c, ctx)
    for v in sorted(vb):
        if c.succ(v) in vb:
            out.append({"check": "consecutive_bad", "pair": [v, c.succ(v)]})
    off_cycle_b = mask_of(ctx.b_vertices) & ~c.mask
    for v in c.order:
        if v not in vb and g.adj_mask(v) & off_cycle_b:
            out.append({"check": "non_bad_b_neighbor", "vertex": v})
    return out


def check_closure_nonadjacency(
    g: Graph,
    f: TwoFactor,
    c: OrientedCycle,
    ctx: TypingContext,
    closures: dict[int, RotationClosure],
) -> list[dict]:
    out = []
    for x, cl in closures.items():
        members = cl.members
        for di, d in enumerate(f.cycles):
            if d == c:
                continue
            b_on_d = sorted(v for v in d.order if v in ctx.b_vertices)
            for u in b_on_d:
                if not g.has_edge(x, u):
                    continue
                blocked = g.adj_mask(u) | g.adj_mask(d.succ(u))
                hit = blocked & mask_of(members)
                if hit:
                    out.append(
                        {
                            "check": "closure_nonadjacency",
                            "base": x,
                            "u": u,
                            "members": sorted(bits(hit)),
                        }
                    )
    return out


def check_member_neighbor_correspondence(
    g: Graph, c: OrientedCycle, members: frozenset[int]
) -> list[dict]:
    out = []
    touched = set()
    for v in members:
        touched |= set(bits(g.adj_mask(v) & c.mask))
    for y in sorted(touched):
        if not (c.succ(y) in members or c.pred(y) in members):
            out.append({"check": "member_neighbor_correspondence", "vertex": y})
    if len(touched) > 2 * len(members):
        out.append(
            {
                "check": "member_neighbor_bound",
                "touched": len(touched),
                "members": len(members),
            }
        )
    return out


def stall_checks(
    g: Graph,
    f: TwoFactor,
    ctx: TypingContext,
    c: OrientedCycle,
    closures: dict[int, RotationClosure],
) -> list[dict]:
    """All structural consistency checks for a stalled state with a
    designated cycle c. Empty result = consistent."""
    out = []
    out += check_ixy_independent(g, f, ctx)
    out += check_b_edge_alternation(g, f, ctx)
    out += check_b_edge_count(g, f, ctx)
    out += check_no_consecutive_bad(g, f, c, ctx)
    out += check_closure_nonadjacency(g, f, c, ctx, closures)
    out += check_member_neighbor_correspondence(g, c, closure_union(closures))
    return out
