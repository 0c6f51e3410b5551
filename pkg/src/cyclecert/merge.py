"""Check-or-merge rules: each either certifies a structural property of
the current 2-factor or merges cycles, shrinking the factor.

Every rule scans deterministically (ascending vertex ids, cycle indices,
fixed variant order) and returns the first candidate whose segment list
assembles into valid cycles. Assembly is the single source of truth: a
candidate that fails `assemble_cycle` is discarded, and a rule whose
trigger was seen but whose candidates all failed raises
ConstructionUnavailable, which the solver turns into an anomaly report
instead of a wrong answer.
"""
from __future__ import annotations

from dataclasses import dataclass

from .classify import RotationClosure, TypingContext, witnesses_for
from .errors import ConstructionUnavailable, InducedTwoK2Found, InvalidAssembly
from .graph import (
    CycleArc,
    Graph,
    OrientedCycle,
    PathArc,
    TwoFactor,
    assemble_cycle,
    mask_of,
)

__all__ = [
    "MergeResult",
    "rule_nonadjacency",
    "rule_a_type_edge",
    "rule_a_plus_independent",
    "rule_b_edge_split_neighbors",
    "rule_bad_successor",
    "co_absorb",
    "apply_merge",
    "reduce_factor",
    "RULES",
]


@dataclass(frozen=True)
class MergeResult:
    """Outcome of one successful merge step."""

    replaced: tuple[int, ...]
    replacement: tuple[OrientedCycle, ...]
    trace: dict


def _result(
    f: TwoFactor,
    replaced: tuple[int, ...],
    replacement: tuple[OrientedCycle, ...],
    rule: str,
    case: str,
    vertices: dict[str, int],
    variant: int | None = None,
) -> MergeResult:
    trace = {
        "rule": rule,
        "case": case,
        "vertices": dict(sorted(vertices.items())),
        "cycles_before": len(f.cycles),
        "cycles_after": len(f.cycles) - len(replaced) + len(replacement),
    }
    if variant is not None:
        trace["variant"] = variant
    return MergeResult(tuple(sorted(replaced)), replacement, trace)


def _try(g: Graph, segments, required) -> OrientedCycle | None:
    try:
        return assemble_cycle(g, segments, required)
    except InvalidAssembly:
        return None


def _oriented(c: OrientedCycle, flip: bool) -> OrientedCycle:
    return c.reversed() if flip else c


# -- rule: consecutive-shift nonadjacency -------------------------------------
# Adjacent x~u across two cycles force x's cycle neighbors to avoid u's
# cycle neighbors; any of the four violating chords merges the cycles.


def rule_nonadjacency(g: Graph, f: TwoFactor, ctx: TypingContext) -> MergeResult | None:
    for ci in range(len(f.cycles)):
        c = f.cycles[ci]
        for di in range(ci + 1, len(f.cycles)):
            d = f.cycles[di]
            for x in sorted(c.order):
                ax = g.adj_mask(x)
                if not (ax & d.mask):
                    continue
                xp, xm = c.succ(x), c.pred(x)
                for u in sorted(d.order):
                    if not (ax >> u & 1):
                        continue
                    up, um = d.succ(u), d.pred(u)
                    combos = [
                        ("succ_succ", xp, up, True, True),
                        ("succ_pred", xp, um, False, True),
                        ("pred_succ", xm, up, True, False),
                        ("pred_pred", xm, um, False, False),
                    ]
                    for case, cx, du, d_bwd, c_fwd in combos:
                        if not g.has_edge(cx, du):
                            continue
                        segs = [
                            CycleArc(d, u, du, forward=not d_bwd),
                            CycleArc(c, cx, x, forward=c_fwd),
                        ]
                        merged = _try(g, segs, c.vertex_set | d.vertex_set)
                        if merged is None:
                            continue
                        return _result(
                            f,
                            (ci, di),
                            (merged,),
                            "nonadjacency",
                            case,
                            {"x": x, "u": u},
                        )
    return None


# -- rule: edge with two A-type endpoints --------------------------------------


def rule_a_type_edge(g: Graph, f: TwoFactor, ctx: TypingContext) -> MergeResult | None:
    found = False
    for ci, c in enumerate(f.cycles):
        for cc in (c, c.reversed()):
            for x in sorted(cc.order):
                y = cc.succ(x)
                if x not in ctx.a_vertices or y not in ctx.a_vertices:
                    continue
                found = True
                z = cc.succ(y)
                for di, u0 in witnesses_for(g, f, x):
                    d = f.cycles[di]
                    for qi, v0 in witnesses_for(g, f, y):
                        res = _a_edge_candidate(
                            g, f, ctx, ci, cc, x, y, z, di, d, u0, qi, v0
                        )
                        if res is not None:
                            return res
    if found:
        raise ConstructionUnavailable(
            "a_type_edge", "an A-typed cycle edge admitted no merge"
        )
    return None


def _a_edge_candidate(g, f, ctx, ci, cc, x, y, z, di, d, u0, qi, v0):
    for flip in (False, True):
        dd = _oriented(d, flip)
        uu = d.succ(u0) if flip else u0
        if not g.has_edge(z, uu):
            continue
        uup = dd.succ(uu)
        if qi == di:
            vv = d.succ(v0) if flip else v0
            vvp = dd.succ(vv)
            segs = [
                CycleArc(dd, uup, vv),
                CycleArc(cc, y, y),
                CycleArc(dd, vvp, uu),
                CycleArc(cc, z, x),
            ]
            merged = _try(g, segs, cc.vertex_set | d.vertex_set)
            if merged is None:
                continue
            return _result(
                f,
                (ci, di),
                (merged,),
                "a_type_edge",
                "shared_witness_cycle",
                {"x": x, "y": y, "u": uu, "v": vv},
            )
        q = f.cycles[qi]
        v0p = q.succ(v0)
        big = _try(
            g,
            [CycleArc(dd, uup, uu), CycleArc(cc, z, x)],
            (cc.vertex_set - {y}) | d.vertex_set,
        )
        small = _try(
            g,
            [CycleArc(cc, y, y), CycleArc(q, v0p, v0)],
            {y} | q.vertex_set,
        )
        if big is None or small is None:
            continue
        return _result(
            f,
            (ci, di, qi),
            (big, small),
            "a_type_edge",
            "split_witness_cycle",
            {"x": x, "y": y, "u": uu, "v": v0},
        )
    return None


# -- rule: adjacent successors of A-type vertices ------------------------------
# Successors of A-type vertices must form an independent set; an edge
# between two of them merges two to four cycles depending on where the
# two underlying witnesses live.


def rule_a_plus_independent(
    g: Graph, f: TwoFactor, ctx: TypingContext
) -> MergeResult | None:
    found = False
    a_sorted = sorted(ctx.a_vertices)
    for x in a_sorted:
        ci = f.cycle_index(x)
        c = f.cycles[ci]
        xp = c.succ(x)
        for y in a_sorted:
            if y == x:
                continue
            di = f.cycle_index(y)
            d = f.cycles[di]
            yp = d.succ(y)
            if xp == yp or not g.has_edge(xp, yp):
                continue
            found = True
            for qi, u0 in witnesses_for(g, f, x):
                for ri, v0 in witnesses_for(g, f, y):
                    res = _a_plus_candidate(
                        g, f, ci, c, x, xp, di, d, y, yp, qi, u0, ri, v0
                    )
                    if res is not None:
                        return res
    if found:
        raise ConstructionUnavailable(
            "a_plus_independent", "adjacent witness successors admitted no merge"
        )
    return None


def _a_plus_candidate(g, f, ci, c, x, xp, di, d, y, yp, qi, u0, ri, v0):
    q, r = f.cycles[qi], f.cycles[ri]
    if ci == di:
        if qi == ri:
            return _a_plus_same_cycle_same_witness(
                g, f, ci, c, x, xp, y, yp, qi, q, u0, v0
            )
        return _a_plus_same_cycle_split_witness(
            g, f, ci, c, x, xp, y, yp, qi, q, u0, ri, r, v0
        )
    if qi == ri:
        return _a_plus_cross_shared_witness(
            g, f, ci, c, x, xp, di, d, y, yp, qi, q, u0, v0
        )
    if qi == di and ri == ci:
        return _a_plus_crossed(g, f, ci, c, x, xp, di, d, y, yp, u0, v0)
    if qi == di and ri not in (ci, di):
        return _a_plus_witness_on_partner(
            g, f, ci, c, x, xp, di, d, y, yp, u0, ri, r, v0
        )
    if ri == ci:
        # mirrored form of the previous branch; reached via the (y, x)
        # iteration order, nothing to do here
        return None
    if qi not in (ci, di) and ri not in (ci, di):
        return _a_plus_external(
            g, f, ci, c, x, xp, di, d, y, yp, qi, q, u0, ri, r, v0
        )
    return None


def _a_plus_same_cycle_same_witness(g, f, ci, c, x, xp, y, yp, qi, q, u0, v0):
    u, up = u0, q.succ(u0)
    v, vp = v0, q.succ(v0)
    if len({u, up, v, vp}) != 4:
        return None
    rows = [
        (1, (xp, v), (yp, up), [
            CycleArc(q, u, vp, forward=False),
            CycleArc(c, y, xp, forward=False),
            CycleArc(q, v, up, forward=False),
            CycleArc(c, yp, x),
        ]),
        (2, (xp, v), (yp, u), [
            CycleArc(q, up, v),
            CycleArc(c, xp, y),
            CycleArc(q, vp, u),
            CycleArc(c, yp, x),
        ]),
        (3, (xp, vp), (yp, up), [
            CycleArc(q, u, vp, forward=False),
            CycleArc(c, xp, y),
            CycleArc(q, v, up, forward=False),
            CycleArc(c, yp, x),
        ]),
        (4, (xp, vp), (yp, u), [
            CycleArc(q, up, v),
            CycleArc(c, y, xp, forward=False),
            CycleArc(q, vp, u),
            CycleArc(c, yp, x),
        ]),
    ]
    for variant, e1, e2, segs in rows:
        if not (g.has_edge(*e1) and g.has_edge(*e2)):
            continue
        merged = _try(g, segs, c.vertex_set | q.vertex_set)
        if merged is not None:
            return _result(
                f,
                (ci, qi),
                (merged,),
                "a_plus_independent",
                "same_cycle_same_witness",
                {"x": x, "y": y, "u": u, "v": v},
                variant,
            )
    return None


def _a_plus_same_cycle_split_witness(g, f, ci, c, x, xp, y, yp, qi, q, u0, ri, r, v0):
    for qflip in (False, True):
        qq = _oriented(q, qflip)
        uu = q.succ(u0) if qflip else u0
        for rflip in (False, True):
            rr = _oriented(r, rflip)
            vv = r.succ(v0) if rflip else v0
            if not g.has_edge(uu, vv):
                continue
            segs = [
                CycleArc(qq, qq.succ(uu), uu),
                CycleArc(rr, vv, rr.succ(vv), forward=False),
                CycleArc(c, y, xp, forward=False),
                CycleArc(c, yp, x),
            ]
            merged = _try(g, segs, c.vertex_set | q.vertex_set | r.vertex_set)
            if merged is not None:
                return _result(
                    f,
                    (ci, qi, ri),
                    (merged,),
                    "a_plus_independent",
                    "same_cycle_split_witness",
                    {"x": x, "y": y, "u": uu, "v": vv},
                )
    return None


def _a_plus_cross_shared_witness(g, f, ci, c, x, xp, di, d, y, yp, qi, q, u0, v0):
    for flip in (False, True):
        qq = _oriented(q, flip)
        uu = q.succ(u0) if flip else u0
        vv = q.succ(v0) if flip else v0
        if not g.has_edge(yp, uu):
            continue
        up, vp = qq.succ(uu), qq.succ(vv)
        shared = c.vertex_set | d.vertex_set | qq.vertex_set
        rows = [
            (1, qq.succ(up) == vv, [
                CycleArc(qq, up, vv, forward=False),
                CycleArc(d, y, yp, forward=False),
                CycleArc(c, xp, x),
            ], None, None),
            (2, g.has_edge(up, vv) and qq.succ(up) != vv, [
                CycleArc(qq, uu, vp, forward=False),
                CycleArc(d, y, yp, forward=False),
                CycleArc(c, xp, x),
            ], [CycleArc(qq, up, vv)], None),
            (3, g.has_edge(up, vp), [
                CycleArc(qq, uu, vp, forward=False),
                CycleArc(qq, up, vv),
                CycleArc(d, y, yp, forward=False),
                CycleArc(c, xp, x),
            ], None, None),
            (4, g.has_edge(uu, vv), [
                CycleArc(qq, up, vv),
                CycleArc(qq, uu, vp, forward=False),
                CycleArc(d, y, yp, forward=False),
                CycleArc(c, xp, x),
            ], None, None),
            (5, g.has_edge(uu, vp), [
                CycleArc(qq, up, vv),
                CycleArc(d, y, yp, forward=False),
                CycleArc(c, xp, x),
            ], [CycleArc(qq, uu, vp, forward=False)], None),
        ]
        for variant, cond, segs, small_segs, _ in rows:
            if not cond:
                continue
            if small_segs is None:
                merged = _try(g, segs, shared)
                if merged is None:
                    continue
                out = (merged,)
            else:
                small_req = set()
                for seg in small_segs:
                    small_req |= set(seg.vertices())
                big = _try(g, segs, shared - small_req)
                small = _try(g, small_segs, small_req)
                if big is None or small is None:
                    continue
                out = (big, small)
            return _result(
                f,
                (ci, di, qi),
                out,
                "a_plus_independent",
                "distinct_cycles_shared_witness",
                {"x": x, "y": y, "u": uu, "v": vv},
                variant,
            )
    return None


def _a_plus_crossed(g, f, ci, c, x, xp, di, d, y, yp, u0, v0):
    u, up = u0, d.succ(u0)
    upp = d.succ(up)
    v, vp = v0, c.succ(v0)
    shared = c.vertex_set | d.vertex_set
    rows = [
        (1, g.has_edge(up, v), [
            CycleArc(d, u, yp, forward=False),
            CycleArc(c, xp, v),
            CycleArc(d, up, y),
            CycleArc(c, vp, x),
        ]),
        (2, g.has_edge(up, vp), [
            CycleArc(d, u, yp, forward=False),
            CycleArc(c, xp, v),
            CycleArc(d, y, up, forward=False),
            CycleArc(c, vp, x),
        ]),
        (3, g.has_edge(u, vp), [
            CycleArc(d, up, y),
            CycleArc(c, v, xp, forward=False),
            CycleArc(d, yp, u),
            CycleArc(c, vp, x),
        ]),
        (4, g.has_edge(u, v) and g.has_edge(upp, v), [
            CycleArc(d, up, yp, forward=False),
            CycleArc(c, xp, v),
            CycleArc(d, upp, y),
            CycleArc(c, vp, x),
        ]),
        (5, g.has_edge(u, v) and g.has_edge(upp, vp), [
            CycleArc(d, up, yp, forward=False),
            CycleArc(c, xp, v),
            CycleArc(d, y, upp, forward=False),
            CycleArc(c, vp, x),
        ]),
    ]
    for variant, cond, segs in rows:
        if not cond:
            continue
        merged = _try(g, segs, shared)
        if merged is not None:
            return _result(
                f,
                (ci, di),
                (merged,),
                "a_plus_independent",
                "crossed_witnesses",
                {"x": x, "y": y, "u": u, "v": v},
                variant,
            )
    return None


def _a_plus_witness_on_partner(g, f, ci, c, x, xp, di, d, y, yp, u0, ri, r, v0):
    u, up = u0, d.succ(u0)
    v, vp = v0, r.succ(v0)
    whole = c.vertex_set | d.vertex_set | r.vertex_set
    rows = [
        (1, g.has_edge(u, v), [
            CycleArc(d, up, y),
            CycleArc(r, vp, v),
            CycleArc(d, u, yp, forward=False),
            CycleArc(c, xp, x),
        ], None),
        (2, g.has_edge(u, vp), [
            CycleArc(d, up, y),
            CycleArc(r, v, vp, forward=False),
            CycleArc(d, u, yp, forward=False),
            CycleArc(c, xp, x),
        ], None),
        (3, g.has_edge(up, v), [
            CycleArc(d, u, yp, forward=False),
            CycleArc(c, xp, x),
        ], [CycleArc(d, up, y), CycleArc(r, vp, v)]),
        (4, g.has_edge(up, vp), [
            CycleArc(d, u, yp, forward=False),
            CycleArc(c, xp, x),
        ], [CycleArc(d, up, y), CycleArc(r, v, vp, forward=False)]),
    ]
    for variant, cond, segs, small_segs in rows:
        if not cond:
            continue
        if small_segs is None:
            merged = _try(g, segs, whole)
            if merged is None:
                continue
            out = (merged,)
        else:
            small_req = set()
            for seg in small_segs:
                small_req |= set(seg.vertices())
            big = _try(g, segs, whole - small_req)
            small = _try(g, small_segs, small_req)
            if big is None or small is None:
                continue
            out = (big, small)
        return _result(
            f,
            (ci, di, ri),
            out,
            "a_plus_independent",
            "witness_on_partner_cycle",
            {"x": x, "y": y, "u": u, "v": v},
            variant,
        )
    return None


def _a_plus_external(g, f, ci, c, x, xp, di, d, y, yp, qi, q, u0, ri, r, v0):
    for qflip in (False, True):
        qq = _oriented(q, qflip)
        uu = q.succ(u0) if qflip else u0
        for rflip in (False, True):
            rr = _oriented(r, rflip)
            vv = r.succ(v0) if rflip else v0
            if not g.has_edge(uu, vv):
                continue
            segs = [
                CycleArc(qq, qq.succ(uu), uu),
                CycleArc(rr, vv, rr.succ(vv), forward=False),
                CycleArc(d, y, yp, forward=False),
                CycleArc(c, xp, x),
            ]
            whole = c.vertex_set | d.vertex_set | q.vertex_set | r.vertex_set
            merged = _try(g, segs, whole)
            if merged is not None:
                return _result(
                    f,
                    (ci, di, qi, ri),
                    (merged,),
                    "a_plus_independent",
                    "external_witnesses",
                    {"x": x, "y": y, "u": uu, "v": vv},
                )
    return None


# -- rule: B-typed edge with neighbors split over another cycle ----------------
# A B-typed cycle edge whose endpoints both have neighbors on the same
# alternating cycle concedes a merge around the A-type vertex wedged
# between the two neighbor runs.


def rule_b_edge_split_neighbors(
    g: Graph, f: TwoFactor, ctx: TypingContext
) -> MergeResult | None:
    found = False
    for ci, c in enumerate(f.cycles):
        if not ctx.b_edges(ci):
            continue
        for cc in (c, c.reversed()):
            for x in sorted(cc.order):
                y = cc.succ(x)
                if x in ctx.a_vertices or y in ctx.a_vertices:
                    continue
                ax, ay = g.adj_mask(x), g.adj_mask(y)
                b_mask = mask_of(ctx.b_vertices)
                for di, d in enumerate(f.cycles):
                    if di == ci or not ctx.alternating[di]:
                        continue
                    if not (ax & d.mask) or not (ay & d.mask):
                        continue
                    if not ((ax | ay) & d.mask & b_mask):
                        continue
                    found = True
                    res = _b_edge_candidate(g, f, ctx, ci, cc, x, y, di, d)
                    if res is not None:
                        return res
    if found:
        raise ConstructionUnavailable(
            "b_edge_split_neighbors",
            "a split B-edge neighborhood admitted no merge",
        )
    return None


def _b_edge_candidate(g, f, ctx, ci, cc, x, y, di, d):
    for u in d.order:
        upp = d.succ(d.succ(u))
        if not (g.has_edge(x, u) and g.has_edge(y, upp)):
            continue
        up = d.succ(u)
        if up not in ctx.a_vertices:
            continue
        for qi, w0 in witnesses_for(g, f, up):
            q = f.cycles[qi]
            w0p = q.succ(w0)
            if {w0, w0p} & {x, y}:
                continue
            if qi == ci:
                vv = w0 if cc.succ(w0) == w0p else w0p
                segs = [
                    CycleArc(d, u, upp, forward=False),
                    CycleArc(cc, y, vv),
                    CycleArc(d, up, up),
                    CycleArc(cc, cc.succ(vv), x),
                ]
                merged = _try(g, segs, cc.vertex_set | d.vertex_set)
                if merged is None:
                    continue
                return _result(
                    f,
                    (ci, di),
                    (merged,),
                    "b_edge_split_neighbors",
                    "witness_on_base_cycle",
                    {"x": x, "y": y, "u": u, "w": vv},
                )
            big = _try(
                g,
                [CycleArc(d, u, upp, forward=False), CycleArc(cc, y, x)],
                cc.vertex_set | (d.vertex_set - {up}),
            )
            small = _try(
                g,
                [CycleArc(q, w0, w0p, forward=False), CycleArc(d, up, up)],
                q.vertex_set | {up},
            )
            if big is None or small is None:
                continue
            return _result(
                f,
                (ci, di, qi),
                (big, small),
                "b_edge_split_neighbors",
                "witness_elsewhere",
                {"x": x, "y": y, "u": u, "w": w0},
            )
    return None


# -- rule: successor of a saturated vertex meets a witness successor -----------
# A vertex adjacent to every B-type vertex of an alternating cycle pins
# down its cycle successor: that successor may not touch any successor
# of an A-type vertex. Violations merge three or four cycles, except in
# two configurations that exhibit an induced pair of disjoint edges.


def rule_bad_successor(
    g: Graph, f: TwoFactor, ctx: TypingContext
) -> MergeResult | None:
    found = False
    for x in sorted(ctx.bad_map):
        ci = f.cycle_index(x)
        c = f.cycles[ci]
        xp = c.succ(x)
        axp = g.adj_mask(xp)
        for w in sorted(ctx.a_plus):
            if w in (x, xp) or not (axp >> w & 1):
                continue
            qi = f.cycle_index(w)
            q = f.cycles[qi]
            wm = q.pred(w)
            if wm not in ctx.a_vertices:
                continue
            for di in ctx.bad_map[x]:
                if di == qi or not ctx.alternating[di]:
                    continue
                d = f.cycles[di]
                found = True
                res = _bad_successor_candidate(
                    g, f, ctx, ci, c, x, xp, qi, q, w, wm, di, d
                )
                if res is not None:
                    return res
    if found:
        raise ConstructionUnavailable(
            "bad_successor", "a saturated-successor conflict admitted no merge"
        )
    return None


def _bad_successor_candidate(g, f, ctx, ci, c, x, xp, qi, q, w, wm, di, d):
    wp = q.succ(w)
    z_candidates = [
        z
        for z in sorted(d.order)
        if z in ctx.a_vertices and g.has_edge(w, z)
    ]
    for ri, v0 in witnesses_for(g, f, wm):
        r = f.cycles[ri]
        v0p = r.succ(v0)
        if ri == di:
            # the violating edge and this witness edge can share no
            # endpoints or neighbors: an induced disjoint edge pair
            blocked = g.adj_mask(xp) | g.adj_mask(w)
            if not (blocked >> v0 & 1) and not (blocked >> v0p & 1):
                raise InducedTwoK2Found((xp, w), (v0, v0p))
            continue
        if qi != ci and ri == ci:
            for z in z_candidates:
                zm = d.pred(z)
                base = [
                    CycleArc(q, w, w),
                    CycleArc(d, z, zm),
                    CycleArc(c, x, c.succ(v0), forward=False),
                ]
                rows = [
                    (1, (wp, v0), base + [
                        CycleArc(q, wm, wp, forward=False),
                        CycleArc(c, v0, xp, forward=False),
                    ]),
                    (2, (wp, c.succ(v0)), base + [
                        CycleArc(q, wp, wm),
                        CycleArc(c, v0, xp, forward=False),
                    ]),
                ]
                for variant, edge, segs in rows:
                    if not g.has_edge(*edge):
                        continue
                    merged = _try(
                        g, segs, c.vertex_set | d.vertex_set | q.vertex_set
                    )
                    if merged is None:
                        continue
                    return _result(
                        f,
                        (ci, di, qi),
                        (merged,),
                        "bad_successor",
                        "pivot_off_base_witness_on_base",
                        {"x": x, "w": w, "z": z, "v": v0},
                        variant,
                    )
            continue
        if qi != ci:
            for rflip in (False, True):
                rr = _oriented(r, rflip)
                vv = r.succ(v0) if rflip else v0
                if not g.has_edge(xp, vv):
                    continue
                for z in z_candidates:
                    segs = [
                        CycleArc(d, d.succ(z), z),
                        CycleArc(q, w, wm),
                        CycleArc(rr, rr.succ(vv), vv),
                        CycleArc(c, xp, x),
                    ]
                    whole = (
                        c.vertex_set
                        | d.vertex_set
                        | q.vertex_set
                        | r.vertex_set
                    )
                    merged = _try(g, segs, whole)
                    if merged is None:
                        continue
                    return _result(
                        f,
                        (ci, di, qi, ri),
                        (merged,),
                        "bad_successor",
                        "all_external",
                        {"x": x, "w": w, "z": z, "v": vv},
                    )
            continue
        # w lies on x's own cycle
        for rflip in (False, True):
            rr = _oriented(r, rflip)
            vv = r.succ(v0) if rflip else v0
            if not g.has_edge(xp, vv):
                continue
            for z in z_candidates:
                first = _try(
                    g,
                    [CycleArc(d, d.succ(z), z), CycleArc(c, w, x)],
                    d.vertex_set | set(c.arc(w, x)),
                )
                second = _try(
                    g,
                    [
                        CycleArc(rr, vv, rr.succ(vv), forward=False),
                        CycleArc(c, wm, xp, forward=False),
                    ],
                    r.vertex_set | set(c.arc(xp, wm)),
                )
                if first is None or second is None:
                    continue
                return _result(
                    f,
                    (ci, di, ri),
                    (first, second),
                    "bad_successor",
                    "pivot_on_base",
                    {"x": x, "w": w, "z": z, "v": vv},
                )
    return None


# -- vertex co-absorption ------------------------------------------------------
# A rotation-closure member v can be dropped while its base cycle and one
# witness cycle merge into a single cycle covering everything else. Used
# by the degree-based cut builder.


def _absorb_bases(g: Graph, f: TwoFactor, ctx: TypingContext, x: int):
    """Candidate (cycle index, oriented cycle, u, saturated?) tuples for
    absorbing next to x. u is a B-type neighbor of x on the cycle; for
    witness pairs the orientation puts the B-type endpoint first."""
    out = []
    for di in ctx.bad_map.get(x, ()):
        d = f.cycles[di]
        for dd in (d, d.reversed()):
            for u in sorted(dd.order):
                if u in ctx.b_vertices and g.has_edge(x, u):
                    out.append((di, dd, u, True))
    for di, u0 in witnesses_for(g, f, x):
        d = f.cycles[di]
        u0p = d.succ(u0)
        if u0 in ctx.b_vertices:
            out.append((di, d, u0, False))
        if u0p in ctx.b_vertices:
            out.append((di, d.reversed(), u0p, False))
    return out


def _absorb_next_to(g, f, ctx, c, x, after: bool):
    """Cycle over V(c) u V(d) minus x's cycle successor (after=True) or
    predecessor (after=False), for a base x with a saturated or witness
    cycle d. Returns (cycle, cycle index of d) or None."""
    anchor = c.succ(c.succ(x)) if after else c.pred(c.pred(x))
    dropped = c.succ(x) if after else c.pred(x)
    for di, dd, u, saturated in _absorb_bases(g, f, ctx, x):
        up = dd.succ(u)
        required = (c.vertex_set - {dropped}) | dd.vertex_set
        tail = CycleArc(c, anchor, x, forward=after)
        if g.has_edge(anchor, up):
            merged = _try(g, [CycleArc(dd, u, up, forward=False), tail], required)
            if merged is not None:
                return merged, di
        if g.has_edge(anchor, u):
            if not saturated:
                merged = _try(g, [CycleArc(dd, up, u), tail], required)
                if merged is not None:
                    return merged, di
            elif up in ctx.a_vertices:
                upp = dd.succ(up)
                for wi, w0 in witnesses_for(g, f, up):
                    if wi != f.cycle_index(x):
                        continue
                    w0p = c.succ(w0)
                    if {w0, w0p} & {x, dropped}:
                        continue
                    if after:
                        segs = [
                            CycleArc(dd, upp, u),
                            CycleArc(c, anchor, w0),
                            CycleArc(dd, up, up),
                            CycleArc(c, w0p, x),
                        ]
                    else:
                        segs = [
                            CycleArc(dd, upp, u),
                            CycleArc(c, anchor, w0p, forward=False),
                            CycleArc(dd, up, up),
                            CycleArc(c, w0, x, forward=False),
                        ]
                    merged = _try(g, segs, required)
                    if merged is not None:
                        return merged, di
    return None


def co_absorb(
    g: Graph,
    f: TwoFactor,
    ctx: TypingContext,
    closure: RotationClosure,
    v: int,
    v_bad: frozenset[int],
) -> tuple[OrientedCycle, int] | None:
    """Absorb all of the base cycle except v into one witness cycle.

    Returns the combined cycle over V(base cycle) + V(other) - {v} and
    the index of the other cycle, or None when no candidate assembles.
    """
    c = closure.cycle
    x = closure.base
    if v == c.succ(x):
        return _absorb_next_to(g, f, ctx, c, x, after=True)
    path = closure.paths.get(v)
    if path is None:
        return None
    y = path.succ(v)
    if y in v_bad:
        # v flanks another saturated or A-type vertex; absorb around it
        if c.succ(y) == v:
            return _absorb_next_to(g, f, ctx, c, y, after=True)
        if c.pred(y) == v:
            return _absorb_next_to(g, f, ctx, c, y, after=False)
        return None
    for di, dd, u, _sat in _absorb_bases(g, f, ctx, x):
        up = dd.succ(u)
        if not g.has_edge(y, up):
            continue
        merged = _try(
            g,
            [PathArc(path, y, x), CycleArc(dd, u, up, forward=False)],
            (c.vertex_set - {v}) | dd.vertex_set,
        )
        if merged is not None:
            return merged, di
    return None


# -- driving the rules ---------------------------------------------------------

RULES = (
    rule_nonadjacency,
    rule_a_type_edge,
    rule_a_plus_independent,
    rule_b_edge_split_neighbors,
    rule_bad_successor,
)


def apply_merge(f: TwoFactor, result: MergeResult) -> TwoFactor:
    replaced = set(result.replaced)
    kept = tuple(c for i, c in enumerate(f.cycles) if i not in replaced)
    new = TwoFactor.normalized(kept + result.replacement)
    if new.vertex_count() != f.vertex_count():
        raise RuntimeError("merge changed the covered vertex set")
    return new


def reduce_factor(g: Graph, f: TwoFactor) -> tuple[TwoFactor, list[dict]]:
    """Run the merge rules to a fixed point.

    Returns the final factor and the per-merge trace. A single returned
    cycle is a spanning cycle of g; multiple cycles mean every rule's
    property holds (a stalled state, handed to the cut builders).
    """
    from .classify import classify

    f = TwoFactor.normalized(f.cycles)
    trace: list[dict] = []
    while len(f.cycles) >= 2:
        ctx = classify(g, f)
        step = None
        for rule in RULES:
            step = rule(g, f, ctx)
            if step is not None:
                break
        if step is None:
            break
        f = apply_merge(f, step)
        trace.append(step.trace)
    return f, trace
