import random

import pytest

from cyclecert.errors import InvalidAssembly, InvalidRotation, ParseError
from cyclecert.graph import (
    CycleArc,
    Graph,
    OrientedCycle,
    OrientedPath,
    PathArc,
    SingleEdge,
    TwoFactor,
    assemble_cycle,
    bits,
    component_count,
    component_count_unionfind,
    components,
    mask_of,
    rotate_path,
)
from helpers import complete, cycle_graph, path_graph, rand_graph


def test_bit_helpers():
    assert mask_of([0, 2, 5]) == 0b100101
    assert list(bits(0b100101)) == [0, 2, 5]
    assert list(bits(0)) == []


def test_adjacency_basics():
    g = Graph(4, [(0, 1), (2, 1), (2, 3)])
    assert g.n == 4 and g.m == 3
    assert g.has_edge(1, 2) and g.has_edge(2, 1)
    assert not g.has_edge(0, 3)
    assert g.neighbors(1) == [0, 2]
    assert g.degree(2) == 2
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]
    assert g.adj_mask(2) == mask_of([1, 3])


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        Graph(2, [(-1, 0)])


def test_with_edges_and_equality():
    g = Graph(4, [(0, 1)])
    h = g.with_edges([(2, 3), (1, 2)])
    assert h.m == 3 and g.m == 1
    assert h == Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert hash(h) == hash(Graph(4, [(2, 3), (0, 1), (1, 2)]))
    assert g != Graph(5, [(0, 1)])


def test_is_complete():
    assert complete(5).is_complete()
    assert complete(1).is_complete()
    assert not cycle_graph(4).is_complete()


def test_text_round_trip():
    rng = random.Random(7)
    for _ in range(50):
        g = rand_graph(rng, rng.randint(1, 9), rng.random())
        back = Graph.from_text(g.to_text())
        assert back == g
        assert back.input_hash() == g.input_hash()
        assert g.input_hash().startswith("sha256:")


@pytest.mark.parametrize(
    "text",
    [
        "",
        "3\n",
        "3 1\n",
        "3 0\n0 1\n",
        "3 1\n0 0\n",
        "3 1\n1 0\n",
        "3 1\n0 3\n",
        "3 2\n0 1\n0 1\n",
        "3 2\n0 2\n0 1\n",
        "3 1\n0 1",  # missing trailing newline
        "3 1\n0 1 2\n",
    ],
)
def test_from_text_rejects(text):
    with pytest.raises(ParseError):
        Graph.from_text(text)


def test_components_and_count():
    g = Graph(7, [(0, 1), (1, 2), (3, 4), (5, 6)])
    assert component_count(g) == 3
    assert components(g) == [(0, 1, 2), (3, 4), (5, 6)]
    # removal masks shrink or split
    assert component_count(g, mask_of([1])) == 4
    assert components(g, mask_of([1])) == [(0,), (2,), (3, 4), (5, 6)]
    assert component_count(Graph(0), 0) == 0


def test_component_count_routes_agree():
    rng = random.Random(11)
    for _ in range(200):
        g = rand_graph(rng, rng.randint(1, 10), rng.random() * 0.7)
        removed = rng.getrandbits(g.n)
        if removed == g.full_mask():
            continue
        assert component_count(g, removed) == component_count_unionfind(g, removed)
        got = components(g, removed)
        assert sum(len(c) for c in got) == g.n - removed.bit_count()
        assert component_count(g, removed) == len(got)


def test_oriented_cycle_ops():
    c = OrientedCycle((3, 0, 4, 1))
    assert len(c) == 4 and 4 in c and 2 not in c
    assert c.succ(1) == 3 and c.pred(3) == 1
    assert c.position(4) == 2
    assert c.mask == mask_of([0, 1, 3, 4])
    assert c.arc(0, 1) == (0, 4, 1)
    assert c.arc(0, 1, forward=False) == (0, 3, 1)
    assert c.arc(4, 4) == (4,)
    assert c.edges_on() == [(0, 3), (0, 4), (1, 4), (1, 3)]
    assert c.has_cycle_edge(3, 0) and not c.has_cycle_edge(3, 4)
    assert c.reversed().order == (3, 1, 4, 0)
    assert c.normalized().order == (0, 4, 1, 3)


def test_oriented_cycle_rejects_degenerate():
    with pytest.raises(ValueError):
        OrientedCycle((0, 1))
    with pytest.raises(ValueError):
        OrientedCycle((0, 1, 1))


def test_cycle_validate_against_host():
    g = cycle_graph(5)
    OrientedCycle((0, 1, 2, 3, 4)).validate(g)
    with pytest.raises(ValueError):
        OrientedCycle((0, 2, 4, 1, 3)).validate(g)


def test_oriented_path_ops():
    p = OrientedPath((2, 0, 3, 1))
    assert p.start == 2 and p.end == 1
    assert p.succ(0) == 3 and p.pred(3) == 0
    with pytest.raises(ValueError):
        p.succ(1)
    with pytest.raises(ValueError):
        p.pred(2)
    assert p.arc(0, 1) == (0, 3, 1)
    assert p.arc(1, 0) == (1, 3, 0)
    p.validate(Graph(4, [(0, 2), (0, 3), (1, 3)]))


def test_rotate_path():
    # 0-1-2-3-4 path plus chord 0-3: rotating at 3 reverses the prefix
    g = path_graph(5).with_edges([(0, 3)])
    p = OrientedPath((0, 1, 2, 3, 4))
    q = rotate_path(g, p, 3)
    assert q.order == (2, 1, 0, 3, 4)
    q.validate(g)
    with pytest.raises(InvalidRotation):
        rotate_path(g, p, 4)  # endpoint
    with pytest.raises(InvalidRotation):
        rotate_path(g, p, 2)  # start is not adjacent to 2


def test_two_factor_ops():
    f = TwoFactor((OrientedCycle((4, 5, 6)), OrientedCycle((0, 1, 2, 3))))
    assert len(f) == 2 and f.vertex_count() == 7
    assert f.cycle_index(5) == 0 and f.cycle_index(2) == 1
    assert f.cycle_of(6).order == (4, 5, 6)
    assert f.succ(6) == 4 and f.pred(0) == 3
    g = Graph(7, [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (4, 6)])
    f.validate(g)
    with pytest.raises(ValueError):
        f.validate(Graph(7, [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (4, 6)]))


def test_two_factor_rejects_overlap():
    with pytest.raises(ValueError):
        TwoFactor((OrientedCycle((0, 1, 2)), OrientedCycle((2, 3, 4))))


def test_two_factor_normalized_sorts_cycles():
    f = TwoFactor.normalized([OrientedCycle((5, 4, 3)), OrientedCycle((2, 0, 1))])
    assert [c.order for c in f.cycles] == [(0, 1, 2), (3, 5, 4)]
    # rotation applied, orientation untouched
    assert f.cycle_of(4).succ(3) == 5


def test_assemble_cycle_happy_path():
    g, f = _assembly_state()
    c, d = f.cycles
    merged = assemble_cycle(
        g,
        [CycleArc(c, 1, 0), SingleEdge(0, 3), CycleArc(d, 3, 5)],
        range(6),
    )
    assert merged.order == (1, 2, 0, 3, 4, 5)
    merged.validate(g)
    # a backward arc between cycle-adjacent endpoints is the one-step hop
    assert CycleArc(d, 3, 5, forward=False).vertices() == (3, 5)


def test_assemble_cycle_rejects():
    g, f = _assembly_state()
    c, d = f.cycles
    with pytest.raises(InvalidAssembly):  # junction 0-4 is not an edge
        assemble_cycle(g, [CycleArc(c, 1, 0), CycleArc(d, 4, 3)], range(6))
    with pytest.raises(InvalidAssembly):  # vertex 5 dropped
        assemble_cycle(g, [CycleArc(c, 1, 0), CycleArc(d, 3, 4)], range(6))
    with pytest.raises(InvalidAssembly):  # repeated vertex
        assemble_cycle(g, [CycleArc(c, 0, 2), CycleArc(c, 1, 0)], range(3))
    with pytest.raises(InvalidAssembly):  # connector contradicts the junction
        assemble_cycle(
            g,
            [CycleArc(c, 1, 0), SingleEdge(1, 5), CycleArc(d, 3, 5)],
            range(6),
        )
    with pytest.raises(InvalidAssembly):  # no vertex-bearing segments
        assemble_cycle(g, [SingleEdge(0, 3)], range(6))


def test_path_arc_segment():
    g = path_graph(4).with_edges([(0, 3)])
    p = OrientedPath((0, 1, 2, 3))
    cyc = assemble_cycle(g, [PathArc(p, 0, 3)], range(4))
    assert cyc.order == (0, 1, 2, 3)


def _assembly_state():
    # two triangles joined by the edges 0-3 and 1-5
    g = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 5)])
    f = TwoFactor((OrientedCycle((0, 1, 2)), OrientedCycle((3, 4, 5))))
    return g, f
