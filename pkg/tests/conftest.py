import random

import pytest

from helpers import (
    complete,
    complete_bipartite,
    cycle_graph,
    path_graph,
    petersen,
    rand_graph,
    star,
    two_k2,
)


@pytest.fixture(scope="session")
def enum7():
    """All 2K2-free graphs up to 7 vertices, one per isomorphism class.

    Session-scoped: the enumeration takes a few seconds and several
    modules consume it.
    """
    from cyclecert.generate import enumerate_2k2_free

    return enumerate_2k2_free(7)


@pytest.fixture(scope="session")
def small_corpus():
    """Labelled graphs up to n = 10 mixing named fixtures and seeded noise."""
    graphs = [
        ("K1", complete(1)),
        ("K2", complete(2)),
        ("K4", complete(4)),
        ("K7", complete(7)),
        ("C4", cycle_graph(4)),
        ("C7", cycle_graph(7)),
        ("P4", path_graph(4)),
        ("P7", path_graph(7)),
        ("star3", star(3)),
        ("star5", star(5)),
        ("K33", complete_bipartite(3, 3)),
        ("K23", complete_bipartite(2, 3)),
        ("2K2", two_k2()),
        ("petersen", petersen()),
    ]
    rng = random.Random(20240814)
    for n in range(3, 9):
        for p in (0.2, 0.4, 0.6, 0.8):
            for rep in range(8):
                graphs.append((f"rand(n={n},p={p},rep={rep})", rand_graph(rng, n, p)))
    return graphs
