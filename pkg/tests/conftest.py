import random

import pytest

from drdkit.corpus import (
    cycle,
    cycle_with_chord,
    debruijn,
    kautz,
    paley,
    paper6,
    random_sc,
)
from drdkit.digraph import Digraph


def circulant(n: int, jumps: tuple[int, ...]) -> Digraph:
    return Digraph.from_arcs(n, [(x, (x + s) % n) for x in range(n) for s in jumps])


def named_corpus() -> list[tuple[str, Digraph]]:
    """The fixed test corpus: positive families, negative families, the
    weak-DR strictness witness, a regular normal spectrally-maximum-diameter
    graph that is still not distance-regular, and a seeded batch of random
    graphs."""
    graphs: list[tuple[str, Digraph]] = [("k1", Digraph.from_arcs(1, []))]
    for n in range(2, 13):
        graphs.append((f"cycle{n}", cycle(n)))
    graphs.append(("paper6", paper6()))
    graphs.append(("paley7", paley(7)))
    graphs.append(("paley11", paley(11)))
    graphs.append(("kautz_2_1", kautz(2, 1)))
    graphs.append(("kautz_2_2", kautz(2, 2)))
    graphs.append(("kautz_2_3", kautz(2, 3)))
    graphs.append(("debruijn_2_2", debruijn(2, 2)))
    graphs.append(("debruijn_2_3", debruijn(2, 3)))
    # Regular and normal with as many distinct eigenvalues as diameter + 1,
    # yet not distance-regular: keeps the excess-equality test two-sided.
    graphs.append(("circulant8_145", circulant(8, (1, 4, 5))))
    for n in range(4, 9):
        graphs.append((f"chord{n}", cycle_with_chord(n)))
    rng = random.Random(20240805)
    for i in range(20):
        n = rng.randint(5, 8)
        p = rng.uniform(0.25, 0.65)
        graphs.append((f"random{i}", random_sc(n, p, seed=rng.randrange(1 << 30))))
    return graphs


@pytest.fixture(scope="session")
def corpus() -> list[tuple[str, Digraph]]:
    return named_corpus()


@pytest.fixture(scope="session")
def fig6() -> Digraph:
    """The 6-vertex 2-regular distance-regular digraph."""
    return paper6()
