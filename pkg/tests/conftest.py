import random

import pytest
from hypothesis import strategies as st

from pathseries.graph import Graph
from pathseries.rings import BIGINT
from pathseries.testing import (complete_graph, directed_cycle, path_graph, petersen,
                                random_digraph)


@pytest.fixture
def triangle():
    return directed_cycle(3)


@pytest.fixture
def path3():
    return path_graph(3)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def petersen_graph():
    return petersen()


@st.composite
def digraphs(draw, min_n=1, max_n=6, loops=True, weighted=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if loops or u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) \
        if pairs else []
    if weighted:
        ws = draw(st.lists(st.integers(-3, 3).filter(bool), min_size=len(chosen),
                           max_size=len(chosen)))
        return Graph(n, [(u, v, w) for (u, v), w in zip(chosen, ws)], BIGINT)
    return Graph(n, chosen, BIGINT)


def corpus(count, n_range=(2, 6), seed=0, probs=(0.2, 0.5, 0.8), loop_p=0.2):
    """Deterministic random digraph corpus."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(*n_range)
        out.append(random_digraph(n, rng.choice(probs), loop_p, rng))
    return out
