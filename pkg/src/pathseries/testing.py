"""Small graph factories for tests, benchmarks and examples."""

from __future__ import annotations

import itertools
import random

from .graph import Graph
from .rings import BIGINT, Ring


def random_digraph(n: int, p: float, loop_p: float = 0.0, rng: random.Random | None = None,
                   ring: Ring = BIGINT, weights=None) -> Graph:
    """Erdős–Rényi digraph: each ordered pair ``u != v`` is an arc with probability ``p``.

    ``weights`` is an optional zero-argument callable drawing arc weights.
    """
    rng = rng or random.Random()
    arcs = []
    for u in range(n):
        for v in range(n):
            if rng.random() < (loop_p if u == v else p):
                w = weights() if weights else ring.arc_weight(u, v, None)
                arcs.append((u, v, w))
    return Graph(n, arcs, ring, directed=True)


def undirected(n: int, edges, ring: Ring = BIGINT) -> Graph:
    arcs = set()
    for u, v in edges:
        arcs.add((u, v))
        arcs.add((v, u))
    return Graph(n, [(u, v, ring.arc_weight(u, v, None)) for u, v in sorted(arcs)],
                 ring, directed=False)


def random_undirected(n: int, p: float, rng: random.Random | None = None,
                      ring: Ring = BIGINT) -> Graph:
    rng = rng or random.Random()
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return undirected(n, edges, ring)


def directed_cycle(n: int, ring: Ring = BIGINT) -> Graph:
    return Graph(n, [(i, (i + 1) % n, ring.arc_weight(i, (i + 1) % n, None))
                     for i in range(n)], ring)


def path_graph(n: int, ring: Ring = BIGINT) -> Graph:
    return undirected(n, [(i, i + 1) for i in range(n - 1)], ring)


def complete_graph(n: int, ring: Ring = BIGINT) -> Graph:
    return undirected(n, itertools.combinations(range(n), 2), ring)


def petersen(ring: Ring = BIGINT) -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return undirected(10, outer + spokes + inner, ring)
