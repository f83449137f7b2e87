"""Brute-force ground truth by depth-first search.

Nothing here uses the polynomial algebra or the set enumerator: simple paths
are listed one by one and their weights multiplied in path order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph import Graph, VertexSet, weakly_connected_components
from .poly import TruncPoly
from .series import HamiltonianResult, PathSeriesResult
from .subgraphs import DEFAULT_REFERENCE_LIMIT, LimitError


@dataclass(frozen=True)
class SimplePath:
    vertices: tuple
    closed: bool

    @property
    def length(self) -> int:
        return len(self.vertices) if self.closed else len(self.vertices) - 1

    @property
    def word(self) -> tuple:
        vs = self.vertices + (self.vertices[:1] if self.closed else ())
        return tuple(zip(vs, vs[1:]))

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[0] if self.closed else self.vertices[-1]


def simple_paths(g: Graph, max_length: int, starts=None):
    """Yield every non-empty simple path and cycle of length <= ``max_length``.

    Cycles are produced once per starting vertex, like the trace of a matrix.
    """
    out = g.out_adj
    for s in range(g.n) if starts is None else starts:
        path = [s]
        on_path = {s}

        def dfs(v):
            for u in out[v]:
                if u == s:
                    if len(path) <= max_length:
                        yield SimplePath(tuple(path), True)
                elif u not in on_path and len(path) <= max_length:
                    path.append(u)
                    on_path.add(u)
                    yield SimplePath(tuple(path), False)
                    yield from dfs(u)
                    path.pop()
                    on_path.discard(u)

        yield from dfs(s)


def path_weight(g: Graph, p: SimplePath):
    ring = g.ring
    w = ring.one
    for u, v in p.word:
        w = ring.mul(w, g.weights[(u, v)])
    return w


def dfs_path_series(g: Graph, L: int) -> PathSeriesResult:
    ring = g.ring
    open_t: dict = {}
    closed_t: dict = {}
    for p in simple_paths(g, L):
        if p.closed:
            slot = closed_t.setdefault(p.start, [ring.zero] * (L + 1))
        else:
            slot = open_t.setdefault((p.start, p.end), [ring.zero] * (L + 1))
        slot[p.length] = ring.add(slot[p.length], path_weight(g, p))

    def polys(table):
        return {key: TruncPoly(ring, tuple(c)) for key, c in sorted(table.items())
                if not all(ring.is_zero(x) for x in c)}

    return PathSeriesResult(g.n, L, ring, g.directed, polys(open_t), polys(closed_t))


def dfs_cycle_counts(g: Graph, L: int) -> dict:
    """Directed simple cycles per length, each anchored at its minimum vertex."""
    ring = g.ring
    counts = {k: ring.zero for k in range(1, L + 1)}
    for s in range(g.n):
        for p in simple_paths(g, L, starts=[s]):
            if p.closed and min(p.vertices) == s:
                counts[p.length] = ring.add(counts[p.length], path_weight(g, p))
    return counts


def dfs_hamiltonian(g: Graph) -> HamiltonianResult:
    ring = g.ring
    n = g.n
    z = ring.zero
    h = [[z] * n for _ in range(n)]
    cycles = z
    if n == 1:
        return HamiltonianResult(1, ring, ((z,),), g.weight(0, 0))
    for p in simple_paths(g, n):
        if len(p.vertices) != n:
            continue
        if p.closed:
            if p.start == 0:
                cycles = ring.add(cycles, path_weight(g, p))
        else:
            h[p.start][p.end] = ring.add(h[p.start][p.end], path_weight(g, p))
    return HamiltonianResult(n, ring, tuple(map(tuple, h)), cycles)


def filter_connected_sets(g: Graph, max_size: int,
                          limit: int = DEFAULT_REFERENCE_LIMIT) -> list:
    """Connected vertex sets by exhaustive filtering, ordered by size then lexicographically."""
    if g.n > limit:
        raise LimitError(f"subset filtering is limited to n <= {limit}")
    out = []
    for size in range(1, max_size + 1):
        for S in itertools.combinations(range(g.n), size):
            if len(weakly_connected_components(g, S)) == 1:
                out.append(VertexSet(S))
    return out
