"""Weighted directed graphs, vertex subsets and induced-subgraph helpers."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, TextIO

from .rings import BIGINT, Ring, RingError


class GraphError(ValueError):
    """Invalid graph construction or malformed edge-list input."""


class VertexSet(frozenset):
    """Immutable vertex subset that iterates in ascending order."""

    def __iter__(self):
        return iter(sorted(frozenset.__iter__(self)))

    def __or__(self, other):
        return VertexSet(frozenset.__or__(self, other))

    def __and__(self, other):
        return VertexSet(frozenset.__and__(self, other))

    def __sub__(self, other):
        return VertexSet(frozenset.__sub__(self, other))

    def union(self, *others):
        return VertexSet(frozenset.union(self, *others))

    def difference(self, *others):
        return VertexSet(frozenset.difference(self, *others))

    def __repr__(self):
        return "{" + ", ".join(map(str, self)) + "}"


class Graph:
    """Directed graph on vertices ``0..n-1`` with one ring weight per arc.

    ``directed`` records how the graph was read: ``False`` means every
    undirected edge was expanded into a pair of opposite arcs, which matters
    when cycle counts are normalized.
    """

    __slots__ = ("n", "ring", "directed", "weights", "arcs",
                 "out_adj", "in_adj", "weak_adj")

    def __init__(self, n: int, arcs: Iterable, ring: Ring = BIGINT, directed: bool = True):
        """``arcs`` yields ``(u, v)`` or ``(u, v, weight)``; weight defaults to ring one."""
        if n < 1:
            raise GraphError("a graph needs at least one vertex")
        weights = {}
        for arc in arcs:
            if len(arc) == 2:
                (u, v), w = arc, ring.one
            else:
                u, v, w = arc
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"arc ({u}, {v}) has an endpoint outside [0, {n})")
            if (u, v) in weights:
                raise GraphError(f"duplicate arc ({u}, {v})")
            weights[(u, v)] = w
        out_adj = [set() for _ in range(n)]
        in_adj = [set() for _ in range(n)]
        for u, v in weights:
            out_adj[u].add(v)
            in_adj[v].add(u)
        s = object.__setattr__
        s(self, "n", n)
        s(self, "ring", ring)
        s(self, "directed", directed)
        s(self, "weights", weights)
        s(self, "arcs", tuple(sorted(weights)))
        s(self, "out_adj", tuple(tuple(sorted(a)) for a in out_adj))
        s(self, "in_adj", tuple(tuple(sorted(a)) for a in in_adj))
        s(self, "weak_adj", tuple(
            tuple(sorted((out_adj[v] | in_adj[v]) - {v})) for v in range(n)))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __getstate__(self):
        return (self.n, [(u, v, w) for (u, v), w in sorted(self.weights.items())],
                self.ring, self.directed)

    def __setstate__(self, state):
        n, arcs, ring, directed = state
        Graph.__init__(self, n, arcs, ring, directed)

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.n == other.n and self.ring == other.ring
                and self.directed == other.directed and self.weights == other.weights)

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"Graph(n={self.n}, m={len(self.arcs)}, {kind}, ring={self.ring.name})"

    @property
    def m(self) -> int:
        return len(self.arcs)

    @property
    def vertices(self) -> VertexSet:
        return VertexSet(range(self.n))

    def weight(self, u: int, v: int):
        return self.weights.get((u, v), self.ring.zero)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.weights

    def with_ring(self, ring: Ring) -> "Graph":
        """Same arcs, relabeled with ``ring``'s default arc weight.

        Numeric weights are dropped: counting rings get unit weights (the
        plain adjacency matrix), the word ring gets one letter per arc.
        """
        arcs = [(u, v, ring.arc_weight(u, v, None)) for u, v in self.arcs]
        return Graph(self.n, arcs, ring, self.directed)

    def relabel(self, perm) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``; weights follow their arcs."""
        arcs = [(perm[u], perm[v], w) for (u, v), w in self.weights.items()]
        return Graph(self.n, arcs, self.ring, self.directed)


@dataclass(frozen=True)
class LocalMatrix:
    """Dense principal submatrix of the weight matrix on an ascending vertex list."""

    index_map: tuple
    entries: tuple  # tuple of row tuples
    ring: Ring

    @property
    def k(self) -> int:
        return len(self.index_map)

    def embed(self, n: int) -> list:
        """Zero-padded ``n x n`` global form."""
        z = self.ring.zero
        out = [[z] * n for _ in range(n)]
        for a, i in enumerate(self.index_map):
            for b, j in enumerate(self.index_map):
                out[i][j] = self.entries[a][b]
        return out


def _check_subset(g: Graph, S) -> tuple:
    idx = tuple(sorted(S))
    if not idx:
        raise GraphError("vertex set must be non-empty")
    if idx[0] < 0 or idx[-1] >= g.n:
        raise GraphError("vertex set not contained in the graph")
    return idx


def restrict(g: Graph, S) -> LocalMatrix:
    idx = _check_subset(g, S)
    w = g.weights
    z = g.ring.zero
    rows = tuple(tuple(w.get((i, j), z) for j in idx) for i in idx)
    return LocalMatrix(idx, rows, g.ring)


def weak_neighborhood(g: Graph, C) -> VertexSet:
    """Vertices outside ``C`` joined to ``C`` by an arc in either direction."""
    idx = _check_subset(g, C)
    inside = set(idx)
    out = set()
    for v in idx:
        out.update(u for u in g.weak_adj[v] if u not in inside)
    return VertexSet(out)


def is_dominating(g: Graph, C) -> bool:
    _check_subset(g, C)
    return len(set(C)) + len(weak_neighborhood(g, C)) == g.n


def weakly_connected_components(g: Graph, S) -> list:
    """Components of the subgraph induced by ``S``, ordered by minimum vertex."""
    idx = _check_subset(g, S)
    todo = set(idx)
    comps = []
    for start in idx:
        if start not in todo:
            continue
        todo.discard(start)
        comp = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in g.weak_adj[v]:
                if u in todo:
                    todo.discard(u)
                    comp.append(u)
                    queue.append(u)
        comps.append(VertexSet(comp))
    return comps


def parse_edge_list(text: str | TextIO, directed: bool = True, ring: Ring = BIGINT) -> Graph:
    """Read the whitespace separated ``u v [w]`` edge-list format.

    ``#`` starts a comment line and ``n <count>`` fixes the vertex count.
    Without that header every id from 0 to the largest one must occur.
    """
    if not isinstance(text, str):
        text = text.read()
    n_header = None
    arcs = {}
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if len(tokens) != 2 or n_header is not None:
                raise GraphError(f"line {lineno}: bad header {line!r}")
            n_header = _vertex_id(tokens[1], lineno)
            continue
        if len(tokens) not in (2, 3):
            raise GraphError(f"line {lineno}: expected 'u v' or 'u v w', got {line!r}")
        u = _vertex_id(tokens[0], lineno)
        v = _vertex_id(tokens[1], lineno)
        token = tokens[2] if len(tokens) == 3 else None
        try:
            w = ring.arc_weight(u, v, token)
        except RingError as exc:
            raise GraphError(f"line {lineno}: {exc}") from None
        pairs = [(u, v)] if directed or u == v else [(u, v), (v, u)]
        for a, b in pairs:
            if (a, b) in arcs:
                raise GraphError(f"line {lineno}: duplicate edge ({a}, {b})")
            arcs[(a, b)] = ring.arc_weight(a, b, token) if (a, b) != (u, v) else w
        seen.update((u, v))

    if n_header is None:
        if not seen:
            raise GraphError("empty edge list and no 'n' header")
        n = max(seen) + 1
        if len(seen) != n:
            missing = min(set(range(n)) - seen)
            raise GraphError(f"vertex ids are not dense: {missing} never occurs "
                             "(add an 'n <count>' header for isolated vertices)")
    else:
        n = n_header
        if seen and max(seen) >= n:
            raise GraphError(f"vertex id {max(seen)} exceeds header count {n}")
    return Graph(n, [(u, v, w) for (u, v), w in arcs.items()], ring, directed)


def _vertex_id(token: str, lineno: int) -> int:
    if not token.isdigit():
        raise GraphError(f"line {lineno}: bad vertex id {token!r}")
    return int(token)


def format_edge_list(g: Graph) -> str:
    """Inverse of :func:`parse_edge_list` for directed numeric-weight graphs."""
    lines = [f"n {g.n}"]
    for (u, v), w in sorted(g.weights.items()):
        lines.append(f"{u} {v} {g.ring.to_json(w)}")
    return "\n".join(lines) + "\n"
