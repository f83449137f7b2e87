"""Enumeration of weakly connected induced vertex sets.

Every connected set is generated once, from its minimum vertex (the root),
by adding only vertices above the root.  A candidate is admitted into the
extension list only if it is not yet in ``C`` nor adjacent to ``C``; this is
the exclusion that makes the emission unique without remembering visited
sets.  ``|N(C)|`` is kept up to date through per-vertex cover counts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable

from .graph import Graph, VertexSet

DEFAULT_REFERENCE_LIMIT = 20


class LimitError(ValueError):
    """Input exceeds a configured size limit or a parameter is out of range."""


@dataclass(frozen=True)
class ConnectedSetVisit:
    C: VertexSet
    nbh_size: int
    root: int


def _expand_root(g: Graph, root: int, max_size: int, emit: Callable,
                 dominating: bool = False) -> int:
    """Run the canonical expansion for one root; ``emit(sorted_tuple, nbh_size)``."""
    n = g.n
    adj = g.weak_adj
    in_c = [False] * n
    cover = [0] * n
    C: list = []
    nb = 0
    count = 0

    def push(w):
        nonlocal nb
        if cover[w]:
            nb -= 1
        in_c[w] = True
        C.append(w)
        for u in adj[w]:
            cover[u] += 1
            if cover[u] == 1 and not in_c[u]:
                nb += 1

    def pop(w):
        nonlocal nb
        C.pop()
        for u in adj[w]:
            cover[u] -= 1
            if cover[u] == 0 and not in_c[u]:
                nb -= 1
        in_c[w] = False
        if cover[w]:
            nb += 1

    def can_dominate(ext):
        # every vertex outside C u N(C) must be coverable by a vertex that may
        # still join: an extension candidate or an untouched vertex above root
        ext_set = set(ext)
        for u in range(n):
            if in_c[u] or cover[u] or u > root:
                continue
            for x in adj[u]:
                if x in ext_set or (x > root and not in_c[x] and cover[x] == 0):
                    break
            else:
                return False
        return True

    def extend(ext):
        nonlocal count
        if dominating:
            if not can_dominate(ext):
                return
            if len(C) + nb == n:
                count += 1
                emit(tuple(sorted(C)), nb)
        else:
            count += 1
            emit(tuple(sorted(C)), nb)
        if len(C) == max_size:
            return
        for i, w in enumerate(ext):
            new = [u for u in adj[w] if u > root and not in_c[u] and cover[u] == 0]
            push(w)
            extend(ext[i + 1:] + new)
            pop(w)

    push(root)
    extend([u for u in adj[root] if u > root])
    pop(root)
    return count


def _check_size(g: Graph, max_size: int) -> None:
    if not 1 <= max_size <= g.n:
        raise LimitError(f"max_size must lie in [1, {g.n}], got {max_size}")


def iter_connected(g: Graph, max_size: int, roots: Iterable[int] | None = None):
    """Yield ``(sorted_tuple, nbh_size, root)`` for connected sets, in visit order."""
    _check_size(g, max_size)
    out: list = []
    for r in range(g.n) if roots is None else roots:
        out.clear()
        _expand_root(g, r, max_size, lambda c, nb: out.append((c, nb)))
        for c, nb in out:
            yield c, nb, r


def enumerate_connected(g: Graph, max_size: int, visit: Callable[[ConnectedSetVisit], None],
                        roots: Iterable[int] | None = None) -> int:
    """Visit every weakly connected set with at most ``max_size`` vertices once."""
    _check_size(g, max_size)
    total = 0
    for r in range(g.n) if roots is None else roots:
        total += _expand_root(
            g, r, max_size, lambda c, nb, r=r: visit(ConnectedSetVisit(VertexSet(c), nb, r)))
    return total


def enumerate_connected_dominating(g: Graph, visit: Callable[[ConnectedSetVisit], None],
                                   roots: Iterable[int] | None = None) -> int:
    """Visit every weakly connected dominating set once (with pruning)."""
    total = 0
    for r in range(g.n) if roots is None else roots:
        total += _expand_root(
            g, r, g.n, lambda c, nb, r=r: visit(ConnectedSetVisit(VertexSet(c), nb, r)),
            dominating=True)
    return total


def count_connected_by_size(g: Graph, max_size: int) -> dict:
    counts = dict.fromkeys(range(1, max_size + 1), 0)

    def tally(c, nb):
        counts[len(c)] += 1

    _check_size(g, max_size)
    for r in range(g.n):
        _expand_root(g, r, max_size, tally)
    return counts


def check_reference_limit(g: Graph, limit: int = DEFAULT_REFERENCE_LIMIT) -> None:
    if g.n > limit:
        raise LimitError(f"all-subsets enumeration is limited to n <= {limit}, got n = {g.n}")


def iter_subsets_with_root(n: int, root: int):
    """All subsets of ``range(n)`` whose minimum is ``root``, as sorted tuples."""
    rest = range(root + 1, n)
    for size in range(0, n - root):
        for tail in itertools.combinations(rest, size):
            yield (root,) + tail


def enumerate_all_subsets(g: Graph, visit: Callable[[VertexSet], None],
                          limit: int = DEFAULT_REFERENCE_LIMIT) -> int:
    """Visit all ``2**n - 1`` non-empty vertex subsets (reference path only)."""
    check_reference_limit(g, limit)
    count = 0
    for r in range(g.n):
        for s in iter_subsets_with_root(g.n, r):
            visit(VertexSet(s))
            count += 1
    return count
