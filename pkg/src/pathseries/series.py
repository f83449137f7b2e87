"""Generating series of simple paths and cycles by inclusion-exclusion.

For a vertex set ``C`` with ``k`` vertices, local weight matrix ``W`` and
exponent ``e`` the open contribution is ``(zW)**(k-1) (I - zW)**e`` and the
closed contribution is the diagonal of ``(zW)**k (I - zW)**e``.  Expanding
the binomial, the ``z**d`` coefficient of the open term is
``(-1)**(d-k+1) * C(e, d-k+1) * W**d``, which is what the kernels add up.

Two set streams feed the same accumulation:

* connected: weakly connected sets, ``e = |N(C)|``;
* all-subsets: every non-empty subset, ``e = n - |S|`` (reference path).

Both sums carry an extra ``z**0`` identity from the zero-length path at each
vertex.  It is removed at the end after checking that it is exactly ``I``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, LocalMatrix
from .parallel import imap_roots
from .poly import (LocalPolyMatrix, TruncPoly, binom_expand_i_minus, binomial,
                   mat_mul_trunc, mat_pow_trunc, z_times)
from .rings import Ring, RingError
from .subgraphs import (DEFAULT_REFERENCE_LIMIT, LimitError, _expand_root,
                        check_reference_limit, iter_subsets_with_root)

_INT64_SAFE = 1 << 62


class EngineError(RuntimeError):
    """An internal consistency check failed; the result cannot be trusted."""


# ---------------------------------------------------------------------------
# result types


@dataclass(frozen=True)
class PathSeriesResult:
    """Open and closed simple-path series truncated at degree ``cap``.

    ``open`` maps ``(i, j)``, ``i != j``, to a :class:`TruncPoly`; ``closed``
    maps ``i`` to the cycle series at ``i``.  Zero series are omitted and all
    constant terms are zero.
    """

    n: int
    cap: int
    ring: Ring
    directed: bool
    open: dict
    closed: dict
    removed_constant: tuple | None = field(default=None, compare=False)
    visited: int | None = field(default=None, compare=False)

    def coefficient(self, i: int, j: int, k: int):
        if i == j:
            p = self.closed.get(i)
        else:
            p = self.open.get((i, j))
        return self.ring.zero if p is None else p.coeffs[k]

    def open_totals(self) -> dict:
        """Sum of open coefficients per length ``1..cap``."""
        ring = self.ring
        return {k: ring.sum(p.coeffs[k] for _, p in sorted(self.open.items()))
                for k in range(1, self.cap + 1)}

    def raw_trace(self) -> dict:
        ring = self.ring
        return {k: ring.sum(p.coeffs[k] for _, p in sorted(self.closed.items()))
                for k in range(1, self.cap + 1)}

    def open_matrix(self, k: int) -> list:
        z = self.ring.zero
        out = [[z] * self.n for _ in range(self.n)]
        for (i, j), p in self.open.items():
            out[i][j] = p.coeffs[k]
        return out


@dataclass(frozen=True)
class CycleCounts:
    """Cycle totals per length.

    ``raw_trace[k]`` counts cycles once per starting vertex; ``directed[k]``
    is that divided by ``k``.  For graphs read as undirected, ``undirected``
    halves lengths ``>= 3`` (each cycle runs in both directions); lengths 1
    and 2 are listed in ``degenerate`` and left as directed counts.
    """

    raw_trace: dict
    directed: dict
    undirected: dict | None
    degenerate: tuple = ()


@dataclass(frozen=True)
class HamiltonianResult:
    n: int
    ring: Ring
    h_op: tuple  # n x n, zero diagonal
    ham_cycles: object
    dominating_sets: int | None = field(default=None, compare=False)

    @property
    def H(self) -> tuple:
        ring = self.ring
        return tuple(tuple(self.ham_cycles if i == j else self.h_op[i][j]
                           for j in range(self.n)) for i in range(self.n))


# ---------------------------------------------------------------------------
# literal per-set contributions (polynomial-matrix form)


def contribution_open(Wc: LocalMatrix, nbh_size: int, L: int) -> LocalPolyMatrix:
    """``(zW)**(|C|-1) (I - zW)**nbh_size`` truncated at ``L``, local coordinates."""
    zw = z_times(Wc, L)
    return mat_mul_trunc(mat_pow_trunc(zw, Wc.k - 1), binom_expand_i_minus(zw, nbh_size))


def contribution_closed(Wc: LocalMatrix, nbh_size: int, L: int) -> tuple:
    """Diagonal of ``(zW)**|C| (I - zW)**nbh_size`` truncated at ``L``."""
    zw = z_times(Wc, L)
    return mat_mul_trunc(mat_pow_trunc(zw, Wc.k), binom_expand_i_minus(zw, nbh_size)).diagonal()


# ---------------------------------------------------------------------------
# accumulation kernels


def _signed_binomials(e: int, first: int, last: int, offset: int) -> list:
    """``[(d, (-1)**(d-offset) * C(e, d-offset)) for d in first..last]`` with nonzero value."""
    out = []
    for d in range(first, last + 1):
        j = d - offset
        c = binomial(e, j)
        if c:
            out.append((d, -c if j & 1 else c))
    return out


def _ring_matmul(ring: Ring, A: list, B: list) -> list:
    k = len(A)
    is_zero, add, mul = ring.is_zero, ring.add, ring.mul
    out = []
    for i in range(k):
        row = [ring.zero] * k
        for m in range(k):
            a = A[i][m]
            if is_zero(a):
                continue
            Bm = B[m]
            for j in range(k):
                b = Bm[j]
                if not is_zero(b):
                    row[j] = add(row[j], mul(a, b))
        out.append(row)
    return out


class _GenericAcc:
    """Accumulator over an arbitrary ring using only ring operations."""

    def __init__(self, g: Graph, L: int):
        self.g = g
        self.L = L
        self.ring = g.ring
        self.open: dict = {}    # (i, j) -> list of L+1 coefficients
        self.closed: dict = {}  # i -> list of L+1 coefficients
        self.visited = 0

    def _slot(self, table, key):
        s = table.get(key)
        if s is None:
            s = table[key] = [self.ring.zero] * (self.L + 1)
        return s

    def add_set(self, idx: tuple, e: int) -> None:
        self.visited += 1
        L, ring = self.L, self.ring
        k = len(idx)
        if k - 1 > L:
            return
        open_terms = dict(_signed_binomials(e, k - 1, min(L, k - 1 + e), k - 1))
        closed_terms = dict(_signed_binomials(e, k, min(L, k + e), k)) if k <= L else {}
        top = max(list(open_terms) + list(closed_terms))
        w = self.g.weights
        z = ring.zero
        W = [[w.get((i, j), z) for j in idx] for i in idx]
        P = [[ring.one if a == b else z for b in range(k)] for a in range(k)]
        for d in range(top + 1):
            if d:
                P = _ring_matmul(ring, P, W)
                if all(ring.is_zero(x) for row in P for x in row):
                    break
            c = open_terms.get(d)
            if c is not None:
                for a, i in enumerate(idx):
                    for b, j in enumerate(idx):
                        x = P[a][b]
                        if not ring.is_zero(x):
                            s = self._slot(self.open, (i, j))
                            s[d] = ring.add(s[d], ring.scale(x, c))
            c = closed_terms.get(d)
            if c is not None:
                for a, i in enumerate(idx):
                    x = P[a][a]
                    if not ring.is_zero(x):
                        s = self._slot(self.closed, i)
                        s[d] = ring.add(s[d], ring.scale(x, c))

    def merge(self, other: "_GenericAcc") -> None:
        add = self.ring.add
        for table, otable in ((self.open, other.open), (self.closed, other.closed)):
            for key, coeffs in otable.items():
                s = self._slot(table, key)
                for d, x in enumerate(coeffs):
                    s[d] = add(s[d], x)
        self.visited += other.visited

    def tables(self):
        return self.open, self.closed


class _ArrayAcc:
    """numpy accumulator for the integer and float rings.

    Integer work runs in int64 while a running magnitude bound proves it
    cannot overflow, and switches to Python-int object arrays otherwise.
    """

    def __init__(self, g: Graph, L: int):
        self.g = g
        self.L = L
        self.ring = g.ring
        self.is_int = g.ring.numeric == "int"
        n = g.n
        dtype = np.int64 if self.is_int else np.float64
        self.open = np.zeros((L + 1, n, n), dtype=dtype)
        self.closed = np.zeros((L + 1, n), dtype=dtype)
        self.bound = 0
        self.visited = 0
        W = np.zeros((n, n), dtype=object if self.is_int else np.float64)
        for (i, j), x in g.weights.items():
            W[i, j] = x
        if self.is_int:
            self.row_bound = [sum(abs(int(x)) for x in W[i]) for i in range(n)]
            if max(abs(int(x)) for x in W.flat) < _INT64_SAFE:
                W = W.astype(np.int64)
        self.W = W

    def _widen(self) -> None:
        if self.open.dtype != object:
            self.open = self.open.astype(object)
            self.closed = self.closed.astype(object)

    def add_set(self, idx: tuple, e: int) -> None:
        self.visited += 1
        L = self.L
        k = len(idx)
        if k - 1 > L:
            return
        open_terms = _signed_binomials(e, k - 1, min(L, k - 1 + e), k - 1)
        closed_terms = _signed_binomials(e, k, min(L, k + e), k) if k <= L else []
        top = max(open_terms[-1][0] if open_terms else 0,
                  closed_terms[-1][0] if closed_terms else 0)
        ix = np.asarray(idx)
        W = self.W[np.ix_(ix, ix)]
        if self.is_int:
            b = max(self.row_bound[i] for i in idx)
            pbound = max(b, 1) ** top
            if W.dtype != object and pbound >= _INT64_SAFE:
                W = W.astype(object)
        powers = [np.eye(k, dtype=W.dtype)]
        for _ in range(top):
            nxt = powers[-1] @ W
            if not nxt.any():
                break
            powers.append(nxt)
        ot = [(d, c) for d, c in open_terms if d < len(powers)]
        ct = [(d, c) for d, c in closed_terms if d < len(powers)]
        if not ot and not ct:
            return
        if self.is_int:
            cmax = max(abs(c) for _, c in ot + ct)
            self.bound += cmax * pbound * (len(ot) + len(ct))
            if self.bound >= _INT64_SAFE or cmax >= _INT64_SAFE or W.dtype == object:
                self._widen()
        dt = self.open.dtype
        if ot:
            ds = [d for d, _ in ot]
            cs = np.array([c for _, c in ot], dtype=dt)
            stack = np.stack([powers[d] for d in ds]).astype(dt, copy=False)
            self.open[np.ix_(ds, ix, ix)] += cs[:, None, None] * stack
        if ct:
            ds = [d for d, _ in ct]
            cs = np.array([c for _, c in ct], dtype=dt)
            diag = np.stack([np.diagonal(powers[d]) for d in ds]).astype(dt, copy=False)
            self.closed[np.ix_(ds, ix)] += cs[:, None] * diag

    def merge(self, other: "_ArrayAcc") -> None:
        if other.open.dtype == object:
            self._widen()
        elif self.is_int and self.open.dtype != object:
            self.bound += other.bound
            if self.bound >= _INT64_SAFE:
                self._widen()
        self.open = self.open + other.open.astype(self.open.dtype, copy=False)
        self.closed = self.closed + other.closed.astype(self.closed.dtype, copy=False)
        self.visited += other.visited

    def tables(self):
        conv = int if self.is_int else float
        n, L = self.g.n, self.L
        open_t, closed_t = {}, {}
        nz = np.nonzero(self.open.any(axis=0) if self.open.dtype != object
                        else np.any(self.open != 0, axis=0))
        for i, j in zip(*nz):
            open_t[(int(i), int(j))] = [conv(x) for x in self.open[:, i, j]]
        for i in range(n):
            col = self.closed[:, i]
            if any(x != 0 for x in col):
                closed_t[i] = [conv(x) for x in col]
        return open_t, closed_t


def _make_acc(g: Graph, L: int, kernel: str):
    if kernel == "auto":
        kernel = "numeric" if g.ring.numeric else "generic"
    if kernel == "numeric":
        if not g.ring.numeric:
            raise RingError(f"no numeric kernel for the {g.ring.name} ring")
        return _ArrayAcc(g, L)
    if kernel == "generic":
        return _GenericAcc(g, L)
    raise ValueError(f"unknown kernel {kernel!r}")


# ---------------------------------------------------------------------------
# engines


def _connected_partial(payload, root):
    g, L, kernel = payload
    acc = _make_acc(g, L, kernel)
    _expand_root(g, root, min(L + 1, g.n), acc.add_set)
    return acc


def _all_subsets_partial(payload, root):
    g, L, kernel = payload
    acc = _make_acc(g, L, kernel)
    n = g.n
    for s in iter_subsets_with_root(n, root):
        acc.add_set(s, n - len(s))
    return acc


def _check_cap(g: Graph, L: int) -> None:
    if not 1 <= L <= g.n:
        raise LimitError(f"max length must lie in [1, {g.n}], got {L}")


def _run(partial_fn, g: Graph, L: int, workers: int, kernel: str) -> PathSeriesResult:
    total = None
    for acc in imap_roots(partial_fn, (g, L, kernel), range(g.n), workers):
        if total is None:
            total = acc
        else:
            total.merge(acc)
    return _finalize(g, L, total)


def _finalize(g: Graph, L: int, acc) -> PathSeriesResult:
    ring = g.ring
    open_t, closed_t = acc.tables()
    removed = []
    for v in range(g.n):
        diag = open_t.pop((v, v), None)
        if diag is None or diag[0] != ring.one:
            raise EngineError(f"empty-path constant at vertex {v} is not one: "
                              f"{None if diag is None else diag[0]!r}")
        if ring.exact and not all(ring.is_zero(x) for x in diag[1:]):
            raise EngineError(f"open series has a nonzero diagonal at vertex {v}")
        removed.append(diag[0])
    open_p, closed_p = {}, {}
    for key, coeffs in open_t.items():
        if not ring.is_zero(coeffs[0]):
            raise EngineError(f"nonzero constant term in open series at {key}")
        if not all(ring.is_zero(x) for x in coeffs):
            open_p[key] = TruncPoly(ring, tuple(coeffs))
    for key, coeffs in closed_t.items():
        if not ring.is_zero(coeffs[0]):
            raise EngineError(f"nonzero constant term in closed series at {key}")
        if not all(ring.is_zero(x) for x in coeffs):
            closed_p[key] = TruncPoly(ring, tuple(coeffs))
    return PathSeriesResult(g.n, L, ring, g.directed, dict(sorted(open_p.items())),
                            dict(sorted(closed_p.items())), tuple(removed), acc.visited)


def path_series_connected(g: Graph, L: int, workers: int = 1,
                          kernel: str = "auto") -> PathSeriesResult:
    """Simple-path series summed over weakly connected induced sets.

    Sets of up to ``L + 1`` vertices are enumerated; ``result.visited`` is
    their number.
    """
    _check_cap(g, L)
    return _run(_connected_partial, g, L, workers, kernel)


def path_series_all_subsets(g: Graph, L: int, workers: int = 1, kernel: str = "auto",
                            limit: int = DEFAULT_REFERENCE_LIMIT) -> PathSeriesResult:
    """Reference version of :func:`path_series_connected` over all vertex subsets."""
    check_reference_limit(g, limit)
    _check_cap(g, L)
    return _run(_all_subsets_partial, g, L, workers, kernel)


# ---------------------------------------------------------------------------
# counts


def _require_division(ring: Ring, what: str) -> None:
    if not ring.supports_division:
        raise RingError(f"{what} needs integer division, which the {ring.name} ring lacks")


def cycle_counts(res: PathSeriesResult) -> CycleCounts:
    ring = res.ring
    _require_division(ring, "cycle counting")
    raw = res.raw_trace()
    try:
        directed = {k: ring.divide_exact(t, k) for k, t in raw.items()}
        undirected = None
        if not res.directed:
            undirected = {k: c if k < 3 else ring.divide_exact(c, 2)
                          for k, c in directed.items()}
    except RingError as exc:
        raise EngineError(f"cycle trace not divisible: {exc}") from None
    return CycleCounts(raw, directed, undirected,
                       tuple(k for k in (1, 2) if k <= res.cap) if not res.directed else ())


def perepechko_check(g: Graph, k: int, limit: int = DEFAULT_REFERENCE_LIMIT) -> int:
    """Number of undirected ``k``-cycles from the closed-form trace formula.

    Evaluates ``(1/2k) sum_i (-1)**(k-i) C(n-i, n-k) sum_T Tr(A_T**k)`` with
    ``A`` the unweighted adjacency matrix and ``T`` running over the vertex
    sets left after deleting ``n - i`` vertices (so ``|T| = i``).
    """
    if g.directed:
        raise ValueError("the trace formula applies to graphs read as undirected")
    n = g.n
    if not 3 <= k <= n:
        raise LimitError(f"cycle length must lie in [3, {n}], got {k}")
    check_reference_limit(g, limit)
    A = np.zeros((n, n), dtype=np.int64)
    for u, v in g.arcs:
        A[u, v] = 1
    if (n - 1) ** k >= _INT64_SAFE:
        A = A.astype(object)
    total = 0
    for i in range(1, k + 1):
        traces = 0
        for T in itertools.combinations(range(n), i):
            sub = A[np.ix_(T, T)]
            traces += int(np.trace(np.linalg.matrix_power(sub, k)))
        total += (-1) ** (k - i) * binomial(n - i, n - k) * traces
    q, r = divmod(total, 2 * k)
    if r:
        raise EngineError(f"trace formula total {total} not divisible by {2 * k}")
    return q


def ie_indicator(n_total: int, v: int, length: int, closed: bool) -> int:
    """Inclusion-exclusion weight summed over all supersets of a path's vertex set.

    For a path on ``v`` of ``n_total`` vertices with ``length`` arcs this is 1
    exactly when the path is simple (open: ``length == v - 1``; closed:
    ``length == v``) and 0 otherwise.
    """
    if not 1 <= v <= n_total or length < 0:
        raise ValueError("need 1 <= v <= n_total and length >= 0")
    top = length if closed else length + 1
    return sum(binomial(n_total - v, s - v) * binomial(n_total - s, top - s) * (-1) ** (top - s)
               for s in range(v, n_total + 1))


# ---------------------------------------------------------------------------
# Hamiltonian paths and cycles


def _ham_partial(g: Graph, root: int):
    n, ring = g.n, g.ring
    z = ring.zero
    M: dict = {}
    trace = z
    count = 0

    def visit(idx, nb):
        nonlocal trace, count
        count += 1
        sign = -1 if (n - len(idx)) & 1 else 1
        W = [[g.weights.get((i, j), z) for j in idx] for i in idx]
        P = [[ring.one if a == b else z for b in idx] for a in idx]
        for _ in range(n - 1):
            P = _ring_matmul(ring, P, W)
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                x = P[a][b]
                if not ring.is_zero(x):
                    M[(i, j)] = ring.add(M.get((i, j), z), ring.scale(x, sign))
        P = _ring_matmul(ring, P, W)
        t = ring.sum(P[a][a] for a in range(len(idx)))
        trace = ring.add(trace, ring.scale(t, sign))

    _expand_root(g, root, n, visit, dominating=True)
    return M, trace, count


def hamiltonian_matrices(g: Graph, workers: int = 1) -> HamiltonianResult:
    """Hamiltonian path matrix and cycle total from connected dominating sets."""
    ring = g.ring
    _require_division(ring, "Hamiltonian counting")
    n = g.n
    z = ring.zero
    if n == 1:
        return HamiltonianResult(1, ring, ((z,),), g.weight(0, 0), 0)
    M: dict = {}
    trace = z
    count = 0
    for part_m, part_t, part_c in imap_roots(_ham_partial, g, range(n), workers):
        for key in sorted(part_m):
            M[key] = ring.add(M.get(key, z), part_m[key])
        trace = ring.add(trace, part_t)
        count += part_c
    for v in range(n):
        x = M.get((v, v), z)
        if ring.exact and not ring.is_zero(x):
            raise EngineError(f"Hamiltonian accumulation has nonzero diagonal at {v}: {x!r}")
    try:
        cycles = ring.divide_exact(trace, n)
    except RingError as exc:
        raise EngineError(f"Hamiltonian trace not divisible: {exc}") from None
    h_op = tuple(tuple(z if i == j else M.get((i, j), z) for j in range(n)) for i in range(n))
    return HamiltonianResult(n, ring, h_op, cycles, count)
