"""Polynomials in ``z`` truncated at a fixed degree, and square matrices of them.

Coefficients live in any :class:`~pathseries.rings.Ring`; products keep the
left/right order of their operands since the word ring does not commute.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .graph import LocalMatrix
from .rings import Ring


class PolyError(ValueError):
    pass


def binomial(nn: int, kk: int) -> int:
    """Binomial coefficient, zero outside ``0 <= kk <= nn``."""
    if kk < 0 or kk > nn:
        return 0
    return comb(nn, kk)


@dataclass(frozen=True)
class TruncPoly:
    ring: Ring
    coeffs: tuple  # degrees 0..cap

    @property
    def cap(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, ring: Ring, cap: int) -> "TruncPoly":
        return cls(ring, (ring.zero,) * (cap + 1))

    @classmethod
    def constant(cls, ring: Ring, value, cap: int) -> "TruncPoly":
        return cls(ring, (value,) + (ring.zero,) * cap)

    @classmethod
    def monomial(cls, ring: Ring, value, degree: int, cap: int) -> "TruncPoly":
        c = [ring.zero] * (cap + 1)
        if degree <= cap:
            c[degree] = value
        return cls(ring, tuple(c))

    def __getitem__(self, d: int):
        return self.coeffs[d]

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(c) for c in self.coeffs)

    def __add__(self, other: "TruncPoly") -> "TruncPoly":
        _same_cap(self, other)
        add = self.ring.add
        return TruncPoly(self.ring, tuple(add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TruncPoly":
        return TruncPoly(self.ring, tuple(self.ring.neg(a) for a in self.coeffs))

    def __sub__(self, other: "TruncPoly") -> "TruncPoly":
        return self + (-other)

    def scale(self, k: int) -> "TruncPoly":
        return TruncPoly(self.ring, tuple(self.ring.scale(a, k) for a in self.coeffs))

    def __mul__(self, other: "TruncPoly") -> "TruncPoly":
        return poly_mul_trunc(self, other)


def _same_cap(a: TruncPoly, b: TruncPoly) -> None:
    if a.cap != b.cap:
        raise PolyError(f"truncation caps differ: {a.cap} vs {b.cap}")


def poly_mul_trunc(a: TruncPoly, b: TruncPoly) -> TruncPoly:
    _same_cap(a, b)
    ring = a.ring
    cap = a.cap
    out = [ring.zero] * (cap + 1)
    for i, ai in enumerate(a.coeffs):
        if ring.is_zero(ai):
            continue
        for j in range(cap + 1 - i):
            bj = b.coeffs[j]
            if not ring.is_zero(bj):
                out[i + j] = ring.add(out[i + j], ring.mul(ai, bj))
    return TruncPoly(ring, tuple(out))


@dataclass(frozen=True)
class LocalPolyMatrix:
    index_map: tuple
    entries: tuple  # rows of TruncPoly
    ring: Ring
    cap: int

    @property
    def k(self) -> int:
        return len(self.index_map)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other: "LocalPolyMatrix") -> "LocalPolyMatrix":
        _compatible(self, other)
        rows = tuple(tuple(a + b for a, b in zip(ra, rb))
                     for ra, rb in zip(self.entries, other.entries))
        return LocalPolyMatrix(self.index_map, rows, self.ring, self.cap)

    def scale(self, k: int) -> "LocalPolyMatrix":
        rows = tuple(tuple(p.scale(k) for p in row) for row in self.entries)
        return LocalPolyMatrix(self.index_map, rows, self.ring, self.cap)

    def __matmul__(self, other: "LocalPolyMatrix") -> "LocalPolyMatrix":
        return mat_mul_trunc(self, other)

    def coefficient(self, d: int) -> list:
        """Ring matrix of the ``z**d`` coefficients."""
        return [[p.coeffs[d] for p in row] for row in self.entries]

    def diagonal(self) -> tuple:
        return tuple(self.entries[i][i] for i in range(self.k))


def _compatible(a: LocalPolyMatrix, b: LocalPolyMatrix) -> None:
    if a.index_map != b.index_map:
        raise PolyError("matrices live on different vertex sets")
    if a.cap != b.cap:
        raise PolyError(f"truncation caps differ: {a.cap} vs {b.cap}")


def local_identity(index_map, ring: Ring, cap: int) -> LocalPolyMatrix:
    """Identity on the vertex set ``index_map`` (the restricted identity)."""
    one = TruncPoly.constant(ring, ring.one, cap)
    zero = TruncPoly.zero(ring, cap)
    k = len(index_map)
    rows = tuple(tuple(one if i == j else zero for j in range(k)) for i in range(k))
    return LocalPolyMatrix(tuple(index_map), rows, ring, cap)


def z_times(W: LocalMatrix, cap: int) -> LocalPolyMatrix:
    """``z * W`` as a polynomial matrix."""
    ring = W.ring
    rows = tuple(tuple(TruncPoly.monomial(ring, w, 1, cap) for w in row) for row in W.entries)
    return LocalPolyMatrix(W.index_map, rows, ring, cap)


def mat_mul_trunc(A: LocalPolyMatrix, B: LocalPolyMatrix) -> LocalPolyMatrix:
    _compatible(A, B)
    ring, cap, k = A.ring, A.cap, A.k
    zero = TruncPoly.zero(ring, cap)
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            acc = zero
            for m in range(k):
                a, b = A.entries[i][m], B.entries[m][j]
                if a.is_zero() or b.is_zero():
                    continue
                acc = acc + poly_mul_trunc(a, b)
            row.append(acc)
        rows.append(tuple(row))
    return LocalPolyMatrix(A.index_map, tuple(rows), ring, cap)


def mat_pow_trunc(A: LocalPolyMatrix, k: int) -> LocalPolyMatrix:
    if k < 0:
        raise PolyError("negative matrix power")
    result = local_identity(A.index_map, A.ring, A.cap)
    base = A
    # square-and-multiply; both factors are powers of A so order is immaterial
    while k:
        if k & 1:
            result = mat_mul_trunc(result, base)
        k >>= 1
        if k:
            base = mat_mul_trunc(base, base)
    return result


def binom_expand_i_minus(A: LocalPolyMatrix, m: int) -> LocalPolyMatrix:
    """``(I - A)**m`` truncated, via the binomial theorem.

    ``A`` must have no constant term: then ``A**j`` starts at degree ``j`` and
    only the terms ``j <= min(m, cap)`` survive truncation.
    """
    if m < 0:
        raise PolyError("negative exponent")
    ring = A.ring
    for row in A.entries:
        for p in row:
            if not ring.is_zero(p.coeffs[0]):
                raise PolyError("binomial expansion needs a matrix without constant term")
    result = local_identity(A.index_map, ring, A.cap)
    power = result
    for j in range(1, min(m, A.cap) + 1):
        power = mat_mul_trunc(power, A)
        c = binomial(m, j) * (-1) ** j
        result = result + power.scale(c)
    return result
