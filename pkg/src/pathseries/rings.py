"""Coefficient rings for arc weights.

Three rings are provided:

* ``BIGINT``: arbitrary precision integers (path counting, weighted counts).
* ``FLOAT``: double precision weights.
* ``WORD``: formal sums of arc words with integer coefficients.  Products
  concatenate words, so this ring is not commutative and a path series over
  it lists every path individually.

Ring elements are plain immutable values; all algebra goes through the ring
object so that generic code never assumes commutativity.
"""

from __future__ import annotations

from typing import Any, Iterable


class RingError(ValueError):
    """Raised when a ring cannot perform a requested operation."""


class Ring:
    name = "ring"
    exact = True
    supports_division = False
    # "int" / "float" when elements can live in a numpy array, else None
    numeric: str | None = None

    zero: Any = None
    one: Any = None

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def scale(self, a, k: int):
        """Multiply ``a`` by the integer ``k``."""
        raise NotImplementedError

    def divide_exact(self, a, k: int):
        raise RingError(f"the {self.name} ring does not support division")

    def is_zero(self, a) -> bool:
        return a == self.zero

    def sum(self, items: Iterable):
        total = self.zero
        for x in items:
            total = self.add(total, x)
        return total

    def parse(self, token: str):
        raise NotImplementedError

    def arc_weight(self, u: int, v: int, token: str | None):
        """Weight attached to arc ``u -> v`` read from an optional token."""
        if token is None:
            return self.one
        return self.parse(token)

    def to_json(self, a):
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__}>"

    def __eq__(self, other):
        return type(self) is type(other)

    def __hash__(self):
        return hash(type(self).__name__)

    def __reduce__(self):
        return (ring_by_name, (self.name,))


class BigCountRing(Ring):
    name = "bigint"
    supports_division = True
    numeric = "int"
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def scale(self, a, k):
        return a * k

    def divide_exact(self, a, k):
        if k <= 0:
            raise RingError("division by a non-positive integer")
        q, r = divmod(a, k)
        if r:
            raise RingError(f"{a} is not divisible by {k}")
        return q

    def is_zero(self, a):
        return a == 0

    def parse(self, token):
        try:
            return int(token, 10)
        except ValueError:
            raise RingError(f"not an integer weight: {token!r}") from None

    def to_json(self, a):
        return str(a)


class FloatRing(Ring):
    name = "float"
    exact = False
    supports_division = True
    numeric = "float"
    zero = 0.0
    one = 1.0

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def scale(self, a, k):
        return a * k

    def divide_exact(self, a, k):
        if k <= 0:
            raise RingError("division by a non-positive integer")
        return a / k

    def is_zero(self, a):
        return a == 0.0

    def parse(self, token):
        try:
            return float(token)
        except ValueError:
            raise RingError(f"not a float weight: {token!r}") from None

    def to_json(self, a):
        return format(a, ".17g")


class WordSum:
    """Finite formal sum of words.

    ``terms`` is a tuple of ``(word, coefficient)`` pairs sorted by word with
    no zero coefficients; a word is a tuple of arcs ``(u, v)``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        acc: dict = {}
        for word, c in terms:
            acc[word] = acc.get(word, 0) + c
        self.terms = tuple(sorted((w, c) for w, c in acc.items() if c))

    @classmethod
    def _canonical(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def __eq__(self, other):
        return isinstance(other, WordSum) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "WordSum(0)"
        parts = [f"{c}*{format_word(w)}" for w, c in self.terms]
        return "WordSum(" + " + ".join(parts) + ")"

    def __getstate__(self):
        return (self.terms,)

    def __setstate__(self, state):
        self.terms = state[0]


def format_word(word) -> str:
    """Render an arc word as its vertex sequence, e.g. ``0>1>2``."""
    if not word:
        return ""
    return ">".join([str(word[0][0])] + [str(v) for _, v in word])


class WordSeriesRing(Ring):
    name = "word"
    supports_division = False
    zero = WordSum()
    one = WordSum([((), 1)])

    def letter(self, u: int, v: int) -> WordSum:
        word = ((u, v),)
        return WordSum._canonical(((word, 1),))

    def add(self, a, b):
        if not a.terms:
            return b
        if not b.terms:
            return a
        return WordSum(a.terms + b.terms)

    def mul(self, a, b):
        if not a.terms or not b.terms:
            return self.zero
        return WordSum((wa + wb, ca * cb) for wa, ca in a.terms for wb, cb in b.terms)

    def neg(self, a):
        return WordSum._canonical(tuple((w, -c) for w, c in a.terms))

    def scale(self, a, k):
        if k == 0:
            return self.zero
        return WordSum._canonical(tuple((w, c * k) for w, c in a.terms))

    def is_zero(self, a):
        return not a.terms

    def parse(self, token):
        raise RingError("the word ring takes no numeric weights")

    def arc_weight(self, u, v, token):
        # arcs carry their own formal label; numeric weights are ignored
        return self.letter(u, v)

    def to_json(self, a):
        return [{"path": format_word(w), "coeff": str(c)} for w, c in a.terms]


BIGINT = BigCountRing()
FLOAT = FloatRing()
WORD = WordSeriesRing()

RINGS = {r.name: r for r in (BIGINT, FLOAT, WORD)}


def ring_by_name(name: str) -> Ring:
    try:
        return RINGS[name]
    except KeyError:
        raise RingError(f"unknown ring {name!r}") from None
