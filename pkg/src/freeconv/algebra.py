"""Exact linear algebra over the base algebra B = M_d(Q).

Everything here is a thin, exact layer over :class:`fractions.Fraction`:
square matrices with rational entries, their inverses, linear maps B -> B
stored on the matrix-unit basis, and a seeded generator of random elements.
No floats anywhere.

The basis of B is the family of matrix units E_pq, ordered row-major, so the
flat index of E_pq is ``p*d + q`` (0-based, range ``0..d*d-1``).
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


class NotInvertibleError(ValueError):
    """Raised when a matrix or linear map has no inverse."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class AlgebraElement:
    """A d x d matrix with Fraction entries; immutable and hashable.

    >>> a = AlgebraElement.from_rows([[1, 1], [0, 1]])
    >>> (a * a).rows[0]
    (Fraction(1, 1), Fraction(2, 1))
    """

    __slots__ = ("d", "rows", "_hash", "_coords")

    def __init__(self, d: int, rows: tuple):
        self.d = d
        self.rows = rows
        self._hash = None
        self._coords = None

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "AlgebraElement":
        tup = tuple(tuple(_as_fraction(x) for x in row) for row in rows)
        d = len(tup)
        if any(len(row) != d for row in tup):
            raise ValueError("matrix must be square")
        return cls(d, tup)

    @classmethod
    def zero(cls, d: int) -> "AlgebraElement":
        z = Fraction(0)
        return cls(d, tuple((z,) * d for _ in range(d)))

    @classmethod
    def unit(cls, d: int) -> "AlgebraElement":
        return cls(d, tuple(tuple(Fraction(1 if i == j else 0) for j in range(d)) for i in range(d)))

    @classmethod
    def basis(cls, d: int, index: int) -> "AlgebraElement":
        """The matrix unit E_pq with flat row-major index ``index = p*d + q``."""
        if not 0 <= index < d * d:
            raise ValueError(f"basis index {index} out of range for d={d}")
        p, q = divmod(index, d)
        return cls(d, tuple(tuple(Fraction(1 if (i, j) == (p, q) else 0) for j in range(d)) for i in range(d)))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.d, tuple(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.d, tuple(
            tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.d, tuple(tuple(-a for a in row) for row in self.rows))

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        """Matrix product."""
        self._check(other)
        d = self.d
        cols = tuple(zip(*other.rows))
        return AlgebraElement(d, tuple(
            tuple(sum(a * b for a, b in zip(row, col) if a and b) for col in cols)
            for row in self.rows))

    def __rmul__(self, scalar) -> "AlgebraElement":
        c = _as_fraction(scalar)
        return AlgebraElement(self.d, tuple(tuple(c * a for a in row) for row in self.rows))

    def scale(self, scalar) -> "AlgebraElement":
        return self.__rmul__(scalar)

    # -- structure ----------------------------------------------------------

    @classmethod
    def from_coords(cls, d: int, flat: Sequence[Fraction]) -> "AlgebraElement":
        """Rebuild an element from its flat row-major coordinate tuple."""
        if len(flat) != d * d:
            raise ValueError("coordinate count mismatch")
        return cls(d, tuple(tuple(flat[i * d:(i + 1) * d]) for i in range(d)))

    def coords(self) -> tuple:
        """Coordinates on the matrix-unit basis, row-major flat tuple."""
        if self._coords is None:
            self._coords = tuple(x for row in self.rows for x in row)
        return self._coords

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def _check(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement) or other.d != self.d:
            raise ValueError("dimension mismatch")

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.d == other.d and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.d, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(",".join(str(x) for x in row) for row in self.rows)
        return f"AlgebraElement[{body}]"

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"d": self.d, "entries": [[str(x) for x in row] for row in self.rows]}

    @classmethod
    def from_json(cls, obj) -> "AlgebraElement":
        if isinstance(obj, str):
            obj = json.loads(obj)
        elem = cls.from_rows(obj["entries"])
        if elem.d != obj["d"]:
            raise ValueError("declared dimension does not match entries")
        return elem


def _invert_rows(rows: Sequence[Sequence[Fraction]]) -> list:
    """Gauss-Jordan inverse of an exact square matrix, as a list of lists."""
    n = len(rows)
    a = [list(row) for row in rows]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise NotInvertibleError("matrix is singular")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        p = a[col][col]
        if p != 1:
            a[col] = [x / p for x in a[col]]
            inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def mat_inverse(a: AlgebraElement) -> AlgebraElement:
    """Exact inverse in M_d(Q); raises NotInvertibleError on singular input."""
    return AlgebraElement(a.d, tuple(tuple(row) for row in _invert_rows(a.rows)))


def is_invertible(a: AlgebraElement) -> bool:
    try:
        mat_inverse(a)
    except NotInvertibleError:
        return False
    return True


class LinMap:
    """A Q-linear map B -> B, stored as the images of the matrix units.

    ``images[j]`` is the value on the basis element with flat index j; the
    map extends to all of B by linearity.
    """

    __slots__ = ("d", "images")

    def __init__(self, d: int, images: tuple):
        if len(images) != d * d:
            raise ValueError("need one image per basis element")
        self.d = d
        self.images = tuple(images)

    @classmethod
    def identity(cls, d: int) -> "LinMap":
        return cls(d, tuple(AlgebraElement.basis(d, j) for j in range(d * d)))

    @classmethod
    def from_function(cls, d: int, fn) -> "LinMap":
        return cls(d, tuple(fn(AlgebraElement.basis(d, j)) for j in range(d * d)))

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        acc = AlgebraElement.zero(self.d)
        for c, img in zip(x.coords(), self.images):
            if c:
                acc = acc + c * img
        return acc

    def matrix(self) -> list:
        """The (d^2) x (d^2) matrix of the map on the flat basis (columns = images)."""
        n = self.d * self.d
        cols = [img.coords() for img in self.images]
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def __eq__(self, other) -> bool:
        return isinstance(other, LinMap) and self.d == other.d and self.images == other.images


def linmap_inverse(m: LinMap) -> LinMap:
    """Inverse of a linear map B -> B; raises NotInvertibleError when singular."""
    inv = _invert_rows(m.matrix())
    d = m.d
    n = d * d
    images = []
    for j in range(n):
        col = [inv[i][j] for i in range(n)]
        acc = AlgebraElement.zero(d)
        for i, c in enumerate(col):
            if c:
                acc = acc + c * AlgebraElement.basis(d, i)
        images.append(acc)
    return LinMap(d, tuple(images))


def random_element(seed: int, bound: int, d: int) -> AlgebraElement:
    """Seeded random element: numerators in [-bound, bound], denominators in [1, bound]."""
    if bound < 1:
        raise ValueError("bound must be a positive integer")
    rng = random.Random(seed)
    return random_element_from(rng, bound, d)


def random_element_from(rng: random.Random, bound: int, d: int) -> AlgebraElement:
    """Like :func:`random_element` but drawing from a caller-owned generator."""
    return AlgebraElement.from_rows(
        [[Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(d)]
         for _ in range(d)])


def random_invertible_from(rng: random.Random, bound: int, d: int) -> AlgebraElement:
    """Rejection-sample an invertible element (singular draws are rare)."""
    while True:
        a = random_element_from(rng, bound, d)
        if is_invertible(a):
            return a
