"""Exact rational vectors and matrices.

Vectors are plain tuples of :class:`fractions.Fraction`.  Matrices carry an
explicit shape so that maps into or out of a zero-dimensional space compose
correctly (a ``0 x n`` matrix has no rows but still knows ``n``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]


def to_fraction(x) -> Fraction:
    """Coerce ``x`` to a Fraction, refusing floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def vector(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def vadd(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(c, a: Sequence[Fraction]) -> Vector:
    return tuple(c * x for x in a)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), Fraction(0))


def is_zero(a: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in a)


def combine(terms: Iterable[tuple[Fraction, Sequence[Fraction]]], n: int) -> Vector:
    """Sum of ``c * v`` over ``terms``; every ``v`` has length ``n``."""
    acc = [Fraction(0)] * n
    for c, v in terms:
        if c == 0:
            continue
        for k, x in enumerate(v):
            if x:
                acc[k] += c * x
    return tuple(acc)


@dataclass(frozen=True)
class Matrix:
    """Immutable rational matrix with an explicit ``(rows, cols)`` shape."""

    rows: tuple
    shape: tuple

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], ncols: int | None = None) -> Matrix:
        data = tuple(vector(r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix rows")
        return cls(data, (len(data), ncols))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(
            tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)),
            (n, n),
        )

    @classmethod
    def zero(cls, m: int, n: int) -> Matrix:
        return cls(tuple(zeros(n) for _ in range(m)), (m, n))

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.shape[1] != other.shape[0]:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.transpose().rows
            return Matrix(
                tuple(tuple(dot(r, c) for c in cols) for r in self.rows),
                (self.shape[0], other.shape[1]),
            )
        if len(other) != self.shape[1]:
            raise ValueError(f"shape mismatch {self.shape} @ vector of length {len(other)}")
        return tuple(dot(r, other) for r in self.rows)

    def transpose(self) -> Matrix:
        m, n = self.shape
        return Matrix(tuple(tuple(self.rows[i][j] for i in range(m)) for j in range(n)), (n, m))

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.shape[0]) if self.shape[0] == self.shape[1] else False

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        fr = [to_fraction(x) for x in r]
        den = lcm(1, *(x.denominator for x in fr))
        out.append([int(x * den) for x in fr])
    return out


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    Rows are cleared of denominators first, so every intermediate value is an
    exact integer and no pivot tolerance is involved.
    """
    a = _integer_rows(rows)
    if not a:
        return 0
    n = len(a[0]) if ncols is None else ncols
    m = len(a)
    r = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, m):
            f = a[i][c]
            row = a[i]
            top = a[r]
            for k in range(c + 1, n):
                # exact division is guaranteed by Sylvester's identity
                row[k] = (p * row[k] - f * top[k]) // prev
            row[c] = 0
        prev = p
        r += 1
        if r == m:
            break
    return r


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns ``(rows, pivot_columns)``."""
    a = [[to_fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of ``{x : rows @ x = 0}``, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> Vector | None:
    """One solution of ``rows @ x = rhs`` (free variables set to 0), or None."""
    aug = [list(r) + [to_fraction(b)] for r, b in zip(rows, rhs, strict=True)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = [list(r) + list(e) for r, e in zip(m.rows, Matrix.identity(n).rows)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return Matrix(tuple(tuple(r[n:]) for r in red[:n]), (n, n))
