"""Exact integer/rational linear algebra on small dense matrices (lists of ints)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = list[int]
Matrix = list[list[int]]


def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class Lattice:
    """The Z-module spanned by a set of integer vectors, kept in echelon form.

    Basis rows are sorted by pivot column and each is zero before its pivot,
    so membership and coordinates follow from forward elimination with exact
    division.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[Vector] = []
        self.pivots: list[int] = []

    def __len__(self):
        return len(self.rows)

    def coordinates(self, v: Sequence[int]) -> list[int] | None:
        """Integer coefficients of ``v`` over the basis rows, or None if ``v`` is outside."""
        rest = list(v)
        coeffs = [0] * len(self.rows)
        for i in range(len(self.rows)):
            p, row = self.pivots[i], self.rows[i]
            if rest[p] == 0:
                continue
            q, r = divmod(rest[p], row[p])
            if r:
                return None
            coeffs[i] = q
            rest = [a - q * b for a, b in zip(rest, row)]
        if any(rest):
            return None
        return coeffs

    def __contains__(self, v):
        return self.coordinates(v) is not None

    def add(self, v: Sequence[int]) -> bool:
        """Enlarge the lattice by ``v``; returns True if it grew."""
        if v in self:
            return False
        v = list(v)
        while any(v):
            lead = next(j for j, a in enumerate(v) if a)
            if lead not in self.pivots:
                if v[lead] < 0:
                    v = [-a for a in v]
                self.rows.append(v)
                self.pivots.append(lead)
                break
            i = self.pivots.index(lead)
            b = self.rows[i]
            g, s, t = _xgcd(b[lead], v[lead])
            new_b = [s * x + t * y for x, y in zip(b, v)]
            v = [(v[lead] // g) * x - (b[lead] // g) * y for x, y in zip(b, v)]
            if new_b[lead] < 0:
                new_b = [-a for a in new_b]
            self.rows[i] = new_b
        order = sorted(range(len(self.rows)), key=lambda i: self.pivots[i])
        self.rows = [self.rows[i] for i in order]
        self.pivots = [self.pivots[i] for i in order]
        self._size_reduce()
        return True

    def _size_reduce(self):
        # keep entries small: reduce each row's entries at later pivots
        for i in range(len(self.rows)):
            for j in range(i + 1, len(self.rows)):
                p = self.pivots[j]
                q = self.rows[i][p] // self.rows[j][p]
                if q:
                    self.rows[i] = [x - q * y for x, y in zip(self.rows[i], self.rows[j])]

    def basis(self) -> list[Vector]:
        """Basis rows sorted by pivot column; ``coordinates`` uses this order."""
        return [list(r) for r in self.rows]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vecmat(v: Sequence[int], m: Matrix) -> Vector:
    if not m:
        return []
    return [sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m[0]))]


def matvec(m: Matrix, v: Sequence[int]) -> Vector:
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def transpose(m: Matrix) -> Matrix:
    return [list(r) for r in zip(*m)]
