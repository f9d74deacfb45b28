"""Integer linear representations ``n -> lambda . mu(rep(n)) . gamma`` of regular sequences.

Everything is exact: vectors and matrices are lists of Python ints.
"""

from __future__ import annotations

import re
from collections import deque
from typing import Mapping, Sequence

from ._linalg import Lattice, Matrix, matvec, transpose, vecmat
from .automata import Dfao
from .errors import DidNotHalt, DigitOutOfRange, ParseError
from .numeration import PositionalSystem


class LinearRep:
    """Row vector ``lam``, digit-indexed square matrices ``mu``, column vector ``gamma``."""

    def __init__(self, lam: Sequence[int], mu: Mapping[int, Matrix], gamma: Sequence[int]):
        dim = len(lam)
        if len(gamma) != dim:
            raise ValueError("lambda and gamma must have the same length")
        if sorted(mu) != list(range(len(mu))) or not mu:
            raise ValueError("mu must be indexed by digits 0..D")
        for d, m in mu.items():
            if len(m) != dim or any(len(row) != dim for row in m):
                raise ValueError(f"mu({d}) is not {dim}x{dim}")
        self.lam = [int(x) for x in lam]
        self.mu = {d: [[int(x) for x in row] for row in mu[d]] for d in sorted(mu)}
        self.gamma = [int(x) for x in gamma]

    @property
    def dim(self) -> int:
        return len(self.lam)

    @property
    def max_digit(self) -> int:
        return len(self.mu) - 1

    def __repr__(self):
        return f"LinearRep(dim={self.dim}, digits=0..{self.max_digit})"

    def __eq__(self, other):
        return (isinstance(other, LinearRep) and self.lam == other.lam
                and self.mu == other.mu and self.gamma == other.gamma)

    # ------------------------------------------------------------ text format

    @classmethod
    def parse(cls, text: str) -> "LinearRep":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        try:
            m = re.fullmatch(r"dim:?\s*(\d+)", lines[0])
            if not m:
                raise ParseError("first line must be 'dim: N'")
            dim = int(m.group(1))
            lam = gamma = None
            mu: dict[int, Matrix] = {}
            i = 1
            while i < len(lines):
                ln = lines[i]
                if ln.startswith("lambda:"):
                    lam = [int(x) for x in ln[7:].split()]
                    i += 1
                elif ln.startswith("gamma:"):
                    gamma = [int(x) for x in ln[6:].split()]
                    i += 1
                elif (mm := re.fullmatch(r"mu\s+(\d+):", ln)):
                    d = int(mm.group(1))
                    mu[d] = [[int(x) for x in lines[i + 1 + r].split()] for r in range(dim)]
                    i += 1 + dim
                else:
                    raise ParseError(f"cannot parse line {ln!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed linear representation: {exc}") from exc
        if lam is None or gamma is None or not mu:
            raise ParseError("lambda, gamma and at least one mu are required")
        if len(lam) != dim or len(gamma) != dim:
            raise ParseError(f"vectors must have length {dim}")
        try:
            return cls(lam, mu, gamma)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def serialize(self) -> str:
        out = [f"dim: {self.dim}", "lambda: " + " ".join(map(str, self.lam))]
        for d, m in self.mu.items():
            out.append(f"mu {d}:")
            out.extend(" ".join(map(str, row)) for row in m)
        out.append("gamma: " + " ".join(map(str, self.gamma)))
        return "\n".join(ln.rstrip() for ln in out) + "\n"

    # ------------------------------------------------------------ evaluation

    def row_after(self, digits) -> list[int]:
        v = self.lam
        for d in _digits(digits):
            if d not in self.mu:
                raise DigitOutOfRange(f"digit {d} outside 0..{self.max_digit}")
            v = vecmat(v, self.mu[d])
        return v

    def evaluate(self, digits) -> int:
        v = self.row_after(digits)
        return sum(a * b for a, b in zip(v, self.gamma))

    def term(self, system: PositionalSystem, n: int) -> int:
        return self.evaluate(system.rep_digits(n))

    def transpose(self) -> "LinearRep":
        """The representation of the reversed-word function."""
        return LinearRep(self.gamma, {d: transpose(m) for d, m in self.mu.items()}, self.lam)


def _digits(digits) -> list[int]:
    if isinstance(digits, str):
        return [int(c) for c in digits]
    return list(digits)


def evaluate(r: LinearRep, digits) -> int:
    return r.evaluate(digits)


def left_reduce(r: LinearRep) -> LinearRep:
    """Restrict to the lattice spanned by the reachable rows ``lam . mu(x)``."""
    lat = Lattice(r.dim)
    queue = deque()
    if lat.add(r.lam):
        queue.append(r.lam)
    while queue:
        v = queue.popleft()
        for d in r.mu:
            w = vecmat(v, r.mu[d])
            if lat.add(w):
                queue.append(w)
    basis = lat.basis()
    k = len(basis)
    digits = list(r.mu)
    if k == 0:
        return LinearRep([], {d: [] for d in digits}, [])
    mu = {d: [lat.coordinates(vecmat(b, r.mu[d])) for b in basis] for d in digits}
    return LinearRep(lat.coordinates(r.lam), mu, matvec(basis, r.gamma))


def right_reduce(r: LinearRep) -> LinearRep:
    return left_reduce(r.transpose()).transpose()


def minimize(r: LinearRep) -> LinearRep:
    """Minimal-dimension integer representation of the same function on all digit strings.

    Both reductions work over Z-lattices (echelon bases with exact division),
    so the result stays integral; lattice rank equals rational span dimension,
    so the dimension is the rational minimum.
    """
    return right_reduce(left_reduce(r))


def rank(r: LinearRep) -> int:
    return minimize(r).dim


def semigroup_trick(r: LinearRep, max_states: int = 10_000) -> Dfao:
    """Breadth-first closure of the rows ``lam . mu(x)``; each distinct row is a state.

    States are numbered in discovery order (digits tried in increasing order)
    and the output of a state ``w`` is ``w . gamma``. Raises ``DidNotHalt``
    once more than ``max_states`` rows have been found.
    """
    if max_states < 1:
        raise ValueError("max_states must be >= 1")
    start = tuple(r.lam)
    index = {start: 0}
    rows = [start]
    delta: list[list[int]] = []
    i = 0
    while i < len(rows):
        v = rows[i]
        out = []
        for d in range(r.max_digit + 1):
            w = tuple(vecmat(v, r.mu[d])) if r.dim else ()
            j = index.get(w)
            if j is None:
                if len(rows) >= max_states:
                    raise DidNotHalt(len(rows) + 1)
                j = index[w] = len(rows)
                rows.append(w)
            out.append(j)
        delta.append(out)
        i += 1
    outputs = [sum(a * b for a, b in zip(v, r.gamma)) for v in rows]
    return Dfao([f"q{k}" for k in range(len(rows))], 0, delta, outputs, r.max_digit)
