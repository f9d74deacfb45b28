"""Positional numeration systems with greedy (most-significant-first) representations."""

from __future__ import annotations

from bisect import bisect_right
from operator import mul
from typing import Sequence

from .errors import DigitOutOfRange, ParseError


class PositionalSystem:
    """An increasing scale ``U`` with ``U(0) = 1``.

    Built either from a base (``U(n) = k^n``), a linear recurrence over given
    initial terms, or an explicit finite table. Terms are Python ints and are
    extended on demand.
    """

    def __init__(self, kind: str, initial: Sequence[int], coefficients: Sequence[int] = (),
                 base: int | None = None, name: str = ""):
        if not initial or initial[0] != 1:
            raise ValueError("U(0) must be 1")
        if any(b <= a for a, b in zip(initial, initial[1:])):
            raise ValueError("U must be strictly increasing")
        self.kind = kind
        self.base = base
        self.coefficients = tuple(coefficients)
        self._terms = list(initial)
        self._dmax_cache: dict[int, int] = {}
        self.name = name or kind

    @classmethod
    def base_k(cls, k: int) -> "PositionalSystem":
        if k < 2:
            raise ValueError("base must be at least 2")
        return cls("base", [1, k], base=k, name=f"base:{k}")

    @classmethod
    def fibonacci(cls) -> "PositionalSystem":
        return cls("recurrence", [1, 2], [1, 1], name="fib")

    @classmethod
    def tribonacci(cls) -> "PositionalSystem":
        return cls("recurrence", [1, 2, 4], [1, 1, 1], name="trib")

    @classmethod
    def recurrence(cls, initial: Sequence[int], coefficients: Sequence[int]) -> "PositionalSystem":
        if len(initial) < len(coefficients):
            raise ValueError("need at least as many initial terms as coefficients")
        name = "rec:" + ",".join(map(str, initial)) + ";" + ",".join(map(str, coefficients))
        return cls("recurrence", initial, coefficients, name=name)

    @classmethod
    def table(cls, terms: Sequence[int]) -> "PositionalSystem":
        return cls("table", terms, name="table")

    @classmethod
    def parse(cls, text: str) -> "PositionalSystem":
        """Parse ``base:K``, ``trib``, ``fib`` or ``rec:a0,a1,...;c1,c2,...``."""
        text = text.strip()
        try:
            if text.startswith("base:"):
                return cls.base_k(int(text[5:]))
            if text == "trib":
                return cls.tribonacci()
            if text == "fib":
                return cls.fibonacci()
            if text.startswith("rec:"):
                init, coeffs = text[4:].split(";")
                return cls.recurrence([int(x) for x in init.split(",")],
                                      [int(x) for x in coeffs.split(",")])
        except ValueError as exc:
            raise ParseError(f"bad numeration system {text!r}: {exc}") from exc
        raise ParseError(f"unknown numeration system {text!r}")

    def __repr__(self):
        return f"PositionalSystem({self.name})"

    def _extend(self, count: int):
        t = self._terms
        while len(t) < count:
            if self.kind == "base":
                t.append(t[-1] * self.base)
            elif self.kind == "recurrence":
                nxt = sum(c * t[-1 - i] for i, c in enumerate(self.coefficients))
                if nxt <= t[-1]:
                    raise ValueError("recurrence is not strictly increasing")
                t.append(nxt)
            else:
                raise IndexError(f"explicit table has only {len(t)} terms")

    def u(self, i: int) -> int:
        self._extend(i + 1)
        return self._terms[i]

    def u_values(self, count: int) -> list[int]:
        if count < 1:
            raise ValueError("count must be >= 1")
        self._extend(count)
        return self._terms[:count]

    def max_digit(self, upto: int | None = None) -> int:
        """Largest greedy digit among positions below ``upto`` (default: materialized terms)."""
        if self.kind == "base":
            return self.base - 1
        n = len(self._terms) if upto is None else upto
        t = self.u_values(n + 1) if self.kind != "table" else self._terms
        return max(-(-t[i + 1] // t[i]) - 1 for i in range(min(n, len(t) - 1)))

    def _dmax(self, length: int) -> int:
        if length == 0:
            return 0
        if length not in self._dmax_cache:
            self._extend(length + 1 if self.kind != "table" else length)
            self._dmax_cache[length] = self.max_digit(length)
        return self._dmax_cache[length]

    def rep(self, n: int) -> str:
        return "".join(map(str, self.rep_digits(n)))

    def rep_digits(self, n: int) -> list[int]:
        """Greedy digits of ``n``, most significant first; ``[]`` for 0."""
        if n < 0:
            raise ValueError("n must be nonnegative")
        if n == 0:
            return []
        while self._terms[-1] <= n:
            self._extend(2 * len(self._terms))
        terms = self._terms
        t = bisect_right(terms, n)
        digits = [0] * t
        for j, i in enumerate(range(t - 1, -1, -1)):
            digits[j], n = divmod(n, terms[i])
        return digits

    def val(self, digits) -> int:
        ds = _digits(digits)
        dmax = self._dmax(len(ds))
        if ds and (max(ds) > dmax or min(ds) < 0):
            i, d = next((i, d) for i, d in enumerate(reversed(ds)) if not 0 <= d <= dmax)
            raise DigitOutOfRange(f"digit {d} at position {i} exceeds {dmax}")
        return sum(map(mul, reversed(ds), self._terms))

    def is_greedy(self, digits) -> bool:
        """Check ``sum_{i<=j} c(i) U(i) < U(j+1)`` for every position ``j``."""
        ds = _digits(digits)
        self._extend(len(ds) + 1)
        dmax = self._dmax(len(ds))
        partial = 0
        for j, d in enumerate(reversed(ds)):
            if d < 0 or d > dmax:
                raise DigitOutOfRange(f"digit {d} at position {j} exceeds {dmax}")
            partial += d * self._terms[j]
            if partial >= self._terms[j + 1]:
                return False
        return True


def _digits(digits) -> list[int]:
    if isinstance(digits, str):
        return [int(c) for c in digits]
    return [int(d) for d in digits]
