"""Abelian and additive powers, balance, and valuations that separate letters."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math
from math import isqrt
from typing import Mapping, Sequence

import numpy as np

from .complexity import WindowStats, as_source, complexity_profile
from .errors import CapExceeded, WindowTooSmall
from .words import PrefixBuffer, Valuation


@dataclass(frozen=True)
class PowerWitness:
    position: int
    order: int
    k: int
    kind: str

    def blocks(self, letters: Sequence[int]) -> list[tuple[int, ...]]:
        p, o = self.position, self.order
        return [tuple(int(a) for a in letters[p + j * o: p + (j + 1) * o]) for j in range(self.k)]


def _window_stats(src, window: int, v=None) -> WindowStats:
    src = as_source(src)
    if src.is_finite:
        window = min(window, len(src))
    return WindowStats(src.prefix(window), src.alphabet, v)


def _power_mask(st: WindowStats, kind: str, k: int, order: int) -> np.ndarray:
    m = st.length - k * order + 1
    ok = np.ones(m, dtype=bool)
    if kind == "additive":
        tables = [st.sums]
    elif kind == "abelian":
        c = st.counts
        tables = [c[a] for a in range(max(1, len(st.alphabet) - 1))]
    else:
        raise ValueError("kind must be 'abelian' or 'additive'")
    for t in tables:
        first = t[order:order + m] - t[:m]
        for j in range(1, k):
            ok &= (t[(j + 1) * order:(j + 1) * order + m] - t[j * order:j * order + m]) == first
    return ok


def find_power(src, kind: str, k: int, order: int, window: int,
               v: Mapping[int, int] | None = None, *, stats: WindowStats | None = None) -> PowerWitness | None:
    """Leftmost ``k``-power of the given order inside the first ``window`` letters.

    ``None`` means "not found up to window", not "absent from the infinite word".
    """
    if k < 2 or order < 1:
        raise ValueError("need k >= 2 and order >= 1")
    if window < k * order:
        raise WindowTooSmall(f"window {window} < {k}*{order}")
    st = stats or _window_stats(src, window, v)
    if st.length < k * order:
        raise WindowTooSmall(f"word has only {st.length} letters")
    hits = np.flatnonzero(_power_mask(st, kind, k, order))
    if len(hits) == 0:
        return None
    return PowerWitness(int(hits[0]), order, k, kind)


def power_orders(src, kind: str, k: int, max_order: int, window: int,
                 v: Mapping[int, int] | None = None) -> dict[int, PowerWitness | None]:
    """``find_power`` for each order ``1..max_order`` over one shared prefix."""
    st = _window_stats(src, window, v)
    out = {}
    for order in range(1, max_order + 1):
        if k * order > st.length:
            raise WindowTooSmall(f"window {st.length} < {k}*{order}")
        out[order] = find_power(src, kind, k, order, window, v, stats=st)
    return out


def abelian_square_class_count(src, order: int, window: int, *, stats: WindowStats | None = None) -> int:
    """Distinct Parikh vectors of ``x`` over abelian squares ``xx'`` of the given order."""
    if window < 2 * order:
        raise WindowTooSmall(f"window {window} < 2*{order}")
    st = stats or _window_stats(src, window)
    hits = np.flatnonzero(_power_mask(st, "abelian", 2, order))
    if len(hits) == 0:
        return 0
    c = st.counts
    vecs = np.stack([c[a, hits + order] - c[a, hits] for a in range(len(st.alphabet))], axis=1)
    return len(np.unique(vecs, axis=0))


def fibonacci_abelian_criterion(k: int, n: int) -> bool:
    """Whether ``floor(k * phi * n) mod k`` is 0 or ``k - 1``.

    ``sqrt 5`` is bracketed by ``[s/q, (s+1)/q]`` with ``s = isqrt(5 q^2)``,
    doubling ``q`` until both ends give the same floor.
    """
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and n >= 1")
    q = 1
    while True:
        s = isqrt(5 * q * q)
        lo = Fraction(k * n) * (1 + Fraction(s, q)) / 2
        hi = Fraction(k * n) * (1 + Fraction(s + 1, q)) / 2
        # k*n*phi is irrational, so it lies strictly between lo and hi
        if math.floor(lo) == math.ceil(hi) - 1:
            return math.floor(lo) % k in (0, k - 1)
        q *= 2


@dataclass(frozen=True)
class BalanceReport:
    C_observed: int
    n_scanned: int
    witness: tuple[int, int, int, int] | None  # (letter, position of min, position of max, length)


def balance_report(src, n_max: int, window: int) -> BalanceReport:
    """Largest gap ``||u|_a - |v|_a|`` over same-length windows of the prefix, lengths ``1..n_max``."""
    st = _window_stats(src, window)
    best, witness = 0, None
    c = st.counts
    for n in range(1, min(n_max, st.length) + 1):
        m = st.length - n + 1
        for a, letter in enumerate(st.alphabet):
            w = c[a, n:] - c[a, :m]
            lo, hi = int(w.argmin()), int(w.argmax())
            gap = int(w[hi] - w[lo])
            if gap > best:
                best, witness = gap, (letter, lo, hi, n)
    return BalanceReport(best, min(n_max, st.length), witness)


def balanced_additive_bound(alphabet: Sequence[int], C: int) -> int:
    """``C * sum_{i <= ceil(k/2)} (a_{k+1-i} - a_i) + 1`` for the sorted alphabet."""
    a = sorted(alphabet)
    k = len(a)
    return C * sum(a[k - 1 - i] - a[i] for i in range((k + 1) // 2)) + 1


def equalizing_valuation(k: int, C: int, alphabet: Sequence[int] | None = None) -> Valuation:
    """Smallest weights ``0, 1, a_3, ...`` with ``a_j = C * (a_1 + ... + a_{j-1}) + 1``.

    Keys are ``0..k-1`` unless an alphabet is given, in which case its letters
    (in increasing order) receive the weights.
    """
    if k < 1 or C < 1:
        raise ValueError("need k >= 1 and C >= 1")
    weights = [0, 1][:k]
    while len(weights) < k:
        weights.append(C * sum(weights) + 1)
    letters = range(k) if alphabet is None else sorted(alphabet)
    if len(letters) != k:
        raise ValueError("alphabet size must equal k")
    return Valuation(dict(zip(letters, weights)))


def first_add_ab_mismatch(src, v: Mapping[int, int] | None, n_max: int, *,
                          prefix_len: int | None = None) -> int | None:
    """Smallest ``n <= n_max`` where additive and abelian complexity differ, else None."""
    add = complexity_profile(src, n_max, "additive", v, prefix_len=prefix_len)
    ab = complexity_profile(src, n_max, "abelian", prefix_len=prefix_len)
    trusted = min(add.stabilized_upto, ab.stabilized_upto)
    for n in range(trusted + 1):
        if add[n] != ab[n]:
            return n
    if trusted < n_max and prefix_len is None:
        raise CapExceeded(f"profiles stabilized only up to n={trusted}", trusted)
    return None
