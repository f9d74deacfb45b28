"""Factor, abelian and additive complexity of (prefixes of) infinite words.

Counts are taken over a finite prefix. Unless a prefix length is pinned, the
prefix starts at ``max(4n, 4096)`` letters and doubles until the count is the
same on three consecutive lengths (``L``, ``2L``, ``4L``); that is what
"stabilized" means throughout this module. A pinned prefix ``L`` is checked
against ``L/4`` and ``L/2`` the same way.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import CapExceeded, OutOfRange
from .words import PrefixBuffer, Valuation, letter_indices

KINDS = ("factor", "abelian", "additive")
DEFAULT_CAP = 1 << 24


def prefix_cap() -> int:
    return int(os.environ.get("ADDCOMP_PREFIX_CAP", DEFAULT_CAP))


def as_source(src) -> PrefixBuffer:
    if isinstance(src, PrefixBuffer):
        return src
    return PrefixBuffer.from_word(src)


# ---------------------------------------------------------------- per-prefix kernels


class WindowStats:
    """Prefix sums over one materialized prefix, shared by all window queries."""

    def __init__(self, letters: np.ndarray, alphabet: Sequence[int], valuation: Mapping[int, int] | None = None):
        self.letters = letters
        self.alphabet = tuple(alphabet)
        alpha = np.array(self.alphabet, dtype=np.int64)
        self.index = letter_indices(letters, alpha)
        self.length = len(letters)
        self._counts = None
        weights = alpha if valuation is None else np.array([valuation[a] for a in self.alphabet], dtype=np.int64)
        sums = np.zeros(self.length + 1, dtype=np.int64)
        np.cumsum(weights[self.index], out=sums[1:])
        if sums[-1] < 2**31:
            sums = sums.astype(np.int32)
        self.sums = sums

    @property
    def counts(self) -> np.ndarray:
        """``counts[a, i]`` = occurrences of letter index ``a`` in ``letters[:i]``."""
        if self._counts is None:
            k = len(self.alphabet)
            dtype = np.int32 if self.length < 2**31 else np.int64
            c = np.zeros((k, self.length + 1), dtype=dtype)
            for a in range(k):
                np.cumsum(self.index == a, out=c[a, 1:])
            self._counts = c
        return self._counts

    def window_sums(self, n: int) -> np.ndarray:
        return self.sums[n:] - self.sums[: self.length - n + 1]

    def window_parikh(self, n: int) -> np.ndarray:
        c = self.counts
        return c[:, n:] - c[:, : self.length - n + 1]

    def additive(self, n: int) -> int:
        if n == 0:
            return 1
        if n > self.length:
            return 0
        return _distinct_ints(self.window_sums(n))

    def abelian(self, n: int) -> int:
        if n == 0:
            return 1
        if n > self.length:
            return 0
        c = self.counts
        m = self.length - n + 1
        # the last letter's count is implied by the window length
        rows = (c[a, n:] - c[a, :m] for a in range(max(1, len(self.alphabet) - 1)))
        return _distinct_rows(rows)

    def factor_ids(self, n: int) -> np.ndarray:
        """Dense ids with ``ids[i] == ids[j]`` iff the length-``n`` windows at ``i`` and ``j`` are equal."""
        if n == 0:
            return np.zeros(self.length + 1, dtype=np.int64)
        ids = _dense(self.index)
        width = 1
        # ids for power-of-two widths by pairing halves
        while 2 * width <= n:
            ids = _pair_ids(ids[:-width], ids[width:])
            width *= 2
        if width < n:
            shift = n - width
            ids = _pair_ids(ids[:-shift], ids[shift:])
        return ids

    def factor(self, n: int) -> int:
        if n == 0:
            return 1
        if n > self.length:
            return 0
        return int(self.factor_ids(n).max()) + 1

    def factor_profile(self, n_max: int) -> list[int]:
        out = [1]
        ids = None
        for n in range(1, n_max + 1):
            if n > self.length:
                out.append(0)
                continue
            if ids is None:
                ids = _dense(self.index)
            else:
                ids = _pair_ids(ids[:-1], self.index[n - 1:])
            out.append(int(ids.max()) + 1)
        return out


def _dense(a: np.ndarray) -> np.ndarray:
    _, inv = np.unique(a, return_inverse=True)
    return inv.astype(np.int64).reshape(-1)


def _pair_ids(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    key = left * (int(right.max()) + 1 if len(right) else 1) + right
    return _dense(key)


def _distinct_ints(v: np.ndarray) -> int:
    lo, hi = int(v.min()), int(v.max())
    if hi - lo <= 4 * len(v) + 1024:
        return int(np.count_nonzero(np.bincount(v - lo)))
    return len(np.unique(v))


def _distinct_rows(rows: Iterable[np.ndarray]) -> int:
    """Number of distinct columns of the stacked rows, via a mixed-radix key."""
    rows = list(rows)
    key = None
    radix = 1
    for r in rows:
        lo = int(r.min())
        span = int(r.max()) - lo + 1
        if radix * span >= 1 << 62:
            return len(np.unique(np.stack(rows, axis=1), axis=0))
        part = (r - lo).astype(np.int64) if radix * span >= 2**31 else (r - lo)
        key = part if key is None else key + part * radix
        radix *= span
    return _distinct_ints(key)


def _stats(src: PrefixBuffer, length: int, valuation) -> WindowStats:
    return WindowStats(src.prefix(length), src.alphabet, valuation)


def _lengths(src: PrefixBuffer, n: int, prefix_len: int | None, cap: int | None) -> Iterator[int]:
    if src.is_finite:
        yield len(src)
        return
    if prefix_len is not None:
        for L in (prefix_len // 4, prefix_len // 2, prefix_len):
            yield max(L, 1)
        return
    cap = prefix_cap() if cap is None else cap
    L = max(4 * n, 4096)
    while L <= cap:
        yield L
        L *= 2


def stabilized_value(src, n: int, compute: Callable[[WindowStats], object], *, valuation=None,
                     prefix_len: int | None = None, cap: int | None = None, strict: bool = True):
    """Run ``compute`` on growing prefixes until three consecutive results agree.

    Returns ``(value, stabilized, prefix_length_used)``. With ``strict`` and no
    pinned prefix, reaching the cap raises ``CapExceeded`` carrying the last value.
    """
    src = as_source(src)
    history: list = []
    L = 0
    for L in _lengths(src, n, prefix_len, cap):
        history.append(compute(_stats(src, L, valuation)))
        if src.is_finite:
            return history[-1], True, L
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            return history[-1], True, L
    if not history:
        raise CapExceeded(f"cap too small for n={n}")
    if strict and prefix_len is None:
        raise CapExceeded(f"count for n={n} did not stabilize below the prefix cap", history[-1])
    return history[-1], False, L


# ---------------------------------------------------------------- public operations


@dataclass
class FactorSet:
    length: int
    factors: set[tuple[int, ...]]
    stabilized: bool

    def __len__(self):
        return len(self.factors)


def factor_set(src, n: int, *, prefix_len: int | None = None, cap: int | None = None) -> FactorSet:
    if n < 0:
        raise ValueError("n must be >= 0")

    def collect(st: WindowStats):
        if n == 0:
            return frozenset({()})
        if n > st.length:
            return frozenset()
        ids = st.factor_ids(n)
        _, first = np.unique(ids, return_index=True)
        return frozenset(tuple(int(a) for a in st.letters[i:i + n]) for i in first)

    try:
        value, stable, _ = stabilized_value(src, n, collect, prefix_len=prefix_len, cap=cap)
    except CapExceeded as exc:
        partial = FactorSet(n, set(exc.partial or ()), False)
        raise CapExceeded(str(exc), partial) from None
    return FactorSet(n, set(value), stable)


def factor_complexity(src, n: int, **kw) -> int:
    return stabilized_value(src, n, lambda st: st.factor(n), **kw)[0]


def abelian_complexity(src, n: int, **kw) -> int:
    return stabilized_value(src, n, lambda st: st.abelian(n), **kw)[0]


def additive_complexity(src, n: int, v: Mapping[int, int] | None = None, **kw) -> int:
    return stabilized_value(src, n, lambda st: st.additive(n), valuation=v, **kw)[0]


def weighted_delta(src, i: int, n: int, v: Mapping[int, int] | None = None) -> int:
    """Weight of the length-``n`` window at ``i`` minus that of the prefix window."""
    src = as_source(src)
    need = max(i + n, n)
    if i < 0 or n < 0:
        raise OutOfRange("i and n must be nonnegative")
    if src.is_finite and need > len(src):
        raise OutOfRange(f"window [{i}, {i + n}) exceeds word length {len(src)}")
    st = _stats(src, need, v)
    return int(st.sums[i + n] - st.sums[i] - st.sums[n])


def delta_set(src, n: int, v: Mapping[int, int] | None = None, *, prefix_len: int | None = None) -> set[int]:
    """Distinct ``weighted_delta(i, n)`` over all windows of the (stabilized) prefix."""

    def compute(st: WindowStats):
        if n > st.length:
            return frozenset()
        s = st.window_sums(n)
        return frozenset((np.unique(s) - s[0]).tolist())

    return set(stabilized_value(src, n, compute, valuation=v, prefix_len=prefix_len)[0])


def weight_range(src, n: int, v: Mapping[int, int] | None = None, *,
                 prefix_len: int | None = None, cap: int | None = None) -> tuple[int, int, bool]:
    """Minimum and maximum window weight at length ``n``, and whether every value between occurs."""

    def compute(st: WindowStats):
        if n == 0:
            return (0, 0, True)
        s = st.window_sums(n)
        lo, hi = int(s.min()), int(s.max())
        return (lo, hi, _distinct_ints(s) == hi - lo + 1)

    return stabilized_value(src, n, compute, valuation=v, prefix_len=prefix_len, cap=cap)[0]


def weight_range_profile(src, n_max: int, v: Mapping[int, int] | None = None, *,
                         prefix_len: int | None = None, cap: int | None = None) -> list[tuple[int, int, bool]]:
    """``weight_range`` for every ``n <= n_max`` on one shared (stabilized) prefix."""

    def compute(st: WindowStats):
        out = [(0, 0, True)]
        for n in range(1, n_max + 1):
            s = st.window_sums(n)
            lo, hi = int(s.min()), int(s.max())
            out.append((lo, hi, _distinct_ints(s) == hi - lo + 1))
        return out

    return stabilized_value(src, n_max, compute, valuation=v, prefix_len=prefix_len, cap=cap)[0]


@dataclass
class ComplexityProfile:
    kind: str
    values: list[int]
    stabilized_upto: int
    valuation: Valuation | None = None
    prefix_len: int = 0
    name: str = ""

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    @property
    def stable_values(self) -> list[int]:
        return self.values[: self.stabilized_upto + 1]

    def to_csv(self) -> str:
        lines = [f"# kind={self.kind} prefix={self.prefix_len}"
                 + (f" valuation={Valuation(self.valuation).format()}" if self.valuation else "")]
        if self.stabilized_upto < self.n_max:
            lines.append(f"# warning: values for n>{self.stabilized_upto} did not stabilize")
        lines.append("n,value")
        lines.extend(f"{n},{x}" for n, x in enumerate(self.values))
        return "\n".join(lines) + "\n"


def _profile_on(st: WindowStats, n_max: int, kind: str) -> list[int]:
    if kind == "factor":
        return st.factor_profile(n_max)
    fn = st.additive if kind == "additive" else st.abelian
    return [fn(n) for n in range(n_max + 1)]


def complexity_profile(src, n_max: int, kind: str = "additive", v: Mapping[int, int] | None = None, *,
                       prefix_len: int | None = None, cap: int | None = None) -> ComplexityProfile:
    """Values for ``n = 0..n_max``; ``stabilized_upto`` marks the trusted range."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    src = as_source(src)
    valuation = v if kind == "additive" else None
    history: list[list[int]] = []
    L = 0
    stable = -1
    for L in _lengths(src, n_max, prefix_len, cap):
        history.append(_profile_on(_stats(src, L, valuation), n_max, kind))
        if src.is_finite:
            stable = n_max
            break
        if len(history) >= 3:
            a, b, c = history[-3:]
            stable = next((n - 1 for n in range(n_max + 1) if not a[n] == b[n] == c[n]), n_max)
            if stable == n_max:
                break
    if not history:
        raise CapExceeded(f"cap too small for n_max={n_max}")
    return ComplexityProfile(kind, history[-1], stable, Valuation(valuation) if valuation else None,
                             L, getattr(src, "name", ""))


@dataclass(frozen=True)
class EventualPeriod:
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __str__(self):
        head = " ".join(map(str, self.preperiod))
        tail = "(" + " ".join(map(str, self.period)) + ")^ω"
        return f"{head} {tail}" if head else tail

    def value(self, n: int) -> int:
        if n < len(self.preperiod):
            return self.preperiod[n]
        return self.period[(n - len(self.preperiod)) % len(self.period)]


def detect_eventual_period(p: ComplexityProfile | Sequence[int], max_preperiod: int = 20,
                           max_period: int = 20) -> EventualPeriod | None:
    """Smallest preperiod, then smallest period, consistent with the stabilized values.

    At least three full repetitions of the period must fit after the preperiod.
    """
    values = list(p.stable_values if isinstance(p, ComplexityProfile) else p)
    N = len(values)
    for pre in range(max_preperiod + 1):
        for per in range(1, max_period + 1):
            if N - pre < 3 * per:
                break
            if all(values[i] == values[i - per] for i in range(pre + per, N)):
                return EventualPeriod(tuple(values[:pre]), tuple(values[pre:pre + per]))
    return None
