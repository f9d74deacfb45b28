"""Morphisms over integer alphabets, fixed-point prefixes and letter statistics."""

from __future__ import annotations

import re
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from ._linalg import rational_rank
from .errors import NonExpanding, NotProlongable, OutOfRange, ParseError, UnknownLetter

Word = Sequence[int]

_RULE = re.compile(r"(\d+)\s*->(\[[^\]]*\]|\d*)")


def _parse_image(text: str) -> tuple[int, ...]:
    if text.startswith("["):
        body = text[1:-1].strip()
        if not body:
            return ()
        try:
            return tuple(int(t) for t in body.split(","))
        except ValueError as exc:
            raise ParseError(f"bad letter list {text!r}") from exc
    return tuple(int(c) for c in text)


class Morphism:
    """A morphism on a finite alphabet of nonnegative integers.

    ``rules`` maps each letter to its image. The alphabet is the set of
    letters having a rule, and every image letter must belong to it.
    """

    def __init__(self, rules: Mapping[int, Iterable[int]]):
        rules = {int(a): tuple(int(b) for b in img) for a, img in rules.items()}
        for a, img in rules.items():
            if a < 0:
                raise ValueError(f"letters must be nonnegative, got {a}")
            for b in img:
                if b not in rules:
                    raise UnknownLetter(b)
        self.rules: dict[int, tuple[int, ...]] = rules
        self.alphabet: tuple[int, ...] = tuple(sorted(rules))
        self._tab = None

    def __repr__(self):
        return f"Morphism({self.format()!r})"

    @classmethod
    def parse(cls, text: str) -> "Morphism":
        """Parse ``0->012 1->02 2->1`` or the bracketed ``10->[10,3] 3->[]`` form."""
        rules: dict[int, tuple[int, ...]] = {}
        pos = 0
        text = text.strip()
        for match in _RULE.finditer(text):
            gap = text[pos:match.start()]
            if gap.strip(" \t\n,;"):
                raise ParseError(f"unexpected text {gap.strip()!r} at column {pos}")
            letter = int(match.group(1))
            if letter in rules:
                raise ParseError(f"letter {letter} has two rules")
            rules[letter] = _parse_image(match.group(2))
            pos = match.end()
        if text[pos:].strip(" \t\n,;"):
            raise ParseError(f"unexpected text {text[pos:].strip()!r} at column {pos}")
        if not rules:
            raise ParseError("no rules found")
        try:
            return cls(rules)
        except UnknownLetter as exc:
            raise ParseError(f"image letter {exc.letter} has no rule") from exc

    def format(self) -> str:
        short = all(a < 10 for a in self.alphabet)
        parts = []
        for a in self.alphabet:
            img = self.rules[a]
            if short:
                parts.append(f"{a}->" + "".join(map(str, img)))
            else:
                parts.append(f"{a}->[" + ",".join(map(str, img)) + "]")
        return " ".join(parts)

    def __str__(self):
        return self.format()

    def __hash__(self):
        return hash(tuple((a, self.rules[a]) for a in self.alphabet))

    def __eq__(self, other):
        return isinstance(other, Morphism) and self.rules == other.rules

    def __call__(self, word: Word) -> tuple[int, ...]:
        return apply(self, word)

    def uniform_length(self) -> int | None:
        lengths = {len(img) for img in self.rules.values()}
        return lengths.pop() if len(lengths) == 1 else None

    # numpy machinery used by prefix generation

    def _tables(self):
        cached = self._tab
        if cached is None:
            alpha = np.array(self.alphabet, dtype=np.int64)
            lens = np.array([len(self.rules[a]) for a in self.alphabet], dtype=np.int64)
            width = max(1, int(lens.max()))
            pad = np.zeros((len(alpha), width), dtype=np.int64)
            for i, a in enumerate(self.alphabet):
                pad[i, : lens[i]] = self.rules[a]
            mask = np.arange(width)[None, :] < lens[:, None]
            cached = (alpha, lens, pad, mask)
            self._tab = cached
        return cached

    def apply_array(self, w: np.ndarray) -> np.ndarray:
        alpha, _, pad, mask = self._tables()
        idx = letter_indices(w, alpha)
        return pad[idx][mask[idx]]

    def image_lengths(self, w: np.ndarray) -> np.ndarray:
        alpha, lens, _, _ = self._tables()
        return lens[letter_indices(w, alpha)]


def letter_indices(w: np.ndarray, alphabet: np.ndarray) -> np.ndarray:
    """Positions of the letters of ``w`` in the sorted ``alphabet`` array."""
    w = np.asarray(w, dtype=np.int64)
    idx = np.searchsorted(alphabet, w)
    if len(w):
        bad = (idx >= len(alphabet)) | (alphabet[np.minimum(idx, len(alphabet) - 1)] != w)
        if bad.any():
            raise UnknownLetter(int(w[np.argmax(bad)]))
    return idx


def apply(m: Morphism, w: Word) -> tuple[int, ...]:
    out: list[int] = []
    for a in w:
        try:
            out.extend(m.rules[a])
        except KeyError:
            raise UnknownLetter(a) from None
    return tuple(out)


def mortal_letters(m: Morphism) -> frozenset[int]:
    """Letters ``b`` with ``m^j(b)`` empty for some ``j``."""
    mortal: set[int] = set()
    changed = True
    while changed:
        changed = False
        for a, img in m.rules.items():
            if a not in mortal and all(b in mortal for b in img):
                mortal.add(a)
                changed = True
    return frozenset(mortal)


def growing_letters(m: Morphism) -> frozenset[int]:
    """Letters ``b`` for which ``|m^n(b)|`` is unbounded.

    Mortal letters are erased from every image first; the reduced morphism is
    then non-erasing, and a letter grows iff it reaches a strongly connected
    component in which some letter has a reduced image of length at least 2.
    """
    mortal = mortal_letters(m)
    live = [a for a in m.alphabet if a not in mortal]
    reduced = {a: [b for b in m.rules[a] if b not in mortal] for a in live}

    reach: dict[int, set[int]] = {}
    for a in live:
        seen = set()
        stack = list(reduced[a])
        while stack:
            b = stack.pop()
            if b not in seen:
                seen.add(b)
                stack.extend(reduced[b])
        reach[a] = seen

    def in_cycle_with_branching(c: int) -> bool:
        # c lies in a nontrivial component; that component grows iff one of its
        # members has an image of length >= 2.
        if c not in reach[c]:
            return False
        component = [d for d in reach[c] if c in reach[d]]
        return any(len(reduced[d]) >= 2 for d in component)

    seeds = {c for c in live if in_cycle_with_branching(c)}
    return frozenset(a for a in live if a in seeds or reach[a] & seeds)


def is_prolongable(m: Morphism, a: int) -> bool:
    if a not in m.rules:
        raise UnknownLetter(a)
    img = m.rules[a]
    return bool(img) and img[0] == a and a in growing_letters(m)


def _grow_fixed_point(m: Morphism, current: np.ndarray, length: int) -> np.ndarray:
    # Any prefix of the fixed point maps to a (longer) prefix of it, so only the
    # part of ``current`` whose image is needed gets expanded.
    while len(current) < length:
        lens = m.image_lengths(current)
        ends = np.cumsum(lens)
        cut = int(np.searchsorted(ends, length)) + 1
        nxt = m.apply_array(current[:cut])[:length]
        if len(nxt) <= len(current):
            raise NonExpanding(
                f"fixed point stalls at length {len(current)} < {length}"
            )
        current = nxt
    return current


def fixed_point_prefix(m: Morphism, a: int, length: int) -> np.ndarray:
    """The length-``length`` prefix of ``m^ω(a)`` as an int64 array."""
    if not is_prolongable(m, a):
        raise NotProlongable(f"{m} is not prolongable on {a}")
    if length <= 0:
        return np.zeros(0, dtype=np.int64)
    return _grow_fixed_point(m, np.array([a], dtype=np.int64), length)


def coded_fixed_point_prefix(
    m: Morphism, code: Mapping[int, int], a: int, length: int
) -> np.ndarray:
    raw = fixed_point_prefix(m, a, length)
    return apply_coding(code, m.alphabet, raw)


def apply_coding(code: Mapping[int, int], alphabet: Sequence[int], w: np.ndarray) -> np.ndarray:
    alpha = np.array(alphabet, dtype=np.int64)
    try:
        table = np.array([int(code[b]) for b in alphabet], dtype=np.int64)
    except KeyError as exc:
        raise UnknownLetter(exc.args[0]) from None
    return table[letter_indices(w, alpha)]


def parse_coding(text: str) -> dict[int, int]:
    """Parse a coding written like a morphism with length-1 images."""
    m = _loose_rules(text)
    out = {}
    for a, img in m.items():
        if len(img) != 1:
            raise ParseError(f"coding image of {a} must have length 1")
        out[a] = img[0]
    return out


def _loose_rules(text: str) -> dict[int, tuple[int, ...]]:
    # like Morphism.parse but image letters need not have rules
    rules = {}
    for match in _RULE.finditer(text):
        rules[int(match.group(1))] = _parse_image(match.group(2))
    leftover = _RULE.sub("", text).strip(" \t\n,;")
    if leftover or not rules:
        raise ParseError(f"cannot parse {text!r}")
    return rules


# ---------------------------------------------------------------- statistics


class Valuation(dict):
    """Letter weights. Plain ``dict`` from letter to nonnegative integer."""

    @classmethod
    def identity(cls, alphabet: Iterable[int]) -> "Valuation":
        return cls({a: a for a in alphabet})

    @classmethod
    def parse(cls, text: str) -> "Valuation":
        """Parse ``0=0,1=1,2=3``."""
        out = cls()
        for item in re.split(r"[,\s]+", text.strip()):
            if not item:
                continue
            try:
                k, v = item.split("=")
                out[int(k)] = int(v)
            except ValueError as exc:
                raise ParseError(f"bad valuation entry {item!r}") from exc
        for v in out.values():
            if v < 0:
                raise ParseError("valuation weights must be nonnegative")
        return out

    def format(self) -> str:
        return ",".join(f"{a}={self[a]}" for a in sorted(self))

    def scaled(self, c: int) -> "Valuation":
        return Valuation({a: c * w for a, w in self.items()})


def parikh(w: Word, alphabet: Sequence) -> tuple[int, ...]:
    pos = {a: i for i, a in enumerate(alphabet)}
    counts = [0] * len(alphabet)
    for a in w:
        try:
            counts[pos[a]] += 1
        except KeyError:
            raise UnknownLetter(a) from None
    return tuple(counts)


def weighted_parikh(w: Word, alphabet: Sequence[int], v: Mapping[int, int] | None = None):
    """Per-letter ``weight * count`` entries and their total."""
    counts = parikh(w, alphabet)
    weights = [a if v is None else v[a] for a in alphabet]
    entries = tuple(c * x for c, x in zip(counts, weights))
    return entries, sum(entries)


def weighted_sum(w: Word, v: Mapping[int, int] | None = None) -> int:
    """Sum of letter weights; identity weights when ``v`` is None."""
    if v is None:
        return sum(int(a) for a in w)
    total = 0
    for a in w:
        try:
            total += v[a]
        except KeyError:
            raise UnknownLetter(a) from None
    return total


def adjacency_matrix(m: Morphism) -> list[list[int]]:
    """Matrix whose column for letter ``a`` is the Parikh vector of ``m(a)``."""
    cols = [parikh(m.rules[a], m.alphabet) for a in m.alphabet]
    k = len(m.alphabet)
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def is_parikh_collinear(m: Morphism) -> bool:
    return rational_rank(adjacency_matrix(m)) <= 1


# ---------------------------------------------------------------- prefixes


class PrefixBuffer:
    """Lazily materialized prefix of an infinite (or finite literal) word.

    Materialized letters are never rewritten; ``prefix(n)`` returns a read-only
    view. Extension at least doubles the buffer.
    """

    def __init__(
        self,
        extend: Callable[[np.ndarray, int], np.ndarray] | None,
        alphabet: Sequence[int],
        initial: np.ndarray | None = None,
        name: str = "",
        code: Mapping[int, int] | None = None,
        code_alphabet: Sequence[int] | None = None,
    ):
        self._extend = extend
        self._raw = np.zeros(0, dtype=np.int64) if initial is None else np.asarray(initial, dtype=np.int64)
        self._code = code
        self._code_alphabet = code_alphabet
        self._letters = self._coded(self._raw)
        self._letters.setflags(write=False)
        self.alphabet = tuple(sorted(alphabet))
        self.name = name

    def _coded(self, raw):
        if self._code is None:
            return raw.copy()
        return apply_coding(self._code, self._code_alphabet, raw)

    @classmethod
    def from_morphism(cls, m: Morphism, seed: int, code: Mapping[int, int] | None = None,
                      name: str = "") -> "PrefixBuffer":
        if not is_prolongable(m, seed):
            raise NotProlongable(f"{m} is not prolongable on {seed}")
        alphabet = m.alphabet if code is None else sorted({code[a] for a in m.alphabet})

        def extend(current, n):
            if len(current) == 0:
                current = np.array([seed], dtype=np.int64)
            return _grow_fixed_point(m, current, n)

        return cls(extend, alphabet, name=name or str(m), code=code, code_alphabet=m.alphabet)

    @classmethod
    def from_word(cls, letters: Iterable[int], alphabet: Sequence[int] | None = None,
                  name: str = "") -> "PrefixBuffer":
        arr = np.asarray(list(letters), dtype=np.int64)
        alpha = sorted(set(arr.tolist())) if alphabet is None else alphabet
        return cls(None, alpha, initial=arr, name=name)

    @classmethod
    def periodic(cls, preperiod: Word, period: Word, name: str = "") -> "PrefixBuffer":
        """The ultimately periodic word ``preperiod · period^ω``."""
        if not period:
            raise ValueError("period must be nonempty")
        pre = np.asarray(preperiod, dtype=np.int64)
        per = np.asarray(period, dtype=np.int64)

        def extend(current, n):
            reps = max(0, -(-(n - len(pre)) // len(per)))
            return np.concatenate([pre, np.tile(per, reps)])[:n]

        alpha = sorted(set(pre.tolist()) | set(per.tolist()))
        return cls(extend, alpha, name=name)

    @property
    def is_finite(self) -> bool:
        return self._extend is None

    @property
    def materialized(self) -> int:
        return len(self._letters)

    def prefix(self, n: int) -> np.ndarray:
        if n > len(self._letters):
            if self._extend is None:
                raise OutOfRange(f"literal word has length {len(self._letters)} < {n}")
            target = max(n, 2 * len(self._raw))
            self._raw = self._extend(self._raw, target)
            self._letters = self._coded(self._raw)
            self._letters.setflags(write=False)
        return self._letters[:n]

    def full(self) -> np.ndarray:
        if self._extend is not None:
            raise OutOfRange("infinite word has no full materialization")
        return self._letters

    def __len__(self):
        if self._extend is not None:
            raise TypeError("infinite word has no length")
        return len(self._letters)

    def __repr__(self):
        return f"PrefixBuffer({self.name or 'word'}, materialized={self.materialized})"


def word_str(w: Iterable[int]) -> str:
    w = [int(a) for a in w]
    if all(0 <= a < 10 for a in w):
        return "".join(map(str, w))
    return " ".join(map(str, w))
