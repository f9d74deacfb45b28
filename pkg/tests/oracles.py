"""Slow, obviously-correct reference implementations used to cross-check the package."""

from __future__ import annotations

from collections import Counter


def iterate_fixed_point(rules: dict[int, tuple[int, ...]], seed: int, length: int) -> list[int]:
    w = [seed]
    for _ in range(200):
        if len(w) >= length:
            break
        nxt = [b for a in w for b in rules[a]]
        if len(nxt) <= len(w):
            break
        w = nxt
    return w[:length]


def factors(w, n: int) -> set[tuple[int, ...]]:
    return {tuple(w[i:i + n]) for i in range(len(w) - n + 1)}


def abelian_classes(w, n: int) -> set[tuple[tuple[int, int], ...]]:
    return {tuple(sorted(Counter(f).items())) for f in factors(w, n)}


def additive_classes(w, n: int, v=None) -> set[int]:
    return {sum(f) if v is None else sum(v[a] for a in f) for f in factors(w, n)}


def greedy_rep(terms: list[int], n: int) -> str:
    if n == 0:
        return ""
    top = max(i for i, t in enumerate(terms) if t <= n)
    out = []
    for i in range(top, -1, -1):
        out.append(n // terms[i])
        n %= terms[i]
    return "".join(map(str, out))


def has_power(w, k: int, order: int, key) -> int | None:
    for p in range(len(w) - k * order + 1):
        blocks = [key(w[p + j * order:p + (j + 1) * order]) for j in range(k)]
        if all(b == blocks[0] for b in blocks):
            return p
    return None
