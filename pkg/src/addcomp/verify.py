"""Reproduction checks for the published results, runnable from the CLI and from pytest.

Each check returns a list of ``Item`` (label, expected, actual); a check passes
when every item matches and it finished inside its time budget.
"""

from __future__ import annotations

import difflib
import json
import math
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import catalog
from .automata import Dfao, compare_with_oracle, fixture_text
from .complexity import WindowStats, complexity_profile, detect_eventual_period, weight_range_profile
from .linrep import LinearRep, minimize, semigroup_trick
from .numeration import PositionalSystem
from .powers import (abelian_square_class_count, equalizing_valuation, fibonacci_abelian_criterion,
                     first_add_ab_mismatch, power_orders)
from .words import Morphism, PrefixBuffer, is_parikh_collinear, is_prolongable, parikh, weighted_sum


@dataclass
class Item:
    label: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class CheckResult:
    name: str
    items: list[Item]
    seconds: float
    budget: float
    error: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.error is None and self.seconds <= self.budget and all(i.ok for i in self.items)

    def to_json(self) -> str:
        failures = [{"label": i.label, "expected": _jsonable(i.expected), "actual": _jsonable(i.actual)}
                    for i in self.items if not i.ok]
        rec = {"check": self.name, "passed": self.passed, "seconds": round(self.seconds, 3),
               "budget": self.budget, "items": len(self.items), "failures": failures}
        if self.error:
            rec["error"] = self.error
        rec.update(self.extra)
        return json.dumps(rec)


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if isinstance(x, tuple):
        return list(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def _read_fixture(fixtures: Path | None, filename: str) -> str:
    if fixtures is not None:
        return (Path(fixtures) / filename).read_text()
    return fixture_text(filename)


def _expected(head: list[int], period: list[int], n_max: int) -> list[int]:
    out = list(head)
    while len(out) <= n_max:
        out.extend(period)
    return out[: n_max + 1]


# ---------------------------------------------------------------- checks


def check_ternary_tm(fixtures=None) -> list[Item]:
    w = catalog.word("ternary-tm")
    add = complexity_profile(w, 200, "additive", prefix_len=1 << 14)
    ab = complexity_profile(w, 200, "abelian", prefix_len=1 << 14)
    dfao = Dfao.parse(_read_fixture(fixtures, "ternary_tm_additive.dfao"))
    return [
        Item("additive n<=200", _expected([1, 3], [5], 200), add.values),
        Item("abelian n<=200", _expected([1, 3], [6, 7, 6], 200), ab.values),
        Item("additive period", "1 3 (5)^ω", str(detect_eventual_period(add))),
        Item("abelian period", "1 3 (6 7 6)^ω", str(detect_eventual_period(ab))),
        Item("stable upto", (200, 200), (add.stabilized_upto, ab.stabilized_upto)),
        Item("dfao matches additive", None,
             compare_with_oracle(dfao, PositionalSystem.base_k(3), add.values, 200)),
    ]


def check_lm_tm(fixtures=None) -> list[Item]:
    items = []
    for l, m in ((1, 3), (2, 3), (1, 4), (1, 2), (2, 4)):
        w = PrefixBuffer.from_morphism(catalog.lm_thue_morse(l, m), 0, name=f"tm:{l},{m}")
        add = complexity_profile(w, 100, "additive", prefix_len=1 << 13)
        if m == 2 * l:
            items.append(Item(f"({l},{m}) additive", _expected([1, 3], [5], 100), add.values))
        else:
            ab = complexity_profile(w, 100, "abelian", prefix_len=1 << 13)
            items.append(Item(f"({l},{m}) additive", _expected([1, 3, 6], [7, 6, 6], 100), add.values))
            items.append(Item(f"({l},{m}) additive=abelian", add.values, ab.values))
        items.append(Item(f"({l},{m}) stable", 100, add.stabilized_upto))
    return items


def check_vtm(fixtures=None) -> list[Item]:
    w = catalog.word("vtm")
    add = complexity_profile(w, 500, "additive", prefix_len=1 << 14)
    ab = complexity_profile(w, 2000, "abelian", prefix_len=1 << 15)
    blocks = [max(ab.values[2 ** (j - 1):min(2 ** j, 2001)]) for j in range(1, 12)]
    return [
        Item("additive = 3 for 1<=n<=500", {3}, set(add.values[1:])),
        Item("abelian max >= 5", True, max(ab.values) >= 5),
        Item("dyadic block maxima nondecreasing", True, all(a <= b for a, b in zip(blocks, blocks[1:]))),
        Item("stable upto", (500, 2000), (add.stabilized_upto, ab.stabilized_upto)),
    ]


def check_collinear(fixtures=None) -> list[Item]:
    m = catalog.morphism("collinear-example")
    w = catalog.word("collinear-example")
    add = complexity_profile(w, 243, "additive", prefix_len=1 << 14)
    ab = complexity_profile(w, 243, "abelian", prefix_len=1 << 14)
    dfao = Dfao.parse(_read_fixture(fixtures, "collinear_example.dfao"))
    return [
        Item("parikh-collinear", True, is_parikh_collinear(m)),
        Item("additive n<=243", _expected([1, 3, 4], [3, 5, 5], 243), add.values),
        Item("dfao matches additive", None,
             compare_with_oracle(dfao, PositionalSystem.base_k(3), add.values, 243)),
        Item("abelian n<=243", _expected([1, 3, 5], [3, 7, 7], 243), ab.values),
        Item("stable upto", (243, 243), (add.stabilized_upto, ab.stabilized_upto)),
    ]


def check_tribonacci(fixtures=None) -> list[Item]:
    w = catalog.word("tribonacci")
    trib = PositionalSystem.tribonacci()
    add = complexity_profile(w, 478, "additive", prefix_len=10 ** 6)
    ranges = weight_range_profile(w, 300, prefix_len=10 ** 6)
    n4, n12, n478 = (trib.val(r) for r in ("100", "1101", "1101001100"))
    return [
        Item("values for 1<=n<=300 within {3,4,5}", True, set(add.values[1:301]) <= {3, 4, 5}),
        Item("representation values", (4, 12, 478), (n4, n12, n478)),
        Item("additive at 4, 12, 478", (3, 4, 5), (add[n4], add[n12], add[n478])),
        Item("weight range contiguous n<=300", True, all(r[2] for r in ranges[1:])),
        Item("stable upto", 478, add.stabilized_upto),
    ]


def check_cww(fixtures=None) -> list[Item]:
    add = complexity_profile(catalog.word("cww"), 256, "additive", prefix_len=1 << 14)
    return [
        Item("2*floor(log2 n)+3 for 1<=n<=256", [2 * (n.bit_length() - 1) + 3 for n in range(1, 257)],
             add.values[1:]),
        Item("stable upto", 256, add.stabilized_upto),
    ]


CCSS_PAIR = ("11011031430110343430314", "30310110110314303434303")


def check_ccss(fixtures=None) -> list[Item]:
    w = catalog.word("ccss")
    cubes = power_orders(w, "additive", 3, 30, 10 ** 4)
    u, v = ([int(c) for c in s] for s in CCSS_PAIR)
    text = "".join(map(str, w.prefix(1 << 14).tolist()))
    return [
        Item("additive cubes of order <=30 in 10^4 prefix", [], [o for o, hit in cubes.items() if hit]),
        Item("first additive != abelian", 23, first_add_ab_mismatch(w, None, 60)),
        Item("pair occurs as factors", (True, True), (CCSS_PAIR[0] in text, CCSS_PAIR[1] in text)),
        Item("pair additively equivalent", True, weighted_sum(u) == weighted_sum(v)),
        Item("pair not abelian equivalent", True, parikh(u, w.alphabet) != parikh(v, w.alphabet)),
    ]


def check_semigroup(fixtures=None) -> list[Item]:
    rep = LinearRep.parse(_read_fixture(fixtures, "rudin_shapiro.linrep"))
    expected_text = _read_fixture(fixtures, "rudin_shapiro.dfao")
    small = minimize(rep)
    dfao = semigroup_trick(small)
    emitted = dfao.serialize()
    base2 = PositionalSystem.base_k(2)
    diff = "".join(difflib.unified_diff(expected_text.splitlines(True), emitted.splitlines(True),
                                        "fixture", "emitted"))
    return [
        Item("dfao byte-identical to fixture", "", diff),
        Item("state count", 4, len(dfao)),
        Item("first 16 terms", [0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 1, 1, 0, 1],
             [dfao.sequence_term(base2, n) for n in range(16)]),
        Item("minimized agrees on digit strings of length <=12", None, first_disagreement(rep, small, 12)),
    ]


def first_disagreement(r1: LinearRep, r2: LinearRep, max_len: int) -> str | None:
    """Depth-first walk over all digit strings, sharing prefixes; returns a witness or None."""
    from ._linalg import vecmat

    def value(row, gamma):
        return sum(a * b for a, b in zip(row, gamma))

    stack = [((), r1.lam, r2.lam)]
    while stack:
        word, a, b = stack.pop()
        if value(a, r1.gamma) != value(b, r2.gamma):
            return "".join(map(str, word))
        if len(word) < max_len:
            for d in range(r1.max_digit + 1):
                stack.append((word + (d,), vecmat(a, r1.mu[d]), vecmat(b, r2.mu[d]) if r2.dim else []))
    return None


def check_fib_criterion(fixtures=None) -> list[Item]:
    w = catalog.word("fibonacci")
    items = []
    for k in (2, 3):
        found = power_orders(w, "abelian", k, 40, 30000)
        items.append(Item(f"k={k} criterion vs search, n<=40",
                          [fibonacci_abelian_criterion(k, n) for n in range(1, 41)],
                          [found[n] is not None for n in range(1, 41)]))
    return items


def check_trib_squares(fixtures=None) -> list[Item]:
    w = catalog.word("tribonacci")
    st = WindowStats(w.prefix(50000), w.alphabet)
    counts = [abelian_square_class_count(w, n, 50000, stats=st) for n in range(1, 201)]
    return [
        Item("square of every order <=200 found", True, min(counts) >= 1),
        Item("class counts", {1, 2}, set(counts)),
    ]


def check_valuations(fixtures=None) -> list[Item]:
    got = {}
    for lam, n_max in ((3, 100), (4, 100), (5, 2000)):
        w = PrefixBuffer.from_morphism(catalog.vtm_variant(lam), 0, name=f"vtm:{lam}")
        got[lam] = first_add_ab_mismatch(w, None, n_max, prefix_len=1 << 18 if lam == 5 else 1 << 14)
    v = equalizing_valuation(3, 2)
    return [
        Item("vtm-variant first mismatch", {3: 11, 4: 43, 5: None}, got),
        Item("equalizing_valuation(3,2)", {0: 0, 1: 1, 2: 3}, dict(v)),
        Item("tribonacci under it: first mismatch n<=300", None,
             first_add_ab_mismatch(catalog.word("tribonacci"), v, 300, prefix_len=1 << 17)),
    ]


def random_prolongable(rng: random.Random, max_letters: int = 4, max_len: int = 4) -> Morphism:
    """Random morphism on ``0..k-1`` with ``0 -> 0...`` prolongable (rejection sampling)."""
    while True:
        k = rng.randint(2, max_letters)
        rules = {a: tuple(rng.randrange(k) for _ in range(rng.randint(0, max_len))) for a in range(k)}
        rules[0] = (0,) + tuple(rng.randrange(k) for _ in range(rng.randint(1, max_len - 1)))
        m = Morphism(rules)
        if is_prolongable(m, 0):
            return m


def check_properties(fixtures=None, seed: int = 20240601, count: int = 20, n_max: int = 40) -> list[Item]:
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        m = random_prolongable(rng)
        w = PrefixBuffer.from_morphism(m, 0)
        k = len(w.alphabet)
        prof = {kind: complexity_profile(w, n_max, kind, prefix_len=1 << 12).values
                for kind in ("additive", "abelian", "factor")}
        for n in range(1, n_max + 1):
            a, b, f = prof["additive"][n], prof["abelian"][n], prof["factor"][n]
            if not (1 <= a <= b <= f <= k ** n and a <= math.comb(n + k - 1, k - 1)):
                bad.append((m.format(), n, a, b, f))
    periodic_bad = []
    for _ in range(count):
        pre = [rng.randrange(4) for _ in range(rng.randint(0, 5))]
        per = [rng.randrange(4) for _ in range(rng.randint(1, 6))]
        w = PrefixBuffer.periodic(pre, per)
        add = complexity_profile(w, n_max, "additive", prefix_len=1 << 10).values
        if max(add[1:]) > len(pre) + len(per):
            periodic_bad.append((pre, per))
    return [
        Item("chain 1<=add<=ab<=factor<=|A|^n, add<=binom", [], bad),
        Item("periodic: add <= preperiod+period", [], periodic_bad),
    ]


@dataclass(frozen=True)
class Check:
    name: str
    description: str
    run: Callable[..., list[Item]]
    budget: float


CHECKS = {c.name: c for c in [
    Check("ternary-tm", "ternary Thue-Morse additive and abelian profiles", check_ternary_tm, 5),
    Check("lm-tm", "(l,m)-Thue-Morse additive profiles", check_lm_tm, 10),
    Check("thm-vtm", "vtm additive constant 3, abelian growth", check_vtm, 5),
    Check("collinear-example", "Parikh-collinear example word and its DFAO", check_collinear, 5),
    Check("tribonacci", "Tribonacci additive complexity values", check_tribonacci, 30),
    Check("cww", "CWW closed form 2 floor(log2 n) + 3", check_cww, 10),
    Check("ccss", "CCSS cube-freeness and first divergence", check_ccss, 20),
    Check("appendix-semigroup", "Rudin-Shapiro linear representation to DFAO", check_semigroup, 2),
    Check("fib-criterion", "Fibonacci abelian power criterion", check_fib_criterion, 20),
    Check("trib-squares", "Tribonacci abelian squares", check_trib_squares, 30),
    Check("valuations", "valuations separating additive from abelian", check_valuations, 30),
    Check("properties", "randomized inequality chain", check_properties, 30),
]}


def run_check(name: str, fixtures: Path | None = None) -> CheckResult:
    check = CHECKS[name]
    t = time.perf_counter()
    try:
        items = check.run(fixtures)
        error = None
    except Exception as exc:  # reported, not raised: one broken check must not hide the others
        items, error = [], f"{type(exc).__name__}: {exc}"
    return CheckResult(name, items, time.perf_counter() - t, check.budget, error)


def run_checks(names=None, fixtures: Path | None = None) -> list[CheckResult]:
    names = list(CHECKS) if not names or names == ["all"] else names
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {', '.join(unknown)}")
    return [run_check(n, fixtures) for n in names]
