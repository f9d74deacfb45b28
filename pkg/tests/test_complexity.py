import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from addcomp.catalog import word
from addcomp.complexity import (ComplexityProfile, WindowStats, abelian_complexity, additive_complexity,
                                complexity_profile, delta_set, detect_eventual_period, factor_complexity,
                                factor_set, weight_range, weighted_delta)
from addcomp.errors import CapExceeded, OutOfRange
from addcomp.words import Morphism, PrefixBuffer, Valuation, is_prolongable

from oracles import abelian_classes, additive_classes, factors, iterate_fixed_point

TM3 = word("ternary-tm")
VTM = word("vtm")
TRIB = word("tribonacci")
COLL = word("collinear-example")
CONST = PrefixBuffer.periodic([], [0])


class TestFactorSet:
    def test_letters(self):
        assert factor_set(TM3, 1).factors == {(0,), (1,), (2,)}

    def test_length_two(self):
        # "201120" occurs, so squares of letters are factors too
        fs = factor_set(TM3, 2)
        assert len(fs) == 9 and fs.stabilized
        assert fs.factors == {(a, b) for a in range(3) for b in range(3)}

    def test_empty_length(self):
        assert factor_set(VTM, 0).factors == {()}

    def test_cap_carries_partial(self):
        with pytest.raises(CapExceeded) as err:
            factor_set(PrefixBuffer.from_morphism(Morphism.parse("0->01 1->12 2->2"), 0), 30, cap=5000)
        assert err.value.partial.length == 30 and not err.value.partial.stabilized


class TestSingleValues:
    def test_abelian(self):
        assert abelian_complexity(TM3, 3) == 7
        assert abelian_complexity(TRIB, 1) == 3
        assert abelian_complexity(TRIB, 0) == 1

    def test_additive(self):
        assert additive_complexity(TM3, 2) == 5
        assert additive_complexity(VTM, 7) == 3
        assert additive_complexity(COLL, 2) == 4

    def test_factor(self):
        assert factor_complexity(word("fibonacci"), 10) == 11


class TestProfiles:
    def test_ternary_tm_additive(self):
        assert complexity_profile(TM3, 5, "additive").values == [1, 3, 5, 5, 5, 5]

    def test_collinear_abelian(self):
        assert complexity_profile(COLL, 5, "abelian").values == [1, 3, 5, 3, 7, 7]

    @pytest.mark.parametrize("kind", ["factor", "abelian", "additive"])
    def test_constant_word(self, kind):
        p = complexity_profile(CONST, 30, kind)
        assert p.values == [1] * 31 and p.stabilized_upto == 30

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            complexity_profile(TM3, 5, "lexical")

    def test_csv(self):
        p = complexity_profile(TM3, 3, "additive", prefix_len=4096)
        assert p.to_csv() == "# kind=additive prefix=4096\nn,value\n0,1\n1,3\n2,5\n3,5\n"

    def test_unstable_tail_is_flagged(self):
        # factor complexity of Thue-Morse keeps growing; a tiny pinned prefix cannot confirm n=200
        p = complexity_profile(word("thue-morse"), 200, "factor", prefix_len=1024)
        assert p.stabilized_upto < 200
        assert "# warning" in p.to_csv()

    def test_matches_brute_force(self):
        w = VTM.prefix(3000).tolist()
        for kind, oracle in (("factor", lambda n: len(factors(w, n))),
                             ("abelian", lambda n: len(abelian_classes(w, n))),
                             ("additive", lambda n: len(additive_classes(w, n)))):
            p = complexity_profile(PrefixBuffer.from_word(w, VTM.alphabet), 60, kind)
            assert p.values == [oracle(n) for n in range(61)], kind


class TestPeriod:
    def test_simple(self):
        ep = detect_eventual_period([1, 3] + [5] * 20)
        assert (ep.preperiod, ep.period) == ((1, 3), (5,))
        assert str(ep) == "1 3 (5)^ω"

    def test_three_periodic(self):
        ep = detect_eventual_period([1, 3, 4] + [3, 5, 5] * 10)
        assert (ep.preperiod, ep.period) == ((1, 3, 4), (3, 5, 5))
        assert ep.value(100) == ([1, 3, 4] + [3, 5, 5] * 40)[100]

    def test_increasing(self):
        assert detect_eventual_period(list(range(100))) is None

    def test_needs_three_repetitions(self):
        assert detect_eventual_period([1, 2, 3, 1, 2, 3]) is None

    def test_uses_only_stable_range(self):
        p = ComplexityProfile("additive", [1, 3] + [5] * 20 + [9, 9], 21)
        assert str(detect_eventual_period(p)) == "1 3 (5)^ω"


class TestWeights:
    def test_delta_at_zero(self):
        for n in range(20):
            assert weighted_delta(TRIB, 0, n) == 0

    def test_vtm_weights_near_n(self):
        # every length-n factor has weight n-1, n or n+1
        st_ = WindowStats(VTM.prefix(20000), VTM.alphabet)
        for n in range(1, 300):
            assert set((st_.window_sums(n) - n).tolist()) == {-1, 0, 1}

    def test_tribonacci_delta_count(self):
        for n in (1, 10, 50, 100):
            assert len(delta_set(TRIB, n)) <= 5

    def test_delta_set_counts_classes(self):
        for n in range(1, 40):
            assert len(delta_set(TRIB, n)) == additive_complexity(TRIB, n)

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            weighted_delta(PrefixBuffer.from_word([0, 1, 2]), 2, 5)

    def test_weight_range(self):
        assert weight_range(TM3, 0) == (0, 0, True)
        assert weight_range(TM3, 2) == (0, 4, True)
        assert weight_range(PrefixBuffer.from_word([0, 2, 0]), 1) == (0, 2, False)

    def test_valuation_scaling(self):
        v = Valuation({0: 0, 1: 1, 2: 3})
        for n in (1, 5, 17):
            assert additive_complexity(TRIB, n, v) == additive_complexity(TRIB, n, v.scaled(7))


# ---------------------------------------------------------------- properties


@st.composite
def morphic_words(draw):
    k = draw(st.integers(2, 4))
    rules = {a: tuple(draw(st.lists(st.integers(0, k - 1), max_size=4))) for a in range(k)}
    rules[0] = (0,) + tuple(draw(st.lists(st.integers(0, k - 1), min_size=1, max_size=3)))
    return rules


@settings(max_examples=40, deadline=None)
@given(morphic_words())
def test_inequality_chain(rules):
    m = Morphism(rules)
    if not is_prolongable(m, 0):
        return
    w = PrefixBuffer.from_word(iterate_fixed_point(rules, 0, 2000), m.alphabet)
    k = len(m.alphabet)
    prof = {kind: complexity_profile(w, 25, kind).values for kind in ("additive", "abelian", "factor")}
    for n in range(1, 26):
        a, b, f = prof["additive"][n], prof["abelian"][n], prof["factor"][n]
        assert 1 <= a <= b <= f <= k ** n
        assert a <= math.comb(n + k - 1, k - 1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 3), max_size=6), st.lists(st.integers(0, 3), min_size=1, max_size=6))
def test_ultimately_periodic_bound(pre, per):
    w = PrefixBuffer.periodic(pre, per)
    add = complexity_profile(w, 30, "additive").values
    assert max(add[1:]) <= len(pre) + len(per)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=300), st.integers(1, 40))
def test_window_counts_equal_recount(letters, n):
    w = PrefixBuffer.from_word(letters, (0, 1, 2, 3, 4))
    st_ = WindowStats(np.array(letters), w.alphabet, {0: 0, 1: 1, 2: 3, 3: 7, 4: 2})
    if n > len(letters):
        assert st_.additive(n) == 0
        return
    assert st_.factor(n) == len(factors(letters, n))
    assert st_.abelian(n) == len(abelian_classes(letters, n))
    assert st_.additive(n) == len(additive_classes(letters, n, {0: 0, 1: 1, 2: 3, 3: 7, 4: 2}))
    assert st_.factor_profile(n)[n] == st_.factor(n)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 200))
def test_additive_equals_delta_set(n):
    assert additive_complexity(VTM, n) == len(delta_set(VTM, n))
