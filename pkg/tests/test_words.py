import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from addcomp.catalog import morphism
from addcomp.errors import NonExpanding, NotProlongable, ParseError, UnknownLetter
from addcomp.words import (Morphism, PrefixBuffer, Valuation, adjacency_matrix, apply,
                           coded_fixed_point_prefix, fixed_point_prefix, is_parikh_collinear,
                           is_prolongable, parikh, weighted_sum, word_str)

from oracles import iterate_fixed_point

TM3 = Morphism.parse("0->012 1->120 2->201")
VTM = Morphism.parse("0->012 1->02 2->1")
COLLINEAR = Morphism.parse("0->012 1->112002 2->")
TRIB = Morphism.parse("0->01 1->02 2->0")


class TestParse:
    def test_short_and_bracketed_forms_agree(self):
        assert Morphism.parse("0->[0,1,2] 1->[1,2,0] 2->[2,0,1]") == TM3

    def test_empty_images(self):
        m = Morphism.parse("0->01 1->[] 2->")
        assert m.rules[1] == () and m.rules[2] == ()

    def test_multidigit_letters_roundtrip(self):
        m = Morphism.parse("0->[0,10] 10->[10,0,0]")
        assert m.alphabet == (0, 10)
        assert Morphism.parse(m.format()) == m
        assert m.format() == "0->[0,10] 10->[10,0,0]"

    @pytest.mark.parametrize("bad", ["", "0->01 x", "0->0 0->1", "0->012", "junk 0->0"])
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            Morphism.parse(bad)


class TestApply:
    def test_ternary_tm_on_letter(self):
        assert apply(TM3, [0]) == (0, 1, 2)

    def test_empty_word(self):
        assert apply(TM3, []) == ()

    def test_vtm_image(self):
        assert word_str(VTM((0, 1, 2))) == "012021"

    def test_unknown_letter(self):
        with pytest.raises(UnknownLetter):
            apply(TM3, [7])

    @given(st.lists(st.integers(0, 2), max_size=30), st.lists(st.integers(0, 2), max_size=30))
    def test_morphism_law(self, u, v):
        assert apply(VTM, u + v) == apply(VTM, u) + apply(VTM, v)


class TestProlongable:
    def test_erasing_example(self):
        assert is_prolongable(COLLINEAR, 0)

    def test_not_starting_with_letter(self):
        assert not is_prolongable(Morphism.parse("0->1 1->0"), 0)

    def test_fibonacci(self):
        assert is_prolongable(Morphism.parse("0->01 1->0"), 0)

    def test_bounded_image(self):
        # 0 -> 01, 1 -> empty: every iterate is "01"
        assert not is_prolongable(Morphism.parse("0->01 1->"), 0)

    def test_identity_on_seed(self):
        assert not is_prolongable(Morphism.parse("0->0 1->11"), 0)

    def test_linear_growth_counts(self):
        # 0, 01, 011, 0111, ...
        assert is_prolongable(Morphism.parse("0->01 1->1"), 0)

    def test_tail_of_mortal_letters(self):
        assert not is_prolongable(Morphism.parse("0->034 3->4 4->"), 0)


class TestFixedPoint:
    def test_ternary_tm(self):
        assert word_str(fixed_point_prefix(TM3, 0, 9)) == "012120201"

    def test_vtm(self):
        assert word_str(fixed_point_prefix(VTM, 0, 6)) == "012021"

    def test_zero_length(self):
        assert len(fixed_point_prefix(TM3, 0, 0)) == 0

    def test_not_prolongable(self):
        with pytest.raises(NotProlongable):
            fixed_point_prefix(Morphism.parse("0->1 1->0"), 0, 5)

    def test_nonexpanding_internal_guard(self):
        from addcomp.words import _grow_fixed_point
        with pytest.raises(NonExpanding):
            _grow_fixed_point(Morphism.parse("0->01 1->"), np.array([0]), 10)

    def test_tribonacci_against_iteration(self):
        assert fixed_point_prefix(TRIB, 0, 5000).tolist() == iterate_fixed_point(TRIB.rules, 0, 5000)

    def test_erasing_against_iteration(self):
        got = fixed_point_prefix(COLLINEAR, 0, 3000).tolist()
        assert got == iterate_fixed_point(COLLINEAR.rules, 0, 3000)

    def test_uniform_morphism_materializes_iterates(self):
        for j in range(7):
            w = fixed_point_prefix(TM3, 0, 3 ** j).tolist()
            it = [0]
            for _ in range(j):
                it = list(TM3(it))
            assert w == it

    @settings(max_examples=30)
    @given(st.integers(0, 3000), st.integers(0, 3000))
    def test_prefix_consistency(self, a, b):
        lo, hi = sorted((a, b))
        assert fixed_point_prefix(VTM, 0, hi)[:lo].tolist() == fixed_point_prefix(VTM, 0, lo).tolist()


class TestCoding:
    # the same word as COLLINEAR, presented as a coded fixed point of a 7-letter morphism
    H = Morphism.parse("0->012 1->134 2->506 3->506 4->134 5->506 6->012")
    TAU = {0: 0, 1: 1, 2: 2, 3: 1, 4: 2, 5: 0, 6: 2}

    def test_short_prefix(self):
        assert word_str(coded_fixed_point_prefix(self.H, self.TAU, 0, 4)) == "0121"

    def test_identity_coding(self):
        ident = {a: a for a in TM3.alphabet}
        assert coded_fixed_point_prefix(TM3, ident, 0, 50).tolist() == fixed_point_prefix(TM3, 0, 50).tolist()

    def test_coded_word_equals_collinear_fixed_point(self):
        coded = coded_fixed_point_prefix(self.H, self.TAU, 0, 5000).tolist()
        assert coded == fixed_point_prefix(COLLINEAR, 0, 5000).tolist()
        assert word_str(coded[:16]) == "0121120021120021"


class TestStatistics:
    def test_parikh_letters(self):
        assert parikh("sleeveless", "elsv") == (4, 2, 3, 1)

    def test_parikh_empty(self):
        assert parikh([], (0, 1, 2)) == (0, 0, 0)

    def test_parikh_word(self):
        assert parikh([0, 1, 2, 0, 2, 1], (0, 1, 2)) == (2, 2, 2)

    def test_parikh_unknown(self):
        with pytest.raises(UnknownLetter):
            parikh([3], (0, 1))

    def test_weighted_sums(self):
        assert weighted_sum([0, 2, 0]) == weighted_sum([1, 0, 1]) == 2
        assert weighted_sum([]) == 0
        assert weighted_sum([0, 1, 2]) == 3
        assert weighted_sum([0, 1, 2], Valuation({0: 0, 1: 1, 2: 3})) == 4

    def test_weighted_sum_unknown(self):
        with pytest.raises(UnknownLetter):
            weighted_sum([5], {0: 0})

    @given(st.lists(st.integers(0, 3)), st.lists(st.integers(0, 3)))
    def test_additivity(self, u, v):
        alpha = (0, 1, 2, 3)
        assert parikh(u + v, alpha) == tuple(a + b for a, b in zip(parikh(u, alpha), parikh(v, alpha)))
        val = {0: 0, 1: 1, 2: 5, 3: 7}
        assert weighted_sum(u + v, val) == weighted_sum(u, val) + weighted_sum(v, val)

    @given(st.lists(st.integers(0, 4)))
    def test_identity_weights_dot_parikh(self, w):
        alpha = range(5)
        assert weighted_sum(w, Valuation.identity(alpha)) == sum(a * c for a, c in zip(alpha, parikh(w, alpha)))


class TestAdjacency:
    def test_collinear_columns(self):
        assert adjacency_matrix(COLLINEAR) == [[1, 2, 0], [1, 2, 0], [1, 2, 0]]

    def test_identity(self):
        assert adjacency_matrix(Morphism.parse("0->0 1->1 2->2")) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

    def test_tribonacci_columns(self):
        assert adjacency_matrix(TRIB) == [[1, 1, 1], [1, 0, 0], [0, 1, 0]]

    def test_collinearity(self):
        assert is_parikh_collinear(COLLINEAR)
        assert not is_parikh_collinear(TRIB)
        assert is_parikh_collinear(Morphism.parse("0-> 1->"))


class TestValuation:
    def test_parse_format(self):
        v = Valuation.parse("0=0, 1=1,2=3")
        assert v == {0: 0, 1: 1, 2: 3}
        assert v.format() == "0=0,1=1,2=3"

    @pytest.mark.parametrize("bad", ["0=1=2", "a=1", "0=-1"])
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            Valuation.parse(bad)


class TestPrefixBuffer:
    def test_views_are_read_only_and_stable(self):
        buf = PrefixBuffer.from_morphism(TRIB, 0)
        small = buf.prefix(10).copy()
        view = buf.prefix(10)
        with pytest.raises(ValueError):
            view[0] = 5
        buf.prefix(100_000)
        assert buf.prefix(10).tolist() == small.tolist()
        assert buf.materialized >= 100_000

    def test_periodic(self):
        buf = PrefixBuffer.periodic([2], [0, 1])
        assert buf.prefix(7).tolist() == [2, 0, 1, 0, 1, 0, 1]
        assert buf.alphabet == (0, 1, 2)

    def test_finite_literal(self):
        buf = PrefixBuffer.from_word([1, 0, 1])
        assert buf.is_finite and len(buf) == 3
        with pytest.raises(IndexError):
            buf.prefix(4)

    def test_catalog(self):
        assert morphism("tm:1,3") == Morphism.parse("0->013 1->130 3->301")
        assert morphism("vtm:3") == Morphism.parse("0->013 1->03 3->1")
        with pytest.raises(KeyError):
            morphism("nope")
