import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from addcomp._linalg import Lattice, rational_rank
from addcomp.automata import fixture_text
from addcomp.errors import DidNotHalt, DigitOutOfRange, ParseError
from addcomp.linrep import LinearRep, evaluate, minimize, rank, semigroup_trick
from addcomp.numeration import PositionalSystem
from addcomp.verify import first_disagreement

RS = LinearRep.parse(fixture_text("rudin_shapiro.linrep"))
BASE2 = PositionalSystem.base_k(2)
COUNTING = LinearRep([0, 1], {0: [[2, 0], [0, 1]], 1: [[2, 0], [1, 1]]}, [1, 0])
ZERO = LinearRep([1], {0: [[1]], 1: [[1]]}, [0])


def test_evaluate_examples():
    assert evaluate(RS, "11") == 1
    assert evaluate(RS, "") == 0
    assert evaluate(RS, "110") == 1
    assert [RS.term(BASE2, n) for n in range(16)] == [0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 1, 1, 0, 1]


def test_counting_rep_computes_n():
    assert [COUNTING.term(BASE2, n) for n in range(40)] == list(range(40))


def test_digit_out_of_range():
    with pytest.raises(DigitOutOfRange):
        RS.evaluate("012")


def test_minimize_rudin_shapiro():
    m = minimize(RS)
    assert m.dim <= 4
    assert first_disagreement(RS, m, 12) is None
    assert rank(RS) == m.dim
    assert minimize(m).dim == m.dim


def test_minimize_zero():
    assert minimize(ZERO).dim == 0
    assert rank(ZERO) == 0
    assert minimize(ZERO).evaluate("0101") == 0


def test_minimize_agrees_on_random_long_strings():
    m = minimize(RS)
    rng = random.Random(7)
    for _ in range(10_000):
        w = [rng.randrange(2) for _ in range(rng.randint(13, 40))]
        assert m.evaluate(w) == RS.evaluate(w)


def test_semigroup_trick_rudin_shapiro():
    d = semigroup_trick(minimize(RS))
    assert d.serialize() == fixture_text("rudin_shapiro.dfao")
    assert d.outputs == [0, 0, 1, 1]
    raw = semigroup_trick(RS)
    assert len(raw) == 4
    bad = next((n for n in range(10_001) if d.sequence_term(BASE2, n) != RS.term(BASE2, n)), None)
    assert bad is None


def test_semigroup_trick_constant():
    d = semigroup_trick(ZERO)
    assert len(d) == 1 and d.outputs == [0]


def test_semigroup_trick_unbounded():
    with pytest.raises(DidNotHalt):
        semigroup_trick(COUNTING, max_states=100)
    with pytest.raises(DidNotHalt):
        semigroup_trick(minimize(COUNTING), max_states=1000)


def test_semigroup_state_count_is_number_of_reachable_rows():
    d = semigroup_trick(RS)
    rows = {tuple(RS.lam)}
    frontier = [tuple(RS.lam)]
    while frontier:
        v = frontier.pop()
        for digit in (0, 1):
            w = tuple(_step(v, RS.mu[digit]))
            if w not in rows:
                rows.add(w)
                frontier.append(w)
    assert len(d) == len(rows)


def _step(v, m):
    return [sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m))]


def test_text_roundtrip():
    assert LinearRep.parse(RS.serialize()) == RS
    assert RS.serialize() == fixture_text("rudin_shapiro.linrep")


@pytest.mark.parametrize("text", [
    "lambda: 1\n",
    "dim: 2\nlambda: 1 0\nmu 0:\n1 0\n0 1\ngamma: 1\n",
    "dim: 1\nlambda: 1\ngamma: 1\n",
    "dim: 1\nlambda: x\nmu 0:\n1\ngamma: 1\n",
    "dim: 1\nlambda: 1\nmu 1:\n1\ngamma: 1\n",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        LinearRep.parse(text)


# ---------------------------------------------------------------- randomized


def small_reps():
    dim = st.integers(1, 4)

    def build(d):
        vec = st.lists(st.integers(-2, 2), min_size=d, max_size=d)
        mat = st.lists(vec, min_size=d, max_size=d)
        return st.tuples(vec, mat, mat, vec).map(lambda t: LinearRep(t[0], {0: t[1], 1: t[2]}, t[3]))

    return dim.flatmap(build)


@settings(max_examples=60, deadline=None)
@given(small_reps())
def test_minimize_preserves_function(r):
    m = minimize(r)
    assert m.dim <= r.dim
    assert first_disagreement(r, m, 7) is None


@settings(max_examples=60, deadline=None)
@given(small_reps())
def test_minimal_dimension_equals_hankel_rank(r):
    # rank of the Hankel block indexed by words of length <= dim
    words = [w for k in range(r.dim + 1) for w in product((0, 1), repeat=k)]
    hankel = [[r.evaluate(list(u) + list(v)) for v in words] for u in words]
    assert minimize(r).dim == rational_rank(hankel)


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), max_size=6))
def test_lattice_membership(vectors):
    lat = Lattice(3)
    for v in vectors:
        lat.add(v)
    for v in vectors:
        assert v in lat
        coords = lat.coordinates(v)
        basis = lat.basis()
        assert [sum(c * b[i] for c, b in zip(coords, basis)) for i in range(3)] == v
    assert len(lat.basis()) == (rational_rank(vectors) if vectors else 0)


def test_rational_rank():
    assert rational_rank([[1, 2], [2, 4]]) == 1
    assert rational_rank([[1, 0], [0, 1]]) == 2
    assert rational_rank([]) == 0
