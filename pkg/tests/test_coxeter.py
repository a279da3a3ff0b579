import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import system_and_words, systems
from oracles import brute_group, brute_normal_form, coxeter_order_formula
from coxsp.catalog import dihedral, infinite_dihedral, path_system, type_a
from coxsp.coxeter import (
    INF,
    IDENTITY,
    BallCapExceeded,
    CoxeterError,
    CoxeterSystem,
    GroupElement,
    ParseError,
    cayley_ball,
    inverse,
    m_reduce,
    multiply,
    parse_system,
)


def test_infinity_orders_above_integers():
    assert INF > 10**9 and 2 < INF and INF == INF
    assert str(INF) == "inf"
    assert sorted([INF, 3, 2]) == [2, 3, INF]


def test_system_validation():
    with pytest.raises(CoxeterError):
        CoxeterSystem(((1, 2), (3, 1)))
    with pytest.raises(CoxeterError):
        CoxeterSystem(((1, 1), (1, 1)))
    with pytest.raises(CoxeterError):
        CoxeterSystem(((2,),))


def test_reduce_examples():
    a2 = dihedral(3)
    assert m_reduce(a2, (1, 0, 1)).word == (0, 1, 0)
    assert m_reduce(a2, (0, 0)).word == ()
    assert m_reduce(a2, (0, 1, 0, 1)).word == (1, 0)
    dinf = infinite_dihedral()
    assert m_reduce(dinf, (0, 1, 0, 1, 1, 0)).word == (0, 1)


@given(system_and_words(count=1, max_len=8, labels=(2, 3, 4, 5, INF)))
def test_reduce_matches_brute_force(data):
    system, (word,) = data
    assert m_reduce(system, word).word == brute_normal_form(system, word)


@given(system_and_words(count=3, max_len=6))
def test_associativity_and_identity(data):
    system, (a, b, c) = data
    left = multiply(system, multiply(system, a, b), c)
    right = multiply(system, a, multiply(system, b, c))
    assert left == right
    assert multiply(system, a, ()) == m_reduce(system, a)
    assert multiply(system, a, inverse(system, a)) == IDENTITY


@given(system_and_words(count=1, max_len=10))
def test_length_parity_and_inverse_length(data):
    system, (word,) = data
    x = m_reduce(system, word)
    assert x.length % 2 == len(word) % 2
    assert x.length <= len(word)
    assert inverse(system, x).length == x.length


def test_element_ordering():
    assert GroupElement((1,)) < GroupElement((0, 1))
    assert GroupElement((0, 1)) < GroupElement((1, 0))


@pytest.mark.parametrize(
    "system,order",
    [(dihedral(5), 10), (type_a(3), coxeter_order_formula("A", 3)), (type_a(4), coxeter_order_formula("A", 4))],
)
def test_finite_group_orders(system, order):
    ball = cayley_ball(system, 30)
    assert ball.is_complete_group
    assert ball.size == order
    assert set(ball.words) == brute_group(system)


def test_infinite_dihedral_shells():
    ball = cayley_ball(infinite_dihedral(), 6)
    assert [len(ball.shell(r)) for r in range(7)] == [1, 2, 2, 2, 2, 2, 2]
    assert not ball.is_complete_group


@settings(max_examples=30)
@given(systems(max_rank=4), st.integers(1, 5))
def test_ball_nesting_and_normal_forms(system, radius):
    small, big = cayley_ball(system, radius), cayley_ball(system, radius + 1)
    n = small.count_upto(radius)
    assert small.words[:n] == big.words[:n]
    for w in small.words:
        assert m_reduce(system, w).word == w
    # ShortLex order within each shell
    assert small.words == sorted(small.words, key=lambda w: (len(w), w))


@settings(max_examples=25)
@given(systems(max_rank=4), st.integers(1, 4))
def test_cayley_tables_match_multiplication(system, radius):
    ball = cayley_ball(system, radius)
    for x, w in enumerate(ball.words):
        for s in range(system.rank):
            for table, prod in ((ball.right, w + (s,)), (ball.left, (s,) + w)):
                y = table[s, x]
                target = m_reduce(system, prod)
                if target.length <= ball.radius:
                    assert ball.words[y] == target.word
                else:
                    assert y == -1
    inv = ball.inverse_ids
    for x, w in enumerate(ball.words):
        assert ball.words[inv[x]] == inverse(system, w).word
    counts = ball.letter_counts()
    for x, w in enumerate(ball.words):
        assert list(counts[x]) == [w.count(i) for i in range(system.rank)]


def test_ball_cap():
    free = CoxeterSystem.from_pairs(4, {})
    with pytest.raises(BallCapExceeded):
        cayley_ball(free, 12, max_elements=1000)


def test_cap_env(monkeypatch):
    from coxsp.coxeter import default_max_elements

    monkeypatch.setenv("COXSP_MAX_ELEMENTS", "77")
    assert default_max_elements() == 77


def test_parse_round_trip():
    system = path_system()
    again = parse_system(system.to_coxdef())
    assert again.matrix == system.matrix


def test_parse_defaults_and_names():
    text = "rank 3\nnames a b c\nm 1 2 3  # comment\n"
    s = parse_system(text)
    assert s.label(0, 1) == 3 and s.label(0, 2) is INF
    assert s.defaulted == ((0, 2), (1, 2))
    assert s.format_word((0, 1)) == "a b"


def test_parse_row_matrix():
    s = parse_system("rank 2\nrow 1 inf\nrow inf 1\n")
    assert s.label(0, 1) is INF


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("rank 0\n", 1, 6),
        ("m 1 2 3\n", 1, 1),
        ("rank 2\nm 1 1 2\n", 2, 7),
        ("rank 2\nm 1 3 2\n", 2, 5),
        ("rank 2\nm 1 2 1\n", 2, 7),
        ("rank 2\nm 1 2 3\nm 2 1 4\n", 3, 7),
        ("rank 2\nm 1 2 x\n", 2, 7),
        ("rank 2\nfoo\n", 2, 1),
        ("", 1, 1),
    ],
)
def test_parse_errors_carry_positions(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_system(text)
    assert (exc.value.line, exc.value.column) == (line, col)


def test_restrict_keeps_labels():
    s = type_a(4).restrict([0, 1, 3])
    assert s.rank == 3 and s.label(0, 1) == 3 and s.label(1, 2) == 2


def test_all_small_words_consistent_with_ball():
    system = CoxeterSystem.from_pairs(3, {(0, 1): 3, (1, 2): INF, (0, 2): 2})
    ball = cayley_ball(system, 6)
    for length in range(7):
        for word in itertools.product(range(3), repeat=length):
            x = m_reduce(system, word)
            if x.length <= 6:
                assert ball.index(x) >= 0
    assert np.all(np.diff(ball.lengths) >= 0)
