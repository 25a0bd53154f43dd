import itertools
import math

import pytest
from hypothesis import given, strategies as st

from conftest import permutations_of
from qeuler.perm import (
    CapacityError, ENUMERATION_CAP, Permutation, PermutationError, compact_form,
    compose, enumerate_permutations, format_permutation, identity, inverse,
    parse_permutation, rank_ranges, unrank,
)


def test_parse_digit_and_comma_forms_agree():
    assert parse_permutation("425736981") == parse_permutation("4,2,5,7,3,6,9,8,1")
    assert parse_permutation(" 3, 1 ,2 ") == (3, 1, 2)


@pytest.mark.parametrize("text", ["", "1123", "0123", "1234567890", "1,2,4", "a,b", "12a", "1,,2"])
def test_parse_rejects_garbage(text):
    with pytest.raises(PermutationError):
        parse_permutation(text)


def test_permutation_validates():
    with pytest.raises(PermutationError):
        Permutation([1, 1])
    with pytest.raises(PermutationError):
        Permutation([])
    p = Permutation([2, 3, 1])
    assert p(1) == 2 and p.n == 3
    assert str(p) == "2,3,1" and repr(p) == "Permutation(2,3,1)"


def test_ten_letters_need_commas():
    p = Permutation([10] + list(range(1, 10)))
    assert compact_form(p) == format_permutation(p)
    assert parse_permutation(compact_form(p)) == p


@given(permutations_of(1, 12))
def test_text_forms_round_trip(p):
    assert parse_permutation(format_permutation(p)) == p
    assert parse_permutation(compact_form(p)) == p


@given(permutations_of())
def test_inverse_and_compose(p):
    q = inverse(p)
    assert compose(p, q) == identity(len(p)) == compose(q, p)
    assert inverse(q) == p


def test_compose_order():
    # (p o q)(i) = p(q(i))
    assert compose((2, 3, 1), (3, 1, 2)) == (1, 2, 3)
    assert compose((2, 1, 3), (1, 3, 2)) == (2, 3, 1)
    with pytest.raises(PermutationError):
        compose((1, 2), (1,))


@pytest.mark.parametrize("n", range(1, 7))
def test_enumeration_is_lexicographic_and_complete(n):
    words = [tuple(p) for p in enumerate_permutations(n)]
    assert words == list(itertools.permutations(range(1, n + 1)))


@given(st.integers(1, 7), st.data())
def test_rank_ranges_concatenate(n, data):
    parts = data.draw(st.integers(1, 50))
    ranges = rank_ranges(n, parts)
    assert ranges[0][0] == 0 and ranges[-1][1] == math.factorial(n)
    assert all(a[1] == b[0] for a, b in zip(ranges, ranges[1:]))
    stream = [p for lo, hi in ranges for p in enumerate_permutations(n, lo, hi)]
    assert stream == list(enumerate_permutations(n))


@given(st.integers(1, 8), st.data())
def test_unrank_matches_enumeration(n, data):
    rank = data.draw(st.integers(0, math.factorial(n) - 1))
    assert unrank(n, rank) == next(enumerate_permutations(n, rank, rank + 1))


def test_enumeration_cap():
    with pytest.raises(CapacityError):
        next(enumerate_permutations(ENUMERATION_CAP + 1))
    with pytest.raises(CapacityError):
        rank_ranges(0, 1)
