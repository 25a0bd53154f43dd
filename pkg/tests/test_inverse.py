import pytest
from hypothesis import given

from conftest import permutations_of
from qeuler.forward import phi, phi_trace
from qeuler.inverse import (
    InconsistencyError, build_skeleton, decompose, phi_inverse, phi_inverse_trace,
    propagate,
)
from qeuler.perm import enumerate_permutations, parse_permutation
from qeuler.stats import exc, exceedance_values, two_inversion_set

WORKED_IMAGE = parse_permutation("956382471")
WORKED_INPUT = parse_permutation("425736981")


def test_decomposition_of_worked_image():
    d = decompose(WORKED_IMAGE)
    assert d.d2_tau == (0, 1, 4, 8)
    assert d.c_tau == (1, 2, 1, 0)
    assert d.d_tau == (1, 3, 5, 8)
    assert d.t_tau == {1: 1, 2: 4, 3: 8}


@given(permutations_of(1, 9))
def test_decomposition_invariants(t):
    d = decompose(t)
    assert sum(d.c_tau) == exc(t)
    assert list(d.d2_tau) == sorted(set(d.d2_tau))
    assert all(a - c == b for a, c, b in zip(d.d_tau, d.c_tau, d.d2_tau))


@pytest.mark.parametrize("n", range(1, 7))
def test_decomposition_recovers_adjusted_capacities(n):
    for p in enumerate_permutations(n):
        tr = phi_trace(p)
        assert list(decompose(tr["output"]).c_tau) == tr["c"]


def test_skeleton_of_worked_image():
    sk = build_skeleton(WORKED_IMAGE)
    assert sk.boxed == {1, 4, 8}
    assert sk.targets == exceedance_values(WORKED_IMAGE) == {5, 6, 8, 9}
    assert not any(sk.labels)


def test_skeleton_arrows_and_propagation():
    sk = build_skeleton(WORKED_IMAGE)
    # boxed vertices fall, the pair (7, 8) is left open
    assert [sk.arrow(i) for i in range(1, 9)] == ["D", "A", "A", "D", None, "A", None, "D"]
    propagate(sk)
    assert sk.cand[9] <= {1, 2, 3, 4}
    assert 1 in sk.cand[5]
    # the finished labelling starts the arc into 5 at 1 and the arc into 9 at 2
    arcs = {end: start for start, end in two_inversion_set(phi_inverse(WORKED_IMAGE))}
    assert arcs == {5: 1, 9: 2, 6: 4, 8: 7}


def test_worked_inverse():
    assert phi_inverse(WORKED_IMAGE) == WORKED_INPUT
    tr = phi_inverse_trace(WORKED_IMAGE)
    assert tr["output"] == list(WORKED_INPUT)
    assert tr["decomposition"]["d2_tau"] == (0, 1, 4, 8)
    assert tr["steps"] and tr["backtracks"] >= 0


@pytest.mark.parametrize("n", range(1, 6))
def test_round_trips_exhaustive(n):
    for p in enumerate_permutations(n):
        t = phi(p)
        assert phi_inverse(t) == p
        assert phi(phi_inverse(t)) == t


@given(permutations_of(1, 5))
def test_inverse_undoes_forward(p):
    assert phi_inverse(phi(p)) == p


@pytest.mark.parametrize("word", ["1", "21", "123", "2,1"])
def test_strict_mode_small(word):
    t = parse_permutation(word)
    assert phi_inverse(t, strict=True) == phi_inverse(t)


@pytest.mark.parametrize("word", ["132", "2413"])
def test_strict_mode_reports_ambiguity(word):
    with pytest.raises(InconsistencyError, match="minimal vertices"):
        phi_inverse(parse_permutation(word), strict=True)


@pytest.mark.parametrize("word", ["652134", "652143"])
def test_words_outside_the_image_are_rejected(word):
    # no permutation of size 6 maps to these
    with pytest.raises(InconsistencyError):
        phi_inverse(parse_permutation(word))
