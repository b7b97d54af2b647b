import random

import pytest

from iml import oracle
from iml.matching import MatchingState, divisors_upto, extend_one, hall_certificate, new_state
from iml.model import lcm_upto
from iml.solver import solve_f


def grow(n, m, L):
    state = new_state(n, m)
    for _ in range(L):
        extend_one(state)
    return state


def check_invariants(state):
    n, m, L = state.n, state.m, state.current_L
    pairs = state.pairs()
    assert len(pairs) == state.matching_size
    assert len(set(pairs.values())) == len(pairs)
    for i, t in pairs.items():
        assert t % i == 0 and m < t <= m + L
        assert state.matched_divisor_of(t) == i
        assert state.matched_integer_of(i) == t
    for t in range(m + 1, m + L + 1):
        i = state.matched_divisor_of(t)
        assert i is None or pairs[i] == t


@pytest.mark.parametrize("t, n", [(1, 5), (12, 5), (36, 100), (97, 10), (10**12 + 39, 50), (720, 720)])
def test_divisors_upto(t, n):
    assert divisors_upto(t, n) == [d for d in range(1, n + 1) if t % d == 0]


def test_new_state():
    for n, m in [(3, 4), (1, 0)]:
        state = new_state(n, m)
        assert state.matching_size == 0 and state.current_L == 0


@pytest.mark.parametrize("n, m, L, size", [(2, 0, 2, 2), (3, 4, 3, 2), (4, 4, 4, 3)])
def test_extend_examples(n, m, L, size):
    state = grow(n, m, L)
    assert state.matching_size == size == oracle.max_matching_size(n, m, L)
    check_invariants(state)


def test_certificate_examples():
    cert = hall_certificate(grow(3, 4, 3))
    assert cert.violator_set == (2, 3) and cert.neighborhood_size == 1
    cert = hall_certificate(grow(2, 0, 1))
    assert cert.violator_set in {(1, 2), (2,)} and cert.neighborhood_size <= 1
    assert cert.holds_for(2, 0, 1)
    cert = hall_certificate(new_state(1, 0))
    assert cert.violator_set == (1,) and cert.neighborhood_size == 0


def test_certificate_rejects_perfect_matching():
    with pytest.raises(ValueError):
        grow(2, 0, 2).hall_certificate()


@pytest.mark.parametrize("n", range(1, 9))
def test_engine_matches_brute_force_matching_size(n):
    for m in range(lcm_upto(n)):
        f = oracle.brute_force_f(n, m)
        state = MatchingState(n, m)
        sizes = [0]
        assert oracle.max_matching_size(n, m, 0) == 0
        for L in range(1, f + 1):
            state.extend_one()
            assert state.matching_size == oracle.max_matching_size(n, m, L)
            sizes.append(state.matching_size)
            if state.matching_size < n:
                assert state.hall_certificate().holds_for(n, m, L)
        assert all(b - a in (0, 1) for a, b in zip(sizes, sizes[1:]))


def test_invariants_random_walks():
    rng = random.Random(7)
    for _ in range(40):
        n, m = rng.randrange(1, 40), rng.randrange(10**9)
        state = MatchingState(n, m)
        for _ in range(rng.randrange(0, 3 * n)):
            state.extend_one()
        check_invariants(state)
        if state.matching_size < n:
            assert state.hall_certificate().holds_for(n, m, state.current_L)


def test_copy_is_independent():
    state = grow(5, 10, 4)
    snap = state.copy()
    state.extend_one()
    assert snap.current_L == 4 and state.current_L == 5
    check_invariants(snap)


def test_deterministic_matching():
    assert grow(30, 1234, 60).pairs() == grow(30, 1234, 60).pairs()
    assert solve_f(30, 1234).witness == solve_f(30, 1234).witness
