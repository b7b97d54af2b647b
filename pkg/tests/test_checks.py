from fractions import Fraction

import mpmath
import pytest

from iml import oracle
from iml.checks import (EPSILON, bounds_ratios, chain_report, compose_witness, eq2_predicate,
                        eq3_predicate, gap_target, lemma1_sides, lower_envelope,
                        theorem_parameters, upper_envelope)
from iml.model import Witness, verify_witness
from iml.solver import solve_f

mpmath.mp.dps = 40


def k_reference(n):
    return int(mpmath.ceil(mpmath.mpf("0.6") * mpmath.sqrt(mpmath.log(n) / mpmath.log(mpmath.log(n)))))


def test_theorem_parameters_examples():
    assert theorem_parameters(10**6).k == 2
    assert theorem_parameters(3).k == 3
    assert k_reference(3) == 3
    assert theorem_parameters(8).epsilon == Fraction(1, 100)
    with pytest.raises(ValueError):
        theorem_parameters(2)


def test_theorem_parameters_match_reference_and_are_monotone():
    ns = list(range(3, 3000)) + [10**j for j in range(4, 40, 3)]
    ks = [theorem_parameters(n).k for n in ns]
    for n, k in zip(ns, ks):
        assert k == k_reference(n)
    tail = [k for n, k in zip(ns, ks) if n >= 16]
    assert tail == sorted(tail)


def test_lemma1_examples():
    lhs, rhs = lemma1_sides(2, 1)
    assert (lhs, rhs) == (2 + oracle.brute_force_f(2, 2), 4 + oracle.brute_force_f(1, 4)) == (4, 5)
    lhs, rhs = lemma1_sides(2, 3)
    assert lhs == 6 + oracle.brute_force_f(6, 6)
    assert rhs == 12 + oracle.brute_force_f(3, 12)
    assert lhs <= rhs
    for n in range(1, 8):
        a, b = lemma1_sides(1, n)
        assert a == b == n + solve_f(n, n).f_value


def test_compose_witness_examples():
    w, L = compose_witness(2, 1, Witness((5,)), 1)
    assert w.assignment == (5, 4) and L == 3
    assert verify_witness(2, 2, 3, w)

    inner = solve_f(4, 4)
    w, L = compose_witness(1, 4, inner.witness, inner.f_value)
    assert w == inner.witness and L == inner.f_value

    inner = solve_f(3, 12)
    w, L = compose_witness(2, 3, inner.witness, inner.f_value)
    assert verify_witness(6, 6, L, w)
    assert solve_f(6, 6).f_value <= L


def test_compose_rejects_bad_inner():
    with pytest.raises(ValueError):
        compose_witness(2, 1, Witness((3,)), 1)


def test_eq2_eq3_reports():
    for n in (3, 10):
        k = theorem_parameters(n).k
        holds, lhs, rhs = eq2_predicate(n)
        assert lhs == solve_f(k * n, k * n).f_value
        assert rhs == Fraction(201, 100) * k * k * n
        assert holds == (lhs > rhs)
    holds, lhs, rhs = eq2_predicate(3)
    assert lhs == oracle.brute_force_f(9, 9)
    for n in (3, 100):
        k = theorem_parameters(n).k
        holds, lhs, rhs = eq3_predicate(n)
        assert lhs == Fraction(k * k * n, 100)
        assert rhs == solve_f(n, n).f_value
        assert holds == (lhs > rhs)
    k = 5
    assert (2 + EPSILON) * k * k * 7 - k * k * 7 == (1 + EPSILON) * k * k * 7


@pytest.mark.parametrize("n", [3, 8, 20])
def test_chain_report(n):
    rows = chain_report(n)
    assert len(rows) == 5
    assert rows[0].holds
    assert rows[3].holds and rows[3].lhs == rows[3].rhs
    k = theorem_parameters(n).k
    f_inner = solve_f(n, k * k * n).f_value
    assert rows[1].lhs == f_inner == rows[0].rhs
    assert rows[1].holds  # unconditional
    assert rows[2].lhs == k * n + solve_f(k * n, k * n).f_value - k * k * n


def test_chain_first_link_with_known_max():
    assert chain_report(8, max_f=14)[0].holds


def test_gap_target_at_100():
    ref = mpmath.mpf("0.36") * 100 * mpmath.log(100) / mpmath.log(mpmath.log(100))
    assert gap_target(100) == pytest.approx(108.55, abs=0.01)
    assert gap_target(100) == pytest.approx(float(ref), rel=1e-12)


def test_envelopes_at_100():
    assert lower_envelope(100) == pytest.approx(210.65, abs=0.01)
    assert upper_envelope(100) == pytest.approx(429.19, abs=0.01)
    assert 2 / mpmath.sqrt(mpmath.e) > 1.21


def test_bounds_rows():
    rows = bounds_ratios([3, 16, 50])
    for r in rows:
        assert r.n <= r.f_nn <= r.n**2
        assert r.ratio_lower == r.f_nn / r.lower_env
        assert r.ratio_upper == r.f_nn / r.upper_env
    with pytest.raises(ValueError):
        bounds_ratios([2])


def test_envelope_order_per_row():
    assert lower_envelope(3) > upper_envelope(3)  # the envelopes cross at small n
    for r in bounds_ratios(list(range(16, 200, 7))):
        assert r.lower_env < r.upper_env
