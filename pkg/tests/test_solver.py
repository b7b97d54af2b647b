import json
import random

import pytest

from iml import oracle
from iml.model import canonical_m, lcm_upto, verify_witness
from iml.solver import CapExceeded, SolverFault, f_value, solve_f, solve_f_capped


def test_single_divisor():
    res = solve_f(1, 7)
    assert res.f_value == 1 and res.witness.assignment == (8,)


@pytest.mark.parametrize("n, m, f", [(3, 4, 4), (4, 4, 5), (3, 3, 3)])
def test_small_values(n, m, f):
    assert oracle.brute_force_f(n, m) == f
    assert solve_f(n, m).f_value == f


def test_n_two_always_two():
    for m in range(100):
        assert oracle.brute_force_f(2, m) == 2
        assert solve_f(2, m).f_value == 2


def test_witness_at_f_and_certificate_below():
    res = solve_f(4, 4)
    assert res.witness.assignment == (5, 6, 9, 8)
    assert verify_witness(4, 4, 5, res.witness)
    assert res.certificate.holds_for(4, 4, 4)


def test_capped():
    out = solve_f_capped(3, 4, 3)
    assert isinstance(out, CapExceeded) and out.matching_size == 2
    assert solve_f_capped(3, 4, 4).f_value == 4
    assert solve_f_capped(1, 0, 1).f_value == 1
    with pytest.raises(ValueError):
        solve_f_capped(3, 4, 2)


def test_json_shape():
    obj = json.loads(solve_f(3, 4).to_json())
    assert obj == {"n": 3, "m": 4, "f": 4, "witness": [5, 8, 6], "violator": [2, 3]}


def test_invalid_instance():
    with pytest.raises(ValueError):
        solve_f(0, 3)
    with pytest.raises(ValueError):
        solve_f(3, -1)


def test_minimality_against_hall_oracle_up_to_16():
    rng = random.Random(16)
    for n in range(1, 17):
        for m in [n, 0, 1] + [rng.randrange(10**6) for _ in range(3)]:
            res = solve_f(n, m)
            assert n <= res.f_value <= n * n
            assert verify_witness(n, m, res.f_value, res.witness)
            assert not oracle.hall_check(n, m, res.f_value - 1)


def test_periodicity():
    rng = random.Random(5)
    for n in range(1, 9):
        for _ in range(50):
            m = rng.randrange(10**7)
            f = f_value(n, m)
            assert f == f_value(n, m + lcm_upto(n)) == f_value(n, canonical_m(n, m))


def test_large_m_beyond_64_bits():
    m = 3 * 2**70 + 11
    res = solve_f(12, m)
    assert verify_witness(12, m, res.f_value, res.witness)
    assert res.f_value == f_value(12, canonical_m(12, m))


def test_fault_type_is_runtime_error():
    assert issubclass(SolverFault, RuntimeError)
