import random

import pytest

from iml.model import lcm_upto


def residue_cases(n_small=6, m_small=60, big=(7, 8), samples=100, seed=20261016):
    """The (n, m) grid used for oracle equivalence."""
    cases = [(n, m) for n in range(1, n_small + 1) for m in range(m_small)]
    rng = random.Random(seed)
    for n in big:
        cases += [(n, rng.randrange(10**6)) for _ in range(samples)]
    return cases


@pytest.fixture
def store_path(tmp_path):
    return tmp_path / "f.jsonl"
