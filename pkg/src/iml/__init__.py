"""Exact computation of f(n, m): the shortest interval (m, m + L] holding
distinct multiples a_i of each i = 1..n."""

__version__ = "0.1.0"

from .model import (HallCertificate, ProblemInstance, SolveResult, Witness, canonical_m,
                    lcm_upto, multiples_in_interval, verify_witness)
from .solver import ENGINE_VERSION, CapExceeded, SolverFault, f_value, solve_f, solve_f_capped

__all__ = [
    "ENGINE_VERSION", "CapExceeded", "HallCertificate", "ProblemInstance", "SolveResult",
    "SolverFault", "Witness", "canonical_m", "f_value", "lcm_upto", "multiples_in_interval",
    "solve_f", "solve_f_capped", "verify_witness",
]
