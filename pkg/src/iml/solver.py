"""Exact computation of f(n, m) by growing the interval one integer at a time."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .matching import MatchingState
from .model import ProblemInstance, SolveResult, verify_witness

# Bump whenever the deterministic matching (and hence emitted witnesses) changes.
ENGINE_VERSION = "iml-engine-1"


class SolverFault(RuntimeError):
    """Internal consistency failure; indicates a bug, never bad input."""


@dataclass(frozen=True)
class CapExceeded:
    instance: ProblemInstance
    cap: int
    matching_size: int


def solve_f_capped(n: int, m: int, cap: int) -> Union[SolveResult, CapExceeded]:
    instance = ProblemInstance(n, m)
    if cap < n:
        raise ValueError(f"cap must be at least n={n}, got {cap}")
    state = MatchingState(n, m)
    before = state
    while state.matching_size < n:
        if state.current_L >= cap:
            return CapExceeded(instance, cap, state.matching_size)
        if state.matching_size == n - 1:
            before = state.copy()
        state.extend_one()
    f = state.current_L
    witness = state.witness()
    check = verify_witness(n, m, f, witness)
    if not check:
        raise SolverFault(f"witness rejected for (n={n}, m={m}, L={f}): {check.reason}")
    if before.current_L != f - 1:
        raise SolverFault("certificate snapshot taken at the wrong length")
    certificate = before.hall_certificate()
    return SolveResult(instance, f, witness, certificate)


def solve_f(n: int, m: int) -> SolveResult:
    result = solve_f_capped(n, m, n * n)
    if isinstance(result, CapExceeded):
        raise SolverFault(
            f"no perfect matching for (n={n}, m={m}) at L = n^2 = {n * n}; "
            f"reached size {result.matching_size}"
        )
    return result


def f_value(n: int, m: int) -> int:
    return solve_f(n, m).f_value
