"""Search for max_m f(n, m) over residues m mod lcm(1..n).

Candidate stream of :func:`sampled_max`, fully determined by (n, budget, seed):

1. m = n, then m = k^2 * n' for k = 1..SEED_K and n' = n-2..n+2 (n' >= 1).
2. Uniform residues ``splitmix64() % min(lcm(1..n), 2**64)``, until half of
   the remaining budget is spent.
3. Hill climbing from the incumbent over moves m +- d, d = 1, 2, 4, ... <
   min(lcm, 2**64).  A strictly better neighbour is taken at once; an equal
   one is taken at most PLATEAU_STEPS times in a row.  When no move is
   taken the climb ends.
4. Any budget left over goes back to uniform residues.

Every candidate is reduced mod lcm(1..n) and costs one unit of budget,
including repeats, which are answered from memory.  Ties on f resolve to
the smallest residue.

splitmix64, all arithmetic mod 2**64::

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from typing import Callable, Optional

from .model import canonical_m, lcm_upto
from .pool import pmap
from .solver import f_value, solve_f

MASK64 = (1 << 64) - 1
EXHAUSTIVE_CAP = 10**6
SEED_K = 6
PLATEAU_STEPS = 16


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


@dataclass(frozen=True)
class SearchReport:
    n: int
    strategy: str
    best_m: int
    best_f: int
    evaluations: int
    exhaustive: bool
    seed: Optional[int] = None


def _f_at(n: int, m: int) -> int:
    return f_value(n, m)


def _better(f: int, m: int, best_f: int, best_m: int) -> bool:
    return f > best_f or (f == best_f and m < best_m)


def _verified(report: SearchReport) -> SearchReport:
    # fresh solve, deliberately bypassing any cache
    f = solve_f(report.n, report.best_m).f_value
    if f != report.best_f:
        raise RuntimeError(
            f"search reported f({report.n}, {report.best_m}) = {report.best_f}, re-solve gives {f}"
        )
    return report


def exhaustive_max(n: int, cap: int = EXHAUSTIVE_CAP, jobs: int = 1,
                   f: Optional[Callable[[int, int], int]] = None) -> SearchReport:
    period = lcm_upto(n)
    if period > cap:
        raise ValueError(f"lcm(1..{n}) = {period} exceeds the residue cap {cap}")
    if f is None:
        values = pmap(partial(_f_at, n), range(period), jobs)
    else:
        values = [f(n, m) for m in range(period)]
    best_m = max(range(period), key=lambda m: (values[m], -m))
    return _verified(SearchReport(n, "exhaustive", best_m, values[best_m], period, True))


def sampled_max(n: int, budget: int, seed: int,
                f: Optional[Callable[[int, int], int]] = None) -> SearchReport:
    if budget < 1:
        raise ValueError("budget must be positive")
    if f is None:
        f = f_value
    period = lcm_upto(n)
    space = min(period, 1 << 64)
    rng = SplitMix64(seed)
    memo: dict[int, int] = {}
    spent = 0
    best_m, best_f = -1, 0

    def evaluate(m: int) -> Optional[int]:
        nonlocal spent, best_m, best_f
        if spent >= budget:
            return None
        spent += 1
        r = canonical_m(n, m)
        if r not in memo:
            memo[r] = f(n, r)
        if _better(memo[r], r, best_f, best_m):
            best_m, best_f = r, memo[r]
        return memo[r]

    seeds = [n] + [k * k * q for k in range(1, SEED_K + 1) for q in range(max(1, n - 2), n + 3)]
    for m in seeds:
        evaluate(m)

    random_until = spent + (budget - spent) // 2
    while spent < random_until:
        evaluate(rng.next() % space)

    cur_m, cur_f = best_m, best_f
    plateau = 0
    while spent < budget:
        moved = False
        equal_move = None
        d = 1
        while d < space and spent < budget:
            for cand in ((cur_m + d) % period, (cur_m - d) % period):
                fc = evaluate(cand)
                if fc is None:
                    break
                if fc > cur_f:
                    cur_m, cur_f, moved = canonical_m(n, cand), fc, True
                    plateau = 0
                    break
                if fc == cur_f and equal_move is None:
                    equal_move = canonical_m(n, cand)
            if moved:
                break
            d <<= 1
        if not moved:
            if equal_move is None or plateau >= PLATEAU_STEPS:
                break
            cur_m = equal_move
            plateau += 1

    while spent < budget:
        evaluate(rng.next() % space)

    return _verified(SearchReport(n, "sampled", best_m, best_f, spent, False, seed))
