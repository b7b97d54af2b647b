"""Domain types and interval arithmetic for f(n, m).

f(n, m) is the least L such that (m, m + L] holds distinct a_1, ..., a_n
with i | a_i.  Two analytic facts are used throughout the package:

* n <= f(n, m): n distinct integers need n slots.
* f(n, m) <= n**2: at length n**2 every divisor i has at least
  floor(n**2 / i) >= n multiples in the interval, so every set S of
  divisors sees at least n >= |S| integers and Hall's condition holds.

The divisibility pattern of (m, m + L] only depends on m modulo each
i <= n, hence f(n, .) is periodic with period lcm(1, ..., n).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class ProblemInstance:
    n: int
    m: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not isinstance(self.m, int) or self.m < 0:
            raise ValueError(f"m must be a nonnegative integer, got {self.m!r}")


@dataclass(frozen=True)
class Witness:
    """Dense assignment: ``assignment[i - 1]`` holds a_i."""

    assignment: tuple[Optional[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))

    @classmethod
    def from_mapping(cls, n: int, mapping: dict[int, int]) -> "Witness":
        return cls(tuple(mapping.get(i) for i in range(1, n + 1)))

    def __len__(self):
        return len(self.assignment)

    def __getitem__(self, i: int) -> Optional[int]:
        if i < 1:
            raise IndexError(i)
        return self.assignment[i - 1]

    def as_dict(self) -> dict[int, Optional[int]]:
        return {i: a for i, a in enumerate(self.assignment, start=1)}

    def to_json(self, n: int, m: int, L: int) -> str:
        return json.dumps({"n": n, "m": m, "L": L, "assignment": list(self.assignment)})

    @staticmethod
    def from_json(text: str) -> tuple["Witness", int, int, int]:
        obj = json.loads(text)
        return Witness(tuple(obj["assignment"])), obj["n"], obj["m"], obj["L"]


@dataclass(frozen=True)
class HallCertificate:
    violator_set: tuple[int, ...]
    neighborhood_size: int

    def holds_for(self, n: int, m: int, L: int) -> bool:
        """Recount the neighbourhood directly and check the deficiency."""
        S = self.violator_set
        if not S or any(not 1 <= i <= n for i in S) or len(set(S)) != len(S):
            return False
        size = neighborhood_size(S, m, L)
        return size == self.neighborhood_size and size < len(S)


@dataclass(frozen=True)
class SolveResult:
    instance: ProblemInstance
    f_value: int
    witness: Witness
    certificate: HallCertificate

    def to_dict(self) -> dict:
        return {
            "n": self.instance.n,
            "m": self.instance.m,
            "f": self.f_value,
            "witness": list(self.witness.assignment),
            "violator": list(self.certificate.violator_set),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class Verdict:
    """Outcome of a witness check; falsy when a clause failed."""

    ok: bool
    reason: Optional[str] = None

    def __bool__(self):
        return self.ok


def multiples_in_interval(i: int, m: int, L: int) -> list[int]:
    """Multiples of ``i`` in (m, m + L], ascending."""
    if i < 1:
        raise ValueError("i must be positive")
    first = (m // i + 1) * i
    return list(range(first, m + L + 1, i))


def count_multiples(i: int, m: int, L: int) -> int:
    return (m + L) // i - m // i


def neighborhood_size(S: Iterable[int], m: int, L: int) -> int:
    """Number of t in (m, m + L] divisible by at least one element of S."""
    marked = bytearray(L)
    for i in S:
        start = (m // i + 1) * i - m - 1
        marked[start::i] = b"\x01" * len(range(start, L, i))
    return sum(marked)


@lru_cache(maxsize=None)
def lcm_upto(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    acc = 1
    for i in range(2, n + 1):
        acc = acc * i // gcd(acc, i)
    return acc


def canonical_m(n: int, m: int) -> int:
    return m % lcm_upto(n)


def verify_witness(n: int, m: int, L: int, w: Witness | Sequence[Optional[int]]) -> Verdict:
    """Check totality, range, divisibility and injectivity, in that order."""
    a = w.assignment if isinstance(w, Witness) else tuple(w)
    if len(a) != n:
        return Verdict(False, f"totality: expected {n} entries, got {len(a)}")
    for i, ai in enumerate(a, start=1):
        if ai is None:
            return Verdict(False, f"totality: a_{i} missing")
    for i, ai in enumerate(a, start=1):
        if not m < ai <= m + L:
            return Verdict(False, f"range: a_{i} = {ai} not in ({m}, {m + L}]")
    for i, ai in enumerate(a, start=1):
        if ai % i:
            return Verdict(False, f"divisibility: {i} does not divide a_{i} = {ai}")
    seen: dict[int, int] = {}
    for i, ai in enumerate(a, start=1):
        if ai in seen:
            return Verdict(False, f"injectivity: a_{seen[ai]} = a_{i} = {ai}")
        seen[ai] = i
    return Verdict(True)
