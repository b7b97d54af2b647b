"""Brute-force oracles for small instances.

These deliberately share nothing with the matching engine: one transcribes
the definition of f as a backtracking search, the other enumerates every
divisor subset and checks Hall's condition directly.
"""

from __future__ import annotations

BRUTE_GUARD = 10
HALL_GUARD = 20


def _assignable(n: int, m: int, L: int) -> bool:
    used = set()

    def place(i):
        if i == 0:
            return True
        # smallest multiple of i above m
        t = m - m % i + i
        while t <= m + L:
            if t not in used:
                used.add(t)
                if place(i - 1):
                    return True
                used.discard(t)
            t += i
        return False

    return place(n)


def brute_force_f(n: int, m: int, guard: int = BRUTE_GUARD) -> int:
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    if n > guard:
        raise ValueError(f"brute_force_f is limited to n <= {guard}, got n={n}")
    L = n
    while not _assignable(n, m, L):
        L += 1
    return L


def _union_masks(n: int, m: int, L: int) -> list[int]:
    """Bitmask over the interval of the multiples of each subset of 1..n.

    Bit j stands for the integer m + 1 + j; entry ``mask`` is the union for
    the subset whose bit i - 1 is set for each member i.
    """
    single = []
    for i in range(1, n + 1):
        bits = 0
        for j in range(L):
            if (m + 1 + j) % i == 0:
                bits |= 1 << j
        single.append(bits)
    unions = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        unions[mask] = unions[mask ^ low] | single[low.bit_length() - 1]
    return unions


def _check_guard(n: int, guard: int):
    if n < 1:
        raise ValueError("n must be positive")
    if n > guard:
        raise ValueError(f"subset enumeration is limited to n <= {guard}, got n={n}")


def hall_check(n: int, m: int, L: int, guard: int = HALL_GUARD) -> bool:
    _check_guard(n, guard)
    unions = _union_masks(n, m, L)
    return all(
        unions[mask].bit_count() >= mask.bit_count() for mask in range(1, 1 << n)
    )


def max_matching_size(n: int, m: int, L: int, guard: int = HALL_GUARD) -> int:
    """Maximum matching size via the deficiency form of Hall's theorem."""
    _check_guard(n, guard)
    unions = _union_masks(n, m, L)
    deficiency = max(
        (mask.bit_count() - unions[mask].bit_count() for mask in range(1, 1 << n)),
        default=0,
    )
    return n - max(deficiency, 0)


def violators(n: int, m: int, L: int, guard: int = HALL_GUARD) -> list[tuple[int, ...]]:
    """Every divisor subset S with fewer than |S| multiples in (m, m + L]."""
    _check_guard(n, guard)
    unions = _union_masks(n, m, L)
    out = []
    for mask in range(1, 1 << n):
        if unions[mask].bit_count() < mask.bit_count():
            out.append(tuple(i + 1 for i in range(n) if mask >> i & 1))
    return out
