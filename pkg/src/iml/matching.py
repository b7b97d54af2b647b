"""Incremental maximum matching between divisors 1..n and (m, m + L].

Integers are admitted one at a time.  Before an extension the matching is
maximum, so any augmenting path in the extended graph must end at the new
integer t (a path avoiding t would already have existed).  One alternating
search rooted at t therefore restores maximality, and the matching size
grows by 0 or 1 per step.

When the matching is not perfect, the divisors reachable from unmatched
divisors along alternating paths form a Hall violator: every integer they
reach is matched (otherwise there is an augmenting path) and matched back
into the same set, so |N(S)| = |S| - #unmatched < |S|.
"""

from __future__ import annotations

from math import isqrt

from .model import HallCertificate, Witness, neighborhood_size


def divisors_upto(t: int, n: int) -> list[int]:
    """Divisors of t that are <= n, ascending."""
    r = isqrt(t)
    if r > n:
        # trial division past sqrt(t) would be wasted work; scan 1..n instead
        return [d for d in range(1, n + 1) if t % d == 0]
    small, large = [], []
    for d in range(1, r + 1):
        if t % d == 0:
            small.append(d)
            q = t // d
            if q != d and q <= n:
                large.append(q)
    small.extend(reversed(large))
    return small


class MatchingState:
    """Single-owner matching state, mutated in place by :meth:`extend_one`."""

    def __init__(self, n: int, m: int):
        if n < 1:
            raise ValueError("n must be positive")
        if m < 0:
            raise ValueError("m must be nonnegative")
        self.n = n
        self.m = m
        self.current_L = 0
        self.matching_size = 0
        # divisor i -> matched integer (0 when unmatched; integers are >= 1)
        self._int_of = [0] * (n + 1)
        # offset t - m - 1 -> matched divisor (0 when unmatched)
        self._div_of: list[int] = []
        self._divs: list[list[int]] = []

    def copy(self) -> "MatchingState":
        other = MatchingState.__new__(MatchingState)
        other.n, other.m = self.n, self.m
        other.current_L = self.current_L
        other.matching_size = self.matching_size
        other._int_of = self._int_of[:]
        other._div_of = self._div_of[:]
        other._divs = self._divs[:]
        return other

    def matched_integer_of(self, i: int):
        t = self._int_of[i]
        return t or None

    def matched_divisor_of(self, t: int):
        off = t - self.m - 1
        if not 0 <= off < self.current_L:
            return None
        return self._div_of[off] or None

    def pairs(self) -> dict[int, int]:
        return {i: t for i, t in enumerate(self._int_of) if t}

    def extend_one(self) -> "MatchingState":
        self.current_L += 1
        t = self.m + self.current_L
        self._divs.append(divisors_upto(t, self.n))
        self._div_of.append(0)
        if self._augment(t):
            self.matching_size += 1
        return self

    def _augment(self, root: int) -> bool:
        m = self.m
        int_of, div_of, divs = self._int_of, self._div_of, self._divs
        visited = set()
        ts = [root]
        chosen: list[int] = []
        cursors = [0]
        # look-ahead: a free divisor adjacent to the frame's integer ends the path
        free = _first_free(divs[root - m - 1], int_of)
        while True:
            if free:
                chosen.append(free)
                for i, t in zip(chosen, ts):
                    int_of[i] = t
                    div_of[t - m - 1] = i
                return True
            t = ts[-1]
            nbrs = divs[t - m - 1]
            pos = cursors[-1]
            while pos < len(nbrs) and nbrs[pos] in visited:
                pos += 1
            if pos == len(nbrs):
                ts.pop()
                cursors.pop()
                if not chosen:
                    return False
                chosen.pop()
                continue
            i = nbrs[pos]
            cursors[-1] = pos + 1
            visited.add(i)
            nxt = int_of[i]
            chosen.append(i)
            ts.append(nxt)
            cursors.append(0)
            free = _first_free(divs[nxt - m - 1], int_of)

    def witness(self) -> Witness:
        return Witness(tuple(t or None for t in self._int_of[1:]))

    def hall_certificate(self) -> HallCertificate:
        if self.matching_size >= self.n:
            raise ValueError("matching is perfect; no Hall violator exists")
        n, m, L = self.n, self.m, self.current_L
        int_of, div_of = self._int_of, self._div_of
        S = {i for i in range(1, n + 1) if not int_of[i]}
        reached = set()
        frontier = list(S)
        while frontier:
            i = frontier.pop()
            start = (m // i + 1) * i
            for t in range(start, m + L + 1, i):
                if t in reached:
                    continue
                reached.add(t)
                j = div_of[t - m - 1]
                if not j:
                    raise AssertionError(f"augmenting path left at L={L}: {t} is free")
                if j not in S:
                    S.add(j)
                    frontier.append(j)
        violators = tuple(sorted(S))
        size = neighborhood_size(violators, m, L)
        if size != len(reached) or size >= len(violators):
            raise AssertionError("Hall certificate failed recount")
        return HallCertificate(violators, size)


def _first_free(nbrs: list[int], int_of: list[int]) -> int:
    for i in nbrs:
        if not int_of[i]:
            return i
    return 0


def new_state(n: int, m: int) -> MatchingState:
    return MatchingState(n, m)


def extend_one(state: MatchingState) -> MatchingState:
    return state.extend_one()


def hall_certificate(state: MatchingState) -> HallCertificate:
    return state.hall_certificate()
