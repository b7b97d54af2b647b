"""Finite-n checks of the interval-doubling inequality and the gap chain.

Logarithms are natural throughout.  Every comparison involving epsilon is
done in exact rational arithmetic; floats appear only in the envelope and
gap closed forms, which are reported rather than asserted.

The unconditional inequality

    k*n + f(k*n, k*n) <= k^2*n + f(n, k^2*n)

has a constructive reason: for i in (n, k*n] take a_i = k*i, which lies in
(k*n, k^2*n], and for i <= n reuse any witness on (k^2*n, k^2*n + L'].  The
two ranges are disjoint, so the combined assignment is injective.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .model import Witness, verify_witness
from .solver import f_value

EPSILON = Fraction(1, 100)
K_FACTOR = 0.6
GAP_FACTOR = 0.36
LOWER_CONST = 2 / math.sqrt(math.e)
UPPER_CONST = 2.0

FValue = Callable[[int, int], int]


@dataclass(frozen=True)
class TheoremParameters:
    n: int
    k: int
    epsilon: Fraction = EPSILON


@dataclass(frozen=True)
class BoundsRow:
    n: int
    f_nn: int
    lower_env: float
    upper_env: float
    ratio_lower: float
    ratio_upper: float


@dataclass(frozen=True)
class ChainLink:
    name: str
    lhs: object
    rhs: object
    holds: bool


def theorem_parameters(n: int) -> TheoremParameters:
    if n < 3:
        raise ValueError(f"theorem parameters need log log n > 0, i.e. n >= 3; got {n}")
    k = math.ceil(K_FACTOR * math.sqrt(math.log(n) / math.log(math.log(n))))
    return TheoremParameters(n, max(k, 1))


def lemma1_sides(k: int, n: int, f: FValue = f_value) -> tuple[int, int]:
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    lhs = k * n + f(k * n, k * n)
    rhs = k * k * n + f(n, k * k * n)
    return lhs, rhs


def compose_witness(k: int, n: int, inner: Witness, inner_L: int) -> tuple[Witness, int]:
    """Lift a witness for (n, k^2 n, L') to one for (kn, kn, k^2 n - kn + L').

    Returns the composed witness and its interval length.
    """
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    check = verify_witness(n, k * k * n, inner_L, inner)
    if not check:
        raise ValueError(f"inner witness invalid: {check.reason}")
    assignment = list(inner.assignment) + [k * i for i in range(n + 1, k * n + 1)]
    return Witness(tuple(assignment)), k * k * n - k * n + inner_L


def eq2_predicate(n: int, f: FValue = f_value) -> tuple[bool, int, Fraction]:
    """f(kn, kn) > (2 + eps) k^2 n, with k and eps from the theorem."""
    p = theorem_parameters(n)
    lhs = f(p.k * n, p.k * n)
    rhs = (2 + p.epsilon) * p.k**2 * n
    return lhs > rhs, lhs, rhs


def eq3_predicate(n: int, f: FValue = f_value) -> tuple[bool, Fraction, int]:
    """eps k^2 n > f(n, n)."""
    p = theorem_parameters(n)
    lhs = p.epsilon * p.k**2 * n
    rhs = f(n, n)
    return lhs > rhs, lhs, rhs


def gap_target(n: int) -> float:
    """0.36 n log n / log log n."""
    return GAP_FACTOR * n * math.log(n) / math.log(math.log(n))


def chain_report(n: int, f: FValue = f_value, max_f: Optional[int] = None) -> list[ChainLink]:
    """Evaluate each link of the displayed gap chain at a finite n.

    ``max_f`` may carry a known value of max_m f(n, m); the first link is
    true by definition either way.
    """
    p = theorem_parameters(n)
    k, eps = p.k, p.epsilon
    kkn = k * k * n
    f_inner = f(n, kkn)
    f_big = f(k * n, k * n)
    f_nn = f(n, n)
    lemma_side = k * n + f_big - kkn
    eq2_side = (2 + eps) * kkn - kkn
    ident_side = eps * kkn + kkn
    gap = gap_target(n)
    final_rhs = Fraction(f_nn) + Fraction(gap)
    return [
        ChainLink("max_m f(n,m) >= f(n,k^2 n)", max_f, f_inner,
                  True if max_f is None else max_f >= f_inner),
        ChainLink("f(n,k^2 n) >= kn + f(kn,kn) - k^2 n", f_inner, lemma_side,
                  f_inner >= lemma_side),
        ChainLink("kn + f(kn,kn) - k^2 n > (2+eps) k^2 n - k^2 n", lemma_side, eq2_side,
                  lemma_side > eq2_side),
        ChainLink("(2+eps) k^2 n - k^2 n = eps k^2 n + k^2 n", eq2_side, ident_side,
                  eq2_side == ident_side),
        ChainLink("eps k^2 n + k^2 n > f(n,n) + 0.36 n log n / log log n", ident_side,
                  f_nn + gap, ident_side > final_rhs),
    ]


def lower_envelope(n: int) -> float:
    return LOWER_CONST * n * math.sqrt(math.log(n) / math.log(math.log(n)))


def upper_envelope(n: int) -> float:
    return UPPER_CONST * n * math.sqrt(math.log(n))


def bounds_ratios(n_list: list[int], f: FValue = f_value) -> list[BoundsRow]:
    rows = []
    for n in n_list:
        if n < 3:
            raise ValueError(f"envelopes need n >= 3, got {n}")
        f_nn = f(n, n)
        lo, hi = lower_envelope(n), upper_envelope(n)
        rows.append(BoundsRow(n, f_nn, lo, hi, f_nn / lo, f_nn / hi))
    return rows
