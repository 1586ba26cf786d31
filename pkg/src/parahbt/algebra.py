"""Exact combinatorics of single-mode para-Bose and para-Fermi statistics.

Everything here works on Python integers or ``fractions.Fraction`` so the
p-factorials stay exact however large they get; floats only appear where a
square root is unavoidable (ladder coefficients).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

Species = Literal["paraboson", "parafermion"]
Direction = Literal["emission", "absorption"]


def check_order(p: int) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or p < 1:
        raise ValueError(f"statistics order p must be a positive integer, got {p!r}")
    return p


def check_occupation(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValueError(f"occupation number must be a non-negative integer, got {n!r}")
    return n


def parity(n: int) -> str:
    """'even' or 'odd'; never stored separately from n."""
    return "odd" if check_occupation(n) % 2 else "even"


def step_factor(k: int, p: int) -> int:
    """Ratio (k+1)_p! / (k)_p!: k + p for even k, k + 1 for odd k."""
    return k + p if k % 2 == 0 else k + 1


def p_factorial(n: int, p: int) -> int:
    """Paraboson p-factorial (n)_p! as an exact integer.

    Built as the product of ``n`` factors; every even-to-odd step picks up
    the extra ``p - 1`` openings next to the vacuum.

    >>> p_factorial(4, 3)
    120
    >>> [p_factorial(n, 1) for n in range(6)]
    [1, 1, 2, 6, 24, 120]
    """
    check_occupation(n)
    check_order(p)
    out = 1
    for k in range(n):
        out *= step_factor(k, p)
    return out


def p_factorial_ratio(m: int, n: int, p: int) -> int:
    """(m)_p! / (m - n)_p! for m >= n, i.e. the normally ordered moment <m|a†^n a^n|m>."""
    check_occupation(m)
    check_occupation(n)
    if n > m:
        return 0
    out = 1
    for k in range(m - n, m):
        out *= step_factor(k, p)
    return out


def p_factorial_gamma(n: int, p: int) -> float:
    """Floating-point (n)_p! from the Gamma-function closed forms."""
    check_occupation(n)
    check_order(p)
    half, odd = divmod(n, 2)
    h = p / 2.0
    if odd:
        log_val = (
            half * math.log(2) + math.lgamma(half + 1)
            + (half + 1) * math.log(2) + math.lgamma(half + 1 + h) - math.lgamma(h)
        )
    else:
        log_val = (
            half * math.log(2) + math.lgamma(half + 1)
            + half * math.log(2) + math.lgamma(half + h) - math.lgamma(h)
        )
    return math.exp(log_val)


def pf_factorial(n: int, p: int) -> int:
    """Parafermion bi-factorial {n}_p! = n! p! / (p - n)!, product of n bi-factors."""
    check_occupation(n)
    check_order(p)
    if n > p:
        raise ValueError(f"parafermion band holds 0..{p} quanta, got n={n}")
    out = 1
    for k in range(1, n + 1):
        out *= k * (p - k + 1)
    return out


def ladder_up_coeff(n: int, p: int) -> float:
    """c in a†|n> = c|n+1>: sqrt(n + p) for even n, sqrt(n + 1) for odd n."""
    check_occupation(n)
    check_order(p)
    return math.sqrt(step_factor(n, p))


def ladder_down_coeff(n: int, p: int) -> float:
    """c in a|n> = c|n-1>; zero on the vacuum."""
    check_occupation(n)
    check_order(p)
    if n == 0:
        return 0.0
    return math.sqrt(step_factor(n - 1, p))


@dataclass(frozen=True)
class TransitionSpec:
    species: Species
    n_initial: int
    direction: Direction

    def __post_init__(self):
        if self.species not in ("paraboson", "parafermion"):
            raise ValueError(f"unknown species {self.species!r}")
        if self.direction not in ("emission", "absorption"):
            raise ValueError(f"unknown direction {self.direction!r}")
        check_occupation(self.n_initial)


def pb_transition_prob(spec: TransitionSpec, p: int, A: float = 1.0) -> float:
    """Single-paraboson emission/absorption probability from a number state.

    ``A`` is the dynamics-dependent constant shared by emission and
    absorption; only the statistics factor is computed here.
    """
    check_order(p)
    if spec.species != "paraboson":
        raise ValueError("pb_transition_prob needs a paraboson TransitionSpec")
    if A <= 0:
        raise ValueError("transition scale A must be positive")
    n = spec.n_initial
    if spec.direction == "emission":
        # n -> n+1 carries the a† coefficient squared
        return step_factor(n, p) * A
    if n == 0:
        return 0.0
    return step_factor(n - 1, p) * A


def pf_transition_ratio(n_initial: int, p: int) -> Fraction:
    """Emission/absorption ratio for a parafermion mode holding n_initial quanta."""
    check_order(p)
    check_occupation(n_initial)
    if not 1 <= n_initial <= p - 1:
        raise ValueError(f"n_initial must lie in the open band 1..{p - 1}, got {n_initial}")
    n = n_initial
    return Fraction((n + 1) * (p - n), n * (p - n + 1))


def pf_midband_ratio(p: int) -> Fraction:
    """Mid-band vs end-of-band parafermion transition factor (statistics only)."""
    check_order(p)
    if p < 2:
        raise ValueError("mid-band ratio needs p >= 2")
    end = pf_factorial(1, p)  # 0 -> 1 from the empty end of the band
    if p % 2 == 0:
        mid = p // 2
        # bi-factor for filling one more quantum at the middle
        return Fraction((mid + 1) * (p - mid), end)
    low = (p - 1) // 2
    return Fraction((low + 1) * (p - low), end)
