"""Thermal (maximum-entropy) paraboson state and its zero-delay intensity correlations.

G^(n)(0) is available four ways: closed forms for n <= 4, a Gauss
hypergeometric form, a K*I Bessel integral, and the Fock-space oracle.
All of them split into even- and odd-occupation parts G = G_e + G_o.

Notation: ``mean_n`` is the mean occupation <N>.  ``half`` is the integer
k with order n = 2k (even) or n = 2k + 1 (odd); it is unrelated to
``mean_n`` and never mixed with it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

from .algebra import check_occupation, check_order
from .quadrature import QuadratureSpec, integrate_semi_infinite
from .special import hyp2f1, hyp2f1_series, log_bessel_i, log_bessel_k

Method = Literal["closed-form", "hypergeometric", "quadrature", "fock-oracle"]
METHODS: tuple[str, ...] = ("closed-form", "hypergeometric", "quadrature", "fock-oracle")
ParityFilter = Literal["even", "odd", "both"]

# above this r^-2 the Gauss series crawls; switch to the terminating Euler form
_SERIES_Z_MAX = 0.9
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class ThermalState:
    mean_n: float
    p: int
    c_bar: float = 1.0

    def __post_init__(self):
        check_order(self.p)
        if not (self.mean_n > 0 and math.isfinite(self.mean_n)):
            raise ValueError(f"mean occupation must be a positive finite real, got {self.mean_n}")
        if not (self.c_bar > 0 and math.isfinite(self.c_bar)):
            raise ValueError(f"c_bar must be positive, got {self.c_bar}")

    @property
    def r(self) -> float:
        return 1.0 + 1.0 / self.mean_n

    @property
    def q(self) -> float:
        return self.mean_n / (1.0 + self.mean_n)

    @property
    def log_r(self) -> float:
        return math.log1p(1.0 / self.mean_n)

    @property
    def log_q(self) -> float:
        return -self.log_r


@dataclass(frozen=True)
class CorrelationValue:
    order: int
    value: float
    method: str
    err_est: float = 0.0
    parity_parts: tuple[float, float] | None = field(default=None)

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("correlation order must be >= 1")
        if not self.err_est >= 0:
            raise ValueError("err_est must be non-negative")


def thermal_pmf(n: int, state: ThermalState) -> float:
    """Geometric occupation law (1 - q) q^n."""
    check_occupation(n)
    return math.exp(n * state.log_q) / (1.0 + state.mean_n)


def phi_max_s(x: float, state: ThermalState, branch: Literal["even", "odd"]) -> float:
    """Weight function of the thermal state in the parity-split coherent basis."""
    if not x > 0:
        raise ValueError("phi_max_s needs x = |alpha|^2 > 0")
    if branch not in ("even", "odd"):
        raise ValueError(f"branch must be 'even' or 'odd', got {branch!r}")
    p = state.p
    nu = (p - 2) / 2.0 if branch == "even" else p / 2.0
    r = state.r
    log_val = (
        (p / 2.0) * state.log_r - math.log(state.mean_n)
        + log_bessel_k(nu, r * x) - log_bessel_k(nu, x)
    )
    return math.exp(log_val)


def _bracket_low(mean_n: float, p: int) -> float:
    return (p + 2 * mean_n) / (1 + 2 * mean_n)


def _bracket_high(mean_n: float, p: int) -> float:
    m = mean_n
    a = 1 + 2 * m
    b = 2 * (1 + 4 * m + 6 * m * m)
    c = 8 * m * (1 + 3 * m + 3 * m * m)
    return (a * p * p + b * p + c) / (3 * (1 + 2 * m) ** 3)


def higher_order_bracket(state: ThermalState) -> float:
    """Shared p-dependent factor of G^(3) and G^(4); 1 at p = 1."""
    return _bracket_high(state.mean_n, state.p)


def g_closed(order: int, state: ThermalState) -> CorrelationValue:
    if order not in (1, 2, 3, 4):
        raise ValueError("closed forms exist for orders 1..4 only")
    scale = state.c_bar * state.mean_n
    if order <= 2:
        bracket = _bracket_low(state.mean_n, state.p)
    else:
        bracket = _bracket_high(state.mean_n, state.p)
    value = math.factorial(order) * scale ** order * bracket
    return CorrelationValue(order, value, "closed-form", 4 * _EPS * value)


def lambda_p(state: ThermalState) -> float:
    """Normalized intensity correlation G^(2) / (G^(1))^2."""
    m = state.mean_n
    return 2 * (1 + 2 * m) / (state.p + 2 * m)


def _hyp_branches(order: int, p: int) -> tuple[tuple, tuple]:
    """(log-gamma prefactor args, r power, 2F1 parameters) for the even and odd parts."""
    half, odd = divmod(order, 2)
    h = p / 2.0
    lg = math.lgamma
    if odd:  # order = 2*half + 1
        even = (
            lg(h + half + 1) + lg(half + 2) - lg(h + 1), order + 2,
            (h + half + 1, half + 2, h + 1),
        )
        odd_ = (
            lg(h + half + 1) + lg(half + 1) - lg(h), order + 1,
            (h + half + 1, half + 1, h),
        )
    else:  # order = 2*half
        even = (
            lg(h + half) + lg(half + 1) - lg(h), order + 1,
            (h + half, half + 1, h),
        )
        odd_ = (
            lg(h + half + 1) + lg(half + 1) - lg(h + 1), order + 2,
            (h + half + 1, half + 1, h + 1),
        )
    return even, odd_


def g_hypergeometric(order: int, state: ThermalState, parity_filter: ParityFilter = "both",
                     route: Literal["auto", "series"] = "auto") -> CorrelationValue:
    """G^(n) as a pair of Gauss hypergeometric terms in z = r^-2.

    ``route="auto"`` sums the series (with a ratio-test tail bound) while
    z <= 0.9 and otherwise uses Euler's transformation, which terminates for
    every branch here.  ``route="series"`` always sums the series.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if parity_filter not in ("even", "odd", "both"):
        raise ValueError(f"unknown parity filter {parity_filter!r}")
    log_r = state.log_r
    z = math.exp(-2.0 * log_r)
    base = order * math.log(2.0) - math.log(state.mean_n) + order * math.log(state.c_bar)
    parts = []
    err = 0.0
    for log_gam, r_pow, (a, b, c) in _hyp_branches(order, state.p):
        if route == "series" or z <= _SERIES_Z_MAX:
            f, bound = hyp2f1_series(a, b, c, z, rel_tol=1e-15)
        elif route == "auto":
            f, bound = hyp2f1(a, b, c, z), 0.0
        else:
            raise ValueError(f"unknown route {route!r}")
        pre = math.exp(base + log_gam - r_pow * log_r)
        parts.append(pre * f)
        err += pre * bound + 8 * _EPS * abs(pre * f) * (order + 1)
    g_e, g_o = parts
    value = {"even": g_e, "odd": g_o, "both": g_e + g_o}[parity_filter]
    return CorrelationValue(order, value, "hypergeometric", err, (g_e, g_o))


def _quad_orders(order: int, p: int) -> tuple[tuple[float, float], tuple[float, float]]:
    """(K order, I order) for the even and odd integrands."""
    h = p / 2.0
    if order % 2:
        return (h - 1, h), (h, h - 1)
    return (h - 1, h - 1), (h, h)


def g_quadrature(order: int, state: ThermalState,
                 spec: QuadratureSpec | None = None) -> CorrelationValue:
    """G^(n) from the K_mu(r x) I_nu(x) integrals over the coherent-state weights."""
    if not 1 <= order <= 8:
        raise ValueError("quadrature route is budgeted for orders 1..8")
    m = state.mean_n
    # x = <N> t puts the bulk of every integrand at t = O(1) for both small and large <N>
    log_pre = (state.p / 2.0) * state.log_r + (order + 1) * math.log(m)
    parts = []
    err = 0.0
    for k_nu, i_nu in _quad_orders(order, state.p):
        def integrand(t: float, k_nu=k_nu, i_nu=i_nu) -> float:
            return math.exp(
                (order + 1) * math.log(t) + log_bessel_k(k_nu, (m + 1.0) * t)
                + log_bessel_i(i_nu, m * t)
            )

        val, e = integrate_semi_infinite(integrand, spec)
        parts.append(val)
        err += e
    scale = math.exp(log_pre + order * math.log(state.c_bar))
    g_e, g_o = (scale * v for v in parts)
    return CorrelationValue(order, g_e + g_o, "quadrature", scale * err, (g_e, g_o))


def _expansion_terms(order: int, state: ThermalState) -> tuple[tuple, tuple]:
    """Leading and subleading terms in powers of p for the even and odd parts.

    The coefficient lists are grouped as they come out of the large-p
    analysis of each 2F1 branch; which list belongs to which occupation
    parity is fixed by comparison with the exact parts.
    """
    p = state.p
    m = state.mean_n
    half = order // 2
    fac = 2 ** half * math.factorial(half)
    if order % 2:
        pre = fac * m ** (2 * half + 1) / (1 + 2 * m) ** (half + 2)
        group_a = (p ** (half + 1) * (1 + 2 * m),
                   p ** half * (half + 1) * (half + 2 * half * m + 2 * (half + 1) * m * m))
        group_b = (0.0, p ** half * (half + 1) * (2 * m + 2 * m * m))
        # group_b carries the even-occupation part, group_a the odd one
        return tuple(pre * t for t in group_b), tuple(pre * t for t in group_a)
    pre_a = fac * m ** (2 * half + 1) / (1 + 2 * m) ** (half + 2)
    pre_b = fac * m ** (2 * half) * (1 + m) / (1 + 2 * m) ** (half + 2)
    group_a = (p ** half * (1 + 2 * m),
               p ** (half - 1) * half * (half + 1 + 2 * (half + 1) * m + 2 * (half + 1) * m * m))
    group_b = (p ** half * (1 + 2 * m),
               p ** (half - 1) * half * (half - 1 + 2 * (half - 1) * m + 2 * (half + 1) * m * m))
    return tuple(pre_b * t for t in group_b), tuple(pre_a * t for t in group_a)


def g_p_expansion(order: int, state: ThermalState, terms: Literal[1, 2] = 2) -> CorrelationValue:
    """Large-p expansion of G^(n), truncated after one or two powers of p.

    An asymptotic check only: the neglected terms are O(p^-2) relative.
    """
    if not 1 <= order <= 8:
        raise ValueError("p-expansion is budgeted for orders 1..8")
    if terms not in (1, 2):
        raise ValueError("terms must be 1 or 2")
    even, odd = _expansion_terms(order, state)
    scale = state.c_bar ** order
    g_e = scale * math.fsum(even[:terms])
    g_o = scale * math.fsum(odd[:terms])
    # truncation error is the first neglected power, estimated by the last kept one / p
    last = abs(even[terms - 1]) + abs(odd[terms - 1])
    return CorrelationValue(order, g_e + g_o, "p-expansion", scale * last / state.p, (g_e, g_o))


def correlation(order: int, state: ThermalState, method: str = "closed-form",
                spec: QuadratureSpec | None = None) -> CorrelationValue:
    if method == "closed-form":
        return g_closed(order, state)
    if method == "hypergeometric":
        return g_hypergeometric(order, state)
    if method == "quadrature":
        return g_quadrature(order, state, spec)
    if method == "fock-oracle":
        from .oracle import thermal_g  # the oracle imports this module
        return thermal_g(order, state)
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


def g_recursion_check(even_order: int, state: ThermalState, method: str = "closed-form",
                      spec: QuadratureSpec | None = None) -> tuple[float, float, float]:
    """(G^(n), n c_bar <N> G^(n-1), relative difference) for even n."""
    if even_order < 2 or even_order % 2:
        raise ValueError("recursion holds for even orders >= 2")
    lhs = correlation(even_order, state, method, spec).value
    rhs = even_order * state.c_bar * state.mean_n * correlation(even_order - 1, state, method, spec).value
    return lhs, rhs, abs(lhs - rhs) / abs(rhs)


__all__ = [
    "METHODS", "CorrelationValue", "ThermalState", "correlation", "g_closed",
    "g_hypergeometric", "g_p_expansion", "g_quadrature", "g_recursion_check",
    "higher_order_bracket", "lambda_p", "phi_max_s", "thermal_pmf",
]
