"""Paraboson coherent states: parity split, p-Poisson law and its Gaussian limit.

Every scalar statistic depends on the amplitude only through x = |alpha|^2;
complex amplitudes are needed only for overlaps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .algebra import check_occupation, check_order, p_factorial, step_factor
from .quadrature import QuadratureSpec, integrate_semi_infinite
from .special import (
    bessel_i_scaled,
    log_bessel_i,
    log_bessel_k,
    log_p_exp,
    mode_difference,
    p_exp_even,
    parity_ratio,
    p_exp_odd,
)

# Series path for e_e / e_o stays below this; past it the Bessel forms take over.
_SERIES_X_MAX = 600.0
PMF_TAIL = 1e-16
PMF_GUARD = 10


def _check_x(x: float) -> float:
    x = float(x)
    if not x >= 0:
        raise ValueError(f"x = |alpha|^2 must be non-negative, got {x}")
    return x


@dataclass(frozen=True)
class ModeSplit:
    p_even: float
    p_odd: float
    d: float


@dataclass(frozen=True)
class MomentPair:
    mean: float
    variance: float


def _bessel_split(x: float, p: int) -> tuple[float, float]:
    ratio = parity_ratio(x, p)
    return 1.0 / (1.0 + ratio), ratio / (1.0 + ratio)


def mode_split(x: float, p: int) -> ModeSplit:
    """Even/odd occupation probabilities of |alpha> and their difference D.

    ``p_even``/``p_odd`` come from the p-exponential series, ``d`` from the
    Bessel-function ratio, so the two routes can be compared.
    """
    x = _check_x(x)
    check_order(p)
    if x == 0:
        return ModeSplit(1.0, 0.0, 1.0)
    be, bo = _bessel_split(x, p)
    if x <= _SERIES_X_MAX:
        ee, eo = p_exp_even(x, p), p_exp_odd(x, p)
        pe, po = ee / (ee + eo), eo / (ee + eo)
    else:
        pe, po = be, bo
    return ModeSplit(pe, po, mode_difference(x, p))


def log_p_exp_part(x: float, p: int, part: Literal["even", "odd"]) -> float:
    """log e_e(x) or log e_o(x) for x > 0, beyond the double range if needed."""
    if x <= _SERIES_X_MAX:
        return math.log(p_exp_even(x, p) if part == "even" else p_exp_odd(x, p))
    nu = (p - 2) / 2.0 + (0.0 if part == "even" else 1.0)
    return (
        ((2 - p) / 2.0) * math.log(x / 2.0) + math.lgamma(p / 2.0)
        + math.log(bessel_i_scaled(nu, x)) + x
    )


def p_poisson_pmf(n: int, x: float, p: int) -> float:
    """Probability of n quanta in a coherent state with |alpha|^2 = x."""
    check_occupation(n)
    check_order(p)
    x = _check_x(x)
    if x == 0:
        return 1.0 if n == 0 else 0.0
    return math.exp(n * math.log(x) - math.log(p_factorial(n, p)) - log_p_exp(x, p))


def pmf_cutoff(x: float, p: int) -> int:
    """Last index kept when tabulating the p-Poisson law (tail bound plus guard)."""
    x = _check_x(x)
    check_order(p)
    if x == 0:
        return PMF_GUARD
    logp = -log_p_exp(x, p)
    logx = math.log(x)
    n = 0
    while True:
        nxt = x / step_factor(n, p)
        # past the mode terms fall geometrically with ratio <= nxt
        if n > x and nxt < 1 and logp + math.log(1.0 / (1.0 - nxt)) < math.log(PMF_TAIL):
            return n + PMF_GUARD
        logp += logx - math.log(step_factor(n, p))
        n += 1


def pmf_table(x: float, p: int, cutoff: int | None = None) -> list[float]:
    """p-Poisson probabilities for n = 0..cutoff by the one-step recurrence."""
    x = _check_x(x)
    check_order(p)
    if cutoff is None:
        cutoff = pmf_cutoff(x, p)
    if x == 0:
        return [1.0] + [0.0] * cutoff
    logp = -log_p_exp(x, p)
    logx = math.log(x)
    out = []
    for n in range(cutoff + 1):
        out.append(math.exp(logp))
        logp += logx - math.log(step_factor(n, p))
    return out


def pmf_moments(x: float, p: int) -> MomentPair:
    """Mean and variance by direct summation over the tabulated p-Poisson law."""
    probs = pmf_table(x, p)
    mean = math.fsum(n * w for n, w in enumerate(probs))
    var = math.fsum((n - mean) ** 2 * w for n, w in enumerate(probs))
    return MomentPair(mean, var)


def p_poisson_asymptotic(n: int, x: float, p: int, regime: Literal["small", "large"],
                         reading: Literal["derived", "printed-floor", "printed"] = "derived"
                         ) -> float:
    """Small- or large-x approximation to the p-Poisson law, for validation only.

    For the large-x branch, ``reading="derived"`` uses the leading asymptotics
    of the Bessel form of e_p; the two ``printed`` readings keep the
    2^{(p-1)/2} prefactor and the x^{n - [(p-1)/2]} power (bracket read as
    floor, or literally).
    """
    check_occupation(n)
    check_order(p)
    x = _check_x(x)
    log_fact = math.log(p_factorial(n, p))
    if regime == "small":
        if x > 0.1:
            raise ValueError("small-x regime needs x <= 0.1")
        if x == 0:
            return 1.0 if n == 0 else 0.0
        return math.exp(n * math.log(x) - log_fact) * (1.0 - x / p)
    if regime != "large":
        raise ValueError(f"unknown regime {regime!r}")
    if x < max(10.0, p):
        raise ValueError(f"large-x regime needs x >= max(10, p) = {max(10.0, p)}")
    shift = (p - 1) / 2.0
    if reading == "derived":
        log_pre = 0.5 * math.log(math.pi) - shift * math.log(2) - math.lgamma(p / 2.0)
        power = n + shift
    elif reading in ("printed-floor", "printed"):
        log_pre = shift * math.log(2) + 0.5 * math.log(math.pi) - math.lgamma(p / 2.0)
        power = n - (math.floor(shift) if reading == "printed-floor" else shift)
    else:
        raise ValueError(f"unknown reading {reading!r}")
    return math.exp(log_pre + power * math.log(x) - x - log_fact)


def coherent_moments(x: float, p: int) -> MomentPair:
    """Closed-form mean and variance of the number of quanta in |alpha>.

    mean = x + (1-p)/2 - D(1-p)/2 and
    variance = x + (1-p)^2/4 + D(1-p)x - D^2(1-p)^2/4, evaluated as
    x - (p-1)P_o and x - (p-1)Dx + (p-1)^2 P_e P_o to avoid cancelling 1 - D.
    """
    x = _check_x(x)
    check_order(p)
    if x == 0:
        return MomentPair(0.0, 0.0)
    pe, po = _bessel_split(x, p)
    d = pe - po
    k = p - 1
    return MomentPair(x - k * po, x - k * d * x + k * k * pe * po)


def large_x_moments(x: float, p: int) -> MomentPair:
    """D -> 0 limit of the closed forms."""
    return MomentPair(x + (1 - p) / 2.0, x + (1 - p) ** 2 / 4.0)


def p_gaussian_pdf(n: float, x: float, p: int) -> float:
    m = coherent_moments(x, p)
    if m.variance <= 0:
        raise ValueError("p-Gaussian needs a positive variance (x > 0)")
    sigma = math.sqrt(m.variance)
    y = (n - m.mean) / sigma
    return math.exp(-0.5 * y * y) / (sigma * math.sqrt(2 * math.pi))


# sigma^-2 constant term for even n, odd n, and the y^2 coefficient
_PRINTED = {
    "even": lambda p: 1 / 12 + p / 4 - p * p / 4,
    "odd": lambda p: -5 / 12 + 3 * p / 4 - p * p / 4,
    "y2": lambda p: 1 / 8 + p / 2 - p * p / 4,
}
_CONSISTENT = {
    "even": lambda p: 1 / 12 - (p - 1) / 4,
    "odd": lambda p: 1 / 12 + (p - 1) / 4,
    "y2": lambda p: 3 / 8,
}


def p_gaussian_correction(n: int, x: float, p: int,
                          coefficients: Literal["consistent", "printed"] = "consistent"
                          ) -> float:
    """p-Gaussian density with the 1/sigma and 1/sigma^2 Stirling corrections.

    ``coefficients="printed"`` uses the p-dependent sigma^-2 coefficients as
    published; the default ``"consistent"`` set is the one that matches the
    exact law when y is measured with the true mean and variance (the two
    differ by -(p-1)^2/4 * (1 - y^2)).  Both reduce to the Poisson case at p = 1.
    """
    check_occupation(n)
    check_order(p)
    if x < 10:
        raise ValueError("Stirling-corrected p-Gaussian needs x >= 10")
    table = {"consistent": _CONSISTENT, "printed": _PRINTED}[coefficients]
    m = coherent_moments(x, p)
    sigma = math.sqrt(m.variance)
    y = (n - m.mean) / sigma
    const = table["odd" if n % 2 else "even"](p)
    first = y / 2 - y ** 3 / 6
    second = const - y * y * table["y2"](p) + y ** 4 / 6 - y ** 6 / 72
    base = math.exp(-0.5 * y * y) / (sigma * math.sqrt(2 * math.pi))
    return base * (1.0 - first / sigma - second / sigma ** 2)


def overlap_parts(alpha: complex, beta: complex, p: int) -> tuple[complex, complex]:
    """Even- and odd-sector contributions to <alpha|beta>.

    Each is sqrt(P(a) P(b)) <alpha_i|beta_i>, which simplifies to
    e_i(conj(alpha) beta) / sqrt(e_p(|alpha|^2) e_p(|beta|^2)); the
    even-odd cross term is identically zero and never formed.
    """
    check_order(p)
    alpha, beta = complex(alpha), complex(beta)
    z = alpha.conjugate() * beta
    norm = math.exp(-0.5 * (log_p_exp(abs(alpha) ** 2, p) + log_p_exp(abs(beta) ** 2, p)))
    return p_exp_even(z, p) * norm, p_exp_odd(z, p) * norm


def overlap(alpha: complex, beta: complex, p: int) -> complex:
    even, odd = overlap_parts(alpha, beta, p)
    return even + odd


def parity_component_norms(alpha: complex, p: int) -> tuple[float, float]:
    """Norms sqrt(2 P_e), sqrt(2 P_o) of |alpha_+> and |alpha_->."""
    split = mode_split(abs(complex(alpha)) ** 2, p)
    return math.sqrt(2 * split.p_even), math.sqrt(2 * split.p_odd)


def _euler_weight(n: int, p: int) -> tuple[float, float]:
    # even n pairs with K_{(p-2)/2}, odd n with K_{p/2}
    nu = (p - 2) / 2.0 if n % 2 == 0 else p / 2.0
    log_pre = ((2 - p) / 2.0) * math.log(2) - math.lgamma(p / 2.0)
    return nu, log_pre


def gamma_generalized(n: int, p: int, spec: QuadratureSpec | None = None) -> float:
    """(n)_p! from its K-Bessel integral representation, by quadrature."""
    check_occupation(n)
    check_order(p)
    if n > 30:
        raise ValueError("gamma_generalized is budgeted for n <= 30")
    nu, log_pre = _euler_weight(n, p)
    power = p / 2.0 + n

    def integrand(t: float) -> float:
        return math.exp(power * math.log(t) + log_bessel_k(nu, t))

    value, _ = integrate_semi_infinite(integrand, spec)
    return math.exp(log_pre) * value


def completeness_diagonal(n: int, p: int, spec: QuadratureSpec | None = None) -> float:
    """<n| (1/pi) int d^2alpha mu_i |alpha_i><alpha_i| |n> after the angular integral.

    Uses mu_i(x) = x K_nu(x) I_nu(x) and |<n|alpha_i>|^2 = x^n / ((n)_p! e_i(x)).
    """
    check_occupation(n)
    check_order(p)
    if n > 30:
        raise ValueError("completeness_diagonal is budgeted for n <= 30")
    part = "odd" if n % 2 else "even"
    nu = (p - 2) / 2.0 if part == "even" else p / 2.0
    log_fact = math.log(p_factorial(n, p))

    def integrand(t: float) -> float:
        log_mu = math.log(t) + log_bessel_k(nu, t) + log_bessel_i(nu, t)
        return math.exp(log_mu + n * math.log(t) - log_fact - log_p_exp_part(t, p, part))

    value, _ = integrate_semi_infinite(integrand, spec)
    return value
