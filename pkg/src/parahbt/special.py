"""Real-argument special functions used throughout the package.

Modified Bessel functions follow Temme's series for small arguments and
Steed's continued fraction for large ones (both for K), with I obtained
from the CF1 ratio and the Wronskian; the Hankel asymptotic series takes
over for I at large x.  Only orders with 2*nu an integer >= -1 are
supported, which is all the paraboson formulas ever need.
"""

from __future__ import annotations

import math

from .algebra import check_order, step_factor

EULER_GAMMA = 0.57721566490153286061
_EPS = 1e-16
_FPMIN = 1e-300
_MAXIT = 100_000
_ASYMPTOTIC_X = 50.0
_MAX_EXP_ARG = 709.0
# below this the leading small-argument terms are exact to rounding
_SMALL_X = 1e-8


def gamma_fn(x: float) -> float:
    if x <= 0:
        raise ValueError(f"gamma_fn is only defined here for x > 0, got {x}")
    return math.gamma(x)


def check_bessel_order(nu: float) -> float:
    twice = 2.0 * nu
    if twice != round(twice) or twice < -1:
        raise ValueError(f"Bessel order must be k/2 with integer k >= -1, got {nu}")
    return float(nu)


# ---------------------------------------------------------------------------
# Modified Bessel functions


def _temme_gammas(xmu: float) -> tuple[float, float, float, float]:
    """gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu) for |mu| <= 1/2."""
    if xmu == 0.0:
        return -EULER_GAMMA, 1.0, 1.0, 1.0
    gampl = 1.0 / math.gamma(1.0 + xmu)
    gammi = 1.0 / math.gamma(1.0 - xmu)
    return (gammi - gampl) / (2.0 * xmu), (gammi + gampl) / 2.0, gampl, gammi


def _k_pair_scaled(xmu: float, x: float) -> tuple[float, float]:
    """e^x K_mu(x) and e^x K_{mu+1}(x) for |mu| <= 1/2."""
    xi = 1.0 / x
    xmu2 = xmu * xmu
    if x < 2.0:
        x2 = 0.5 * x
        pimu = math.pi * xmu
        fact = 1.0 if abs(pimu) < _EPS else pimu / math.sin(pimu)
        d = -math.log(x2)
        e = xmu * d
        fact2 = 1.0 if abs(e) < _EPS else math.sinh(e) / e
        gam1, gam2, gampl, gammi = _temme_gammas(xmu)
        ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
        total = ff
        e = math.exp(e)
        pp = 0.5 * e / gampl
        qq = 0.5 / (e * gammi)
        c = 1.0
        d = x2 * x2
        total1 = pp
        for i in range(1, _MAXIT):
            ff = (i * ff + pp + qq) / (i * i - xmu2)
            c *= d / i
            pp /= i - xmu
            qq /= i + xmu
            delta = c * ff
            total += delta
            total1 += c * (pp - i * ff)
            if abs(delta) < abs(total) * _EPS:
                break
        else:
            raise ArithmeticError("Temme series for K did not converge")
        scale = math.exp(x)
        return total * scale, total1 * 2.0 * xi * scale
    # Steed's CF2 with Thompson-Barnett summation
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25 - xmu2
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, _MAXIT):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _EPS:
            break
    else:
        raise ArithmeticError("Steed CF2 for K did not converge")
    h = a1 * h
    kmu = math.sqrt(math.pi / (2.0 * x)) / s
    k1 = kmu * (xmu + x + 0.5 - h) * xi
    return kmu, k1


def _split_order(nu: float) -> tuple[int, float]:
    nl = int(nu + 0.5)
    return nl, nu - nl


def _k_scaled_nonneg(nu: float, x: float) -> tuple[float, float]:
    """e^x K_nu(x), e^x K_{nu+1}(x) for nu >= 0 by upward recurrence."""
    nl, xmu = _split_order(nu)
    kmu, k1 = _k_pair_scaled(xmu, x)
    xi2 = 2.0 / x
    for i in range(1, nl + 1):
        kmu, k1 = k1, (xmu + i) * xi2 * k1 + kmu
    return kmu, k1


def _i_scaled_asymptotic(nu: float, x: float) -> float:
    """Hankel expansion of e^{-x} I_nu(x); the e^{-2x} branch is dropped."""
    mu4 = 4.0 * nu * nu
    term = 1.0
    total = 1.0
    prev = math.inf
    for k in range(1, 200):
        term *= -(mu4 - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if term == 0.0:
            break
        if abs(term) > prev:  # series turned divergent; stop at smallest term
            break
        total += term
        prev = abs(term)
        if prev < _EPS * abs(total):
            break
    return total / math.sqrt(2.0 * math.pi * x)


def _ik_scaled_nonneg(nu: float, x: float) -> tuple[float, float]:
    """(e^{-x} I_nu(x), e^{x} K_nu(x)) for nu >= 0, x > 0."""
    knu, knu1 = _k_scaled_nonneg(nu, x)
    if x >= _ASYMPTOTIC_X:
        return _i_scaled_asymptotic(nu, x), knu
    # CF1 (modified Lentz) for I'_nu / I_nu
    xi = 1.0 / x
    xi2 = 2.0 * xi
    h = max(nu * xi, _FPMIN)
    b = xi2 * nu
    d = 0.0
    c = h
    for _ in range(_MAXIT):
        b += xi2
        d = 1.0 / (b + d)
        c = b + 1.0 / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    else:
        raise ArithmeticError("CF1 for I did not converge")
    # Wronskian: I_nu K_{nu+1} + I_{nu+1} K_nu = 1/x with I_{nu+1}/I_nu = f - nu/x
    ratio = h - nu * xi
    inu = xi / (knu1 + ratio * knu)
    return inu, knu


def bessel_ik_scaled(nu: float, x: float) -> tuple[float, float]:
    """Exponentially scaled pair (e^{-x} I_nu(x), e^{x} K_nu(x)) for x > 0."""
    nu = check_bessel_order(nu)
    if x <= 0:
        raise ValueError("bessel_ik_scaled needs x > 0")
    if nu >= 0:
        return _ik_scaled_nonneg(nu, x)
    # nu = -1/2: K is even in the order; I_{-nu} = I_nu + (2/pi) sin(nu pi) K_nu
    ive, kve = _ik_scaled_nonneg(-nu, x)
    return ive + (2.0 / math.pi) * kve * math.exp(-2.0 * x), kve


def bessel_i_scaled(nu: float, x: float) -> float:
    """e^{-x} I_nu(x)."""
    nu = check_bessel_order(nu)
    if x < 0:
        raise ValueError("bessel_i_scaled needs x >= 0")
    if x == 0:
        return bessel_i(nu, 0.0)
    if nu >= 0 and x < _SMALL_X:
        # two series terms; K in the Wronskian route would overflow down here
        lead = math.exp(nu * (math.log(x) - math.log(2.0)) - math.lgamma(nu + 1.0) - x)
        return lead * (1.0 + x * x / (4.0 * (nu + 1.0)))
    if nu >= 0 and x >= _ASYMPTOTIC_X:
        return _i_scaled_asymptotic(nu, x)
    return bessel_ik_scaled(nu, x)[0]


def bessel_k_scaled(nu: float, x: float) -> float:
    """e^{x} K_nu(x)."""
    nu = check_bessel_order(nu)
    if x <= 0:
        raise ValueError(f"K_nu diverges at x = {x}; need x > 0")
    return _k_scaled_nonneg(abs(nu), x)[0]


def bessel_i(nu: float, x: float) -> float:
    """Modified Bessel function of the first kind I_nu(x), x >= 0."""
    nu = check_bessel_order(nu)
    if x < 0:
        raise ValueError("bessel_i needs x >= 0")
    if x == 0:
        if nu == 0:
            return 1.0
        if nu > 0:
            return 0.0
        raise OverflowError("I_{-1/2} diverges at x = 0")
    if x > _MAX_EXP_ARG:
        raise OverflowError(f"I_nu({x}) exceeds the double range; use bessel_i_scaled")
    return bessel_i_scaled(nu, x) * math.exp(x)


def bessel_k(nu: float, x: float) -> float:
    """Modified Bessel function of the second kind K_nu(x), x > 0."""
    return bessel_k_scaled(nu, x) * math.exp(-x)


def log_bessel_i(nu: float, x: float) -> float:
    """log I_nu(x) for x > 0 without overflow or underflow at either end."""
    nu = check_bessel_order(nu)
    if x <= 0:
        raise ValueError("log_bessel_i needs x > 0")
    if x < _SMALL_X:
        # leading power term; relative correction O(x^2)
        return nu * (math.log(x) - math.log(2.0)) - math.lgamma(nu + 1.0)
    return math.log(bessel_i_scaled(nu, x)) + x


def log_bessel_k(nu: float, x: float) -> float:
    """log K_nu(x) for x > 0 without overflow or underflow at either end."""
    nu = abs(check_bessel_order(nu))
    if x <= 0:
        raise ValueError("log_bessel_k needs x > 0")
    if x < _SMALL_X:
        if nu == 0:
            return math.log(math.log(2.0) - math.log(x) - EULER_GAMMA)
        if nu == 0.5:
            return 0.5 * math.log(math.pi / (2.0 * x)) - x
        # relative correction O(x^2 log x) at nu = 1, O(x^2) above
        return math.lgamma(nu) - math.log(2.0) + nu * (math.log(2.0) - math.log(x))
    return math.log(bessel_k_scaled(nu, x)) - x


# ---------------------------------------------------------------------------
# Gauss hypergeometric function


class HypergeometricError(ArithmeticError):
    """Series for 2F1 did not reach tolerance within its term budget."""

    def __init__(self, message: str, value: float, bound: float):
        super().__init__(message)
        self.value = value
        self.bound = bound


def _nonpositive_int(v: float) -> bool:
    return v <= 0 and v == round(v)


def _terminating_2f1(a: float, b: float, c: float, z: float) -> float:
    # a is a non-positive integer
    term = 1.0
    total = 1.0
    for k in range(int(round(-a))):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
    return total


def _series_2f1(a, b, c, z, rel_tol, max_terms) -> tuple[float, float]:
    """Direct Gauss series with a ratio-test tail bound; returns (value, bound)."""
    term = 1.0
    total = 1.0
    for k in range(max_terms):
        ratio = (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        term *= ratio
        total += term
        if k > abs(a) + abs(b) + abs(c):
            # past the hump the term ratio is monotone towards z
            rho = abs(z) * max(1.0, abs(ratio / z) if z else 0.0)
            if rho < 1.0:
                nxt = abs(term) * rho
                bound = nxt / (1.0 - rho)
                if bound <= rel_tol * abs(total):
                    return total, bound
    rho = abs(z)
    bound = abs(term) * rho / (1.0 - rho) if rho < 1 else math.inf
    raise HypergeometricError(
        f"2F1({a}, {b}; {c}; {z}) series not converged after {max_terms} terms",
        total, bound,
    )


def hyp2f1_series(a: float, b: float, c: float, z: float, rel_tol: float = 1e-15,
                  max_terms: int = 2_000_000) -> tuple[float, float]:
    """Plain Gauss series for 0 <= z < 1; returns ``(value, tail_bound)``."""
    if _nonpositive_int(c):
        raise ValueError("c must not be a non-positive integer")
    if not 0.0 <= z < 1.0:
        raise ValueError(f"hyp2f1 needs 0 <= z < 1, got {z}")
    if z == 0.0:
        return 1.0, 0.0
    return _series_2f1(a, b, c, z, rel_tol, max_terms)


def hyp2f1(a: float, b: float, c: float, z: float, rel_tol: float = 1e-15,
           max_terms: int = 2_000_000) -> float:
    """Gauss hypergeometric function 2F1(a, b; c; z) for real 0 <= z < 1.

    Terminating cases (directly, or after Euler's transformation) are summed
    exactly; otherwise the Gauss series is used for z <= 0.9 and the
    z -> 1 - z connection formula beyond, unless c - a - b is an integer,
    in which case the series runs until it meets ``rel_tol`` or raises
    :class:`HypergeometricError` with the partial value and a tail bound.
    """
    if _nonpositive_int(c):
        raise ValueError("c must not be a non-positive integer")
    if not 0.0 <= z < 1.0:
        raise ValueError(f"hyp2f1 needs 0 <= z < 1, got {z}")
    if z == 0.0:
        return 1.0
    if _nonpositive_int(a):
        return _terminating_2f1(a, b, c, z)
    if _nonpositive_int(b):
        return _terminating_2f1(b, a, c, z)
    # Euler: 2F1(a,b;c;z) = (1-z)^{c-a-b} 2F1(c-a, c-b; c; z)
    if _nonpositive_int(c - a):
        return (1.0 - z) ** (c - a - b) * _terminating_2f1(c - a, c - b, c, z)
    if _nonpositive_int(c - b):
        return (1.0 - z) ** (c - a - b) * _terminating_2f1(c - b, c - a, c, z)
    s = c - a - b
    if z <= 0.9 or s == round(s):
        return _series_2f1(a, b, c, z, rel_tol, max_terms)[0]
    w = 1.0 - z
    g = math.gamma
    first = g(c) * g(s) / (g(c - a) * g(c - b)) * hyp2f1(a, b, 1.0 - s, w, rel_tol, max_terms)
    second = (
        g(c) * g(-s) / (g(a) * g(b)) * w ** s
        * hyp2f1(c - a, c - b, 1.0 + s, w, rel_tol, max_terms)
    )
    return first + second


# ---------------------------------------------------------------------------
# p-exponential family


def _p_exp_parts(x, p: int, max_terms: int = 100_000):
    """Series sums (even part, odd part) of sum_n x^n / (n)_p!."""
    check_order(p)
    if isinstance(x, complex):
        ax = abs(x)
    else:
        ax = abs(float(x))
    if ax > _MAX_EXP_ARG:
        raise OverflowError(f"p-exponential of |x| = {ax} overflows a double")
    term = x * 0 + 1.0
    even = term
    odd = term * 0
    peak = 1.0
    for n in range(max_terms):
        term = term * x / step_factor(n, p)
        if n % 2 == 0:
            odd = odd + term
        else:
            even = even + term
        mag = abs(term)
        peak = max(peak, mag)
        if n + 1 > ax and mag <= 1e-18 * max(abs(even), abs(odd), 1e-300 * peak):
            break
    else:
        raise ArithmeticError("p-exponential series did not converge")
    return even, odd


def p_exp_even(x, p: int):
    """Even part of the p-exponential; accepts real or complex x."""
    return _p_exp_parts(x, p)[0]


def p_exp_odd(x, p: int):
    """Odd part of the p-exponential; accepts real or complex x."""
    return _p_exp_parts(x, p)[1]


def p_exp(x, p: int):
    even, odd = _p_exp_parts(x, p)
    return even + odd


def p_exp_bessel(x: float, p: int) -> tuple[float, float]:
    """(e_e(x), e_o(x)) for real x > 0 through modified Bessel functions."""
    check_order(p)
    if x <= 0:
        raise ValueError("p_exp_bessel needs x > 0")
    pre = (x / 2.0) ** ((2 - p) / 2.0) * math.gamma(p / 2.0)
    return pre * bessel_i((p - 2) / 2.0, x), pre * bessel_i(p / 2.0, x)


def log_p_exp(x: float, p: int) -> float:
    """log e_p(x) for real x >= 0, valid past the double range of e_p itself."""
    check_order(p)
    if x < 0:
        raise ValueError("log_p_exp needs x >= 0")
    if x <= _MAX_EXP_ARG - 50:
        return math.log(p_exp(float(x), p))
    nu = (p - 2) / 2.0
    ie = bessel_i_scaled(nu, x)
    io = bessel_i_scaled(nu + 1.0, x)
    return ((2 - p) / 2.0) * (math.log(x) - math.log(2.0)) + math.lgamma(p / 2.0) + math.log(ie + io) + x


def mode_difference(x: float, p: int) -> float:
    """(I_{(p-2)/2} - I_{p/2}) / (I_{(p-2)/2} + I_{p/2}) at x; equals 1 at x = 0."""
    check_order(p)
    if x < 0:
        raise ValueError("mode_difference needs x >= 0")
    if x == 0:
        return 1.0
    if p == 1:
        # cosh/sinh split; the general difference would cancel to zero
        return math.exp(-2.0 * x)
    if x < _SMALL_X:
        ratio = parity_ratio(x, p)
        return (1.0 - ratio) / (1.0 + ratio)
    nu = (p - 2) / 2.0
    ie = bessel_i_scaled(nu, x)
    io = bessel_i_scaled(nu + 1.0, x)
    return (ie - io) / (ie + io)


def parity_ratio(x: float, p: int) -> float:
    """I_{p/2}(x) / I_{(p-2)/2}(x), i.e. e_o / e_e, for x > 0."""
    check_order(p)
    if not x > 0:
        raise ValueError("parity_ratio needs x > 0")
    nu = (p - 2) / 2.0
    return math.exp(log_bessel_i(nu + 1.0, x) - log_bessel_i(nu, x))


__all__ = [
    "EULER_GAMMA", "HypergeometricError", "bessel_i", "bessel_i_scaled",
    "bessel_ik_scaled", "bessel_k", "bessel_k_scaled", "check_bessel_order",
    "gamma_fn", "hyp2f1", "hyp2f1_series", "log_bessel_i", "log_bessel_k", "log_p_exp",
    "mode_difference", "p_exp", "p_exp_bessel", "p_exp_even", "p_exp_odd", "parity_ratio",
]
