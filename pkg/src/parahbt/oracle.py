"""Brute-force truth source on a truncated number basis.

Operators are dense numpy matrices built straight from the ladder
coefficients, coherent states from the eigenvalue recurrence, thermal
correlations from normally ordered traces.  Nothing here uses the
p-exponential or any closed form, so agreement with the analytic modules
is a genuine check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra
from .hbt import CorrelationValue, ThermalState

COHERENT_TAIL = 1e-12
THERMAL_TAIL = 1e-12
_EPS = 2.220446049250313e-16


class TruncationError(ArithmeticError):
    """Basis too small for the requested accuracy."""

    def __init__(self, message: str, tail: float):
        super().__init__(message)
        self.tail = tail


@dataclass(frozen=True)
class TruncatedBasis:
    cutoff: int
    p: int

    def __post_init__(self):
        algebra.check_order(self.p)
        if self.cutoff < 2:
            raise ValueError("cutoff must be >= 2")

    @property
    def dim(self) -> int:
        return self.cutoff + 1


def build_ladder(basis: TruncatedBasis) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(a, a_dag, n_op) on span{|0>, ..., |cutoff>}.

    a sits on the superdiagonal (a|n> = c_n |n-1>), a_dag on the
    subdiagonal.  The two are filled from separate coefficient functions,
    so their being exact transposes is a check, not a construction.
    """
    dim = basis.dim
    a = np.zeros((dim, dim))
    for n in range(1, dim):
        a[n - 1, n] = algebra.ladder_down_coeff(n, basis.p)
    a_dag = np.zeros((dim, dim))
    for n in range(dim - 1):
        a_dag[n + 1, n] = algebra.ladder_up_coeff(n, basis.p)
    n_op = np.diag(np.arange(dim, dtype=float))
    return a, a_dag, n_op


def trilinear_residual(basis: TruncatedBasis) -> float:
    """max |[a, {a_dag, a}] - 2a| on the block unaffected by truncation."""
    a, a_dag, _ = build_ladder(basis)
    anti = a_dag @ a + a @ a_dag
    lhs = a @ anti - anti @ a
    k = basis.dim - 1
    return float(np.max(np.abs(lhs[:k, :k] - 2 * a[:k, :k])))


def coherent_cutoff(x: float, p: int, tail: float = 1e-14, guard: int = 10) -> int:
    """Smallest n whose geometric tail bound on |<m|alpha>|^2 (m > n) is below ``tail``, plus guard."""
    algebra.check_order(p)
    if x == 0:
        return guard
    # unnormalized weights x^n / (n)_p!, tracked in logs against a running total
    log_w = 0.0
    log_total = 0.0
    n = 0
    while True:
        step = algebra.step_factor(n, p)
        rho = x / step
        if n > x and rho < 1:
            bound = log_w + math.log(rho / (1 - rho)) - log_total
            if bound < math.log(tail):
                return n + guard
        log_w += math.log(x) - math.log(step)
        log_total = max(log_total, log_w) + math.log1p(math.exp(-abs(log_total - log_w)))
        n += 1


def coherent_vector(alpha: complex, basis: TruncatedBasis) -> tuple[np.ndarray, float]:
    """Normalized amplitudes <n|alpha> and the probability tail beyond the cutoff.

    Built by v_{n+1} = alpha v_n / c_n^+ (the eigenvalue equation read
    upward) and normalized numerically.
    """
    alpha = complex(alpha)
    v = np.zeros(basis.dim, dtype=complex)
    v[0] = 1.0
    for n in range(basis.cutoff):
        v[n + 1] = alpha * v[n] / algebra.ladder_up_coeff(n, basis.p)
    # rescale before squaring so large |alpha| cannot overflow
    v /= np.max(np.abs(v))
    norm2 = float(np.sum(np.abs(v) ** 2))
    last = abs(v[-1]) ** 2 / norm2
    rho = abs(alpha) ** 2 / algebra.step_factor(basis.cutoff, basis.p)
    tail = math.inf if rho >= 1 else last * rho / (1 - rho)
    if tail > COHERENT_TAIL:
        raise TruncationError(
            f"cutoff {basis.cutoff} leaves tail {tail:.3g} > {COHERENT_TAIL:g}", tail
        )
    return v / math.sqrt(norm2), tail


def parity_vectors(alpha: complex, basis: TruncatedBasis) -> tuple[np.ndarray, np.ndarray]:
    """(|alpha_+>, |alpha_->) = (|alpha> +- |-alpha>) / sqrt(2)."""
    plus, _ = coherent_vector(alpha, basis)
    minus, _ = coherent_vector(-complex(alpha), basis)
    return (plus + minus) / math.sqrt(2), (plus - minus) / math.sqrt(2)


def eigen_residual(alpha: complex, basis: TruncatedBasis) -> float:
    """|| a v - alpha v || for the truncated coherent vector."""
    a, _, _ = build_ladder(basis)
    v, _ = coherent_vector(alpha, basis)
    return float(np.linalg.norm(a @ v - alpha * v))


def parity_swap_residual(alpha: complex, basis: TruncatedBasis) -> float:
    """max of || a|alpha_+> - alpha|alpha_-> || and the mirrored residual."""
    a, _, _ = build_ladder(basis)
    plus, minus = parity_vectors(alpha, basis)
    return float(max(np.linalg.norm(a @ plus - alpha * minus),
                     np.linalg.norm(a @ minus - alpha * plus)))


def poisson_from_overlap(n: int, alpha: complex, basis: TruncatedBasis | None = None) -> float:
    """|<n|alpha>|^2 read off the truncated coherent vector."""
    algebra.check_occupation(n)
    if basis is None:
        raise ValueError("poisson_from_overlap needs a TruncatedBasis")
    if n > basis.cutoff:
        raise ValueError("n lies outside the truncated basis")
    v, _ = coherent_vector(alpha, basis)
    return float(abs(v[n]) ** 2)


def thermal_cutoff(order: int, state: ThermalState) -> int:
    """Starting cutoff for thermal traces: geometric decay to 1e-14 plus 2p, at least 4n."""
    return max(4 * order, math.ceil(math.log(1e-14) / _log_q(state)) + 2 * state.p)


def _log_q(state: ThermalState) -> float:
    # log q = -log(1 + 1/<N>), kept accurate as q -> 1
    return -math.log1p(1.0 / state.mean_n)


def _ratio_terms(order: int, state: ThermalState, cutoff: int) -> np.ndarray:
    """P(m) <m|a_dag^n a^n|m> for m = order..cutoff, in floating point."""
    p = state.p
    m = np.arange(order, cutoff + 1, dtype=float)
    ratio = np.ones_like(m)
    for k in range(order):
        j = m - order + k
        ratio *= np.where(j % 2 == 0, j + p, j + 1)
    return np.exp(m * _log_q(state)) * ratio / (1.0 + state.mean_n)


def thermal_g(order: int, state: ThermalState, basis: TruncatedBasis | None = None
              ) -> CorrelationValue:
    """c_bar^n sum_m P(m) (m)_p!/(m-n)_p! with a rigorous tail bound.

    Without an explicit basis the cutoff starts at :func:`thermal_cutoff`
    and doubles until the tail bound falls below 1e-12 of the sum.  The
    reported err_est is that tail bound plus a rounding allowance.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    q = state.q
    cutoff = basis.cutoff if basis is not None else thermal_cutoff(order, state)
    while True:
        terms = _ratio_terms(order, state, cutoff)
        total = math.fsum(terms.tolist())
        # term ratio beyond M is q step(M)/step(M-n) <= q (M+p)/(M-n+1)
        rho = q * (cutoff + state.p) / (cutoff - order + 1)
        tail = math.inf if rho >= 1 else float(terms[-1]) * rho / (1 - rho)
        if tail <= THERMAL_TAIL * total:
            break
        if basis is not None:
            raise TruncationError(f"cutoff {cutoff} leaves relative tail {tail / total:.3g}",
                                  tail / total)
        cutoff *= 2
    rounding = 8 * _EPS * (1 + cutoff * abs(_log_q(state)) + order) * total
    scale = state.c_bar ** order
    return CorrelationValue(order, scale * total, "fock-oracle", scale * (tail + rounding))


def thermal_g_matrix(order: int, state: ThermalState, basis: TruncatedBasis) -> float:
    """Tr[rho a_dag^n a^n] from explicit matrix powers (small cutoffs only).

    a^n only lowers, so the product is exact on the kept block; the only
    error is the thermal weight beyond the cutoff.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    a, a_dag, _ = build_ladder(basis)
    moment = np.linalg.matrix_power(a_dag, order) @ np.linalg.matrix_power(a, order)
    weights = np.exp(np.arange(basis.dim) * _log_q(state)) / (1.0 + state.mean_n)
    return state.c_bar ** order * float(np.sum(weights * np.diag(moment)))


__all__ = [
    "TruncatedBasis", "TruncationError", "build_ladder", "coherent_cutoff",
    "coherent_vector", "eigen_residual", "parity_swap_residual", "parity_vectors",
    "poisson_from_overlap", "thermal_cutoff", "thermal_g", "thermal_g_matrix",
    "trilinear_residual",
]
