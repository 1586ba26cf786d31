"""Invariant suites behind ``parahbt verify``.

Each suite returns a list of :class:`Check` records; nothing here raises on
a failed invariant, so one bad module cannot hide the others.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import algebra, coherent, hbt, oracle, special
from .quadrature import QuadratureSpec

GRID_P = (1, 2, 3, 4, 5)
GRID_MEAN = (0.1, 0.5, 1.0, 2.0, 10.0)
GRID_ORDER = (1, 2, 3, 4)
ANALYTIC_TOL = 1e-8
QUADRATURE_TOL = 1e-6


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    detail: str


def _check(suite: str, name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, reported with its cause
        return Check(suite, name, False, f"{type(exc).__name__}: {exc}")
    return Check(suite, name, bool(ok), detail)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


@dataclass(frozen=True)
class FourWay:
    """All four G^(n) routes at one grid point, with the pairwise verdicts."""

    order: int
    state: hbt.ThermalState
    values: dict[str, hbt.CorrelationValue]
    analytic_spread: float
    quadrature_spread: float
    oracle_excess: float

    @property
    def passed(self) -> bool:
        return (self.analytic_spread < ANALYTIC_TOL and self.quadrature_spread < QUADRATURE_TOL
                and self.oracle_excess <= 0)


def four_way(order: int, state: hbt.ThermalState, spec: QuadratureSpec | None = None) -> FourWay:
    vals = {
        "closed-form": hbt.g_closed(order, state),
        "hypergeometric": hbt.g_hypergeometric(order, state),
        "quadrature": hbt.g_quadrature(order, state, spec),
        "fock-oracle": oracle.thermal_g(order, state),
    }
    closed, hyp = vals["closed-form"].value, vals["hypergeometric"].value
    quad, orc = vals["quadrature"], vals["fock-oracle"]
    analytic = _rel(closed, hyp)
    quad_spread = max(_rel(quad.value, v.value) for k, v in vals.items() if k != "quadrature")
    # oracle must sit within its own bound (plus the analytic rounding) of both analytic values
    excess = max(
        abs(orc.value - v.value) - (orc.err_est + v.err_est)
        for v in (vals["closed-form"], vals["hypergeometric"])
    )
    return FourWay(order, state, vals, analytic, quad_spread, excess)


def suite_algebra() -> list[Check]:
    s = "algebra"

    def bosonic():
        bad = [n for n in range(30) if algebra.p_factorial(n, 1) != math.factorial(n)]
        return not bad, f"p=1 factorial mismatches at {bad}" if bad else "n <= 29"

    def gamma_form():
        worst = max(_rel(algebra.p_factorial_gamma(n, p), algebra.p_factorial(n, p))
                    for n in range(40) for p in range(1, 8))
        return worst < 1e-12, f"max rel diff {worst:.2e}"

    def first():
        ok = all(algebra.p_factorial(1, p) == p for p in range(1, 20))
        return ok, "(1)_p! = p"

    def bifactorial():
        ok = all(
            algebra.pf_factorial(n, p) * math.factorial(p - n) == math.factorial(n) * math.factorial(p)
            for p in range(1, 10) for n in range(p + 1)
        )
        return ok, "{n}_p! = n! p!/(p-n)!"

    def ladder():
        worst = max(abs(algebra.ladder_up_coeff(n, p) ** 2 - algebra.step_factor(n, p))
                    + abs(algebra.ladder_down_coeff(n + 1, p) ** 2 - algebra.step_factor(n, p))
                    for n in range(40) for p in range(1, 6))
        return worst < 1e-9, f"max |c^2 - step| {worst:.2e}"

    def transitions():
        ok = all(
            algebra.pb_transition_prob(algebra.TransitionSpec("paraboson", n, "emission"), p)
            == algebra.pb_transition_prob(algebra.TransitionSpec("paraboson", n + 1, "absorption"), p)
            for n in range(20) for p in range(1, 6)
        )
        return ok, "emission n->n+1 equals absorption n+1->n"

    return [_check(s, "bosonic reduction", bosonic), _check(s, "gamma closed form", gamma_form),
            _check(s, "(1)_p! = p", first), _check(s, "bi-factorial", bifactorial),
            _check(s, "ladder coefficients", ladder), _check(s, "detailed balance", transitions)]


def suite_special() -> list[Check]:
    s = "special-fn"

    def wronskian():
        worst = 0.0
        for nu2, x in itertools.product(range(-1, 10), (0.01, 0.3, 1.0, 2.5, 7.0, 30.0, 80.0, 400.0)):
            nu = nu2 / 2.0
            i0, k0 = special.bessel_ik_scaled(nu, x)
            i1, k1 = special.bessel_ik_scaled(nu + 1, x)
            worst = max(worst, abs(x * (i0 * k1 + i1 * k0) - 1.0))
        return worst < 1e-13, f"max |x W - 1| {worst:.2e}"

    def p_exp_routes():
        worst = 0.0
        for p, x in itertools.product(range(1, 6), (0.1, 1.0, 5.0, 40.0, 200.0)):
            e, o = special.p_exp_bessel(x, p)
            worst = max(worst, _rel(e, special.p_exp_even(x, p)), _rel(o, special.p_exp_odd(x, p)))
        return worst < 1e-12, f"series vs Bessel max rel {worst:.2e}"

    def hyp_log():
        worst = max(_rel(special.hyp2f1(1, 1, 2, z), -math.log1p(-z) / z)
                    for z in (0.1, 0.5, 0.9, 0.95, 0.99))
        return worst < 1e-12, f"2F1(1,1;2;z) max rel {worst:.2e}"

    def hyp_euler():
        worst = max(_rel(special.hyp2f1(a, b, c, z), special.hyp2f1_series(a, b, c, z)[0])
                    for a, b, c in ((3.5, 2.0, 1.5), (2.0, 3.0, 1.0), (4.5, 3.0, 2.5))
                    for z in (0.2, 0.6, 0.85))
        return worst < 1e-12, f"Euler-terminated vs series max rel {worst:.2e}"

    return [_check(s, "Bessel Wronskian", wronskian), _check(s, "p-exponential routes", p_exp_routes),
            _check(s, "2F1 log case", hyp_log), _check(s, "2F1 Euler transform", hyp_euler)]


def suite_coherent() -> list[Check]:
    s = "coherent"

    def normalization():
        worst = max(abs(math.fsum(coherent.pmf_table(x, p)) - 1.0)
                    for p in range(1, 6) for x in (0.1, 1.0, 10.0, 100.0))
        return worst < 1e-12, f"max |sum pmf - 1| {worst:.2e}"

    def moments():
        worst = 0.0
        for p, x in itertools.product(range(1, 6), (0.1, 1.0, 10.0, 100.0)):
            a, b = coherent.coherent_moments(x, p), coherent.pmf_moments(x, p)
            worst = max(worst, _rel(a.mean, b.mean), _rel(a.variance, b.variance))
        return worst < 1e-9, f"closed vs direct max rel {worst:.2e}"

    def split():
        worst = 0.0
        for p, x in itertools.product(range(1, 6), (0.1, 1.0, 10.0)):
            m = coherent.mode_split(x, p)
            probs = coherent.pmf_table(x, p)
            even = math.fsum(probs[0::2])
            worst = max(worst, abs(m.p_even - even), abs(m.p_even - m.p_odd - m.d))
        return worst < 1e-12, f"parity split max abs {worst:.2e}"

    def euler_integral():
        worst = max(_rel(coherent.gamma_generalized(n, p), algebra.p_factorial(n, p))
                    for n in range(0, 9) for p in range(1, 6))
        return worst < 1e-8, f"max rel {worst:.2e}"

    def completeness():
        worst = max(abs(coherent.completeness_diagonal(n, p) - 1.0)
                    for n in range(0, 7) for p in range(1, 6))
        return worst < 1e-7, f"max |diag - 1| {worst:.2e}"

    return [_check(s, "pmf normalization", normalization), _check(s, "moment closed forms", moments),
            _check(s, "parity split", split), _check(s, "generalized Euler integral", euler_integral),
            _check(s, "completeness diagonal", completeness)]


def suite_hbt(quad_tol: float = QUADRATURE_TOL) -> list[Check]:
    s = "hbt"
    out = []
    for p in GRID_P:
        def run(p=p):
            worst_a = worst_q = worst_o = -math.inf
            for mean, order in itertools.product(GRID_MEAN, GRID_ORDER):
                fw = four_way(order, hbt.ThermalState(mean, p))
                worst_a = max(worst_a, fw.analytic_spread)
                worst_q = max(worst_q, fw.quadrature_spread)
                worst_o = max(worst_o, fw.oracle_excess)
            ok = worst_a < ANALYTIC_TOL and worst_q < quad_tol and worst_o <= 0
            return ok, (f"analytic {worst_a:.1e}, quadrature {worst_q:.1e}, "
                        f"oracle excess over bound {worst_o:.1e}")
        out.append(_check(s, f"four-way agreement p={p}", run))
    return out


def suite_oracle() -> list[Check]:
    s = "oracle"

    def adjoint():
        ok = all(np.array_equal(oracle.build_ladder(oracle.TruncatedBasis(30, p))[1],
                                oracle.build_ladder(oracle.TruncatedBasis(30, p))[0].T)
                 for p in range(1, 6))
        return ok, "a_dag == a^T"

    def vacuum():
        worst = 0.0
        for p in range(1, 8):
            a, a_dag, _ = oracle.build_ladder(oracle.TruncatedBasis(5, p))
            worst = max(worst, abs((a @ a_dag)[0, 0] - p))
        return worst < 1e-12, "<0|a a_dag|0> = p"

    def trilinear():
        worst = max(oracle.trilinear_residual(oracle.TruncatedBasis(30, p)) for p in range(1, 6))
        return worst < 1e-12, f"max residual {worst:.2e}"

    def number_law():
        worst = 0.0
        for p in range(1, 6):
            a, a_dag, _ = oracle.build_ladder(oracle.TruncatedBasis(30, p))
            diag = np.diag(a_dag @ a)
            want = [n if n % 2 == 0 else n + p - 1 for n in range(31)]
            worst = max(worst, float(np.max(np.abs(diag - want))))
        return worst < 1e-11, f"a_dag a diagonal max err {worst:.2e}"

    def eigen():
        worst = 0.0
        for p, alpha in itertools.product(range(1, 6), (0.5, 1.0, 2.0, 1.2 + 1.5j)):
            b = oracle.TruncatedBasis(oracle.coherent_cutoff(abs(alpha) ** 2, p), p)
            worst = max(worst, oracle.eigen_residual(alpha, b), oracle.parity_swap_residual(alpha, b))
        return worst < 1e-8, f"max residual {worst:.2e}"

    def overlap_pmf():
        worst = 0.0
        for p, alpha in itertools.product(range(1, 6), (0.3, 1.0, 2.0j)):
            b = oracle.TruncatedBasis(oracle.coherent_cutoff(abs(alpha) ** 2, p), p)
            for n in range(b.cutoff):
                worst = max(worst, abs(oracle.poisson_from_overlap(n, alpha, b)
                                       - coherent.p_poisson_pmf(n, abs(alpha) ** 2, p)))
        return worst < 1e-10, f"max abs {worst:.2e}"

    def matrix_path():
        worst = 0.0
        for p, mean, order in itertools.product(range(1, 6), (0.1, 0.5), (1, 2, 3, 4)):
            st = hbt.ThermalState(mean, p)
            worst = max(worst, _rel(oracle.thermal_g_matrix(order, st, oracle.TruncatedBasis(40, p)),
                                    oracle.thermal_g(order, st).value))
        return worst < 1e-9, f"matrix vs ratio sum max rel {worst:.2e}"

    return [_check(s, "adjointness", adjoint), _check(s, "vacuum relation", vacuum),
            _check(s, "trilinear relation", trilinear), _check(s, "number law", number_law),
            _check(s, "coherent eigenvector", eigen), _check(s, "pmf from overlap", overlap_pmf),
            _check(s, "matrix trace path", matrix_path)]


SUITES: dict[str, Callable[[], list[Check]]] = {
    "algebra": suite_algebra,
    "special-fn": suite_special,
    "coherent": suite_coherent,
    "hbt": suite_hbt,
    "oracle": suite_oracle,
}


def run_suites(names: list[str] | None = None, quad_tol: float | None = None) -> list[Check]:
    """Run the named suites (all by default); ``quad_tol`` overrides the hbt quadrature threshold."""
    names = list(SUITES) if not names else names
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s) {unknown}; choose from {list(SUITES)}")
    checks = []
    for name in names:
        if name == "hbt" and quad_tol is not None:
            checks.extend(suite_hbt(quad_tol))
        else:
            checks.extend(SUITES[name]())
    return checks


def format_table(checks: list[Check]) -> str:
    width = max((len(c.suite) + len(c.name) for c in checks), default=10) + 3
    lines = [f"{'check':<{width}} result  detail"]
    for c in checks:
        label = f"{c.suite}: {c.name}"
        lines.append(f"{label:<{width}} {'PASS' if c.passed else 'FAIL'}    {c.detail}")
    failed = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    return "\n".join(lines)
