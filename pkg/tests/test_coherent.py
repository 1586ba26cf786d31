import cmath
import math

import mpmath as mp
import pytest
import scipy.stats as stats
from hypothesis import given
from hypothesis import strategies as st

from parahbt import coherent as co
from parahbt.algebra import p_factorial

xs = st.floats(min_value=1e-6, max_value=400.0)
ps = st.integers(min_value=1, max_value=6)


def _pmf_mp(n, x, p):
    x = mp.mpf(x)
    s, t, k = mp.mpf(0), mp.mpf(1), 0
    while True:
        s += t
        t *= x / ((k + p) if k % 2 == 0 else (k + 1))
        k += 1
        if k > 2 * x + 40 and t < mp.mpf(10) ** -30 * s:
            break
    return x ** n / p_factorial(n, p) / s


def test_pmf_reference_values():
    # independent 30-digit evaluations
    assert co.p_poisson_pmf(2, 1.0, 2) == pytest.approx(0.13652063645497052, rel=1e-14)
    assert co.p_poisson_pmf(24, 25.0, 3) == pytest.approx(0.08114586884496474, rel=1e-13)
    assert co.p_poisson_pmf(0, 0.0, 3) == 1.0
    assert co.p_poisson_pmf(3, 0.0, 3) == 0.0


@given(st.integers(min_value=0, max_value=60), st.floats(min_value=0.01, max_value=60.0), ps)
def test_pmf_vs_mpmath(n, x, p):
    want = float(_pmf_mp(n, x, p))
    assert co.p_poisson_pmf(n, x, p) == pytest.approx(want, rel=1e-12, abs=0)


@given(st.integers(min_value=0, max_value=60), st.floats(min_value=0.0, max_value=20.0))
def test_bosonic_pmf_is_poisson(n, x):
    assert co.p_poisson_pmf(n, x, 1) == pytest.approx(stats.poisson.pmf(n, x), rel=1e-12, abs=1e-300)


@given(xs, ps)
def test_pmf_table_normalized_and_matches(x, p):
    probs = co.pmf_table(x, p)
    assert math.fsum(probs) == pytest.approx(1.0, abs=1e-12)
    n = min(len(probs) - 1, int(x))
    assert probs[n] == pytest.approx(co.p_poisson_pmf(n, x, p), rel=1e-11)


@given(xs, ps)
def test_mode_split_matches_pmf(x, p):
    m = co.mode_split(x, p)
    probs = co.pmf_table(x, p)
    assert m.p_even == pytest.approx(math.fsum(probs[0::2]), abs=1e-12)
    assert m.p_even + m.p_odd == pytest.approx(1.0, abs=1e-15)
    assert m.d == pytest.approx(m.p_even - m.p_odd, abs=1e-12)


def test_mode_split_examples():
    assert co.mode_split(0.0, 3) == co.ModeSplit(1.0, 0.0, 1.0)
    # p = 1 parity weights are cosh/sinh over exp
    m = co.mode_split(1.0, 1)
    assert m.p_even == pytest.approx(math.cosh(1) / math.e, rel=1e-15)
    # D decays like (p-1)/(4x): at x = 50, p = 3 the even weight is still ~0.505
    assert co.mode_split(50.0, 3).p_even == pytest.approx(0.5 + 0.5 * (2 / 200), rel=1e-3)


@given(st.floats(min_value=1e-3, max_value=300.0), ps)
def test_moment_closed_forms(x, p):
    a, b = co.coherent_moments(x, p), co.pmf_moments(x, p)
    assert a.mean == pytest.approx(b.mean, rel=1e-9)
    assert a.variance == pytest.approx(b.variance, rel=1e-9)


def test_moments_vacuum_and_bosonic():
    assert co.coherent_moments(0.0, 4) == co.MomentPair(0.0, 0.0)
    m = co.coherent_moments(7.0, 1)
    assert m.mean == pytest.approx(7.0, rel=1e-15) and m.variance == pytest.approx(7.0, rel=1e-15)


def test_small_x_moments_stay_nonnegative():
    # variance must vanish with x, not sit at a finite offset
    for p in range(1, 6):
        m = co.coherent_moments(1e-6, p)
        assert 0 < m.variance < 1e-5


def test_large_x_moments():
    for p in (1, 2, 3):
        exact = co.pmf_moments(1e4, p)
        lim = co.large_x_moments(1e4, p)
        assert exact.mean == pytest.approx(lim.mean, rel=1e-7)
        assert exact.variance == pytest.approx(lim.variance, rel=1e-4)


def test_small_x_asymptotic():
    for p in (1, 3, 5):
        for n in range(4):
            approx = co.p_poisson_asymptotic(n, 0.01, p, "small")
            assert approx == pytest.approx(co.p_poisson_pmf(n, 0.01, p), rel=1e-3)
    with pytest.raises(ValueError):
        co.p_poisson_asymptotic(1, 0.5, 2, "small")


@pytest.mark.parametrize("p", [1, 2, 3, 5])
def test_large_x_asymptotic_derived_reading(p):
    x = 400.0
    for n in (380, 400, 420):
        assert co.p_poisson_asymptotic(n, x, p, "large") == pytest.approx(
            co.p_poisson_pmf(n, x, p), rel=1e-2)


def test_large_x_printed_reading_is_off():
    x, n, p = 400.0, 400, 3
    exact = co.p_poisson_pmf(n, x, p)
    printed = co.p_poisson_asymptotic(n, x, p, "large", reading="printed-floor")
    assert abs(printed / exact - 1) > 0.5


def test_gaussian_correction_improves_on_poisson():
    # p = 1 is the classic Poisson-to-normal Edgeworth correction
    x = 100.0
    for n in range(86, 115, 2):
        exact = co.p_poisson_pmf(n, x, 1)
        plain = abs(co.p_gaussian_pdf(n, x, 1) - exact)
        corr = abs(co.p_gaussian_correction(n, x, 1) - exact)
        assert corr < plain


def test_gaussian_correction_p3_near_mean():
    x = 64.0
    m = co.coherent_moments(x, 3)
    n = 2 * round(m.mean / 2)
    exact = co.p_poisson_pmf(n, x, 3)
    assert abs(co.p_gaussian_correction(n, x, 3) - exact) < abs(co.p_gaussian_pdf(n, x, 3) - exact)


def test_gaussian_printed_coefficients_agree_at_p1():
    for n in (90, 100, 111):
        assert co.p_gaussian_correction(n, 100.0, 1, "printed") == pytest.approx(
            co.p_gaussian_correction(n, 100.0, 1), rel=1e-15)


def test_gaussian_correction_needs_large_x():
    with pytest.raises(ValueError):
        co.p_gaussian_correction(3, 5.0, 2)


def test_overlap_normalized_and_gaussian_law():
    for p in (1, 2, 4):
        assert abs(co.overlap(1.3 - 0.4j, 1.3 - 0.4j, p)) == pytest.approx(1.0, rel=1e-14)
    a, b = 10.0, 10.0 * cmath.exp(0.2j)
    for p in (1, 2, 3, 5):
        assert abs(co.overlap(a, b, p)) == pytest.approx(math.exp(-abs(a - b) ** 2 / 2), rel=0.02)


def test_overlap_small_argument_law():
    a, b = 0.05, 0.05j
    assert abs(co.overlap(a, b, 4)) == pytest.approx(1 - abs(a - b) ** 2 / 8, rel=1e-4)


def test_overlap_parts_sum_and_bosonic():
    e, o = co.overlap_parts(0.7, 0.2 + 0.5j, 3)
    assert e + o == co.overlap(0.7, 0.2 + 0.5j, 3)
    a, b = 0.7 + 0.1j, -0.3 + 0.9j
    want = cmath.exp(-abs(a) ** 2 / 2 - abs(b) ** 2 / 2 + a.conjugate() * b)
    assert co.overlap(a, b, 1) == pytest.approx(want, rel=1e-14)


def test_parity_component_norms():
    ne, no = co.parity_component_norms(1.0, 1)
    assert ne == pytest.approx(math.sqrt(1 + math.exp(-2)), rel=1e-14)
    assert ne == pytest.approx(1.0655211322337126, rel=1e-14)
    assert ne ** 2 + no ** 2 == pytest.approx(2.0, rel=1e-15)


@pytest.mark.parametrize("p", [1, 2, 3, 4, 5])
def test_generalized_euler_integral(p):
    for n in range(0, 13):
        assert co.gamma_generalized(n, p) == pytest.approx(p_factorial(n, p), rel=1e-8)


@pytest.mark.parametrize("p", [1, 2, 5])
def test_completeness_diagonal(p):
    for n in range(0, 11):
        assert co.completeness_diagonal(n, p) == pytest.approx(1.0, abs=1e-7)


def test_domain_errors():
    with pytest.raises(ValueError):
        co.p_poisson_pmf(1, -1.0, 2)
    with pytest.raises(ValueError):
        co.gamma_generalized(31, 2)
