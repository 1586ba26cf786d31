import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from parahbt import algebra, oracle
from parahbt.coherent import mode_split, p_poisson_pmf
from parahbt.hbt import ThermalState, g_closed, lambda_p
from parahbt.oracle import (
    TruncatedBasis, TruncationError, build_ladder, coherent_cutoff, coherent_vector,
    eigen_residual, parity_swap_residual, parity_vectors, poisson_from_overlap, thermal_g,
    thermal_g_matrix, trilinear_residual,
)

ps = st.integers(min_value=1, max_value=6)
amplitudes = st.complex_numbers(max_magnitude=2.0)


@pytest.mark.parametrize("p", [1, 2, 3, 4, 5, 8])
def test_ladder_structure(p):
    a, a_dag, n_op = build_ladder(TruncatedBasis(25, p))
    assert np.array_equal(a_dag, a.T)
    assert (a @ a_dag)[0, 0] == pytest.approx(p, rel=1e-15)
    want = np.array([n if n % 2 == 0 else n + p - 1 for n in range(26)], dtype=float)
    np.testing.assert_allclose(np.diag(a_dag @ a), want, rtol=1e-14)
    np.testing.assert_array_equal(np.diag(n_op), np.arange(26))
    assert trilinear_residual(TruncatedBasis(25, p)) < 1e-12


def test_bosonic_ladder():
    a, _, _ = build_ladder(TruncatedBasis(10, 1))
    np.testing.assert_allclose(np.diag(a, 1), np.sqrt(np.arange(1, 11)), rtol=1e-15)


def test_basis_validation():
    with pytest.raises(ValueError):
        TruncatedBasis(1, 2)
    with pytest.raises(ValueError):
        TruncatedBasis(10, 0)


@given(amplitudes, ps)
def test_coherent_eigenvector(alpha, p):
    b = TruncatedBasis(coherent_cutoff(abs(alpha) ** 2, p), p)
    assert eigen_residual(alpha, b) < 1e-8
    assert parity_swap_residual(alpha, b) < 1e-8


def test_eigenvector_example():
    assert eigen_residual(1.0, TruncatedBasis(60, 3)) < 1e-8
    v, tail = coherent_vector(0.0, TruncatedBasis(5, 2))
    np.testing.assert_array_equal(v, np.eye(6)[0])
    assert tail == 0.0


@given(amplitudes, ps)
def test_overlap_matches_pmf(alpha, p):
    b = TruncatedBasis(coherent_cutoff(abs(alpha) ** 2, p), p)
    x = abs(alpha) ** 2
    for n in range(0, b.cutoff, 3):
        assert poisson_from_overlap(n, alpha, b) == pytest.approx(p_poisson_pmf(n, x, p), abs=1e-10)


def test_overlap_example():
    b = TruncatedBasis(30, 2)
    assert poisson_from_overlap(2, 1.0, b) == pytest.approx(0.13652063645497052, rel=1e-12)
    assert poisson_from_overlap(0, 0.0, b) == 1.0


@given(st.floats(min_value=0.01, max_value=3.0), ps)
def test_parity_vectors_carry_mode_split(r, p):
    b = TruncatedBasis(coherent_cutoff(r * r, p), p)
    plus, minus = parity_vectors(r, b)
    split = mode_split(r * r, p)
    assert np.vdot(plus, plus).real == pytest.approx(2 * split.p_even, abs=1e-10)
    assert np.vdot(minus, minus).real == pytest.approx(2 * split.p_odd, abs=1e-10)
    assert abs(np.vdot(plus, minus)) < 1e-12


def test_truncation_error():
    with pytest.raises(TruncationError) as info:
        coherent_vector(3.0, TruncatedBasis(8, 2))
    assert info.value.tail > 1e-12


@given(st.floats(min_value=0.05, max_value=20.0), ps, st.integers(min_value=1, max_value=4))
def test_thermal_g_matches_closed_within_bound(m, p, n):
    s = ThermalState(m, p)
    o, c = thermal_g(n, s), g_closed(n, s)
    assert abs(o.value - c.value) <= o.err_est + c.err_est
    assert o.method == "fock-oracle"


def test_thermal_examples():
    assert thermal_g(1, ThermalState(1.0, 3)).value == pytest.approx(5 / 3, rel=1e-12)
    assert thermal_g(1, ThermalState(2.0, 1)).value == pytest.approx(2.0, rel=1e-12)
    s = ThermalState(0.01, 4)
    lam = thermal_g(2, s).value / thermal_g(1, s).value ** 2
    assert lam == pytest.approx(2 * 1.02 / 4.02, rel=0.01)
    assert lam == pytest.approx(lambda_p(s), rel=1e-12)


def test_cutoff_doubling_within_tail_bound():
    s = ThermalState(2.0, 3)
    small = thermal_g(3, s)
    big = thermal_g(3, s, TruncatedBasis(8 * oracle.thermal_cutoff(3, s), 3))
    assert abs(small.value - big.value) <= small.err_est


def test_explicit_cutoff_too_small():
    with pytest.raises(TruncationError):
        thermal_g(2, ThermalState(5.0, 2), TruncatedBasis(20, 2))


@pytest.mark.parametrize("p", [1, 2, 3, 4, 5])
def test_matrix_trace_path(p):
    s = ThermalState(0.5, p, c_bar=1.7)
    b = TruncatedBasis(60, p)
    for n in range(1, 5):
        assert thermal_g_matrix(n, s, b) == pytest.approx(thermal_g(n, s).value, rel=1e-12)


def test_oracle_uses_live_ladder(monkeypatch):
    # the oracle reads coefficients through the module, so a broken ladder shows up here
    monkeypatch.setattr(algebra, "ladder_up_coeff", lambda n, p: math.sqrt(n + p))
    a, a_dag, _ = build_ladder(TruncatedBasis(6, 3))
    assert not np.array_equal(a_dag, a.T)
