"""Counting statistics and zero-delay intensity correlations of order-p parabosons."""

from .algebra import (
    TransitionSpec, ladder_down_coeff, ladder_up_coeff, p_factorial, pb_transition_prob,
    pf_factorial, pf_midband_ratio, pf_transition_ratio,
)
from .coherent import (
    coherent_moments, mode_split, overlap, p_gaussian_correction, p_gaussian_pdf, p_poisson_pmf,
)
from .hbt import (
    CorrelationValue, ThermalState, correlation, g_closed, g_hypergeometric, g_quadrature,
    lambda_p,
)
from .quadrature import QuadratureSpec

__all__ = [
    "CorrelationValue", "QuadratureSpec", "ThermalState", "TransitionSpec", "coherent_moments",
    "correlation", "g_closed", "g_hypergeometric", "g_quadrature", "ladder_down_coeff",
    "ladder_up_coeff", "lambda_p", "mode_split", "overlap", "p_factorial", "p_gaussian_correction",
    "p_gaussian_pdf", "p_poisson_pmf", "pb_transition_prob", "pf_factorial", "pf_midband_ratio",
    "pf_transition_ratio",
]
