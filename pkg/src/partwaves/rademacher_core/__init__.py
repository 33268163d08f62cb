"""Exact partial-fraction decomposition of restricted partition counts.

Submodules: partitions (the independent counting oracle), coefficients (the
exact coefficient routes and the full decomposition), waves (the periodic
Sylvester components W_k), szpoly (the scaled near-top coefficient
polynomials).
"""

from .coefficients import (
    DEFAULT_ANDREWS_BUDGET,
    BudgetExceededError,
    CoeffKey,
    DecompositionTable,
    ETable,
    andrews_term_count,
    c_andrews,
    c_direct,
    c_exp_form,
    c_recursive,
    c_residue,
    c_sum_over_h,
    c_sz,
    decompose,
    e_recursion,
    hockey_stick_check,
    p_from_decomposition,
)
from .partitions import p_oracle
from .szpoly import (
    m_polynomial,
    m_second_derivative_half,
    sz_coeff_x,
    sz_coeff_x2,
    sz_polynomial,
)
from .waves import (
    WaveValue,
    c01_from_waves,
    c12_from_waves,
    wave,
    wave_from_coefficients,
    wave_record,
    wave_w1_half,
)

__all__ = [
    "DEFAULT_ANDREWS_BUDGET",
    "BudgetExceededError",
    "CoeffKey",
    "DecompositionTable",
    "ETable",
    "andrews_term_count",
    "c_andrews",
    "c_direct",
    "c_exp_form",
    "c_recursive",
    "c_residue",
    "c_sum_over_h",
    "c_sz",
    "decompose",
    "e_recursion",
    "hockey_stick_check",
    "p_from_decomposition",
    "p_oracle",
    "WaveValue",
    "c01_from_waves",
    "c12_from_waves",
    "m_polynomial",
    "m_second_derivative_half",
    "sz_coeff_x",
    "sz_coeff_x2",
    "sz_polynomial",
    "wave",
    "wave_from_coefficients",
    "wave_record",
    "wave_w1_half",
]
