from .coefficients import (
    A_coeff, a_coeff, a_coeff_vanishes, b_coeff, binomial, compositions,
    exact_div, falling, stirling2, stirling2_recurrence,
)

__all__ = [
    "A_coeff", "a_coeff", "a_coeff_vanishes", "b_coeff", "binomial", "compositions",
    "exact_div", "falling", "stirling2", "stirling2_recurrence",
]
