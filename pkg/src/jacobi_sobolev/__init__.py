"""Discrete-continuous Jacobi-Sobolev expansions on [-1, 1].

The package builds the Sobolev-orthonormal polynomial family attached to
nodal derivative data plus a Jacobi-weighted integral term, expands
functions in it, and classifies the parameter combinations where the
expansions converge and the underlying function space is complete.
"""

from .polynomial import DegreeCapError, Polynomial, get_degree_cap, set_degree_cap
from .jacobi import (
    JacobiParams,
    derivative_constant,
    h_n,
    jacobi_fourier_partial_sum,
    jacobi_poly,
    orthonormal_jacobi,
    total_mass,
    value_at_one,
)
from .quadrature import NonConvergedError, QuadratureRule, gauss_jacobi_rule, integrate, integrate_adaptive
from .goncharov import abel_goncharov_interpolant, goncharov_poly, iterated_integral
from .sobolev import (
    ExpansionReport,
    SampledFunction,
    SobolevConfig,
    expand,
    gram_deviations,
    gram_matrix,
    sobolev_basis,
    sobolev_fourier_coefficient,
    sobolev_inner_product,
    sobolev_norm,
    sobolev_partial_sum,
)
from .functions import abs_power, get_function, registry
from .regions import (
    Interval,
    IntervalSet,
    RegionVerdict,
    admissible_node_set,
    bp_membership,
    completeness_verdict,
    convergence_verdict,
    gamma_window,
    muckenhoupt_condition,
    new_region,
    pollard_region,
    regular_set,
)
from .counterexamples import (
    LambdaTable,
    dense_approximant,
    incompleteness_demo,
    lambda_table,
    log_derivative,
    phi,
    phi_lp_mass_profile,
)

__version__ = "0.1.0"

__all__ = [
    "DegreeCapError",
    "Polynomial",
    "get_degree_cap",
    "set_degree_cap",
    "JacobiParams",
    "jacobi_poly",
    "h_n",
    "orthonormal_jacobi",
    "derivative_constant",
    "value_at_one",
    "total_mass",
    "jacobi_fourier_partial_sum",
    "QuadratureRule",
    "NonConvergedError",
    "gauss_jacobi_rule",
    "integrate",
    "integrate_adaptive",
    "goncharov_poly",
    "abel_goncharov_interpolant",
    "iterated_integral",
    "SobolevConfig",
    "SampledFunction",
    "ExpansionReport",
    "sobolev_basis",
    "sobolev_inner_product",
    "sobolev_norm",
    "sobolev_fourier_coefficient",
    "sobolev_partial_sum",
    "expand",
    "gram_matrix",
    "gram_deviations",
    "registry",
    "get_function",
    "abs_power",
    "Interval",
    "IntervalSet",
    "RegionVerdict",
    "pollard_region",
    "gamma_window",
    "new_region",
    "muckenhoupt_condition",
    "convergence_verdict",
    "bp_membership",
    "regular_set",
    "admissible_node_set",
    "completeness_verdict",
    "LambdaTable",
    "lambda_table",
    "log_derivative",
    "phi",
    "dense_approximant",
    "incompleteness_demo",
    "phi_lp_mass_profile",
]
