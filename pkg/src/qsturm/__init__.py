"""Symmetric q-Sturm-Liouville problems: q-calculus kernels, Pearson weights,
and three families of symmetric q-orthogonal polynomials."""
from .qcore import (
    ConvergenceError,
    HypergeometricSpec,
    QContext,
    Truncated,
    basic_hypergeometric,
    hypergeometric_terms,
    q_number,
    q_pochhammer,
    q_pochhammer_infinite,
    q_pochhammer_ratio_infinite,
)
from .qcalculus import (
    GeometricLattice,
    jackson_integral,
    jackson_integral_bilateral,
    jackson_integral_interval,
    jackson_integral_symmetric,
    jackson_nodes,
    q_derivative,
    q_derivative_inverse_base,
    q_second_operator,
)
from .pearson import (
    LatticeWeight,
    Residual,
    WeightError,
    closed_form_weight,
    pearson_ratio,
    pearson_residual,
    starred_weight,
    support_endpoint,
    weight_from_ratio,
)
from .polynomial import PolynomialR
from .sl_core import (
    OrthogonalityReport,
    SLCoefficients,
    parity_cross_term,
    self_adjoint_residual,
    sigma,
    sl_residual,
    verify_orthogonality,
)
from .families import (
    Family,
    FamilyDescriptor,
    discrete_q_hermite,
    gamma,
    gamma_limit,
    hypergeometric_polynomial,
    hypergeometric_spec,
    make_family,
    monic_from_recurrence,
    monic_functions,
    monic_normalize,
    monic_values,
    norm_square,
    phi_hypergeometric,
    q_hermite_reduction_check,
    qhermite_p_range,
    recommended_precision,
    reduced_weight_comparison,
    weight_limit,
)

__version__ = "0.1.0"
