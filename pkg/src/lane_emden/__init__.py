"""Exact and numeric checks for the fractional Lane-Emden stability thresholds."""

from .coefficients import (
    build_coeff_set,
    build_delta_set,
    jordan_decompose,
    sign_analysis,
    verify_ibp_catalog,
    verify_jordan,
    verify_km_forms,
)
from .criterion import (
    CriterionValue,
    DomainError,
    ParamPoint,
    Verdict,
    criterion_F,
    gamma_condition,
    gamma_condition_limit,
    hardy_constant,
    log_gamma,
    singular_lambda,
)
from .exact_algebra import MultiPoly, Rational, integrate_by_parts, total_derivative
from .exponents import (
    BracketError,
    ExponentProfile,
    Regime,
    RegimeVerdict,
    a_ns,
    classify_regime,
    closed_form_exponent,
    exponent_profile,
    finiteness_boundary,
    n0_threshold,
    pc_exponent,
    pm_exponent,
    sobolev_exponent,
)
from .report import Check, VerificationReport
from .scaling_identities import verify_radial, verify_radial_I, verify_scaling_derivatives, verify_urr_form
from .suite import run_suite

__version__ = "0.1.0"
