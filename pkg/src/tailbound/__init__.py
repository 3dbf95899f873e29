"""Concentration bounds for sums of independent bounded random variables,
sharpened with information from the variables' first p moments."""

from ._kernels import BACKEND as kernel_backend
from .bennett import (
    BennettBound,
    TightnessComparison,
    bennett_bound,
    bennett_p3_lambert,
    bennett_tightness_check,
    bennett_unique_root,
)
from .distributions import (
    Bernoulli,
    Beta,
    Distribution,
    PointMass,
    TruncatedExponential,
    Uniform,
    make_distribution,
)
from .errors import (
    ConfigError,
    DegenerateDistributionError,
    DomainError,
    InfeasibleMomentsError,
    InternalConsistencyError,
    OracleError,
    OrderError,
    PreconditionError,
    SolverFailureError,
    TailboundError,
)
from .hoeffding import (
    HoeffdingBound,
    ci_c_bar,
    classical_sample_size,
    hoeffding_bound,
    hoeffding_iid,
    hoeffding_limit,
    hoeffding_missing_factor,
    hoeffding_small_t,
    hoeffding_two_sided,
    sample_size_for_ci,
)
from .mgf import (
    MgfBoundCurve,
    c_factor,
    c_factor_from_moments,
    c_factor_via_derivatives,
    i_measure,
    mgf_bound_sequence,
    mgf_upper_bound,
    v_derivatives,
)
from .moments import (
    EnsembleSpec,
    MomentVector,
    Support,
    moments_bernoulli,
    moments_beta,
    moments_from_samples,
    moments_point,
    moments_uniform,
    read_sample_file,
    reflect_moments,
    restrict_order,
    shift_to_origin,
)
from .oracle import TailEstimate, brute_root_scan, exact_mgf, mc_tail
from .special import (
    RootSet,
    ScanGrid,
    lambert_w0,
    mills_theta,
    remainder_ratio,
    solve_poly_exp,
    taylor_remainder,
)

__version__ = "0.1.0"

__all__ = [
    "kernel_backend",
    "BennettBound",
    "TightnessComparison",
    "bennett_bound",
    "bennett_p3_lambert",
    "bennett_tightness_check",
    "bennett_unique_root",
    "Bernoulli",
    "Beta",
    "Distribution",
    "PointMass",
    "TruncatedExponential",
    "Uniform",
    "make_distribution",
    "ConfigError",
    "DegenerateDistributionError",
    "DomainError",
    "InfeasibleMomentsError",
    "InternalConsistencyError",
    "OracleError",
    "OrderError",
    "PreconditionError",
    "SolverFailureError",
    "TailboundError",
    "HoeffdingBound",
    "ci_c_bar",
    "classical_sample_size",
    "hoeffding_bound",
    "hoeffding_iid",
    "hoeffding_limit",
    "hoeffding_missing_factor",
    "hoeffding_small_t",
    "hoeffding_two_sided",
    "sample_size_for_ci",
    "MgfBoundCurve",
    "c_factor",
    "c_factor_from_moments",
    "c_factor_via_derivatives",
    "i_measure",
    "mgf_bound_sequence",
    "mgf_upper_bound",
    "v_derivatives",
    "EnsembleSpec",
    "MomentVector",
    "Support",
    "moments_bernoulli",
    "moments_beta",
    "moments_from_samples",
    "moments_point",
    "moments_uniform",
    "read_sample_file",
    "reflect_moments",
    "restrict_order",
    "shift_to_origin",
    "TailEstimate",
    "brute_root_scan",
    "exact_mgf",
    "mc_tail",
    "RootSet",
    "ScanGrid",
    "lambert_w0",
    "mills_theta",
    "remainder_ratio",
    "solve_poly_exp",
    "taylor_remainder",
    "__version__",
]
