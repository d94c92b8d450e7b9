"""Numerical checks of when the Laplace transform maps L^p(0, inf) into L^q."""

from .analytics import (
    ScalingReport,
    check_holder,
    check_scaling_identity,
    holder_pointwise_bound,
    local_constant,
    scale,
    tail_constant,
    thm1_lower_bound,
    thm2_lower_bound,
)
from .blowup import BlowupFit, SweepRecord, discretized_opnorm, fit_exponent, sweep
from .core import (
    Bounded,
    ContinuityVerdict,
    FullHalfLine,
    LebesgueExponent,
    Reason,
    Tail,
    classify,
    conjugate,
    parse_domain,
    region_sweep,
)
from .errors import (
    Divergent,
    DomainError,
    InsufficientData,
    InvalidInterval,
    LaplaceLpError,
    NonConvergence,
    NumericalFailure,
)
from .quadrature import (
    CompactSupport,
    Exponential,
    PowerLaw,
    QuadratureResult,
    TestFunction,
    integrate,
    laplace_lq_norm,
    laplace_point,
    lp_norm,
)
from .testbed import (
    FamilyParams,
    closed_form_norm,
    make_family,
    thm1_transform_closed_form,
    upper_incomplete_gamma,
)

__version__ = "0.1.0"
