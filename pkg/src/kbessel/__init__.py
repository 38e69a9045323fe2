"""Generalized k-Bessel functions: zeros, radii of starlikeness and convexity."""

from .errors import (
    DomainError,
    KBesselError,
    PoleError,
    RefinementError,
    SearchError,
    TruncationError,
    UnsupportedError,
    UsageError,
)
from .gamma_core import k_gamma, k_gamma_reciprocal_product, log_gamma, log_k_gamma
from .radii import RadiusResult, crosscheck_alpha0, radius_convex, radius_starlike
from .rayleigh import (
    BoundsResult,
    PowerSums,
    SumFamily,
    closed_form_sums,
    newton_power_sums,
    radius_bounds,
    sandwich_bounds,
)
from .series import (
    Mode,
    Params,
    RatioKind,
    Truncation,
    Weight,
    convex_ratio,
    star_ratio,
    u_coeff,
    w_eval,
    weighted_series_eval,
)
from .zeros import ZeroSet, find_zeros, log_deriv_from_zeros, product_reconstruct, verify_interlacing

__version__ = "0.1.0"
