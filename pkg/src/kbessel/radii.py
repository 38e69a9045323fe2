"""Radii of starlikeness and convexity of order alpha."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import DomainError, KBesselError, UnsupportedError
from .rayleigh import characteristic_weight, radius_bounds
from .series import DEFAULT_TRUNCATION, Mode, Params, RatioKind, Truncation, first_pole, ratio
from .zeros import find_zeros

ALPHA_CAP = 1.0 - 1e-6
R_FLOOR = 1e-8
_POLE_SHRINK = 1.0 - 1e-12
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class RadiusResult:
    kind: RatioKind
    mode: Mode
    alpha: float
    radius: float
    residual: float
    bracket: tuple[float, float]
    iterations: int


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha < ALPHA_CAP:
        raise DomainError(f"alpha must lie in [0, {ALPHA_CAP!r}), got {alpha!r}")
    return alpha


def _upper_end(kind: RatioKind, mode: Mode, params: Params) -> float:
    pole = first_pole(kind, mode, params) * _POLE_SHRINK
    if (kind, mode) == (RatioKind.F, Mode.CONVEX):
        return pole
    return min(pole, radius_bounds(kind, mode, params, m=2).upper)


def solve_radius(
    kind: RatioKind,
    mode: Mode,
    params: Params,
    alpha: float,
    trunc: Truncation = DEFAULT_TRUNCATION,
) -> RadiusResult:
    """Unique root of ``ratio(r) = alpha`` below the ratio's first pole.

    The ratio decreases strictly from 1 at the origin, so the bracket is
    ``[1e-8, hi]`` with ``hi`` the smaller of the order-two Euler-Rayleigh
    upper bound and the pole (shrunk by 1e-12).
    """
    params.require_real_zeros()
    alpha = _check_alpha(alpha)

    def g(r: float) -> float:
        return ratio(kind, mode, params, r, trunc) - alpha

    lo = R_FLOOR
    hi = _upper_end(kind, mode, params)
    if g(hi) >= 0.0:
        hi = first_pole(kind, mode, params) * _POLE_SHRINK
    g_lo, g_hi = g(lo), g(hi)
    if not (g_lo > 0.0 > g_hi):
        raise KBesselError(f"failed to bracket the {mode.value}-{kind.value} radius in [{lo}, {hi}]")
    root, info = brentq(g, lo, hi, xtol=1e-15, rtol=1e-14, maxiter=200, full_output=True)
    residual = abs(g(root))
    if residual >= RESIDUAL_TOL:
        raise KBesselError(f"radius residual {residual:.3g} exceeds {RESIDUAL_TOL}")
    return RadiusResult(kind, mode, alpha, root, residual, (lo, hi), info.iterations)


def radius_starlike(
    kind: RatioKind, params: Params, alpha: float = 0.0, trunc: Truncation = DEFAULT_TRUNCATION
) -> RadiusResult:
    """Radius of starlikeness of order ``alpha`` of the ``kind`` normalization."""
    return solve_radius(kind, Mode.STAR, params, alpha, trunc)


def radius_convex(
    kind: RatioKind, params: Params, alpha: float = 0.0, trunc: Truncation = DEFAULT_TRUNCATION
) -> RadiusResult:
    """Radius of convexity of order ``alpha`` of the ``kind`` normalization."""
    return solve_radius(kind, Mode.CONVEX, params, alpha, trunc)


@dataclass(frozen=True)
class CrosscheckReport:
    kind: RatioKind
    mode: Mode
    radius: float
    first_zero_radius: float
    rel_diff: float
    passed: bool


def crosscheck_alpha0(kind: RatioKind, mode: Mode, params: Params) -> CrosscheckReport:
    """Compare the order-zero radius with its first-zero characterization.

    star-f, star-g, star-h, convex-g and convex-h radii coincide with the
    first zero of the WPRIME, GPRIME, HPRIME, ZGPRIME and ZHPRIME series
    respectively (mapped to r).
    """
    if (kind, mode) == (RatioKind.F, Mode.CONVEX):
        raise UnsupportedError("convex-f has no first-zero characterization")
    radius = solve_radius(kind, mode, params, 0.0).radius
    reference = find_zeros(params, characteristic_weight(kind, mode), 1).z_zeros[0]
    rel = abs(radius - reference) / reference
    return CrosscheckReport(kind, mode, radius, reference, rel, rel < 1e-8 and math.isfinite(rel))
