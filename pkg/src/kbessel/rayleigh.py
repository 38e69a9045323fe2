"""Rayleigh power sums, printed closed forms and Euler-Rayleigh bounds.

If a weighted series normalized to constant term one factors as
``prod(1 - t/t_n)``, its log-derivative is ``-sum_m p_{m+1} t**m`` with
``p_m = sum_n t_n**-m``.  Newton's identities recover the ``p_m`` from the
first few coefficients; the smallest zero then satisfies

    p_m**(-1/m) < t_1 < p_m / p_{m+1}.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import UnsupportedError, UsageError
from .series import Mode, Params, RatioKind, Weight

M_MAX = 6


@dataclass(frozen=True)
class PowerSums:
    family: Weight
    values: tuple[float, ...]

    @property
    def m_max(self) -> int:
        return len(self.values)

    def __getitem__(self, m: int) -> float:
        """1-based access: ``sums[1]`` is ``p_1``."""
        if not 1 <= m <= self.m_max:
            raise UsageError(f"power sum index {m} outside 1..{self.m_max}")
        return self.values[m - 1]


def normalized_coefficients(params: Params, w: Weight, n_max: int) -> list[Fraction]:
    """Exact coefficients ``a_0 = 1, a_1, ..., a_{n_max}`` of the normalized series.

    Uses ``u_n / u_0 = prod_j (-c) / (j (nu + j k))``; the float inputs are
    converted to fractions exactly.
    """
    k, nu, c = Fraction(params.k), Fraction(params.nu), Fraction(params.c)
    s = nu / k
    a0_, a1_, a2_ = (Fraction(x) for x in _exact_poly(w, s))

    def weight(n: int) -> Fraction:
        return a0_ + a1_ * n + a2_ * n * n

    w0 = weight(0)
    if w0 == 0:
        raise UsageError(f"weight {w.name} has zero constant term for these parameters")
    coeffs = [Fraction(1)]
    ratio = Fraction(1)
    for n in range(1, n_max + 1):
        ratio *= -c / (n * (nu + n * k))
        coeffs.append(weight(n) * ratio / w0)
    return coeffs


def _exact_poly(w: Weight, s: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    if w is Weight.WPRIME:
        return (s, Fraction(2), Fraction(0))
    if w is Weight.WSECOND:
        return (s * (s - 1), 4 * s - 2, Fraction(4))
    return tuple(Fraction(x) for x in w.poly(0.0))  # type: ignore[return-value]


def newton_power_sums(params: Params, w: Weight, m_max: int) -> PowerSums:
    """Power sums ``p_1..p_{m_max}`` of the reciprocal t-zeros of a family."""
    params.require_real_zeros()
    if not 1 <= m_max <= M_MAX:
        raise UsageError(f"m_max must lie in 1..{M_MAX}, got {m_max}")
    a = normalized_coefficients(params, w, m_max)
    p: list[Fraction] = []
    for m in range(1, m_max + 1):
        acc = -m * a[m]
        for j in range(1, m):
            acc -= a[j] * p[m - j - 1]
        p.append(acc)
    return PowerSums(w, tuple(float(x) for x in p))


def sandwich_bounds(sums: PowerSums, m: int) -> tuple[float, float]:
    """Euler-Rayleigh interval for the first t-zero of ``sums.family``."""
    if m < 1 or m + 1 > sums.m_max:
        raise UsageError(f"order m={m} needs power sums up to {m + 1}, have {sums.m_max}")
    return sums[m] ** (-1.0 / m), sums[m] / sums[m + 1]


class SumFamily(enum.Enum):
    """The named Rayleigh sums and the weight whose zeros they sum over."""

    SIGMA = "sigma"
    ELL = "ell"
    KAPPA = "kappa"
    MU = "mu"
    UPSILON = "upsilon"

    @property
    def weight(self) -> Weight:
        return _FAMILY_WEIGHT[self]

    @property
    def scale(self) -> float:
        """``family_m = p_m / scale**m`` (sums over r-domain zeros squared or not)."""
        return 4.0 if self in (SumFamily.SIGMA, SumFamily.UPSILON) else 1.0


_FAMILY_WEIGHT = {
    SumFamily.SIGMA: Weight.WPRIME,
    SumFamily.ELL: Weight.GPRIME,
    SumFamily.KAPPA: Weight.HPRIME,
    SumFamily.MU: Weight.ZGPRIME,
    SumFamily.UPSILON: Weight.ZHPRIME,
}


def family_sums(params: Params, family: SumFamily, m_max: int = 2) -> tuple[float, ...]:
    """Newton-derived ``family_1..family_{m_max}`` in the printed normalization."""
    sums = newton_power_sums(params, family.weight, m_max)
    return tuple(v / family.scale**m for m, v in enumerate(sums.values, start=1))


def closed_form_sums(params: Params, family: SumFamily) -> tuple[float, float]:
    """The first two sums exactly as printed in the source derivation."""
    params.require_real_zeros()
    k, nu, c = params.k, params.nu, params.c
    if family is SumFamily.SIGMA:
        s1 = c * (nu + 2 * k) / (4 * nu * (nu + k))
        s2 = (
            c**2
            * ((nu + 2 * k) ** 3 - k * nu * (nu + k) * (nu + 4 * k))
            / (16 * k * nu * (nu + k) ** 2 * (nu + 2 * k))
        )
    elif family is SumFamily.ELL:
        s1 = 3 * c / (nu + k)
        s2 = c**2 * (4 * nu + 13 * k) / ((nu + k) ** 2 * (nu + 2 * k))
    elif family is SumFamily.KAPPA:
        s1 = 2 * c / (nu + k)
        s2 = 4 * c**2 / (nu + k) ** 2 - 3 * c**2 / ((nu + k) * (nu + 2 * k))
    elif family is SumFamily.MU:
        s1 = 9 * c / (nu + k)
        s2 = 81 * c**2 / (nu + k) ** 2 - 25 * c**2 / ((nu + k) * (nu + 2 * k))
    else:
        s1 = c / (nu + k)
        s2 = c**2 * (7 * nu + 23 * k) / (16 * (nu + k) * (nu + 2 * k))
    return s1, s2


# --- radius bounds ----------------------------------------------------------

_BOUND_WEIGHT = {
    (RatioKind.F, Mode.STAR): Weight.WPRIME,
    (RatioKind.G, Mode.STAR): Weight.GPRIME,
    (RatioKind.H, Mode.STAR): Weight.HPRIME,
    (RatioKind.G, Mode.CONVEX): Weight.ZGPRIME,
    (RatioKind.H, Mode.CONVEX): Weight.ZHPRIME,
}


def characteristic_weight(kind: RatioKind, mode: Mode) -> Weight:
    """Family whose first zero is the order-zero radius of ``(kind, mode)``."""
    try:
        return _BOUND_WEIGHT[(kind, mode)]
    except KeyError:
        raise UnsupportedError(f"no first-zero characterization for {mode.value}-{kind.value}") from None


def printed_bounds(kind: RatioKind, mode: Mode, params: Params) -> tuple[float, float]:
    """The order-zero radius bounds as printed, in r-units."""
    k, nu, c = params.k, params.nu, params.c
    key = (kind, mode)
    if key == (RatioKind.F, Mode.STAR):
        lower = 2 * math.sqrt(nu * (nu + k) / (c * (nu + 2 * k)))
        denom = (nu + 2 * k) ** 3 - k * nu * (nu + k) * (nu + 4 * k)
        # the printed expression is not real for every (k, nu)
        upper = 2 * (nu + 2 * k) * math.sqrt(k * (nu + k) / (c * denom)) if denom > 0 else math.nan
    elif key == (RatioKind.G, Mode.STAR):
        lower = 2 * math.sqrt((nu + 3) / (3 * c))
        upper = 2 * math.sqrt(3 * (nu + k) * (nu + 2 * k) / (c * (4 * nu + 13 * k)))
    elif key == (RatioKind.H, Mode.STAR):
        lower = 2 * (nu + k) / c
        upper = 8 * (nu + k) * (nu + 2 * k) / (c * (nu + 5 * k))
    elif key == (RatioKind.G, Mode.CONVEX):
        lower = (2.0 / 3.0) * math.sqrt((nu + k) / c)
        upper = 6 * math.sqrt((nu + k) * (nu + 2 * k) / (c * (57 * nu + 137 * k)))
    elif key == (RatioKind.H, Mode.CONVEX):
        lower = (nu + k) / c
        upper = 16 * (nu + k) * (nu + 2 * k) / (c * (7 * nu + 23 * k))
    else:
        raise UnsupportedError(f"no printed bounds for {mode.value}-{kind.value}")
    return lower, upper


@dataclass(frozen=True)
class BoundsResult:
    kind: RatioKind
    mode: Mode
    m: int
    lower: float
    upper: float
    source: str = "newton"
    printed_lower: Optional[float] = None
    printed_upper: Optional[float] = None
    printed_discrepancy: Optional[str] = None


def _rel(a: float, b: float) -> float:
    if math.isnan(a) or math.isnan(b):
        return math.inf
    return abs(a - b) / max(abs(a), abs(b))


def radius_bounds(kind: RatioKind, mode: Mode, params: Params, m: int = 1) -> BoundsResult:
    """Euler-Rayleigh bounds for the order-zero radius, audited against print.

    The bounds of record come from Newton sums.  At ``m == 1`` the printed
    bound expressions are evaluated as well and any relative difference
    above 1e-9 is described in ``printed_discrepancy``.
    """
    if (kind, mode) == (RatioKind.F, Mode.CONVEX):
        raise UnsupportedError("no Euler-Rayleigh bounds are available for the convex-f radius")
    w = characteristic_weight(kind, mode)
    if m < 1 or m + 1 > M_MAX:
        raise UsageError(f"order m must lie in 1..{M_MAX - 1}, got {m}")
    lo_t, hi_t = sandwich_bounds(newton_power_sums(params, w, m + 1), m)
    lower, upper = w.z_of_t(lo_t), w.z_of_t(hi_t)
    if m != 1:
        return BoundsResult(kind, mode, m, lower, upper)
    p_lo, p_hi = printed_bounds(kind, mode, params)
    notes = []
    if _rel(p_lo, lower) > 1e-9:
        notes.append(f"printed lower {p_lo!r} vs derived {lower!r} (rel {_rel(p_lo, lower):.3g})")
    if _rel(p_hi, upper) > 1e-9:
        notes.append(f"printed upper {p_hi!r} vs derived {upper!r} (rel {_rel(p_hi, upper):.3g})")
    return BoundsResult(
        kind, mode, m, lower, upper,
        printed_lower=p_lo,
        printed_upper=p_hi,
        printed_discrepancy="; ".join(notes) or None,
    )

