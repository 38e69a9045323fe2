"""Weighted-coefficient series engine for the generalized k-Bessel function.

Everything is evaluated in the variable ``t = (z/2)**2`` (or ``tau = z/4``
for the h normalization).  The basic object is

    S_w(t) = sum_n w(n) * u_n * t**n,    u_n = (-c)**n / (n! Gamma_k(nk + nu + k)),

where ``w`` is a polynomial of degree at most two in ``n``.  The function
itself is ``W(z) = (z/2)**(nu/k) * S_1(t)``.

Since ``Gamma_k(nk + nu + k) = k**(n + s) * Gamma(n + s + 1)`` with
``s = nu/k``, the unit series equals ``k**-s * V_s(c t / k)`` where
``V_q(x) = x**(-q/2) J_q(2 sqrt(x))``.  Together with
``x V_q'(x) = -x V_{q+1}(x)`` this gives a closed form for every weight,
which :func:`family_values` uses once the power series would lose too many
digits to cancellation.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy import special

from .errors import DomainError, PoleError, TruncationError
from .gamma_core import log_gamma, log_k_gamma

_EPS = np.finfo(float).eps

# Above this value of c*t/k the ascending series is replaced by the Bessel
# closed form (largest term ~ 1e3 times the constant term here).
SERIES_X_LIMIT = 25.0


@dataclass(frozen=True)
class Params:
    """The triple ``(k, nu, c)`` parameterizing ``kW_{nu,c}``."""

    k: float
    nu: float
    c: float

    def __post_init__(self) -> None:
        for name in ("k", "nu", "c"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.k <= 0.0:
            raise DomainError(f"k must be positive, got {self.k!r}")
        if self.nu <= -self.k:
            raise DomainError(f"nu must exceed -k, got nu={self.nu!r}, k={self.k!r}")

    @property
    def s(self) -> float:
        """The effective Bessel order ``nu/k``."""
        return self.nu / self.k

    def require_real_zeros(self) -> None:
        """Raise unless ``nu > 0`` and ``c > 0`` (needed for zeros and radii)."""
        if self.nu <= 0.0 or self.c <= 0.0:
            raise DomainError(
                f"zeros and radii require nu > 0 and c > 0, got nu={self.nu!r}, c={self.c!r}"
            )

    def with_(self, **changes: float) -> "Params":
        values = {"k": self.k, "nu": self.nu, "c": self.c}
        values.update(changes)
        return Params(**values)


@dataclass(frozen=True)
class Truncation:
    rel_tol: float = 1e-15
    max_terms: int = 400
    min_terms: int = 8

    def __post_init__(self) -> None:
        if not 0.0 < self.rel_tol < 1.0:
            raise DomainError(f"rel_tol must lie in (0, 1), got {self.rel_tol!r}")
        if self.min_terms < 1 or self.min_terms > self.max_terms:
            raise DomainError("need 1 <= min_terms <= max_terms")


DEFAULT_TRUNCATION = Truncation()


class Weight(enum.Enum):
    """Coefficient weights ``w(n)`` defining the auxiliary series."""

    UNIT = "W"
    WPRIME = "WPRIME"
    WSECOND = "WSECOND"
    GPRIME = "GPRIME"
    HPRIME = "HPRIME"
    ZGPRIME = "ZGPRIME"
    ZHPRIME = "ZHPRIME"

    def poly(self, s: float) -> tuple[float, float, float]:
        """Coefficients ``(a0, a1, a2)`` of ``w(n) = a0 + a1 n + a2 n**2``."""
        if self is Weight.UNIT:
            return (1.0, 0.0, 0.0)
        if self is Weight.WPRIME:
            return (s, 2.0, 0.0)
        if self is Weight.WSECOND:
            return (s * (s - 1.0), 4.0 * s - 2.0, 4.0)
        if self is Weight.GPRIME:
            return (1.0, 2.0, 0.0)
        if self is Weight.HPRIME:
            return (1.0, 1.0, 0.0)
        if self is Weight.ZGPRIME:
            return (1.0, 4.0, 4.0)
        return (1.0, 2.0, 1.0)

    def __call__(self, n: int, s: float) -> float:
        a0, a1, a2 = self.poly(s)
        return a0 + a1 * n + a2 * n * n

    @property
    def linear_map(self) -> bool:
        """True when the radius variable is ``4t`` rather than ``2 sqrt(t)``."""
        return self in (Weight.HPRIME, Weight.ZHPRIME)

    def z_of_t(self, t: float) -> float:
        return 4.0 * t if self.linear_map else 2.0 * math.sqrt(t)

    def t_of_z(self, z: float) -> float:
        return z / 4.0 if self.linear_map else 0.25 * z * z


class RatioKind(enum.Enum):
    F = "f"
    G = "g"
    H = "h"


class Mode(enum.Enum):
    STAR = "star"
    CONVEX = "convex"


Poly = tuple[float, float, float]
WeightLike = Union[Weight, Poly]


def _as_poly(w: WeightLike, s: float) -> Poly:
    if isinstance(w, Weight):
        return w.poly(s)
    a0, a1, a2 = w
    return (float(a0), float(a1), float(a2))


def u_coeff(params: Params, n: int) -> tuple[int, float]:
    """Sign and ``ln|u_n|`` of the n-th series coefficient."""
    if n < 0:
        raise DomainError(f"coefficient index must be >= 0, got {n}")
    if params.c == 0.0 and n > 0:
        return 0, -math.inf
    log_abs = -log_k_gamma(n * params.k + params.nu + params.k, params.k)
    if n > 0:
        log_abs += n * math.log(abs(params.c)) - log_gamma(n + 1.0)
    sign = -1 if (params.c > 0.0 and n % 2 == 1) else 1
    return sign, log_abs


@dataclass(frozen=True)
class SeriesValue:
    value: float
    terms_used: int
    max_abs_term: float


def _series(params: Params, poly: Poly, t: float, trunc: Truncation) -> SeriesValue:
    if t < 0.0 or not math.isfinite(t):
        raise DomainError(f"t must be finite and >= 0, got {t!r}")
    a0, a1, a2 = poly
    sign0, log_u0 = u_coeff(params, 0)
    u = sign0 * math.exp(log_u0)
    if t == 0.0 or params.c == 0.0:
        return SeriesValue(a0 * u, 1, abs(a0 * u))

    # u_n t^n by the ratio recurrence; the ratio only involves k, nu, c
    ct = params.c * t
    k, nu = params.k, params.nu
    terms: list[float] = []
    partial = 0.0
    max_abs = 0.0
    small_run = 0
    term = 0.0
    for n in range(trunc.max_terms):
        if n > 0:
            u *= -ct / (n * (nu + n * k))
            if not math.isfinite(u):
                raise TruncationError(f"series term overflowed at n={n}", math.inf)
        term = (a0 + n * (a1 + n * a2)) * u
        terms.append(term)
        partial += term
        max_abs = max(max_abs, abs(term))
        floor = max(abs(partial), _EPS * max_abs)
        if abs(term) < trunc.rel_tol * floor:
            small_run += 1
        else:
            small_run = 0
        if small_run >= 2 and n + 1 >= trunc.min_terms:
            return SeriesValue(math.fsum(terms), n + 1, max_abs)
    raise TruncationError(
        f"series did not converge within {trunc.max_terms} terms at t={t!r}", abs(term)
    )


def weighted_series_eval(
    params: Params, w: WeightLike, t: float, trunc: Truncation = DEFAULT_TRUNCATION
) -> float:
    """Sum ``w(n) u_n t**n`` by the ascending series.

    Stops once two consecutive terms fall below ``rel_tol`` times the partial
    sum (floored at the rounding level of the largest term) and at least
    ``min_terms`` terms were used.  Raises :class:`TruncationError` otherwise.
    """
    return _series(params, _as_poly(w, params.s), float(t), trunc).value


def weighted_series_detail(
    params: Params, w: WeightLike, t: float, trunc: Truncation = DEFAULT_TRUNCATION
) -> SeriesValue:
    return _series(params, _as_poly(w, params.s), float(t), trunc)


_jv = special.jv


def closed_form_values(params: Params, w: WeightLike, t) -> np.ndarray:
    """Bessel closed form of the weighted series, vectorized over ``t > 0``."""
    s = params.s
    a0, a1, a2 = _as_poly(w, s)
    t = np.asarray(t, dtype=float)
    x = params.c * t / params.k
    if np.any(x <= 0.0):
        raise DomainError("closed form needs c*t/k > 0")
    y = 2.0 * np.sqrt(x)
    logx = np.log(x)
    v0 = special.jv(s, y) * np.exp(-0.5 * s * logx)
    v1 = special.jv(s + 1.0, y) * np.exp(-0.5 * (s + 1.0) * logx)
    v2 = special.jv(s + 2.0, y) * np.exp(-0.5 * (s + 2.0) * logx)
    # theta V_s = -x V_{s+1};  theta^2 V_s = -x V_{s+1} + x^2 V_{s+2}
    th1 = -x * v1
    th2 = th1 + x * x * v2
    return params.k ** (-s) * (a0 * v0 + a1 * th1 + a2 * th2)


def family_value(
    params: Params, w: WeightLike, t: float, trunc: Truncation = DEFAULT_TRUNCATION
) -> float:
    """Weighted series at ``t``, switching to the closed form for large ``c t / k``."""
    t = float(t)
    if params.c * t / params.k <= SERIES_X_LIMIT:
        return _series(params, _as_poly(w, params.s), t, trunc).value
    return _closed_form_scalar(params, _as_poly(w, params.s), t)


def _closed_form_scalar(params: Params, poly: Poly, t: float) -> float:
    # scalar twin of closed_form_values, avoiding numpy overhead in root refinement
    s = params.s
    a0, a1, a2 = poly
    x = params.c * t / params.k
    if x <= 0.0:
        raise DomainError("closed form needs c*t/k > 0")
    y = 2.0 * math.sqrt(x)
    logx = math.log(x)
    v0 = _jv(s, y) * math.exp(-0.5 * s * logx)
    v1 = _jv(s + 1.0, y) * math.exp(-0.5 * (s + 1.0) * logx)
    v2 = _jv(s + 2.0, y) * math.exp(-0.5 * (s + 2.0) * logx) if a2 else 0.0
    th1 = -x * v1
    th2 = th1 + x * x * v2
    return params.k ** (-s) * (a0 * v0 + a1 * th1 + a2 * th2)


def family_values(
    params: Params, w: WeightLike, ts: Sequence[float], trunc: Truncation = DEFAULT_TRUNCATION
) -> np.ndarray:
    ts = np.asarray(ts, dtype=float)
    out = np.empty_like(ts)
    small = params.c * ts / params.k <= SERIES_X_LIMIT
    poly = _as_poly(w, params.s)
    for i in np.flatnonzero(small):
        out[i] = _series(params, poly, float(ts[i]), trunc).value
    if np.any(~small):
        out[~small] = closed_form_values(params, poly, ts[~small])
    return out


def w_eval(
    params: Params,
    z: float,
    derivative_order: int = 0,
    trunc: Truncation = DEFAULT_TRUNCATION,
) -> float:
    """Evaluate ``W``, ``W'`` or ``W''`` on the real axis ``z >= 0``."""
    return w_eval_detail(params, z, derivative_order, trunc)[0]


def w_eval_detail(
    params: Params,
    z: float,
    derivative_order: int = 0,
    trunc: Truncation = DEFAULT_TRUNCATION,
) -> tuple[float, int]:
    z = float(z)
    if z < 0.0 or not math.isfinite(z):
        raise DomainError(f"z must be finite and >= 0, got {z!r}")
    if derivative_order not in (0, 1, 2):
        raise DomainError(f"derivative_order must be 0, 1 or 2, got {derivative_order!r}")
    weight = (Weight.UNIT, Weight.WPRIME, Weight.WSECOND)[derivative_order]
    t = 0.25 * z * z
    sv = _series(params, weight.poly(params.s), t, trunc)
    power = params.s - derivative_order
    if z == 0.0:
        # (z/2)**power at the origin
        if sv.value == 0.0 or power > 0.0:
            return 0.0, sv.terms_used
        if power == 0.0:
            return sv.value / 2.0**derivative_order, sv.terms_used
        return math.copysign(math.inf, sv.value), sv.terms_used
    prefactor = (0.5 * z) ** power / 2.0**derivative_order
    return prefactor * sv.value, sv.terms_used


# --- starlikeness / convexity ratios -------------------------------------

_N: Poly = (0.0, 1.0, 0.0)  # t d/dt of the unit series


def _pole_weight(kind: RatioKind, mode: Mode) -> Weight:
    if mode is Mode.STAR:
        return Weight.UNIT
    return {RatioKind.F: Weight.WPRIME, RatioKind.G: Weight.GPRIME, RatioKind.H: Weight.HPRIME}[kind]


@functools.lru_cache(maxsize=512)
def first_pole(kind: RatioKind, mode: Mode, params: Params) -> float:
    """First positive r at which the ratio's denominator vanishes (inf if none)."""
    if params.c <= 0.0:
        return math.inf
    from .zeros import find_zeros

    t1 = find_zeros(params, _pole_weight(kind, mode), 1).t_zeros[0]
    return 4.0 * t1 if kind is RatioKind.H else 2.0 * math.sqrt(t1)


def _ratio_variable(kind: RatioKind, r: float) -> float:
    return r / 4.0 if kind is RatioKind.H else 0.25 * r * r


def _check_ratio_args(kind: RatioKind, mode: Mode, params: Params, r: float) -> float:
    r = float(r)
    if not r > 0.0 or not math.isfinite(r):
        raise DomainError(f"r must be positive and finite, got {r!r}")
    if params.nu <= 0.0 or params.c < 0.0:
        raise DomainError("ratios need nu > 0 and c >= 0")
    pole = first_pole(kind, mode, params)
    if r >= pole:
        raise PoleError(f"r={r!r} is at or beyond the first pole {pole!r}")
    return _ratio_variable(kind, r)


def star_ratio(
    kind: RatioKind, params: Params, r: float, trunc: Truncation = DEFAULT_TRUNCATION
) -> float:
    """Real-axis value of ``r F'(r) / F(r)`` for ``F`` in {f, g, h}."""
    t = _check_ratio_args(kind, Mode.STAR, params, r)
    u = family_value(params, Weight.UNIT, t, trunc)
    tu = family_value(params, _N, t, trunc)
    if kind is RatioKind.F:
        return 1.0 + (2.0 / params.s) * tu / u
    if kind is RatioKind.G:
        return 1.0 + 2.0 * tu / u
    return 1.0 + tu / u


def convex_ratio(
    kind: RatioKind, params: Params, r: float, trunc: Truncation = DEFAULT_TRUNCATION
) -> float:
    """Real-axis value of ``1 + r F''(r) / F'(r)``."""
    t = _check_ratio_args(kind, Mode.CONVEX, params, r)
    if kind is RatioKind.F:
        u = family_value(params, Weight.UNIT, t, trunc)
        p1 = family_value(params, Weight.WPRIME, t, trunc)
        p2 = family_value(params, Weight.WSECOND, t, trunc)
        return 1.0 + p2 / p1 + (1.0 / params.s - 1.0) * p1 / u
    if kind is RatioKind.G:
        g1 = family_value(params, Weight.GPRIME, t, trunc)
        dg1 = family_value(params, (0.0, 1.0, 2.0), t, trunc)
        return 1.0 + 2.0 * dg1 / g1
    h1 = family_value(params, Weight.HPRIME, t, trunc)
    dh1 = family_value(params, (0.0, 1.0, 1.0), t, trunc)
    return 1.0 + dh1 / h1


def ratio(
    kind: RatioKind,
    mode: Mode,
    params: Params,
    r: float,
    trunc: Truncation = DEFAULT_TRUNCATION,
) -> float:
    if mode is Mode.STAR:
        return star_ratio(kind, params, r, trunc)
    return convex_ratio(kind, params, r, trunc)
