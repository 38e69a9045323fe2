"""Positive zeros of the weighted series, interlacing, and product checks."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, RefinementError, SearchError, UsageError
from .gamma_core import k_gamma
from .rayleigh import newton_power_sums
from .series import DEFAULT_TRUNCATION, Params, Truncation, Weight, family_value, family_values

# scan limits in y = sqrt(t)
_FIRST_ZERO_RATIO = 1.05
_WINDOW_GROWTH = 1.5
_STEPS_PER_GAP = 8
_MAX_T = 1e14


@dataclass(frozen=True)
class ZeroSet:
    """Leading positive zeros of one weighted series.

    ``t_zeros`` are in the series variable; ``z_zeros`` in the radius
    variable (``2 sqrt(t)``, or ``4 t`` for the h families).
    """

    params: Params
    weight: Weight
    t_zeros: tuple[float, ...]
    z_zeros: tuple[float, ...]
    residuals: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.t_zeros)


def _refine(f, lo: float, hi: float, scale: float) -> tuple[float, float]:
    # scale: local size of f around the bracket, so large-t oscillations of
    # the weighted series are judged relative to their own amplitude
    root = brentq(f, lo, hi, xtol=1e-14 * lo, rtol=1e-14, maxiter=200)
    residual = abs(f(root))
    abs_tol = 1e-10 * max(1.0, abs(scale))
    if residual >= abs_tol:
        raise RefinementError(f"residual {residual:.3g} at t={root!r} exceeds {abs_tol:.3g}")
    return root, residual


def find_zeros(
    params: Params,
    w: Weight,
    count: int,
    trunc: Truncation = DEFAULT_TRUNCATION,
) -> ZeroSet:
    """Return the first ``count`` positive zeros of the ``w``-weighted series.

    The scan starts at half the Euler-Rayleigh lower bound for the first
    zero and walks a geometric grid (ratio 1.05) until the first sign
    change.  Afterwards it moves in ``sqrt(t)`` with a step of one eighth of
    the smallest zero gap seen so far (``0.005 sqrt(t_1)`` until a gap is
    known), over windows growing by 1.5.  Every sign change is refined with
    Brent's method.
    """
    params.require_real_zeros()
    if count < 1:
        raise UsageError(f"count must be >= 1, got {count}")
    if w is Weight.WSECOND:
        raise UsageError("zero finding is not offered for the WSECOND series")
    return _find_zeros_cached(params, w, int(count), trunc)


@functools.lru_cache(maxsize=256)
def _find_zeros_cached(params: Params, w: Weight, count: int, trunc: Truncation) -> ZeroSet:
    def f(t: float) -> float:
        return family_value(params, w, t, trunc)

    p1 = newton_power_sums(params, w, 1)[1]
    roots: list[float] = []
    residuals: list[float] = []

    # first zero: geometric grid from half the Euler-Rayleigh lower bound
    t_prev = 0.5 / p1
    f_prev = f(t_prev)
    while True:
        t_next = t_prev * _FIRST_ZERO_RATIO
        if t_next > _MAX_T:
            raise SearchError("no sign change found for the first zero")
        f_next = f(t_next)
        if f_prev == 0.0 or f_prev * f_next < 0.0:
            break
        t_prev, f_prev = t_next, f_next
    root, res = _refine(f, t_prev, t_next, max(abs(f_prev), abs(f_next), abs(f(0.5 * (t_prev + t_next)))))
    roots.append(root)
    residuals.append(res)

    y_pos = math.sqrt(t_next)
    f_pos = f_next
    step = 0.005 * math.sqrt(root)
    min_gap = math.inf
    window_end = y_pos * _WINDOW_GROWTH
    while len(roots) < count:
        if window_end**2 > _MAX_T:
            raise SearchError(f"found only {len(roots)} of {count} zeros below t={_MAX_T:g}")
        n_pts = max(2, int(math.ceil((window_end - y_pos) / step)))
        ys = y_pos + (window_end - y_pos) * np.arange(1, n_pts + 1) / n_pts
        vals = family_values(params, w, ys * ys, trunc)
        ys = np.concatenate(([y_pos], ys))
        vals = np.concatenate(([f_pos], vals))
        changes = np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)
        for i in changes:
            lo, hi = ys[i] ** 2, ys[i + 1] ** 2
            # amplitude of a sine through the bracket with the current zero spacing
            slope = abs(vals[i + 1] - vals[i]) / (hi - lo)
            amplitude = slope * (hi - roots[-1]) / math.pi
            root, res = _refine(f, lo, hi, max(amplitude, abs(f(0.5 * (lo + hi)))))
            gap = math.sqrt(root) - math.sqrt(roots[-1])
            min_gap = min(min_gap, gap)
            step = min_gap / _STEPS_PER_GAP
            roots.append(root)
            residuals.append(res)
            if len(roots) == count:
                break
        y_pos, f_pos = ys[-1], vals[-1]
        window_end = y_pos * _WINDOW_GROWTH

    return ZeroSet(
        params=params,
        weight=w,
        t_zeros=tuple(roots),
        z_zeros=tuple(w.z_of_t(t) for t in roots),
        residuals=tuple(residuals),
    )


@dataclass(frozen=True)
class InterlacingReport:
    passed: bool
    first_violation: Optional[int]
    detail: str


def verify_interlacing(zeros_w: ZeroSet, zeros_wprime: ZeroSet) -> InterlacingReport:
    """Check ``w'_1 < w_1 < w'_2 < w_2 < ...`` with a 1e-10 relative margin.

    ``first_violation`` is the 1-based index ``n`` of the first failing
    pair among ``w'_n < w_n`` and ``w_n < w'_{n+1}``.
    """
    if zeros_w.params != zeros_wprime.params:
        raise UsageError("interlacing needs zero sets computed from the same parameters")
    if zeros_w.weight is not Weight.UNIT or zeros_wprime.weight is not Weight.WPRIME:
        raise UsageError("interlacing compares UNIT zeros against WPRIME zeros")
    if len(zeros_w) != len(zeros_wprime):
        raise UsageError("interlacing needs equal zero counts")

    def ahead(a: float, b: float) -> bool:
        return b - a > 1e-10 * abs(b)

    w, wp = zeros_w.z_zeros, zeros_wprime.z_zeros
    n = len(w)
    for i in range(n):
        if not ahead(wp[i], w[i]):
            return InterlacingReport(False, i + 1, f"w'_{i + 1}={wp[i]!r} !< w_{i + 1}={w[i]!r}")
        if i + 1 < n and not ahead(w[i], wp[i + 1]):
            return InterlacingReport(False, i + 1, f"w_{i + 1}={w[i]!r} !< w'_{i + 2}={wp[i + 1]!r}")
    return InterlacingReport(True, None, f"{n} interlaced pairs")


# --- Hadamard product and Mittag-Leffler checks -----------------------------


def tail_sum_estimate(zeros: ZeroSet, power: int) -> float:
    """Estimate ``sum_{n > N} t_n**-power`` beyond the supplied zeros.

    Zeros are asymptotically equally spaced in ``y = sqrt(t)``; with spacing
    ``d`` taken from the last two zeros the tail is approximated by the
    midpoint integral ``int_{y_N + d/2}^inf y**(-2 power) dy / d``.
    """
    if len(zeros) < 2:
        raise UsageError("tail estimate needs at least two zeros")
    y_last = math.sqrt(zeros.t_zeros[-1])
    d = y_last - math.sqrt(zeros.t_zeros[-2])
    start = y_last + 0.5 * d
    return start ** (1 - 2 * power) / (d * (2 * power - 1))


def _require_unit(zeros: ZeroSet, params: Params) -> None:
    if zeros.weight is not Weight.UNIT:
        raise UsageError("product checks need zeros of the UNIT series")
    if zeros.params != params:
        raise UsageError("zero set was computed for different parameters")


def log_deriv_from_zeros(
    params: Params, zeros: ZeroSet, r: float, tail_correction: bool = False
) -> float:
    """``r W'(r) / W(r) = nu/k - sum 2 r**2 / (w_n**2 - r**2)`` over the given zeros.

    With ``tail_correction`` the omitted zeros are accounted for through
    :func:`tail_sum_estimate`.
    """
    _require_unit(zeros, params)
    r = float(r)
    if r < 0.0:
        raise DomainError("r must be non-negative")
    if zeros.z_zeros and r >= zeros.z_zeros[0]:
        raise DomainError(f"r={r!r} is not below the first zero {zeros.z_zeros[0]!r}")
    r2 = r * r
    terms = [2.0 * r2 / (w * w - r2) for w in zeros.z_zeros]
    value = params.s - math.fsum(terms)
    if tail_correction and len(zeros) >= 2:
        # 2 r^2 / (4 t - r^2) = (r^2/2)/t + (r^4/8)/t^2 + ...
        value -= 0.5 * r2 * tail_sum_estimate(zeros, 1) + 0.125 * r2 * r2 * tail_sum_estimate(zeros, 2)
    return value


def product_reconstruct(
    params: Params,
    zeros: ZeroSet,
    z: float,
    n_used: Optional[int] = None,
    tail_correction: bool = False,
) -> float:
    """``(z/2)**(nu/k) / Gamma_k(nu+k) * prod_{n <= n_used} (1 - z**2 / w_n**2)``."""
    _require_unit(zeros, params)
    z = float(z)
    if z < 0.0:
        raise DomainError("z must be non-negative")
    used = zeros.z_zeros if n_used is None else zeros.z_zeros[: int(n_used)]
    if z == 0.0:
        return 0.0 if params.s > 0 else 1.0 / k_gamma(params.nu + params.k, params.k)
    prefactor = (0.5 * z) ** params.s / k_gamma(params.nu + params.k, params.k)
    factors = np.array([1.0 - (z / w) ** 2 for w in used])
    if np.any(factors == 0.0):
        return 0.0
    sign = -1.0 if np.count_nonzero(factors < 0.0) % 2 else 1.0
    log_prod = math.fsum(np.log(np.abs(factors)))
    if tail_correction and len(used) >= 2:
        sub = ZeroSet(params, Weight.UNIT, zeros.t_zeros[: len(used)], tuple(used), ())
        z2 = z * z
        log_prod -= 0.25 * z2 * tail_sum_estimate(sub, 1) + z2 * z2 / 32.0 * tail_sum_estimate(sub, 2)
    return sign * prefactor * math.exp(log_prod)
