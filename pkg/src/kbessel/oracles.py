"""Independent reference computations used only for cross-checking.

Nothing here touches the series engine: coefficients come straight from
``math.gamma`` and the sum is a fixed 60-term loop, roots by plain
bisection on a uniform z-grid scan.
"""

from __future__ import annotations

import math

FIXED_TERMS = 60

# w(n) per family for effective order s = nu/k
_WEIGHTS = {
    "W": lambda n, s: 1.0,
    "WPRIME": lambda n, s: 2 * n + s,
    "GPRIME": lambda n, s: 2 * n + 1,
    "HPRIME": lambda n, s: n + 1,
    "ZGPRIME": lambda n, s: (2 * n + 1) ** 2,
    "ZHPRIME": lambda n, s: (n + 1) ** 2,
}


def fixed_series(k: float, nu: float, c: float, family: str, t: float) -> float:
    """``sum_{n<60} w(n) (-c)^n t^n / (n! Gamma_k(nk + nu + k))``."""
    w = _WEIGHTS[family]
    s = nu / k
    total = 0.0
    for n in range(FIXED_TERMS):
        a = n + s + 1.0  # Gamma_k(nk+nu+k) = k**(n+s) Gamma(n+s+1)
        log_mag = n * math.log(c * t) if t > 0 else (0.0 if n == 0 else -math.inf)
        log_mag -= math.lgamma(n + 1.0) + (n + s) * math.log(k) + math.lgamma(a)
        total += w(n, s) * (-1.0) ** n * math.exp(log_mag)
    return total


def bisect_first_zero(k: float, nu: float, c: float, family: str, step: float = 0.02) -> float:
    """First positive zero in the radius variable (``2 sqrt t`` or ``4 t`` for h families)."""
    linear = family in ("HPRIME", "ZHPRIME")

    def t_of(r: float) -> float:
        return r / 4.0 if linear else 0.25 * r * r

    def f(r: float) -> float:
        return fixed_series(k, nu, c, family, t_of(r))

    lo = step
    f_lo = f(lo)
    while True:
        hi = lo + step
        f_hi = f(hi)
        if f_lo * f_hi <= 0.0:
            break
        lo, f_lo = hi, f_hi
        if lo > 1e4:
            raise RuntimeError("oracle scan found no sign change")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
        if hi - lo <= 1e-15 * hi:
            break
    return 0.5 * (lo + hi)
