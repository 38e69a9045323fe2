"""Classical log-gamma and the k-gamma function.

The k-gamma function satisfies ``Gamma_k(z + k) = z * Gamma_k(z)`` with
``Gamma_k(k) = 1`` and reduces to the classical gamma function through
``Gamma_k(z) = k**(z/k - 1) * Gamma(z/k)``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

EULER_GAMMA = 0.57721566490153286

# math.gamma overflows a double just above 171.6
_GAMMA_DIRECT_LIMIT = 170.0


def _check_positive(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {x!r}")
    return x


def log_gamma(x: float) -> float:
    """Return ``ln Gamma(x)`` for ``x > 0``."""
    x = _check_positive("x", x)
    return math.lgamma(x)


def log_k_gamma(z: float, k: float) -> float:
    """Return ``ln Gamma_k(z)`` for ``z, k > 0``."""
    z = _check_positive("z", z)
    k = _check_positive("k", k)
    return (z / k - 1.0) * math.log(k) + math.lgamma(z / k)


def k_gamma(z: float, k: float) -> float:
    """Return ``Gamma_k(z)``.

    Small arguments go through ``math.gamma`` directly; large ones through
    the log form, which overflows only when the result itself does.
    """
    z = _check_positive("z", z)
    k = _check_positive("k", k)
    a = z / k
    if a < _GAMMA_DIRECT_LIMIT:
        scale = k ** (a - 1.0)
        if scale != 0.0 and math.isfinite(scale):
            value = scale * math.gamma(a)
            if math.isfinite(value) and value != 0.0:
                return value
    return math.exp(log_k_gamma(z, k))


def k_gamma_reciprocal_product(z: float, k: float, n_factors: int) -> float:
    """Truncated Weierstrass product for ``1 / Gamma_k(z)``.

    Only used to cross-check :func:`k_gamma`; the truncation error is
    roughly ``(z/k)**2 / (2 * n_factors)`` in relative terms.
    """
    z = _check_positive("z", z)
    k = _check_positive("k", k)
    if int(n_factors) < 1:
        raise DomainError(f"n_factors must be >= 1, got {n_factors!r}")
    a = z / k
    n = np.arange(1, int(n_factors) + 1, dtype=float)
    q = a / n
    log_factors = math.fsum(np.log1p(q) - q)
    log_value = math.log(z) - a * math.log(k) + a * EULER_GAMMA + log_factors
    return math.exp(log_value)
