"""Acceptance checks, one function per criterion, and the report builder.

Each check takes a :class:`Params` grid point and returns a list of
:class:`Check` records.  ``status`` is ``pass``, ``fail`` or
``discrepancy``; the last marks an audited printed formula that disagrees
with the derived value and never fails a run.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Iterable, Optional

import numpy as np

from . import __version__
from .gamma_core import k_gamma, k_gamma_reciprocal_product
from .oracles import bisect_first_zero
from .radii import crosscheck_alpha0, solve_radius
from .rayleigh import (
    SumFamily,
    closed_form_sums,
    newton_power_sums,
    printed_bounds,
    radius_bounds,
    sandwich_bounds,
)
from .series import Mode, Params, RatioKind, Weight, first_pole, star_ratio, w_eval
from .zeros import (
    find_zeros,
    log_deriv_from_zeros,
    product_reconstruct,
    tail_sum_estimate,
    verify_interlacing,
)

SCHEMA = 1

TOLERANCES = {
    "classical_zero_abs": 1e-9,
    "interlacing_rel_margin": 1e-10,
    "alpha0_rel": 1e-8,
    "printed_sum_rel": 1e-10,
    "direct_p1_rel": 1e-3,
    "direct_p2_rel": 1e-6,
    "scaling_rel": 1e-9,
    "product_rel": 1e-4,
    "log_deriv_abs": 1e-6,
    "gamma_recurrence_rel": 1e-12,
    "weierstrass_rel": 1e-3,
    "concrete_interval_abs": 1e-6,
}

DIRECT_ZEROS = 500
INTERLACE_ZEROS = 8
ALPHAS = (0.0, 0.25, 0.5, 0.9)
SCALING_CS = (0.5, 1.0, 3.0)

KIND_MODES = [(kind, mode) for mode in Mode for kind in RatioKind]
BOUNDED_KIND_MODES = [km for km in KIND_MODES if km != (RatioKind.F, Mode.CONVEX)]
ZERO_FAMILIES = (Weight.UNIT, Weight.WPRIME, Weight.GPRIME, Weight.HPRIME, Weight.ZGPRIME, Weight.ZHPRIME)

# classical first zeros j_{nu,1}
CLASSICAL_J = {1.0: 3.831705970207512, 2.0: 5.135622301840683}

# (kind, mode) -> concrete m=1 interval at k = nu = c = 1
CONCRETE_INTERVALS = {
    (RatioKind.F, Mode.STAR): (2 * math.sqrt(2 / 3), 6 * math.sqrt(2 / 17)),
    (RatioKind.H, Mode.STAR): (4.0, 8.0),
    (RatioKind.H, Mode.CONVEX): (2.0, 3.2),
}


def default_grid() -> list[Params]:
    return [
        Params(k, nu, c)
        for k in (0.5, 1.0, 2.0)
        for nu in (0.5, 1.0, 2.5)
        for c in (0.5, 1.0, 3.0)
    ]


@dataclass
class Check:
    name: str
    params: Optional[dict]
    status: str
    details: dict = field(default_factory=dict)


def _pdict(p: Params) -> dict:
    return {"k": p.k, "nu": p.nu, "c": p.c}


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def _label(kind: RatioKind, mode: Mode) -> str:
    return f"{mode.value}-{kind.value}"


# --- 1. classical reduction --------------------------------------------------

def check_classical_reduction(p: Params) -> list[Check]:
    z = find_zeros(p, Weight.UNIT, 1).z_zeros[0]
    oracle = bisect_first_zero(p.k, p.nu, p.c, "W")
    details: dict[str, Any] = {"zero": z, "oracle": oracle, "abs_diff": abs(z - oracle)}
    ok = abs(z - oracle) < TOLERANCES["classical_zero_abs"]
    if p.k == 1.0 and p.c == 1.0 and p.nu in CLASSICAL_J:
        details["classical_j"] = CLASSICAL_J[p.nu]
        ok = ok and abs(z - CLASSICAL_J[p.nu]) < TOLERANCES["classical_zero_abs"]
    return [Check("1.classical_reduction", _pdict(p), _status(ok), details)]


# --- 2. interlacing ----------------------------------------------------------

def check_interlacing(p: Params) -> list[Check]:
    zw = find_zeros(p, Weight.UNIT, INTERLACE_ZEROS)
    zwp = find_zeros(p, Weight.WPRIME, INTERLACE_ZEROS)
    rep = verify_interlacing(zw, zwp)
    return [
        Check(
            "2.interlacing",
            _pdict(p),
            _status(rep.passed),
            {"count": INTERLACE_ZEROS, "first_violation": rep.first_violation, "detail": rep.detail},
        )
    ]


# --- 3. order-zero consistency -----------------------------------------------

def check_alpha0(p: Params) -> list[Check]:
    rows = {}
    ok = True
    for kind, mode in BOUNDED_KIND_MODES:
        rep = crosscheck_alpha0(kind, mode, p)
        rows[_label(kind, mode)] = {
            "radius": rep.radius,
            "first_zero_radius": rep.first_zero_radius,
            "rel_diff": rep.rel_diff,
        }
        ok = ok and rep.passed
    return [Check("3.alpha0_crosscheck", _pdict(p), _status(ok), rows)]


# --- 4. Euler-Rayleigh sandwich ------------------------------------------------

def check_sandwich(p: Params) -> list[Check]:
    ok = True
    rows: dict[str, Any] = {}
    for w in ZERO_FAMILIES:
        t1 = find_zeros(p, w, 1).t_zeros[0]
        sums = newton_power_sums(p, w, 4)
        prev = None
        for m in (1, 2, 3):
            lo, hi = sandwich_bounds(sums, m)
            good = lo < t1 < hi
            if prev is not None:
                good = good and prev[0] <= lo and hi <= prev[1]
            prev = (lo, hi)
            ok = ok and good
            rows[f"{w.value}.t.m{m}"] = [lo, t1, hi]
    for kind, mode in BOUNDED_KIND_MODES:
        r0 = solve_radius(kind, mode, p, 0.0).radius
        for m in (1, 2, 3):
            b = radius_bounds(kind, mode, p, m)
            good = b.lower < r0 < b.upper
            ok = ok and good
            rows[f"{_label(kind, mode)}.r.m{m}"] = [b.lower, r0, b.upper]
        if (p.k, p.nu, p.c) == (1.0, 1.0, 1.0) and (kind, mode) in CONCRETE_INTERVALS:
            b = radius_bounds(kind, mode, p, 1)
            want = CONCRETE_INTERVALS[(kind, mode)]
            good = (
                abs(b.lower - want[0]) < TOLERANCES["concrete_interval_abs"]
                and abs(b.upper - want[1]) < TOLERANCES["concrete_interval_abs"]
            )
            ok = ok and good
            rows[f"{_label(kind, mode)}.concrete"] = {"expected": list(want), "got": [b.lower, b.upper]}
    return [Check("4.euler_rayleigh_sandwich", _pdict(p), _status(ok), rows)]


# --- 5. printed-formula audit --------------------------------------------------

def _scaled_newton(p: Params, family: SumFamily) -> tuple[float, float]:
    sums = newton_power_sums(p, family.weight, 2)
    return sums[1] / family.scale, sums[2] / family.scale**2


def direct_zero_sums(p: Params, w: Weight, count: int = DIRECT_ZEROS) -> dict[str, float]:
    """Partial sums of reciprocal t-zeros and their tail estimates."""
    zs = find_zeros(p, w, count)
    t = np.array(zs.t_zeros)
    return {
        "d1": math.fsum(1.0 / t),
        "d2": math.fsum(1.0 / t**2),
        "tail1": tail_sum_estimate(zs, 1),
        "tail2": tail_sum_estimate(zs, 2),
    }


def check_printed_audit(p: Params, direct_count: int = DIRECT_ZEROS) -> list[Check]:
    out: list[Check] = []
    tol = TOLERANCES["printed_sum_rel"]

    # printed first/second sums that must agree with Newton everywhere
    rows = {}
    ok = True
    required = [
        (SumFamily.SIGMA, 1), (SumFamily.ELL, 1), (SumFamily.ELL, 2), (SumFamily.KAPPA, 1),
        (SumFamily.KAPPA, 2), (SumFamily.MU, 1), (SumFamily.MU, 2), (SumFamily.UPSILON, 1),
    ]
    for fam, idx in required:
        newton = _scaled_newton(p, fam)[idx - 1]
        printed = closed_form_sums(p, fam)[idx - 1]
        rel = _rel(newton, printed)
        rows[f"{fam.value}{idx}"] = {"newton": newton, "printed": printed, "rel": rel}
        ok = ok and rel < tol
    out.append(Check("5.printed_sums", _pdict(p), _status(ok), rows))

    # sigma_2: the printed denominator has k nu where Newton gives nu**2, so
    # the two agree only at k = nu = 1
    newton = _scaled_newton(p, SumFamily.SIGMA)[1]
    printed = closed_form_sums(p, SumFamily.SIGMA)[1]
    rel = _rel(newton, printed)
    out.append(Check("5.sigma2", _pdict(p), "discrepancy" if rel >= tol else "pass",
                     {"newton": newton, "printed": printed, "rel": rel, "k_is_1": p.k == 1.0}))

    # upsilon_2: printed value misses a factor (nu + k)
    newton = _scaled_newton(p, SumFamily.UPSILON)[1]
    printed = closed_form_sums(p, SumFamily.UPSILON)[1]
    rel = _rel(newton, printed)
    out.append(Check("5.upsilon2", _pdict(p), "discrepancy" if rel >= tol else "pass",
                     {"newton": newton, "printed": printed, "rel": rel}))

    # printed bounds that do not follow from their own sums
    for name, kind, mode, which in (
        ("5.star_g_lower", RatioKind.G, Mode.STAR, 0),
        ("5.convex_g_upper", RatioKind.G, Mode.CONVEX, 1),
    ):
        derived = radius_bounds(kind, mode, p, 1)
        derived_value = (derived.lower, derived.upper)[which]
        printed_value = printed_bounds(kind, mode, p)[which]
        rel = _rel(derived_value, printed_value)
        out.append(Check(name, _pdict(p), "discrepancy" if rel > 1e-9 else "pass",
                         {"derived": derived_value, "printed": printed_value, "rel": rel}))

    # direct zero sums confirm the Newton values
    rows = {}
    ok = True
    for w in ZERO_FAMILIES:
        d = direct_zero_sums(p, w, direct_count)
        sums = newton_power_sums(p, w, 2)
        e1 = _rel(d["d1"] + d["tail1"], sums[1])
        e2 = _rel(d["d2"] + d["tail2"], sums[2])
        good = (
            d["d1"] < sums[1]
            and d["d2"] < sums[2]
            and e1 < TOLERANCES["direct_p1_rel"]
            and e2 < TOLERANCES["direct_p2_rel"]
        )
        ok = ok and good
        rows[w.value] = {"p1": sums[1], "p2": sums[2], **d, "rel1": e1, "rel2": e2}
    # the printed sigma_2 (k != 1) and upsilon_2 are refuted by the zeros
    for fam in (SumFamily.SIGMA, SumFamily.UPSILON):
        direct2 = rows[fam.weight.value]["d2"] + rows[fam.weight.value]["tail2"]
        printed = closed_form_sums(p, fam)[1] * fam.scale**2
        newton_wins = _rel(direct2, newton_power_sums(p, fam.weight, 2)[2]) <= _rel(direct2, printed)
        rows[f"{fam.value}2_direct_prefers_newton"] = newton_wins
        ok = ok and newton_wins
    out.append(Check("5.direct_zero_sums", _pdict(p), _status(ok), {"zeros": direct_count, **rows}))
    return out


# --- 6. monotonicity and ordering ----------------------------------------------

def check_monotonicity(p: Params) -> list[Check]:
    ok = True
    rows: dict[str, Any] = {}
    for kind in RatioKind:
        pole = first_pole(kind, Mode.STAR, p)
        rs = pole * np.arange(1, 101) / 101.0
        vals = np.array([star_ratio(kind, p, r) for r in rs])
        good = bool(np.all(np.diff(vals) < 0.0))
        ok = ok and good
        rows[f"star_ratio.{kind.value}"] = good
    radii: dict[tuple, list[float]] = {}
    for kind, mode in KIND_MODES:
        seq = [solve_radius(kind, mode, p, a).radius for a in ALPHAS]
        radii[(kind, mode)] = seq
        good = all(a > b for a, b in zip(seq, seq[1:]))
        ok = ok and good
        rows[f"alpha.{_label(kind, mode)}"] = seq
    for kind in RatioKind:
        rc = radii[(kind, Mode.CONVEX)][0]
        rs_ = radii[(kind, Mode.STAR)][0]
        good = rc <= rs_
        ok = ok and good
        rows[f"order.{kind.value}"] = [rc, rs_]
    return [Check("6.monotonicity_ordering", _pdict(p), _status(ok), rows)]


# --- 7. scaling and reconstructions --------------------------------------------

def check_scaling(p: Params, direct_count: int = DIRECT_ZEROS) -> list[Check]:
    ok = True
    rows: dict[str, Any] = {}
    for kind, mode in KIND_MODES:
        power = 1.0 if kind is RatioKind.H else 0.5
        scaled = [solve_radius(kind, mode, p.with_(c=c), 0.0).radius * c**power for c in SCALING_CS]
        spread = (max(scaled) - min(scaled)) / max(scaled)
        good = spread < TOLERANCES["scaling_rel"]
        ok = ok and good
        rows[f"scaled_radius.{_label(kind, mode)}"] = {"values": scaled, "spread": spread}

    zs = find_zeros(p, Weight.UNIT, direct_count)
    z = 0.5 * zs.z_zeros[0]
    series_w = w_eval(p, z)
    prod = product_reconstruct(p, zs, z, direct_count, tail_correction=True)
    bare = product_reconstruct(p, zs, z, direct_count)
    e_prod = abs(prod - series_w) / abs(series_w)
    series_ld = z * w_eval(p, z, 1) / series_w
    ld = log_deriv_from_zeros(p, zs, z, tail_correction=True)
    ld_bare = log_deriv_from_zeros(p, zs, z)
    e_ld = abs(ld - series_ld) / max(1.0, abs(series_ld))
    good = e_prod < TOLERANCES["product_rel"] and e_ld < TOLERANCES["log_deriv_abs"]
    ok = ok and good
    rows["reconstruction"] = {
        "z": z,
        "zeros": direct_count,
        "product_rel_err": e_prod,
        "product_rel_err_untailed": abs(bare - series_w) / abs(series_w),
        "log_deriv_err": e_ld,
        "log_deriv_err_untailed": abs(ld_bare - series_ld) / max(1.0, abs(series_ld)),
    }
    return [Check("7.scaling_reconstruction", _pdict(p), _status(ok), rows)]


# --- 8. gamma layer ------------------------------------------------------------

def check_gamma(p: Params) -> list[Check]:
    k = p.k
    zs = np.round(np.arange(0.1, 50.0001, 0.1), 10)
    worst = max(abs(k_gamma(z + k, k) - z * k_gamma(z, k)) / k_gamma(z + k, k) for z in zs)
    z0 = p.nu + k
    prod = k_gamma_reciprocal_product(z0, k, 100_000)
    e_prod = abs(prod - 1.0 / k_gamma(z0, k)) * k_gamma(z0, k)
    ok = worst < TOLERANCES["gamma_recurrence_rel"] and e_prod < TOLERANCES["weierstrass_rel"]
    return [
        Check(
            "8.gamma_layer",
            _pdict(p),
            _status(ok),
            {"recurrence_max_rel": float(worst), "weierstrass_z": z0, "weierstrass_rel": e_prod},
        )
    ]


CHECKS: list[Callable[[Params], list[Check]]] = [
    check_classical_reduction,
    check_interlacing,
    check_alpha0,
    check_sandwich,
    check_printed_audit,
    check_monotonicity,
    check_scaling,
    check_gamma,
]


def run_point(p: Params) -> list[Check]:
    checks: list[Check] = []
    for fn in CHECKS:
        try:
            checks.extend(fn(p))
        except Exception as exc:  # a crashing check is a failed check
            checks.append(Check(fn.__name__, _pdict(p), "fail", {"error": f"{type(exc).__name__}: {exc}"}))
    return checks


def build_report(grid: Iterable[Params], workers: int = 1) -> dict:
    grid = list(grid)
    if workers > 1 and len(grid) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_point = list(pool.map(run_point, grid))
    else:
        per_point = [run_point(p) for p in grid]
    checks = [asdict(c) for rows in per_point for c in rows]
    summary = {s: sum(1 for c in checks if c["status"] == s) for s in ("pass", "fail", "discrepancy")}
    return {
        "schema": SCHEMA,
        "grid": [_pdict(p) for p in grid],
        "tolerances": TOLERANCES,
        "checks": checks,
        "summary": summary,
        "metadata": {"tool": "kbessel", "version": __version__},
    }
