"""Acceptance criteria 1-8, each at its stated tolerance.

Every criterion prints one ``criterion N: PASS/FAIL - ...`` line (also
repeated in the pytest terminal summary).  Run directly with
``python tests/test_acceptance.py`` to get just those lines.
"""

from __future__ import annotations

import sys
from collections import defaultdict

import pytest

from kbessel import Params, Weight, find_zeros
from kbessel.oracles import bisect_first_zero

CLASSICAL = {1.0: 3.831705970207512, 2.0: 5.135622301840683}


def _by_name(report: dict) -> dict[str, list[dict]]:
    out: dict[str, list[dict]] = defaultdict(list)
    for c in report["checks"]:
        out[c["name"]].append(c)
    return out


def _label(check: dict) -> str:
    p = check["params"]
    return f"(k={p['k']:g}, nu={p['nu']:g}, c={p['c']:g})"


def _all_pass(rows: list[dict], n_points: int) -> tuple[bool, list[str]]:
    bad = [_label(c) for c in rows if c["status"] != "pass"]
    return len(rows) == n_points and not bad, bad


def criterion_1(report: dict) -> tuple[bool, str]:
    rows = _by_name(report)["1.classical_reduction"]
    ok, bad = _all_pass(rows, len(report["grid"]))
    worst = max(c["details"]["abs_diff"] for c in rows)
    # the named classical zeros, nu = 1 and nu = 2 at k = c = 1
    named = {}
    for nu, j in CLASSICAL.items():
        z = find_zeros(Params(1.0, nu, 1.0), Weight.UNIT, 1).z_zeros[0]
        oracle = bisect_first_zero(1.0, nu, 1.0, "W")
        named[nu] = max(abs(z - j), abs(z - oracle))
    ok = ok and all(err < 1e-9 for err in named.values())
    return ok, f"max |zero - oracle| {worst:.1e} on grid; j_1,1 err {named[1.0]:.1e}, j_2,1 err {named[2.0]:.1e}" + (
        f"; failing {bad}" if bad else ""
    )


def criterion_2(report: dict) -> tuple[bool, str]:
    ok, bad = _all_pass(_by_name(report)["2.interlacing"], len(report["grid"]))
    return ok, f"8 UNIT/WPRIME zeros interlace at {len(report['grid']) - len(bad)}/{len(report['grid'])} points"


def criterion_3(report: dict) -> tuple[bool, str]:
    rows = _by_name(report)["3.alpha0_crosscheck"]
    ok, bad = _all_pass(rows, len(report["grid"]))
    worst = max(v["rel_diff"] for c in rows for v in c["details"].values() if isinstance(v, dict))
    return ok, f"max relative difference {worst:.1e} (tol 1e-8)" + (f"; failing {bad}" if bad else "")


def criterion_4(report: dict) -> tuple[bool, str]:
    ok, bad = _all_pass(_by_name(report)["4.euler_rayleigh_sandwich"], len(report["grid"]))
    concrete = [
        c for c in _by_name(report)["4.euler_rayleigh_sandwich"]
        if (c["params"]["k"], c["params"]["nu"], c["params"]["c"]) == (1.0, 1.0, 1.0)
    ]
    has_concrete = bool(concrete) and sum(key.endswith(".concrete") for key in concrete[0]["details"]) == 3
    ok = ok and has_concrete
    return ok, "m=1,2,3 intervals strictly contain t-zeros and radii; concrete (1,1,1) intervals " + (
        "matched" if has_concrete else "missing"
    ) + (f"; failing {bad}" if bad else "")


def criterion_5(report: dict) -> tuple[bool, str]:
    by = _by_name(report)
    n = len(report["grid"])
    problems = []
    ok_sums, bad = _all_pass(by["5.printed_sums"], n)
    if not ok_sums:
        problems.append(f"printed first sums differ at {bad}")
    sigma_k1_miss = [_label(c) for c in by["5.sigma2"] if c["params"]["k"] == 1.0 and c["status"] != "pass"]
    sigma_other = [_label(c) for c in by["5.sigma2"] if c["params"]["k"] != 1.0 and c["status"] != "discrepancy"]
    if sigma_k1_miss:
        problems.append(f"printed sigma_2 does not match at k=1 for {sigma_k1_miss}")
    if sigma_other:
        problems.append(f"printed sigma_2 not flagged at {sigma_other}")
    for name in ("5.star_g_lower", "5.convex_g_upper"):
        unflagged = [_label(c) for c in by[name] if c["status"] != "discrepancy"]
        if len(by[name]) != n or unflagged:
            problems.append(f"{name} not flagged at {unflagged}")
    ok_direct, bad = _all_pass(by["5.direct_zero_sums"], n)
    if not ok_direct:
        problems.append(f"direct zero sums disagree at {bad}")
    summary = "first sums match; star-g lower and convex-g upper bounds flagged; 500-zero sums confirm Newton"
    return not problems, summary if not problems else "; ".join(problems)


def criterion_6(report: dict) -> tuple[bool, str]:
    ok, bad = _all_pass(_by_name(report)["6.monotonicity_ordering"], len(report["grid"]))
    return ok, "ratios decreasing, radii decreasing in alpha, convex <= star" + (f"; failing {bad}" if bad else "")


def criterion_7(report: dict) -> tuple[bool, str]:
    rows = _by_name(report)["7.scaling_reconstruction"]
    ok, bad = _all_pass(rows, len(report["grid"]))
    spread = max(v["spread"] for c in rows for key, v in c["details"].items() if key.startswith("scaled_radius"))
    prod = max(c["details"]["reconstruction"]["product_rel_err"] for c in rows)
    ld = max(c["details"]["reconstruction"]["log_deriv_err"] for c in rows)
    return ok, f"scaling spread {spread:.1e}, product err {prod:.1e}, log-derivative err {ld:.1e}" + (
        f"; failing {bad}" if bad else ""
    )


def criterion_8(report: dict) -> tuple[bool, str]:
    rows = _by_name(report)["8.gamma_layer"]
    ok, bad = _all_pass(rows, len(report["grid"]))
    rec = max(c["details"]["recurrence_max_rel"] for c in rows)
    wp = max(c["details"]["weierstrass_rel"] for c in rows)
    return ok, f"recurrence {rec:.1e} (tol 1e-12), Weierstrass product {wp:.1e} (tol 1e-3)" + (
        f"; failing {bad}" if bad else ""
    )


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, default_report):
    from conftest import ACCEPTANCE_LINES

    ok, summary = CRITERIA[number](default_report)
    ACCEPTANCE_LINES[number] = (ok, summary)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {summary}")
    assert ok, summary


def test_report_has_no_failures(default_report):
    assert default_report["summary"]["fail"] == 0
    assert len(default_report["grid"]) == 27


if __name__ == "__main__":
    from kbessel.verification import build_report, default_grid

    report = build_report(default_grid())
    all_ok = True
    for number, fn in sorted(CRITERIA.items()):
        ok, summary = fn(report)
        all_ok = all_ok and ok
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {summary}")
    sys.exit(0 if all_ok else 1)
