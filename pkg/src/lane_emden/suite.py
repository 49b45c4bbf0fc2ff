"""The fixed, ordered list of exact and numeric checks behind ``verify``."""

from __future__ import annotations

import math
from typing import Callable

from . import coefficients as co
from . import scaling_identities as si
from .exponents import PM_THRESHOLD, pm_denominator, pm_exponent
from .report import VerificationReport

SUITE_VERSION = "1"


def verify_pm_threshold() -> VerificationReport:
    rep = VerificationReport("p_m threshold")
    rep.add("threshold.pm-constant", "6 + sqrt(73) is about 14.544",
            abs(PM_THRESHOLD - 14.544) < 2e-3, f"6 + sqrt(73) = {PM_THRESHOLD:.15g}")
    s = 2.5
    den = pm_denominator(2 * s + PM_THRESHOLD, s)
    rep.add("threshold.pm-denominator-zero", "5m - sqrt(15m^2 + 120m + 370) vanishes at m = 6 + sqrt(73)",
            abs(den) < 1e-10, f"denominator = {den:.3g}")
    below = pm_exponent(2 * s + PM_THRESHOLD - 1e-9, s)
    above = pm_exponent(2 * s + PM_THRESHOLD + 1e-6, s)
    rep.add("threshold.pm-switch", "p_m is infinite below the threshold and large but finite just above",
            math.isinf(below) and math.isfinite(above) and above > 1e4,
            f"below = {below}, above = {above:.6g}")
    return rep


def _ibp_with_jordan() -> VerificationReport:
    rep = co.verify_ibp_catalog()
    rep.extend(co.verify_jordan())
    return rep


# (prefixes produced, builder); order is the output order
GROUPS: list[tuple[tuple[str, ...], Callable[[], VerificationReport]]] = [
    (("coeff.",), co.verify_km_forms),
    (("coeff.",), co.verify_sign_grid),
    (("coeff.",), co.verify_quadratic_reductions),
    (("ibp.", "jordan."), _ibp_with_jordan),
    (("scaling.",), si.verify_scaling_derivatives),
    (("radial.",), si.verify_radial),
    (("threshold.",), co.verify_quartic_threshold),
    (("threshold.",), verify_pm_threshold),
]


def _may_match(prefixes, wanted: str | None) -> bool:
    if not wanted:
        return True
    return any(p.startswith(wanted) or wanted.startswith(p) for p in prefixes)


def run_suite(prefix: str | None = None) -> VerificationReport:
    """Run every group that can produce a check id starting with ``prefix``."""
    out = VerificationReport(f"verification suite v{SUITE_VERSION}")
    for prefixes, build in GROUPS:
        if not _may_match(prefixes, prefix):
            continue
        rep = build()
        if prefix:
            rep.checks = [c for c in rep.checks if c.check_id.startswith(prefix)]
        out.extend(rep)
    return out
