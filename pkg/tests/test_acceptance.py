"""Acceptance criteria, each run at its stated tolerance and time budget."""

import math
import random
import time

import oracles
from lane_emden.coefficients import (
    build_coeff_set,
    jordan_decompose,
    verify_ibp_catalog,
    verify_km_forms,
    verify_quartic_threshold,
)
from lane_emden.criterion import criterion_F, log_criterion_lhs, log_gamma, singular_lambda
from lane_emden.exponents import (
    PM_THRESHOLD,
    a_ns,
    closed_form_exponent,
    finiteness_boundary,
    n0_threshold,
    pc_exponent,
    pc_from_a,
    pm_denominator,
    pm_exponent,
    sobolev_exponent,
)
from lane_emden.scaling_identities import verify_radial, verify_scaling_derivatives


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_c01_exact_coefficient_identities(criterion):
    with Timer() as t:
        rep = verify_km_forms()
    criterion(1, "A1, A2, B1 closed forms and A2 factorisation",
              rep.all_passed and t.elapsed < 1,
              f"{len(rep.checks)} checks, {t.elapsed:.2f}s")


def test_c02_ibp_catalog_and_jordan(criterion):
    with Timer() as t:
        rep = verify_ibp_catalog()
        jd = jordan_decompose(2, 0)
        c = build_coeff_set()
    ok = (rep.all_passed and jd.residual.is_zero()
          and jd.d1 == c.A1 + 12 and jd.d2 == c.A2 and t.elapsed < 1)
    criterion(2, "integration-by-parts catalog; Jordan residual zero at (2, 0)", ok,
              f"{len(rep.checks)} identities, {t.elapsed:.2f}s")


def test_c03_scaling_identities(criterion):
    with Timer() as t:
        rep = verify_scaling_derivatives(8)
        rep.extend(verify_radial(8))
    bad = [c.check_id for c in rep.failures()]
    criterion(3, "scaling and radial identities on r^j, j <= 8, five k values",
              not bad and t.elapsed < 5,
              f"{len(rep.checks)} checks, {t.elapsed:.2f}s{', failing ' + ', '.join(bad) if bad else ''}")


def test_c04_quartic_threshold(criterion):
    with Timer() as t:
        rep = verify_quartic_threshold()
    criterion(4, "largest quartic root in (11.11, 11.13)", rep.all_passed and t.elapsed < 1,
              rep["threshold.quartic-root"].detail)


def test_c05_pm_threshold_constant(criterion):
    s = 2.5
    den = pm_denominator(2 * s + PM_THRESHOLD, s)
    switch = (math.isinf(pm_exponent(2 * s + PM_THRESHOLD - 1e-9, s))
              and math.isfinite(pm_exponent(2 * s + PM_THRESHOLD + 1e-9, s)))
    ok = abs(PM_THRESHOLD - 14.544) < 2e-3 and abs(den) < 1e-10 and switch
    criterion(5, "6 + sqrt(73) ~ 14.544 and p_m switches there", ok,
              f"6+sqrt(73) = {PM_THRESHOLD:.6f}, denominator {den:.1e}")


def test_c06_sobolev_point_identity(criterion):
    rng = random.Random(6)
    with Timer() as t:
        worst = 0.0
        for _ in range(50):
            s = rng.uniform(2.0001, 2.9999)
            n = rng.uniform(2 * s + 1e-3, 2 * s + 60)
            ps = sobolev_exponent(n, s)
            worst = max(worst, abs(criterion_F(n, s, ps) - math.log(ps)))
    criterion(6, "F(n, s, p_s) = ln p_s on 50 pairs", worst < 1e-10 and t.elapsed < 1,
              f"max error {worst:.1e}")


def test_c07_closed_form_cross_checks(criterion):
    cases = [(1, range(11, 21)), (2, range(13, 21)), (3, range(15, 21))]
    with Timer() as t:
        worst = max(abs(pc_exponent(n, s) - closed_form_exponent(n, s)) for s, ns in cases for n in ns)
    criterion(7, "numeric p_c equals the closed forms for s = 1, 2, 3", worst < 1e-6 and t.elapsed < 10,
              f"max difference {worst:.1e}, {t.elapsed:.2f}s")


def test_c08_dimension_thresholds(criterion):
    with Timer() as t:
        n1, n2 = n0_threshold(1), n0_threshold(2)
        gaps = {s: n0_threshold(s) - 2 * s for s in (2.01, 2.25, 2.5, 2.75, 2.99)}
        real_gap = max(finiteness_boundary(s) - 2 * s for s in gaps)
    ok = abs(n1 - 10) < 1e-6 and abs(n2 - 12) < 1e-6 and all(g <= 8.998 for g in gaps.values()) and t.elapsed < 5
    criterion(8, "n0(1) = 10, n0(2) = 12, n0(s) <= 2s + 8.998", ok,
              f"n0(1)={n1:g}, n0(2)={n2:g}, max n0-2s={max(gaps.values()):.4f}, "
              f"real boundary max gap {real_gap:.4f}")


def test_c09_exponent_ordering(criterion):
    violations = []
    count = 0
    with Timer() as t:
        for s in (2.1, 2.5, 2.9):
            n = n0_threshold(s) + 0.5
            while n <= 2 * s + 40 + 1e-9:
                ps, pc, pm = sobolev_exponent(n, s), pc_exponent(n, s), pm_exponent(n, s)
                count += 1
                if not ps < pc or (math.isfinite(pm) and not pc < pm):
                    violations.append((s, n))
                n += 0.5
    criterion(9, "p_s < p_c < p_m on the 0.5 grid", not violations and t.elapsed < 30,
              f"{count} points, {len(violations)} violations, {t.elapsed:.2f}s")


def test_c10_a_ns_bounds(criterion):
    bad = []
    worst_trip = 0.0
    with Timer() as t:
        for s in (2.1, 2.5, 2.9):
            n0 = int(n0_threshold(s))
            for n in range(n0 + 1, n0 + 21):
                a = a_ns(n, s)
                upper = min(1.0, (n - 2 * s) / (2 * math.sqrt(n)) + 1 / math.sqrt(n))
                if not 1 / math.sqrt(n) < a < upper:
                    bad.append((s, n, a))
                pc = pc_exponent(n, s, 1e-12)
                worst_trip = max(worst_trip, abs(pc_from_a(n, s, a) - pc))
    criterion(10, "1/sqrt(n) < a_ns < min(1, ...) and round trip", not bad and worst_trip < 1e-8 and t.elapsed < 10,
              f"round trip {worst_trip:.1e}, {len(bad)} bound violations")


def test_c11_oracle_agreement(criterion):
    rng = random.Random(11)
    worst_lhs = 0.0
    with Timer() as t:
        for _ in range(100):
            s = rng.uniform(2.01, 2.99)
            n = rng.uniform(2 * s + 0.5, 2 * s + 50)
            p = rng.uniform(n / (n - 2 * s) + 0.01, 60)
            lhs = math.exp(log_criterion_lhs(n, s, p))
            other = p * singular_lambda(n, s, 2 * s / (p - 1)) * 2 ** (-2 * s)
            worst_lhs = max(worst_lhs, abs(lhs - other) / abs(other))
        worst_lg = 0.0
        for i in range(400):
            x = 0.1 * (1000.0 ** (i / 399))
            ref = oracles.loggamma(x)
            worst_lg = max(worst_lg, float(abs(log_gamma(x) - ref)) / max(1.0, float(abs(ref))))
    ok = worst_lhs < 1e-10 and worst_lg < 1e-12 and t.elapsed < 5
    criterion(11, "criterion vs singular multiplier; ln Gamma vs high precision", ok,
              f"lhs rel {worst_lhs:.1e}, lnGamma {worst_lg:.1e}")
