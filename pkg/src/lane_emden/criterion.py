"""Gamma-quotient stability criterion for the singular solution.

For ``(-Delta)^s u = |u|^(p-1) u`` on R^n the radial singular solution
``|x|^(-2s/(p-1))`` is unstable exactly when

    p * G(n/2 - e) G(s + e) / (G(e) G((n-2s)/2 - e))  >  G((n+2s)/4)^2 / G((n-2s)/4)^2

with ``e = s/(p-1)`` and ``G`` the Gamma function.  Everything is done in
log space: the quotients overflow doubles long before n gets interesting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class DomainError(ValueError):
    """An argument lies outside the region where a quantity is defined."""


# Lanczos approximation, g = 671/128, 14 terms (Numerical Recipes, 3rd ed.).
_LANCZOS_G = 5.24218750000000000
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS_COEFFS = (
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)
_SQRT_2PI = 2.5066282746310005


def _lanczos(x: float) -> float:
    tmp = x + _LANCZOS_G
    tmp = (x + 0.5) * math.log(tmp) - tmp
    ser = _LANCZOS_C0
    y = x
    for c in _LANCZOS_COEFFS:
        y += 1.0
        ser += c / y
    return tmp + math.log(_SQRT_2PI * ser / x)


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0.

    Near the zeros of ln Gamma at 1 and 2 the value is exactly 0, and
    arguments below 1/2 are lifted by one step of the recurrence so the
    approximation is never used where 1/x dominates.
    """
    x = float(x)
    if not x > 0 or math.isinf(x):
        raise DomainError(f"log_gamma needs a finite positive argument, got {x!r}")
    if x == 1.0 or x == 2.0:
        return 0.0
    if x < 0.5:
        return _lanczos(x + 1.0) - math.log(x)
    return _lanczos(x)


def log_hardy_constant(n: float, s: float) -> float:
    if not n > 2 * s:
        raise DomainError(f"Hardy constant needs n > 2s (n={n}, s={s})")
    return 2.0 * (log_gamma((n + 2 * s) / 4) - log_gamma((n - 2 * s) / 4))


def hardy_constant(n: float, s: float) -> float:
    """Gamma((n+2s)/4)^2 / Gamma((n-2s)/4)^2, the right-hand side of the criterion."""
    return math.exp(log_hardy_constant(n, s))


@dataclass(frozen=True)
class ParamPoint:
    n: float
    s: float
    p: float

    def __post_init__(self):
        if not self.s > 0:
            raise DomainError(f"s must be positive, got {self.s}")
        if not self.p > 1:
            raise DomainError(f"p must exceed 1, got {self.p}")
        if not self.n > 0:
            raise DomainError(f"n must be positive, got {self.n}")

    @property
    def k(self) -> float:
        return 2 * self.s / (self.p - 1)

    @property
    def m(self) -> float:
        return self.n - 2 * self.s

    @property
    def b(self) -> float:
        return 5 - 2 * self.s


class Verdict(str, Enum):
    INSTABILITY_HOLDS = "InstabilityHolds"
    SINGULAR_STABLE = "SingularStable"


@dataclass(frozen=True)
class CriterionValue:
    log_lhs: float
    log_rhs: float

    @property
    def F(self) -> float:
        return self.log_lhs - self.log_rhs

    @property
    def verdict(self) -> Verdict:
        # F == 0 counts as stable: the stability statement uses "<="
        return Verdict.INSTABILITY_HOLDS if self.F > 0 else Verdict.SINGULAR_STABLE

    @property
    def on_boundary(self) -> bool:
        return self.F == 0

    def to_dict(self) -> dict:
        return {
            "log_lhs": self.log_lhs,
            "log_rhs": self.log_rhs,
            "F": self.F,
            "verdict": self.verdict.value,
            "boundary": self.on_boundary,
        }


def _criterion_arguments(n: float, s: float, p: float) -> dict[str, float]:
    e = s / (p - 1)
    return {
        "n/2 - s/(p-1)": n / 2 - e,
        "s + s/(p-1)": s + e,
        "s/(p-1)": e,
        "(n-2s)/2 - s/(p-1)": (n - 2 * s) / 2 - e,
    }


def log_criterion_lhs(n: float, s: float, p: float) -> float:
    args = _criterion_arguments(n, s, p)
    for name, value in args.items():
        if not value > 0:
            raise DomainError(
                f"Gamma argument {name} = {value:.6g} is not positive "
                f"(need p > n/(n-2s) = {n / (n - 2 * s):.6g})"
            )
    a, b, c, d = args.values()
    return math.log(p) + log_gamma(a) + log_gamma(b) - log_gamma(c) - log_gamma(d)


def gamma_condition(pt: ParamPoint) -> CriterionValue:
    """Evaluate both sides of the criterion in log space; F > 0 means unstable singular solution."""
    if not pt.n > 2 * pt.s:
        raise DomainError(f"criterion needs n > 2s (n={pt.n}, s={pt.s})")
    return CriterionValue(log_criterion_lhs(pt.n, pt.s, pt.p), log_hardy_constant(pt.n, pt.s))


def criterion_F(n: float, s: float, p: float) -> float:
    return gamma_condition(ParamPoint(n, s, p)).F


def gamma_condition_limit(n: float, s: float) -> float:
    """lim F as p -> infinity, using Gamma(e) ~ 1/e as e = s/(p-1) -> 0.

    ln p - ln Gamma(e) -> ln s, which leaves
    ln(s Gamma(n/2) Gamma(s)) - ln Gamma((n-2s)/2) - ln(Hardy constant).
    """
    if not n > 2 * s:
        raise DomainError(f"limit needs n > 2s (n={n}, s={s})")
    return (
        math.log(s) + log_gamma(n / 2) + log_gamma(s)
        - log_gamma((n - 2 * s) / 2) - log_hardy_constant(n, s)
    )


def _gamma_product_ratio(num: tuple[float, ...], den: tuple[float, ...]) -> float:
    # stdlib Gamma, independent of log_gamma above
    if max(num + den) < 170:
        out = 1.0
        for x in num:
            out *= math.gamma(x)
        for x in den:
            out /= math.gamma(x)
        return out
    return math.exp(sum(math.lgamma(x) for x in num) - sum(math.lgamma(x) for x in den))


def singular_lambda(n: float, s: float, alpha: float) -> float:
    """Multiplier of (-Delta)^s on |x|^(-alpha): the result is lambda(alpha) |x|^(-alpha-2s).

    lambda(alpha) = 2^(2s) G((alpha+2s)/2) G((n-alpha)/2) / (G(alpha/2) G((n-alpha-2s)/2)),
    valid for 0 < alpha < n - 2s.  Computed with the standard library Gamma so
    that it can serve as a check on :func:`gamma_condition`.
    """
    if not 0 < alpha < n - 2 * s:
        raise DomainError(f"need 0 < alpha < n - 2s, got alpha={alpha}, n-2s={n - 2 * s}")
    ratio = _gamma_product_ratio(((alpha + 2 * s) / 2, (n - alpha) / 2), (alpha / 2, (n - alpha - 2 * s) / 2))
    return 2 ** (2 * s) * ratio
