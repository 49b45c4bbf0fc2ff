"""Critical exponents and dimension thresholds.

p_s is the Sobolev exponent, p_m the threshold where the monotonicity
argument stops working, and p_c the Joseph-Lundgren exponent, i.e. the root in p
of the Gamma criterion.  n0(s) is the last dimension with p_c = infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import mpmath

from .criterion import (
    CriterionValue,
    DomainError,
    ParamPoint,
    criterion_F,
    gamma_condition,
    gamma_condition_limit,
)

INF = math.inf
PM_THRESHOLD = 6 + math.sqrt(73)  # m = n - 2s where p_m becomes finite
N0_GAP_BOUND = 8.998  # n0(s) - 2s stays below this for 2 < s < 3

P_MAX = 1e8
SCAN_SAMPLES = 64


class BracketError(RuntimeError):
    """No sign change of F found in the search interval."""

    def __init__(self, message, lo=None, hi=None, f_lo=None, f_hi=None):
        super().__init__(message)
        self.lo, self.hi, self.f_lo, self.f_hi = lo, hi, f_lo, f_hi


class BranchError(ArithmeticError):
    """A closed form evaluated to a value with non-negligible imaginary part."""


def sobolev_exponent(n: float, s: float) -> float:
    if not (n > 0 and s > 0):
        raise DomainError(f"need n > 0 and s > 0, got n={n}, s={s}")
    if n <= 2 * s:
        return INF
    return (n + 2 * s) / (n - 2 * s)


def _pm_root(m: float) -> float:
    return math.sqrt(15 * m * m + 120 * m + 370)


def pm_denominator(n: float, s: float) -> float:
    """5n - 10s - sqrt(15m^2 + 120m + 370); vanishes at m = 6 + sqrt(73)."""
    m = n - 2 * s
    return 5 * m - _pm_root(m)


def pm_exponent(n: float, s: float) -> float:
    if not n > 2 * s:
        raise DomainError(f"p_m needs n > 2s (n={n}, s={s})")
    m = n - 2 * s
    if m <= PM_THRESHOLD:
        return INF
    r = _pm_root(m)
    return (5 * n + 10 * s - r) / (5 * n - 10 * s - r)


def _bisect(fn, lo, hi, f_lo, tol, max_iter=400):
    # f_lo > 0 >= fn(hi); returns the midpoint once the bracket is tight
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol or mid in (lo, hi):
            break
        f_mid = fn(mid)
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _count_sign_changes(values):
    signs = [v > 0 for v in values]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def pc_exponent(n: float, s: float, tol: float = 1e-10) -> float:
    """Joseph-Lundgren exponent: the root of F(n, s, .) above p_s, or inf."""
    if not n > 2 * s:
        raise DomainError(f"p_c needs n > 2s (n={n}, s={s})")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    if gamma_condition_limit(n, s) >= 0:
        return INF

    def F(p):
        return criterion_F(n, s, p)

    ps = sobolev_exponent(n, s)
    lo = ps * (1 + 1e-9)
    f_lo = F(lo)
    if not f_lo > 0:
        raise BracketError(f"F(p_s+) = {f_lo:.6g} is not positive", lo, lo, f_lo, f_lo)
    hi = 2 * lo
    f_hi = F(hi)
    while f_hi > 0:
        if hi >= P_MAX:
            raise BracketError(
                f"no sign change of F on [{lo:.6g}, {hi:.6g}]: "
                f"F = {f_lo:.6g} and {f_hi:.6g}",
                lo, hi, f_lo, f_hi,
            )
        lo, f_lo = hi, f_hi
        hi = min(2 * hi, P_MAX)
        f_hi = F(hi)

    # uniqueness guard over the whole range from p_s to the bracket end
    start = ps * (1 + 1e-9)
    ratio = (hi / start) ** (1 / (SCAN_SAMPLES - 1))
    samples = [F(start * ratio**i) for i in range(SCAN_SAMPLES - 1)] + [f_hi]
    if _count_sign_changes(samples) > 1:
        raise BracketError(f"F changes sign more than once on [{start:.6g}, {hi:.6g}]", start, hi)

    return _bisect(F, lo, hi, f_lo, tol)


def finiteness_boundary(s: float, tol: float = 1e-12) -> float:
    """Real root in n of lim_{p->inf} F(n, s, p) = 0, searched on (2s, 2s+20].

    p_c(n) is infinite below this value and finite above it.
    """
    if not (s > 0 and tol > 0):
        raise DomainError(f"need s > 0 and tol > 0, got s={s}, tol={tol}")

    def G(n):
        return gamma_condition_limit(n, s)

    grid = [2 * s + 20 * i / 400 for i in range(1, 401)]
    values = [G(n) for n in grid]
    # largest root: last + to - change
    for i in range(len(grid) - 1, 0, -1):
        if values[i - 1] == 0:
            return grid[i - 1]
        if values[i - 1] > 0 > values[i]:
            return _bisect(G, grid[i - 1], grid[i], values[i - 1], tol)
    raise BracketError(
        f"G(n, {s}) has no sign change on ({2 * s}, {2 * s + 20}]",
        grid[0], grid[-1], values[0], values[-1],
    )


def n0_threshold(s: float, tol: float = 1e-12) -> float:
    """Largest integer dimension n > 2s with p_c(n) = inf.

    When the boundary sits on an integer to within rounding (s = 1 gives
    exactly 10) that integer is returned.
    """
    root = finiteness_boundary(s, tol)
    nearest = round(root)
    if abs(root - nearest) <= max(1e-7, 10 * tol):
        return float(nearest)
    return float(math.floor(root))


def a_ns(n: float, s: float, tol: float = 1e-12) -> float:
    """Solve p_c = (n+2s-2-2a sqrt(n)) / (n-2s-2-2a sqrt(n)) for a."""
    p = pc_exponent(n, s, tol)
    if math.isinf(p):
        raise DomainError(f"a_ns is undefined where p_c is infinite (n={n}, s={s})")
    return (p * (n - 2 * s - 2) - (n + 2 * s - 2)) / (2 * math.sqrt(n) * (p - 1))


def pc_from_a(n: float, s: float, a: float) -> float:
    t = 2 * a * math.sqrt(n)
    return (n + 2 * s - 2 - t) / (n - 2 * s - 2 - t)


# closed forms for integer s ----------------------------------------------------

_BRANCH_START = {1: 10, 2: 12, 3: 14}
_IMAG_TOL = 1e-9


def _jl_classical(n):
    return ((n - 2) ** 2 - 4 * n + 8 * math.sqrt(n - 1)) / ((n - 2) * (n - 10))


def _jl_biharmonic_parts(n):
    r = math.sqrt(n * n + 4 - n * math.sqrt(n * n - 8 * n + 32))
    return n + 2 - r, n - 6 - r


def _triharmonic_D(n):
    mp = mpmath.mp
    with mpmath.workdps(50):
        n = mpmath.mpf(n)
        D2 = (9 * n**12 - 216 * n**11 + 1800 * n**10 - 4320 * n**9 - 30864 * n**8
              + 251136 * n**7 - 690432 * n**6 - 1936384 * n**5 + 6915840 * n**4
              + 4818944 * n**3 - 16644096 * n**2 - 3039232 * n + 6131712)
        D1 = (-108 * n**6 + 1296 * n**5 - 3024 * n**4 - 10368 * n**3
              + 103104 * n**2 + 20736 * n - 94976)
        w = mpmath.mpc(D1) + 36 * mpmath.sqrt(mpmath.mpc(D2))
        # of the three cube roots keep the one closest to the real axis
        roots = [mpmath.root(w, 3, k) for k in range(3)]
        cube = min(roots, key=lambda z: abs(z.imag))
        D0 = -cube
        inner = 9 * n**2 + 96 - (1536 + 1152 * n**2) / D0 - mpmath.mpf(3) / 2 * D0
        D = mpmath.sqrt(inner) / 6
        if abs(D.imag) > _IMAG_TOL * abs(D.real):
            raise BranchError(f"D({n}) has imaginary part {mp.nstr(D.imag, 5)}")
        return D.real


def _jl_triharmonic_parts(n):
    D = _triharmonic_D(n)
    with mpmath.workdps(50):
        return n + 4 - 2 * D, n - 8 - 2 * D


def closed_form_exponent(n: float, s_int: int) -> float:
    """Joseph-Lundgren exponent from the explicit formulas for s = 1, 2, 3.

    Integer n follows the published branches.  Between integers the
    formula is used wherever its denominator is positive.
    """
    if s_int not in _BRANCH_START:
        raise DomainError(f"closed forms exist for s in {{1, 2, 3}}, got {s_int}")
    if not n > 0:
        raise DomainError(f"n must be positive, got {n}")
    if n <= _BRANCH_START[s_int]:
        return INF
    if s_int == 1:
        return _jl_classical(n)
    if s_int == 2:
        num, den = _jl_biharmonic_parts(n)
    else:
        num, den = _jl_triharmonic_parts(n)
    if den <= 0:
        return INF
    return float(num / den)


# regime classification ----------------------------------------------------------


class Regime(str, Enum):
    SUBCRITICAL = "Subcritical"
    CRITICAL = "Critical"
    SUPERCRITICAL_LIOUVILLE = "SupercriticalLiouville"
    SUPERCRITICAL_STABLE_SINGULAR = "SupercriticalStableSingular"


STATEMENTS = {
    Regime.SUBCRITICAL: "every stable solution is u = 0",
    Regime.CRITICAL: "a stable solution has finite energy; if it is stable then u = 0",
    Regime.SUPERCRITICAL_LIOUVILLE: "every stable solution is u = 0 (Liouville)",
    Regime.SUPERCRITICAL_STABLE_SINGULAR: (
        "the singular solution is stable; the classification does not apply"
    ),
}


@dataclass(frozen=True)
class RegimeVerdict:
    regime: Regime
    criterion: CriterionValue | None
    statement: str

    def to_dict(self) -> dict:
        return {
            "regime": self.regime.value,
            "criterion": None if self.criterion is None else self.criterion.to_dict(),
            "statement": self.statement,
        }


def classify_regime(pt: ParamPoint, tol: float = 1e-12) -> RegimeVerdict:
    if not pt.n > 2 * pt.s:
        raise DomainError(f"classification needs n > 2s (n={pt.n}, s={pt.s})")
    ps = sobolev_exponent(pt.n, pt.s)
    if abs(pt.p - ps) <= tol * ps:
        regime, value = Regime.CRITICAL, None
    elif pt.p < ps:
        regime, value = Regime.SUBCRITICAL, None
    else:
        value = gamma_condition(pt)
        regime = Regime.SUPERCRITICAL_LIOUVILLE if value.F > 0 else Regime.SUPERCRITICAL_STABLE_SINGULAR
    return RegimeVerdict(regime, value, STATEMENTS[regime])


# profile ---------------------------------------------------------------------------


def _json_number(x):
    return None if x is None or math.isinf(x) else x


@dataclass(frozen=True)
class ExponentProfile:
    n: float
    s: float
    p_s: float
    p_m: float
    p_c: float
    n0: float
    a_ns: float | None

    def to_dict(self) -> dict:
        out = {"n": self.n, "s": self.s}
        for key in ("p_s", "p_m", "p_c"):
            value = getattr(self, key)
            out[key] = _json_number(value)
            out[f"{key}_infinite"] = math.isinf(value)
        out["n0"] = self.n0
        out["a_ns"] = self.a_ns
        return out


def exponent_profile(n: float, s: float, tol: float = 1e-10) -> ExponentProfile:
    pc = pc_exponent(n, s, tol)
    a = None
    if not math.isinf(pc):
        a = (pc * (n - 2 * s - 2) - (n + 2 * s - 2)) / (2 * math.sqrt(n) * (pc - 1))
    return ExponentProfile(
        n=n,
        s=s,
        p_s=sobolev_exponent(n, s),
        p_m=pm_exponent(n, s),
        p_c=pc,
        n0=n0_threshold(s),
        a_ns=a,
    )
