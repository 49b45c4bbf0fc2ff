"""Scaling-derivative identities checked exactly on radial monomials.

The rescaled extension u^lam(X) = lam^k u(lam X) with u = r^j is the
explicit family lam^(k+j) r^j, so every mixed derivative is a product of
two falling factorials.  Every identity relating r-derivatives to
lam-derivatives is linear in u, so passing on r^0 .. r^J proves it for
all polynomials of degree <= J.

Radial test functions have no angular part, which is why only the radial
piece I(u) of the bilaplacian shows up here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .coefficients import DeltaSet, build_delta_set
from .exact_algebra import MultiPoly, symbols
from .report import VerificationReport

DEFAULT_K_SAMPLES = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(5, 7))
DEFAULT_M_SAMPLES = (Fraction(10), Fraction(8), Fraction(29, 3))


def falling(x, i: int):
    """x (x-1) ... (x-i+1); works for Fractions and MultiPolys alike."""
    out = 1
    for t in range(i):
        out = out * (x - t)
    return out


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, MultiPoly) else x == 0


@dataclass(frozen=True)
class RadialMonomial:
    j: int

    def __post_init__(self):
        if self.j < 0:
            raise ValueError(f"exponent must be nonnegative, got {self.j}")

    def weighted_laplacian_coeff(self, nb):
        """Delta_b r^j = j (j + n + b - 1) r^(j-2)."""
        return self.j * (self.j + nb - 1)


@dataclass(frozen=True)
class ScaledFamily:
    base: RadialMonomial
    k: Fraction

    def r_derivative_coeff(self, a: int) -> int:
        return falling(self.base.j, a)


@dataclass(frozen=True)
class LambdaPower:
    """coeff * lam^exponent, kept symbolic when the exponent is not an integer."""

    coeff: Fraction
    exponent: Fraction


def lambda_derivative(fam: ScaledFamily, i: int, lam=1, r=1):
    """d^i/dlam^i of lam^(k+j) r^j at (lam, r)."""
    if not 0 <= i <= 5:
        raise ValueError(f"derivative order must be in 0..5, got {i}")
    lam, r = Fraction(lam), Fraction(r)
    j = fam.base.j
    e = Fraction(fam.k) + j - i
    coeff = falling(Fraction(fam.k) + j, i) * r**j
    if lam == 1:
        return coeff
    if e.denominator == 1:
        return coeff * lam ** int(e)
    return LambdaPower(coeff, e)


# jets -------------------------------------------------------------------------------

Jet = Callable[[int, int], object]


def _jet(terms: Mapping[int, object], k, lam=1, r=1) -> Jet:
    """U(i, a) = d^i/dlam^i d^a/dr^a of sum_j c_j lam^(k+j) r^j at (lam, r).

    For lam != 1 the caller must pass an integer k.
    """
    lam, r = Fraction(lam), Fraction(r)

    def U(i: int, a: int):
        total = 0
        for j, c in terms.items():
            rf = falling(j, a)
            if rf == 0:
                continue
            term = c * falling(k + j, i) * rf * r ** (j - a)
            if lam != 1:
                term = term * lam ** int(k + j - i)
            total = total + term
        return total

    return U


# each identity: lhs(U, L, R, k) and rhs(U, L, R, k)
Identity = tuple[str, str, bool, Callable, Callable]

SECTION32: list[Identity] = [
    ("scaling.euler", "lam u_lam = k u + r u_r", False,
     lambda U, L, R, k: L * U(1, 0),
     lambda U, L, R, k: k * U(0, 0) + R * U(0, 1)),
    ("scaling.euler-d1", "lam u_lamlam + u_lam = k u_lam + r u_lam,r", False,
     lambda U, L, R, k: L * U(2, 0) + U(1, 0),
     lambda U, L, R, k: k * U(1, 0) + R * U(1, 1)),
    ("scaling.euler-d2", "lam d3u + 2 d2u = k d2u + r (d2u)_r", False,
     lambda U, L, R, k: L * U(3, 0) + 2 * U(2, 0),
     lambda U, L, R, k: k * U(2, 0) + R * U(2, 1)),
    ("scaling.euler-d3", "lam d4u + 3 d3u = k d3u + r (d3u)_r", False,
     lambda U, L, R, k: L * U(4, 0) + 3 * U(3, 0),
     lambda U, L, R, k: k * U(3, 0) + R * U(3, 1)),
    ("scaling.euler-r1", "lam (u_lam)_r = (k+1) u_r + r u_rr", False,
     lambda U, L, R, k: L * U(1, 1),
     lambda U, L, R, k: (k + 1) * U(0, 1) + R * U(0, 2)),
    ("scaling.euler-r2", "lam (u_lam)_rr = (k+2) u_rr + r u_rrr", False,
     lambda U, L, R, k: L * U(1, 2),
     lambda U, L, R, k: (k + 2) * U(0, 2) + R * U(0, 3)),
    ("scaling.euler-r3", "lam (u_lam)_rrr = (k+3) u_rrr + r u_rrrr", False,
     lambda U, L, R, k: L * U(1, 3),
     lambda U, L, R, k: (k + 3) * U(0, 3) + R * U(0, 4)),
    ("scaling.ur", "u_r = lam u_lam - k u on the unit sphere", True,
     lambda U, L, R, k: U(0, 1),
     lambda U, L, R, k: L * U(1, 0) - k * U(0, 0)),
    ("scaling.ur-lam", "(u_lam)_r = lam u_lamlam + (1-k) u_lam on the unit sphere", True,
     lambda U, L, R, k: U(1, 1),
     lambda U, L, R, k: L * U(2, 0) + (1 - k) * U(1, 0)),
    ("scaling.urr-step", "u_rr = lam (u_lam)_r - (1+k) u_r on the unit sphere", True,
     lambda U, L, R, k: U(0, 2),
     lambda U, L, R, k: L * U(1, 1) - (1 + k) * U(0, 1)),
    ("scaling.urr", "u_rr in lam-derivatives", True,
     lambda U, L, R, k: U(0, 2),
     lambda U, L, R, k: L**2 * U(2, 0) - 2 * k * L * U(1, 0) + (1 + k) * k * U(0, 0)),
    ("scaling.urr-lam-step", "(u_lam)_rr = lam (u_lamlam)_r - k (u_lam)_r on the unit sphere", True,
     lambda U, L, R, k: U(1, 2),
     lambda U, L, R, k: L * U(2, 1) - k * U(1, 1)),
    ("scaling.urr-lam", "(u_lam)_rr in lam-derivatives", True,
     lambda U, L, R, k: U(1, 2),
     lambda U, L, R, k: L**2 * U(3, 0) + (2 - 2 * k) * L * U(2, 0) - (1 - k) * k * U(1, 0)),
    ("scaling.urrr-step", "u_rrr = lam (u_lam)_rr - (2+k) u_rr on the unit sphere", True,
     lambda U, L, R, k: U(0, 3),
     lambda U, L, R, k: L * U(1, 2) - (2 + k) * U(0, 2)),
    ("scaling.urrr", "u_rrr in lam-derivatives", True,
     lambda U, L, R, k: U(0, 3),
     lambda U, L, R, k: (L**3 * U(3, 0) - 3 * k * L**2 * U(2, 0)
                         + (3 * k + 3 * k * k) * L * U(1, 0) - (2 + k) * (1 + k) * k * U(0, 0))),
    ("scaling.euler-lam2-r2", "lam (u_lamlam)_rr = (k+1) (u_lam)_rr + r (u_lam)_rrr", False,
     lambda U, L, R, k: L * U(2, 2),
     lambda U, L, R, k: (k + 1) * U(1, 2) + R * U(1, 3)),
    ("scaling.urrr-lam-step", "(u_lam)_rrr = lam (u_lamlam)_rr - (k+1) (u_lam)_rr on the unit sphere", True,
     lambda U, L, R, k: U(1, 3),
     lambda U, L, R, k: L * U(2, 2) - (k + 1) * U(1, 2)),
    ("scaling.euler-lam3-r1", "lam (d3u)_r = (k-1) (d2u)_r + r (d2u)_rr", False,
     lambda U, L, R, k: L * U(3, 1),
     lambda U, L, R, k: (k - 1) * U(2, 1) + R * U(2, 2)),
    ("scaling.urr-lam2-step", "(d2u)_rr = lam (d3u)_r + (1-k) (d2u)_r on the unit sphere", True,
     lambda U, L, R, k: U(2, 2),
     lambda U, L, R, k: L * U(3, 1) + (1 - k) * U(2, 1)),
    ("scaling.urr-lam2", "(d2u)_rr in lam-derivatives", True,
     lambda U, L, R, k: U(2, 2),
     lambda U, L, R, k: L**2 * U(4, 0) + (4 - 2 * k) * L * U(3, 0) + (1 - k) * (2 - k) * U(2, 0)),
    ("scaling.euler-lam2-r1", "lam (u_lamlam)_r = k (u_lam)_r + r (u_lam)_rr", False,
     lambda U, L, R, k: L * U(2, 1),
     lambda U, L, R, k: k * U(1, 1) + R * U(1, 2)),
    ("scaling.urr-lam-alt", "(u_lam)_rr in lam-derivatives, second derivation", True,
     lambda U, L, R, k: U(1, 2),
     lambda U, L, R, k: L**2 * U(3, 0) + L * (2 - 2 * k) * U(2, 0) - k * (1 - k) * U(1, 0)),
    ("scaling.urrr-lam", "(u_lam)_rrr in lam-derivatives", True,
     lambda U, L, R, k: U(1, 3),
     lambda U, L, R, k: (L**3 * U(4, 0) + L**2 * (3 - 3 * k) * U(3, 0)
                         - L * (1 - k) * 3 * k * U(2, 0) + (1 - k) * (1 + k) * k * U(1, 0))),
    ("scaling.urrrr-step", "u_rrrr = lam (u_lam)_rrr - (3+k) u_rrr on the unit sphere", True,
     lambda U, L, R, k: U(0, 4),
     lambda U, L, R, k: L * U(1, 3) - (3 + k) * U(0, 3)),
    ("scaling.urrrr", "u_rrrr in lam-derivatives", True,
     lambda U, L, R, k: U(0, 4),
     lambda U, L, R, k: (L**4 * U(4, 0) - 4 * k * L**3 * U(3, 0)
                         + L**2 * (2 + 2 * k) * 3 * k * U(2, 0)
                         - L * (1 + k) * (2 + k) * 4 * k * U(1, 0)
                         + (3 + k) * (2 + k) * (1 + k) * k * U(0, 0))),
]

# the closing summary restates three of the conversions
SUMMARY = {
    "scaling.summary-urrr": "scaling.urrr",
    "scaling.summary-urr": "scaling.urr",
    "scaling.summary-ur": "scaling.ur",
}


def _points(k, sphere: bool):
    # lam != 1 only when lam^(k+j-i) stays rational
    integer_k = isinstance(k, Fraction) and k.denominator == 1
    lams = (Fraction(1), Fraction(2)) if integer_k else (Fraction(1),)
    rs = (Fraction(1),) if sphere else (Fraction(1), Fraction(2), Fraction(1, 3))
    return [(L, R) for L in lams for R in rs]


def _check_identity(ident: Identity, terms, k) -> str | None:
    """None if the identity holds at every sample point, else a description."""
    _, _, sphere, lhs, rhs = ident
    for L, R in _points(k, sphere):
        U = _jet(terms, k, L, R)
        if not _is_zero(lhs(U, L, R, k) - rhs(U, L, R, k)):
            return f"terms={dict(terms)} k={k} lam={L} r={R}"
    return None


def _run(rep: VerificationReport, identities, cases):
    failed = {}
    for ident in identities:
        bad = None
        for terms, k in cases:
            bad = _check_identity(ident, terms, k)
            if bad:
                break
        rep.add(ident[0], ident[1], bad is None, bad or f"{len(cases)} cases")
        failed[ident[0]] = bad
    return failed


def verify_scaling_derivatives(j_max: int = 8, k_samples: Iterable = DEFAULT_K_SAMPLES) -> VerificationReport:
    """Every r-to-lam conversion, exactly, on r^j for j <= j_max and each sampled k."""
    if j_max < 4:
        raise ValueError("j_max must be at least 4 so fourth r-derivatives are nontrivial")
    rep = VerificationReport("scaling derivatives")
    k_samples = [Fraction(k) for k in k_samples]
    cases = [({j: 1}, k) for j in range(j_max + 1) for k in k_samples]
    failed = _run(rep, SECTION32, cases)
    for cid, source in SUMMARY.items():
        ident = next(i for i in SECTION32 if i[0] == source)
        rep.add(cid, ident[1], failed[source] is None, f"same as {source}")

    # symbolic k: each identity becomes a polynomial identity in k
    (ks,) = symbols("k")
    sym_cases = [({j: 1}, ks) for j in range(j_max + 1)]
    bad = [i[0] for i in SECTION32 if any(_check_identity(i, t, kk) for t, kk in sym_cases)]
    rep.add("scaling.symbolic-k", "all conversions as polynomial identities in k at lam = r = 1",
            not bad, ", ".join(bad) or f"j <= {j_max}")

    rep.add("scaling.family-derivatives", "d^i/dlam^i lam^(k+j) r^j is a falling factorial",
            *_check_family_derivatives(j_max))
    return rep


def _check_family_derivatives(j_max: int):
    # independent route: differentiate lam^(k+j) r^j as a polynomial for integer k
    lam_v, r_v = symbols("lam r")
    for kk in range(4):
        for j in range(j_max + 1):
            fam = ScaledFamily(RadialMonomial(j), Fraction(kk))
            u = lam_v ** (kk + j) * r_v**j
            for i in range(5):
                for L, R in ((1, 1), (2, 3), (Fraction(1, 2), 2)):
                    want = u.eval({"lam": L, "r": R})
                    if lambda_derivative(fam, i, L, R) != want:
                        return False, f"k={kk} j={j} i={i} lam={L} r={R}"
                u = u.diff("lam")
    return True, f"integer k < 4, j <= {j_max}"


# radial representation ---------------------------------------------------------------


def _radial_I(U, nb):
    """u_rrrr + 2N u_rrr + N(N-2) u_rr - N(N-2) u_r on the unit sphere, N = n + b."""
    return U(0, 4) + 2 * nb * U(0, 3) + nb * (nb - 2) * U(0, 2) - nb * (nb - 2) * U(0, 1)


def _radial_dI(U, nb):
    return U(1, 4) + 2 * nb * U(1, 3) + nb * (nb - 2) * U(1, 2) - nb * (nb - 2) * U(1, 1)


def _deltas_at(d: DeltaSet, k, m):
    if isinstance(k, MultiPoly) or isinstance(m, MultiPoly):
        return [x.subs({"k": k, "m": m}) for x in d.as_tuple()]
    return [x.eval({"k": k, "m": m}) for x in d.as_tuple()]


def _I_delta_form(U, deltas):
    d1, d2, d3, d4 = deltas
    return U(4, 0) + d1 * U(3, 0) + d2 * U(2, 0) + d3 * U(1, 0) + d4 * U(0, 0)


def _I_explicit_form(U, k, nb):
    # the expanded coefficients before they were named delta_i
    c3 = 2 * nb - 4 * k
    c2 = 6 * k * (1 + k) - nb * 6 * k + nb * (nb - 2)
    c1 = -4 * k * (1 + k) * (2 + k) + 2 * nb * 3 * k * (1 + k) + nb * (nb - 2) * (-2 * k - 1)
    c0 = ((1 + k) * (2 + k) * (3 + k) * k - nb * (1 + k) * (2 + k) * 2 * k
          + nb * (nb - 2) * (k + 2) * k)
    return U(4, 0) + c3 * U(3, 0) + c2 * U(2, 0) + c1 * U(1, 0) + c0 * U(0, 0)


def _dI_form(U, deltas):
    d1, d2, d3, d4 = deltas
    return (U(5, 0) + (d1 + 4) * U(4, 0) + (3 * d1 + d2) * U(3, 0)
            + (2 * d2 + d3) * U(2, 0) + (d3 + d4) * U(1, 0))


def _alpha_beta(k, nb):
    return nb - 2 - 2 * k, k * (3 + k - nb)


def _alpha0_beta0(k, nb):
    return nb - 2 * k, k * (1 + k - nb)


def verify_radial_I(j: int, k, m, deltas: DeltaSet | None = None) -> bool:
    """Direct radial I(u) against the delta combination of lam-derivatives, on r^j."""
    d = deltas if deltas is not None else build_delta_set()
    U = _jet({j: 1}, k)
    return _is_zero(_radial_I(U, m + 5) - _I_delta_form(U, _deltas_at(d, k, m)))


def verify_urr_form(j: int, k, m) -> bool:
    """u_rr + (n+b-2) u_r as lam^2 u'' + alpha lam u' + beta u, and its lam-derivative."""
    nb = m + 5
    U = _jet({j: 1}, k)
    alpha, beta = _alpha_beta(k, nb)
    lhs = U(0, 2) + (nb - 2) * U(0, 1)
    rhs = U(2, 0) + alpha * U(1, 0) + beta * U(0, 0)
    dlhs = U(1, 2) + (nb - 2) * U(1, 1)
    drhs = U(3, 0) + (alpha + 2) * U(2, 0) + (alpha + beta) * U(1, 0)
    return _is_zero(lhs - rhs) and _is_zero(dlhs - drhs)


def _radial_checks(terms, k, m, d: DeltaSet):
    """check id -> bool for one polynomial and one (k, m)."""
    nb = m + 5
    U = _jet(terms, k)
    deltas = _deltas_at(d, k, m)
    a0, b0 = _alpha0_beta0(k, nb)
    alpha, beta = _alpha_beta(k, nb)
    out = {
        "radial.I-explicit": _is_zero(_radial_I(U, nb) - _I_explicit_form(U, k, nb)),
        "radial.I-delta": _is_zero(_radial_I(U, nb) - _I_delta_form(U, deltas)),
        "radial.dI-delta": _is_zero(_radial_dI(U, nb) - _dI_form(U, deltas)),
        "radial.urr": _is_zero(U(0, 2) + (nb - 2) * U(0, 1)
                               - (U(2, 0) + alpha * U(1, 0) + beta * U(0, 0))),
        "radial.urrla": _is_zero(U(1, 2) + (nb - 2) * U(1, 1)
                                 - (U(3, 0) + (alpha + 2) * U(2, 0) + (alpha + beta) * U(1, 0))),
        "radial.laplacian": _is_zero(U(0, 2) + nb * U(0, 1)
                                     - (U(2, 0) + a0 * U(1, 0) + b0 * U(0, 0))),
    }
    if len(terms) == 1:
        (j,) = terms
        mono = RadialMonomial(j)
        # I is the bilaplacian of a radial function: Delta_b applied twice to r^j
        bilap = mono.weighted_laplacian_coeff(nb) * (j - 2) * (j + nb - 3)
        out["radial.I-bilaplacian"] = _is_zero(_radial_I(U, nb) - bilap)
        out["radial.weighted-laplacian"] = _is_zero(
            U(0, 2) + nb * U(0, 1) - mono.weighted_laplacian_coeff(nb))
    return out


RADIAL_ANCHORS = {
    "radial.I-explicit": "radial I(u) equals its expanded lam-derivative form",
    "radial.I-delta": "radial I(u) = sum of delta_i lam^i d^i u, delta set from the coefficients module",
    "radial.dI-delta": "lam-derivative of I(u) in terms of delta_i",
    "radial.urr": "u_rr + (n+b-2) u_r = lam^2 u'' + alpha lam u' + beta u",
    "radial.urrla": "its lam-derivative with alpha + 2 and alpha + beta",
    "radial.laplacian": "Delta_b u on the unit sphere with alpha0, beta0",
    "radial.I-bilaplacian": "I(r^j) = j (j+N-1)(j-2)(j+N-3), N = n + b",
    "radial.weighted-laplacian": "Delta_b r^j = j (j+N-1) r^(j-2)",
}


def verify_radial(j_max: int = 8, k_samples: Iterable = DEFAULT_K_SAMPLES,
                  m_samples: Iterable = DEFAULT_M_SAMPLES,
                  deltas: DeltaSet | None = None) -> VerificationReport:
    rep = VerificationReport("radial representation")
    d = deltas if deltas is not None else build_delta_set()
    first_bad: dict[str, str | None] = {cid: None for cid in RADIAL_ANCHORS}
    count = 0
    for j in range(j_max + 1):
        for k in k_samples:
            for m in m_samples:
                count += 1
                for cid, ok in _radial_checks({j: 1}, Fraction(k), Fraction(m), d).items():
                    if not ok and first_bad[cid] is None:
                        first_bad[cid] = f"j={j} k={k} m={m}"
    for cid, anchor in RADIAL_ANCHORS.items():
        rep.add(cid, anchor, first_bad[cid] is None, first_bad[cid] or f"{count} cases")

    ks, ms = symbols("k m")
    bad = [j for j in range(j_max + 1)
           if not all(_radial_checks({j: 1}, ks, ms, d).values())]
    rep.add("radial.symbolic", "radial identities as polynomial identities in k and m",
            not bad, f"failing j: {bad}" if bad else f"j <= {j_max}")
    return rep


def verify_polynomial(terms: Mapping[int, object], k, m) -> VerificationReport:
    """Run every identity on one polynomial sum_j c_j r^j rather than a monomial."""
    rep = VerificationReport("polynomial spot check")
    terms = {j: Fraction(c) for j, c in terms.items()}
    k, m = Fraction(k), Fraction(m)
    for ident in SECTION32:
        bad = _check_identity(ident, terms, k)
        rep.add(ident[0], ident[1], bad is None, bad or "")
    for cid, ok in _radial_checks(terms, k, m, build_delta_set()).items():
        rep.add(cid, RADIAL_ANCHORS[cid], ok)
    return rep
