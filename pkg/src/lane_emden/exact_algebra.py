"""Exact rational polynomials and a differential-polynomial ring.

Coefficients are :class:`fractions.Fraction`; nothing here ever rounds.
A monomial is stored as a sorted tuple of ``(variable, exponent)`` pairs,
so equality of two polynomials is equality of their term maps.

The differential ring is ``Q[params][lam, f0, ..., f5]`` where ``f{i}`` is
the formal i-th derivative of an abstract function of ``lam``.  Any other
variable (``k``, ``m``, ``c1``, ...) is a constant for :func:`total_derivative`.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Union

Rational = Fraction

Monomial = tuple  # tuple[tuple[str, int], ...], sorted by variable order
Scalar = Union[int, Fraction]

LAM = "lam"
MAX_ORDER = 5

# Printing and sort order; unknown names sort after these, alphabetically.
_PREFERRED = (LAM, "k", "m", "c1", "c2") + tuple(f"f{i}" for i in range(MAX_ORDER + 1))


def _var_key(name: str):
    try:
        return (0, _PREFERRED.index(name), name)
    except ValueError:
        return (1, 0, name)


class MissingVariableError(KeyError):
    """Raised by :meth:`MultiPoly.eval` when the assignment omits a variable."""

    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"no value assigned to variable {self.name!r}"


class DerivativeOrderError(ValueError):
    """The formal derivative would need f6 or higher."""


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, _RationalABC)):
        return Fraction(c)
    raise TypeError(f"exact coefficient required, got {type(c).__name__}")


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda t: _var_key(t[0])))


class MultiPoly:
    """Sparse multivariate polynomial over the rationals.

    Instances are immutable.  Arithmetic accepts ints and Fractions on
    either side.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = _as_fraction(c)
                if c:
                    mono = tuple(sorted(((v, e) for v, e in mono if e), key=lambda t: _var_key(t[0])))
                    clean[mono] = clean.get(mono, Fraction(0)) + c
                    if not clean[mono]:
                        del clean[mono]
        self._terms = clean
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c: Scalar) -> "MultiPoly":
        return cls({(): c})

    @classmethod
    def coerce(cls, x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        return cls.const(x)

    # inspection -------------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    @property
    def variables(self) -> tuple[str, ...]:
        names = {v for mono in self._terms for v, _ in mono}
        return tuple(sorted(names, key=_var_key))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get((), Fraction(0))

    def degree(self, name: str | None = None) -> int:
        if not self._terms:
            return -1
        if name is None:
            return max(sum(e for _, e in mono) for mono in self._terms)
        return max(dict(mono).get(name, 0) for mono in self._terms)

    def split(self, names: Iterable[str]) -> dict[Monomial, "MultiPoly"]:
        """Group terms by their monomial in ``names``.

        Returns ``{monomial in names: coefficient polynomial in the rest}``.
        """
        names = set(names)
        out: dict[Monomial, dict] = {}
        for mono, c in self._terms.items():
            inner = tuple((v, e) for v, e in mono if v in names)
            outer = tuple((v, e) for v, e in mono if v not in names)
            out.setdefault(inner, {})
            out[inner][outer] = out[inner].get(outer, Fraction(0)) + c
        return {k: MultiPoly(v) for k, v in out.items()}

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            other = MultiPoly.coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + c
        return MultiPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({mono: -c for mono, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = MultiPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return MultiPoly.coerce(other) - self

    def __mul__(self, other):
        try:
            other = MultiPoly.coerce(other)
        except TypeError:
            return NotImplemented
        terms: dict[Monomial, Fraction] = {}
        for (ma, ca), (mb, cb) in itertools.product(self._terms.items(), other._terms.items()):
            mono = _mono_mul(ma, mb)
            terms[mono] = terms.get(mono, Fraction(0)) + ca * cb
        return MultiPoly(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by a nonzero scalar is exact and closed
        c = _as_fraction(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return MultiPoly({mono: v / c for mono, v in self._terms.items()})

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = MultiPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        try:
            return self._terms == MultiPoly.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # evaluation -------------------------------------------------------
    def eval(self, assignment: Mapping[str, object]):
        """Evaluate exactly.  Values may be Fractions, ints or MultiPolys."""
        total = Fraction(0)
        for mono, c in self._terms.items():
            term = c
            for v, e in mono:
                if v not in assignment:
                    raise MissingVariableError(v)
                val = assignment[v]
                term = term * (val if isinstance(val, MultiPoly) else _as_fraction(val)) ** e
            total = total + term
        return total

    def subs(self, assignment: Mapping[str, object]) -> "MultiPoly":
        """Substitute some variables, leaving the others symbolic."""
        out = MultiPoly()
        for mono, c in self._terms.items():
            term = MultiPoly.const(c)
            for v, e in mono:
                if v in assignment:
                    term = term * MultiPoly.coerce(assignment[v]) ** e
                else:
                    term = term * MultiPoly({((v, e),): 1})
            out = out + term
        return out

    def diff(self, name: str) -> "MultiPoly":
        """Partial derivative in one variable."""
        terms: dict[Monomial, Fraction] = {}
        for mono, c in self._terms.items():
            exps = dict(mono)
            e = exps.get(name, 0)
            if not e:
                continue
            exps[name] = e - 1
            terms[tuple(exps.items())] = c * e
        return MultiPoly(terms)

    # display ----------------------------------------------------------
    def _sort_key(self, mono):
        return (-sum(e for _, e in mono), [(_var_key(v), -e) for v, e in mono])

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, key=self._sort_key):
            c = self._terms[mono]
            factors = [v if e == 1 else f"{v}^{e}" for v, e in mono]
            mag = abs(c)
            if factors:
                body = "*".join(factors)
                text = body if mag == 1 else f"{mag}*{body}"
            else:
                text = str(mag)
            parts.append(("-" if c < 0 else "+", text))
        sign, first = parts[0]
        out = ("-" if sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"


def poly_add(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return MultiPoly.coerce(a) + b


def poly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return MultiPoly.coerce(a) * b


def poly_eval(p: MultiPoly, assignment: Mapping[str, Scalar]) -> Fraction:
    return MultiPoly.coerce(p).eval(assignment)


def poly_equal(a: MultiPoly, b: MultiPoly) -> bool:
    return (MultiPoly.coerce(a) - b).is_zero()


def symbols(names: str) -> tuple[MultiPoly, ...]:
    """``k, m = symbols("k m")``"""
    return tuple(MultiPoly.var(n) for n in names.split())


# ---------------------------------------------------------------------------
# differential ring

DiffExpr = MultiPoly

lam = MultiPoly.var(LAM)


def f(i: int = 0) -> MultiPoly:
    """The formal i-th derivative f^(i) of the abstract function."""
    if not 0 <= i <= MAX_ORDER:
        raise DerivativeOrderError(f"derivative order {i} outside 0..{MAX_ORDER}")
    return MultiPoly.var(f"f{i}")


def _f_order(name: str) -> int | None:
    if name.startswith("f") and name[1:].isdigit():
        return int(name[1:])
    return None


def diff_variables(e: MultiPoly) -> tuple[str, ...]:
    """Variables of ``e`` that move under the formal derivative."""
    return tuple(v for v in e.variables if v == LAM or _f_order(v) is not None)


def max_order(e: MultiPoly) -> int:
    orders = [_f_order(v) for v in e.variables]
    orders = [o for o in orders if o is not None]
    return max(orders) if orders else -1


def total_derivative(e: MultiPoly) -> MultiPoly:
    """Formal d/dlam: D(lam) = 1, D(f_i) = f_{i+1}, parameters are constants."""
    e = MultiPoly.coerce(e)
    if max_order(e) >= MAX_ORDER:
        raise DerivativeOrderError(
            f"expression already contains f{MAX_ORDER}; its derivative leaves the ring"
        )
    out = MultiPoly()
    for v in diff_variables(e):
        partial = e.diff(v)
        if partial.is_zero():
            continue
        if v == LAM:
            out = out + partial
        else:
            out = out + partial * f(_f_order(v) + 1)
    return out


diff_total_derivative = total_derivative


def diff_identity_residual(lhs: MultiPoly, bracket: MultiPoly, remainder: MultiPoly) -> MultiPoly:
    """``lhs - D(bracket) - remainder``; zero exactly when the identity holds."""
    return MultiPoly.coerce(lhs) - total_derivative(bracket) - remainder


def verify_diff_identity(lhs: MultiPoly, bracket: MultiPoly, remainder: MultiPoly) -> bool:
    return diff_identity_residual(lhs, bracket, remainder).is_zero()


def _split_quadratic(mono: Monomial):
    """(lam exponent, sorted f orders, parameter part) of a monomial."""
    a = 0
    orders: list[int] = []
    rest = []
    for v, e in mono:
        o = _f_order(v)
        if v == LAM:
            a = e
        elif o is not None:
            orders.extend([o] * e)
        else:
            rest.append((v, e))
    return a, sorted(orders), tuple(rest)


def _gap_key(mono: Monomial):
    _, orders, _ = _split_quadratic(mono)
    gap = orders[-1] - orders[0] if len(orders) == 2 else -1
    return gap, orders


def integrate_by_parts(e: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Reduce a quadratic differential form to diagonal form modulo derivatives.

    ``e`` must be a sum of terms ``c * lam^a * f_i * f_j`` (``c`` may involve
    parameters).  Returns ``(bracket, diagonal)`` with
    ``e == D(bracket) + diagonal`` and every term of ``diagonal`` of the form
    ``c * lam^a * f_i^2``.  The diagonal part is unique, so two quadratic
    forms differ by a total derivative iff their diagonal parts agree.
    """
    bracket = MultiPoly()
    diagonal = MultiPoly()
    work = dict(MultiPoly.coerce(e).terms)
    while work:
        # largest gap j - i first; reducing a term only creates smaller gaps
        mono = max(work, key=_gap_key)
        c = work.pop(mono)
        a, orders, rest = _split_quadratic(mono)
        if len(orders) != 2:
            raise ValueError(f"term {MultiPoly({mono: c})} is not quadratic in f")
        i, j = orders
        coef = MultiPoly({rest: c})
        if i == j:
            diagonal = diagonal + coef * lam**a * f(i) * f(j)
            continue
        if j == i + 1:
            # lam^a f_i f_{i+1} = D(lam^a f_i^2 / 2) - (a/2) lam^(a-1) f_i^2
            b = coef * lam**a * f(i) ** 2 / 2
            bracket = bracket + b
            leftover = -(coef * a / 2) * lam ** (a - 1) * f(i) ** 2 if a else MultiPoly()
        else:
            # lam^a f_i f_j = D(lam^a f_i f_{j-1}) - a lam^(a-1) f_i f_{j-1} - lam^a f_{i+1} f_{j-1}
            b = coef * lam**a * f(i) * f(j - 1)
            bracket = bracket + b
            leftover = -coef * lam**a * f(i + 1) * f(j - 1)
            if a:
                leftover = leftover - coef * a * lam ** (a - 1) * f(i) * f(j - 1)
        for mo, cc in leftover.terms.items():
            work[mo] = work.get(mo, Fraction(0)) + cc
            if not work[mo]:
                del work[mo]
    return bracket, diagonal
