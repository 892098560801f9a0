"""Exact arithmetic core: rationals, the field Q(sqrt 2), truncated q-series.

Rationals are :class:`fractions.Fraction`.  ``QSeries`` stores a dense
coefficient list starting at its valuation and an absolute truncation
order: coefficients are known for every exponent ``< order``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import mpmath

BigRat = Fraction


class DivisionByZeroSeries(ZeroDivisionError):
    """Raised when dividing by a series with no nonzero coefficient below its order."""


class CompositionValuationError(ValueError):
    """Raised when the inner series of a composition has a constant term."""


# ---------------------------------------------------------------------------
# Q(sqrt 2)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadRat:
    """The number ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @staticmethod
    def _lift(x) -> "QuadRat":
        if isinstance(x, QuadRat):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadRat(x, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return QuadRat(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadRat(-self.a, -self.b)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return QuadRat(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return QuadRat(self.a * other.a + 2 * self.b * other.b,
                       self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadRat":
        return QuadRat(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 2 * self.b * self.b

    def inverse(self) -> "QuadRat":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadRat division by zero")
        c = self.conjugate()
        return QuadRat(c.a / n, c.b / n)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = QuadRat(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def is_rational(self) -> bool:
        return self.b == 0

    def to_mpf(self, prec: int):
        """Embed into mpmath at ``prec`` decimal digits."""
        with mpmath.workdps(prec + 15):
            v = mpmath.mpf(self.a.numerator) / self.a.denominator + \
                mpmath.mpf(self.b.numerator) / self.b.denominator * mpmath.sqrt(2)
        return v

    def __repr__(self):
        return f"QuadRat({self.a}, {self.b})"

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt(2)"


SQRT2 = QuadRat(0, 1)


# ---------------------------------------------------------------------------
# integer kernels
# ---------------------------------------------------------------------------

def _common_denominator(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _convolve(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of the Cauchy product of two integer lists."""
    out = [0] * n
    la, lb = len(a), len(b)
    for i in range(min(la, n)):
        ai = a[i]
        if not ai:
            continue
        hi = min(lb, n - i)
        for j in range(hi):
            out[i + j] += ai * b[j]
    return out


# ---------------------------------------------------------------------------
# truncated power series
# ---------------------------------------------------------------------------

class QSeries:
    """Truncated formal power (or Laurent) series with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of ``q**(valuation + i)``; exponents
    ``>= order`` are unknown.  Instances are treated as immutable.
    """

    __slots__ = ("valuation", "coeffs", "order")

    def __init__(self, coeffs: Iterable, valuation: int = 0, order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = valuation + len(cs)
        cs = cs[: max(order - valuation, 0)]
        cs += [Fraction(0)] * (order - valuation - len(cs))
        # normalize so the leading stored coefficient is nonzero
        k = 0
        while k < len(cs) and cs[k] == 0:
            k += 1
        if k == len(cs):
            # identically zero below order: O(q^order)
            valuation, cs = order, []
        else:
            valuation, cs = valuation + k, cs[k:]
        self.valuation = valuation
        self.coeffs = tuple(cs)
        self.order = order

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls([], 0, order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls([1], 0, order)

    @classmethod
    def monomial(cls, n: int, order: int, c=1) -> "QSeries":
        return cls([c], n, order)

    @classmethod
    def from_dense(cls, coeffs: Sequence, order: int | None = None) -> "QSeries":
        """Series whose coefficient list starts at exponent 0."""
        return cls(coeffs, 0, order)

    # -- inspection ---------------------------------------------------------
    def __getitem__(self, n: int) -> Fraction:
        if n >= self.order:
            raise IndexError(f"coefficient of q^{n} is beyond order {self.order}")
        i = n - self.valuation
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_laurent(self) -> bool:
        return self.valuation < 0

    def dense(self, start: int = 0) -> list[Fraction]:
        """Coefficients for exponents ``start, ..., order-1``."""
        return [self[n] for n in range(start, self.order)]

    def truncate(self, order: int) -> "QSeries":
        return QSeries(self.coeffs, self.valuation, min(order, self.order))

    def first_mismatch(self, other: "QSeries") -> int | None:
        """Smallest exponent where the two series differ (within shared order)."""
        lo = min(self.valuation, other.valuation)
        for n in range(lo, min(self.order, other.order)):
            if self[n] != other[n]:
                return n
        return None

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.order == other.order and self.valuation == other.valuation
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.valuation, self.coeffs, self.order))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs[:8]):
            if c:
                terms.append(f"{c}*q^{self.valuation + i}")
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body} + O(q^{self.order}))"

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries([other], 0, self.order)
        return series_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.valuation, self.order)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries([other], 0, self.order)
        return series_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return series_mul(self, other)
        c = Fraction(other)
        return QSeries([c * x for x in self.coeffs], self.valuation, self.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return series_div(self, other)
        c = Fraction(other)
        return QSeries([x / c for x in self.coeffs], self.valuation, self.order)

    def __pow__(self, e: int):
        return series_pow_int(self, e)


def series_add(a: QSeries, b: QSeries) -> QSeries:
    order = min(a.order, b.order)
    lo = min(a.valuation, b.valuation)
    return QSeries([a[n] + b[n] for n in range(lo, order)] if lo < order else [], lo, order)


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    val = a.valuation + b.valuation
    order = min(a.order + b.valuation, b.order + a.valuation)
    n = order - val
    if n <= 0 or a.is_zero() or b.is_zero():
        return QSeries([], val if n > 0 else order, order)
    an, ad = _common_denominator(a.coeffs[:n])
    bn, bd = _common_denominator(b.coeffs[:n])
    den = ad * bd
    prod = _convolve(an, bn, n)
    return QSeries([Fraction(c, den) for c in prod], val, order)


def _invert_unit(nums: Sequence[int], den: int, n: int) -> list[Fraction]:
    """First ``n`` coefficients of ``den / sum(nums[k] q^k)`` with ``nums[0] != 0``."""
    b0 = nums[0]
    out: list[Fraction] = [Fraction(den, b0)]
    for k in range(1, n):
        s = Fraction(0)
        for j in range(1, min(k, len(nums) - 1) + 1):
            if nums[j]:
                s += nums[j] * out[k - j]
        out.append(-s / b0)
    return out


def series_inverse(b: QSeries) -> QSeries:
    if b.is_zero():
        raise DivisionByZeroSeries("series has no nonzero coefficient below its order")
    rel = b.order - b.valuation
    bn, bd = _common_denominator(b.coeffs)
    inv = _invert_unit(bn, bd, rel)
    return QSeries(inv, -b.valuation, rel - b.valuation)


def series_div(a: QSeries, b: QSeries) -> QSeries:
    """Quotient ``a / b``; may return a Laurent series with negative valuation."""
    return series_mul(a, series_inverse(b))


def series_pow_int(a: QSeries, e: int) -> QSeries:
    if e < 0:
        return series_pow_int(series_inverse(a), -e)
    if e == 0:
        # order of a^0 is unlimited in principle; keep the input's relative precision
        return QSeries.one(a.order - a.valuation)
    out = None
    base = a
    while e:
        if e & 1:
            out = base if out is None else series_mul(out, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    return out


def series_theta(a: QSeries) -> QSeries:
    """The Euler derivation q d/dq."""
    return QSeries([(a.valuation + i) * c for i, c in enumerate(a.coeffs)],
                   a.valuation, a.order)


def series_derivative(a: QSeries) -> QSeries:
    """Ordinary derivative d/dq of a power series."""
    if a.valuation < 0:
        raise ValueError("derivative of a Laurent series is not supported")
    val = a.valuation - 1
    cs = [(a.valuation + i) * c for i, c in enumerate(a.coeffs)]
    if val < 0:
        cs, val = cs[1:], 0
    return QSeries(cs, val, a.order - 1)


def series_compose(outer: QSeries, inner: QSeries) -> QSeries:
    """``outer(inner(q))`` for ``inner`` without constant term (Horner scheme)."""
    if inner.is_zero():
        if outer.valuation < 0:
            raise CompositionValuationError("cannot substitute zero into a Laurent series")
        return QSeries([outer[0]] if outer.order > 0 else [], 0, inner.order)
    if inner.valuation < 1:
        raise CompositionValuationError("inner series must have valuation >= 1")
    if outer.valuation < 0:
        raise CompositionValuationError("outer series must be a power series")
    v = inner.valuation
    order = min(inner.order, outer.order * v)
    inner = inner.truncate(order)
    # terms z^k with k*v >= order cannot contribute
    top = min(outer.order - 1, (order - 1) // v)
    acc = QSeries([outer[top]], 0, order)
    for k in range(top - 1, -1, -1):
        acc = series_mul(acc, inner) + QSeries([outer[k]], 0, order)
        acc = acc.truncate(order)
    return acc
