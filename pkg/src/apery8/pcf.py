"""Polynomial continued fractions and the continuant bridge to s_n, B_n.

Convention: PCF(a, b) = a_0 + b_1/(a_1 + b_2/(a_2 + ...)), with continuants

    U_n = a_n U_{n-1} + b_n U_{n-2},   P_{-1}=1, P_0=a_0, Q_{-1}=0, Q_0=1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath

from .apreal import GUARD, const_zeta3, tolerance
from .checks import CheckResult


class DeterminantMismatch(AssertionError):
    """The continuant determinant identity failed: the recurrence is wrong."""


class ZeroDenominator(ZeroDivisionError):
    pass


def _eval(poly: tuple[int, ...], n: int) -> int:
    out = 0
    for c in reversed(poly):
        out = out * n + c
    return out


@dataclass(frozen=True)
class PCFSpec:
    """Integer polynomials for partial denominators ``a`` and numerators ``b``.

    Coefficients are in increasing degree.  ``a0`` overrides a(0).
    """

    a: tuple[int, ...]
    b: tuple[int, ...]
    a0: int | None = None

    def a_at(self, n: int) -> int:
        if n == 0 and self.a0 is not None:
            return self.a0
        return _eval(self.a, n)

    def b_at(self, n: int) -> int:
        return _eval(self.b, n)


# a(n) = (2n+1)(3n^2+3n+1) = 6n^3 + 9n^2 + 5n + 1,  b(n) = -n^6
APERY8_PCF = PCFSpec(a=(1, 5, 9, 6), b=(0, 0, 0, 0, 0, 0, -1), a0=1)


@dataclass
class ContinuantPair:
    """P_n, Q_n for n = 0..n_max (the n = -1 seeds are not stored)."""

    P: list[int]
    Q: list[int]
    n_max: int

    def convergent(self, n: int) -> Fraction:
        if self.Q[n] == 0:
            raise ZeroDenominator(f"Q_{n} = 0")
        return Fraction(self.P[n], self.Q[n])


def build_continuants(spec: PCFSpec = APERY8_PCF, n_max: int = 300) -> ContinuantPair:
    """Continuant tables with the determinant identity asserted at every step.

    P_n Q_{n-1} - Q_n P_{n-1} = -b_n (P_{n-1} Q_{n-2} - Q_{n-1} P_{n-2}),
    starting from P_0 Q_{-1} - Q_0 P_{-1} = -1.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    p_prev, p = 1, spec.a_at(0)
    q_prev, q = 0, 1
    P, Q = [p], [q]
    det = -1
    for n in range(1, n_max + 1):
        a, b = spec.a_at(n), spec.b_at(n)
        p_prev, p = p, a * p + b * p_prev
        q_prev, q = q, a * q + b * q_prev
        det = -b * det
        if p * q_prev - q * p_prev != det:
            raise DeterminantMismatch(f"determinant identity fails at n={n}")
        P.append(p)
        Q.append(q)
    return ContinuantPair(P, Q, n_max)


def determinant(pair: ContinuantPair, n: int) -> int:
    return pair.P[n] * pair.Q[n - 1] - pair.Q[n] * pair.P[n - 1]


def check_determinant(pair: ContinuantPair) -> CheckResult:
    """For the level-8 instance: P_n Q_{n-1} - Q_n P_{n-1} = -(n!)^6."""
    bad = next((n for n in range(1, pair.n_max + 1)
                if determinant(pair, n) != -factorial(n) ** 6), None)
    return CheckResult("continuant_determinant", "continuant determinant P_n Q_{n-1} - Q_n P_{n-1} = -(n!)^6", bad is None,
                       params={"n_max": pair.n_max}, first_mismatch=bad)


def check_closed_forms(pair: ContinuantPair, table) -> CheckResult:
    """4^(n+1) P_n = (n+1)!^3 s_{n+1} and 4^n Q_n = (n+1)!^3 B_{n+1}."""
    top = min(pair.n_max, table.n_max - 1)
    bad = None
    for n in range(top + 1):
        f3 = factorial(n + 1) ** 3
        if 4 ** (n + 1) * pair.P[n] != f3 * table.s[n + 1] or \
                4 ** n * pair.Q[n] != f3 * table.B[n + 1]:
            bad = n
            break
    return CheckResult("continuant_closed_forms", "continuants P_n, Q_n in closed form via s_{n+1}, B_{n+1}", bad is None,
                       params={"n_max": top}, first_mismatch=bad)


def check_convergent_ratio(pair: ContinuantPair, table) -> CheckResult:
    """P_n / Q_n = s_{n+1} / (4 B_{n+1}) and the convergent-gap form of the determinant."""
    top = min(pair.n_max, table.n_max - 1)
    bad = None
    for n in range(top + 1):
        conv = pair.convergent(n)
        if conv != Fraction(table.s[n + 1]) / (4 * table.B[n + 1]):
            bad = n
            break
        if n >= 1 and conv - pair.convergent(n - 1) != \
                Fraction(-factorial(n) ** 6, pair.Q[n] * pair.Q[n - 1]):
            bad = n
            break
    return CheckResult("convergent_ratio", "P_n/Q_n = s_{n+1}/(4 B_{n+1})", bad is None,
                       params={"n_max": top}, first_mismatch=bad)


def pcf_value(spec: PCFSpec = APERY8_PCF, n_max: int = 60, prec: int = 50,
              pair: ContinuantPair | None = None):
    """(P_{n_max}/Q_{n_max} as mpf, |value - 8/(7 zeta 3)|)."""
    if pair is None or pair.n_max < n_max:
        pair = build_continuants(spec, n_max)
    for n in range(n_max + 1):
        if pair.Q[n] == 0:
            raise ZeroDenominator(f"Q_{n} = 0")
    with mpmath.workdps(prec + GUARD):
        val = mpmath.mpf(pair.P[n_max]) / pair.Q[n_max]
        target = 8 / (7 * const_zeta3(prec))
        return val, abs(val - target)


def check_pcf_value(n_max: int = 60, prec: int = 50, pair: ContinuantPair | None = None) -> CheckResult:
    """Convergent against 8/(7 zeta 3) plus the reciprocal form 7 zeta(3)/8."""
    tol = mpmath.mpf(10) ** -40 if prec >= 50 else tolerance(prec)
    val, res = pcf_value(APERY8_PCF, n_max, prec, pair)
    with mpmath.workdps(prec + GUARD):
        recip = 1 / val
        recip_res = abs(recip - 7 * const_zeta3(prec) / 8)
    return CheckResult("pcf_value", "PCF((2n+1)(3n^2+3n+1), -n^6) = 8/(7 zeta(3))",
                       bool(res < tol and recip_res < tol), params={"n_max": n_max, "prec": prec},
                       residual=res, tolerance=tol,
                       details={"value": val, "reciprocal": recip,
                                "reciprocal_residual": recip_res})


def convergence_errors(pair: ContinuantPair, lo: int, hi: int, prec: int) -> list:
    """|P_n/Q_n - 8/(7 zeta 3)| for lo <= n <= hi."""
    with mpmath.workdps(prec + GUARD):
        target = 8 / (7 * const_zeta3(prec))
        return [abs(mpmath.mpf(pair.P[n]) / pair.Q[n] - target) for n in range(lo, hi + 1)]


def check_bo_polynomial() -> CheckResult:
    """6n^3+9n^2+5n+1 equals (2n+1)(3n^2+3n+1) as polynomials."""
    product = [0] * 4
    for i, x in enumerate((1, 2)):
        for j, y in enumerate((1, 3, 3)):
            product[i + j] += x * y
    expanded = (1, 5, 9, 6)
    ok = tuple(product) == expanded == APERY8_PCF.a and APERY8_PCF.a_at(0) == _eval(expanded, 0)
    return CheckResult("bo_polynomial", "p(n) = 6n^3+9n^2+5n+1 = (2n+1)(3n^2+3n+1)", ok,
                       details={"coefficients_high_to_low": list(reversed(product))})
