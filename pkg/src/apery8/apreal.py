"""Arbitrary-precision numerics on the upper half-plane.

Values are mpmath ``mpf``/``mpc`` numbers.  Every public function takes a
target precision ``prec`` in decimal digits, works internally with
``prec + GUARD`` digits and truncates q-series once the remaining terms
fall below ``10**-(prec + 5)``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mpc, mpf

from .etamod import T_QUOTIENT, Y_QUOTIENT, EtaQuotient, eta_qexp, g8_coefficients, sigma3

GUARD = 15


class PrecisionUnreachable(ArithmeticError):
    """Two independent evaluations of a constant disagree."""


class DomainError(ValueError):
    """Argument outside the upper half-plane (or y <= 0)."""


def tolerance(prec: int):
    """Default acceptance tolerance 10^-(prec-10)."""
    return mpf(10) ** (-(prec - 10))


def rat_to_mpf(x: Fraction, prec: int):
    with mpmath.workdps(prec + GUARD):
        return mpf(x.numerator) / x.denominator


def to_decimal(x, prec: int) -> str:
    """Decimal string with ``prec`` significant digits."""
    return mpmath.nstr(x, prec, strip_zeros=False, min_fixed=-mpmath.inf, max_fixed=mpmath.inf) \
        if mpmath.isfinite(x) else str(x)


# ---------------------------------------------------------------------------
# zeta(3), two ways
# ---------------------------------------------------------------------------

def zeta3_apery(prec: int):
    """(5/2) sum_{n>=1} (-1)^(n+1) / (n^3 C(2n, n)); terms shrink like 4^-n."""
    with mpmath.workdps(prec + GUARD):
        eps = mpf(10) ** (-(prec + GUARD))
        total = mpf(0)
        binom = mpf(1)
        n = 1
        while True:
            binom = binom * (4 * n - 2) / n  # C(2n, n)
            term = 1 / (mpf(n) ** 3 * binom)
            total += term if n % 2 else -term
            if term < eps:
                break
            n += 1
        return total * 5 / 2


def zeta3_az(prec: int):
    """Amdeberhan-Zeilberger: (1/64) sum (-1)^k (k!)^10 (205k^2+250k+77) / ((2k+1)!)^5."""
    with mpmath.workdps(prec + GUARD):
        eps = mpf(10) ** (-(prec + GUARD))
        total = mpf(0)
        ratio = mpf(1)  # (k!)^10 / ((2k+1)!)^5
        k = 0
        while True:
            term = ratio * (205 * k * k + 250 * k + 77)
            total += -term if k % 2 else term
            if term < eps:
                break
            k += 1
            ratio = ratio * mpf(k) ** 10 / (mpf(2 * k) * (2 * k + 1)) ** 5
        return total / 64


@lru_cache(maxsize=None)
def _zeta3_cached(prec: int):
    a = zeta3_apery(prec)
    b = zeta3_az(prec)
    with mpmath.workdps(prec + GUARD):
        if abs(a - b) > mpf(10) ** (-(prec + 2)):
            raise PrecisionUnreachable(f"zeta(3) sources disagree by {mpmath.nstr(abs(a - b), 5)}")
    return a


def const_zeta3(prec: int):
    """zeta(3) to ``prec`` digits, asserted equal by two independent series."""
    if prec < 10:
        raise ValueError("prec must be at least 10")
    return _zeta3_cached(prec)


def apery_constant(prec: int):
    """(7/32) zeta(3)."""
    with mpmath.workdps(prec + GUARD):
        return mpf(7) / 32 * const_zeta3(prec)


# ---------------------------------------------------------------------------
# truncation
# ---------------------------------------------------------------------------

def truncation_length(absq, prec: int, power: int = 3) -> int:
    """Least M with n^power |q|^n < 10^-(prec+5) for every n >= M."""
    with mpmath.workdps(30):
        absq = mpf(absq)
        if not 0 <= absq < 1:
            raise DomainError("|q| must be below 1")
        if absq == 0:
            return 1
        lq = mpmath.log(absq)
        target = -(prec + 5) * mpmath.log(10)
        # past n = power/|log q| the bound decreases monotonically
        n = max(1, int(power / -lq) + 1)
        while power * mpmath.log(n) + n * lq >= target:
            n += 1
        return n


def _q_of(tau, prec: int):
    tau = mpc(tau)
    if tau.imag <= 0:
        raise DomainError("Im(tau) must be positive")
    return mpmath.exp(2j * mpmath.pi * tau)


# ---------------------------------------------------------------------------
# eta and eta quotients
# ---------------------------------------------------------------------------

def eta_numeric(tau, prec: int):
    """Dedekind eta: exp(pi i tau / 12) prod_{n<M} (1 - q^n)."""
    with mpmath.workdps(prec + GUARD):
        tau = mpc(tau)
        q = _q_of(tau, prec)
        M = truncation_length(abs(q), prec + GUARD, power=0)
        prod = mpc(1)
        qn = mpc(1)
        for _ in range(1, M + 1):
            qn *= q
            prod *= 1 - qn
        return mpmath.exp(1j * mpmath.pi * tau / 12) * prod


def eta_quotient_numeric(eq: EtaQuotient, tau, prec: int):
    with mpmath.workdps(prec + GUARD):
        tau = mpc(tau)
        out = mpc(1)
        for m, e in eq.factors:
            out *= eta_numeric(m * tau, prec) ** e
        return out


def t_numeric(tau, prec: int):
    return eta_quotient_numeric(T_QUOTIENT, tau, prec)


def Y_numeric(tau, prec: int):
    return eta_quotient_numeric(Y_QUOTIENT, tau, prec)


@lru_cache(maxsize=8)
def _Y_coeffs(M: int) -> tuple[int, ...]:
    s = eta_qexp(Y_QUOTIENT, M)
    return tuple(int(s[n]) for n in range(M))


@lru_cache(maxsize=8)
def _g8_table(M: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a = g8_coefficients(M)
    return tuple(a), tuple(sigma3(n) for n in range(M))


def _sum_series(coeffs, q, M: int):
    """Horner evaluation of sum_{n<M} coeffs[n] q^n."""
    acc = mpc(0)
    for n in range(M - 1, -1, -1):
        acc = acc * q + coeffs[n]
    return acc


def Y_prime_numeric(tau, prec: int):
    """dY/dtau = 2 pi i sum n y_n q^n, from the exact integer q-expansion of Y."""
    with mpmath.workdps(prec + GUARD):
        q = _q_of(tau, prec)
        M = truncation_length(abs(q), prec + GUARD, power=3)
        y = _Y_coeffs(M)
        return 2j * mpmath.pi * _sum_series([n * y[n] for n in range(M)], q, M)


def Y_from_series(tau, prec: int):
    with mpmath.workdps(prec + GUARD):
        q = _q_of(tau, prec)
        M = truncation_length(abs(q), prec + GUARD, power=3)
        return _sum_series(_Y_coeffs(M), q, M)


def E4_numeric(tau, prec: int):
    """1 + 240 sum sigma3(n) q^n."""
    with mpmath.workdps(prec + GUARD):
        q = _q_of(tau, prec)
        M = truncation_length(abs(q), prec + GUARD, power=4)
        _, s3 = _g8_table(M)
        return 1 + 240 * _sum_series(s3, q, M)


def g8_numeric(tau, prec: int):
    """(E4(tau) - 21 E4(2tau) + 84 E4(4tau) - 64 E4(8tau)) / 240."""
    with mpmath.workdps(prec + GUARD):
        tau = mpc(tau)
        return (E4_numeric(tau, prec) - 21 * E4_numeric(2 * tau, prec)
                + 84 * E4_numeric(4 * tau, prec) - 64 * E4_numeric(8 * tau, prec)) / 240


def g8_from_series(tau, prec: int):
    """sum a_n q^n directly."""
    with mpmath.workdps(prec + GUARD):
        q = _q_of(tau, prec)
        M = truncation_length(abs(q), prec + GUARD, power=4)
        a, _ = _g8_table(M)
        return _sum_series(a, q, M)


def _eichler(q, prec: int, power: int):
    """sum a_n / n^power q^n."""
    M = truncation_length(abs(q), prec + GUARD, power=3 - power + 1)
    a, _ = _g8_table(M)
    coeffs = [0] + [mpf(a[n]) / mpf(n) ** power for n in range(1, M)]
    return _sum_series(coeffs, q, M)


def E_numeric(tau, prec: int):
    """Eichler integral E = sum a_n / n^3 q^n."""
    with mpmath.workdps(prec + GUARD):
        return _eichler(_q_of(tau, prec), prec, 3)


def E_prime_numeric(tau, prec: int):
    """dE/dtau = 2 pi i sum a_n / n^2 q^n."""
    with mpmath.workdps(prec + GUARD):
        return 2j * mpmath.pi * _eichler(_q_of(tau, prec), prec, 2)


def F_eval(y, prec: int):
    """F(y) = E(i y / (2 sqrt 2)) = sum a_n/n^3 exp(-pi n y / sqrt 2)."""
    with mpmath.workdps(prec + GUARD):
        y = mpf(y)
        if y <= 0:
            raise DomainError("y must be positive")
        q = mpmath.exp(-mpmath.pi * y / mpmath.sqrt(2))
        return _eichler(q, prec, 3).real


def tau_on_geodesic(y, prec: int):
    with mpmath.workdps(prec + GUARD):
        return mpc(0, mpf(y) / (2 * mpmath.sqrt(2)))


def tau_star(prec: int):
    """The Fricke fixed point i / (2 sqrt 2)."""
    return tau_on_geodesic(1, prec)


def fricke(tau, prec: int):
    """W_8 tau = -1 / (8 tau)."""
    with mpmath.workdps(prec + GUARD):
        return -1 / (8 * mpc(tau))
