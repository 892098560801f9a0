"""Eta quotients on Gamma_0(8): q-expansions, cusp orders, and exact identities.

Every identity here is checked coefficient-by-coefficient in exact
arithmetic, far past the Sturm bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping

from .checks import CheckResult, exact_check
from .exactq import QSeries, series_compose, series_theta


class FractionalExponentError(ValueError):
    """The quotient's leading q-exponent (1/24) sum m e_m is not an integer."""


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def prime_factors(n: int) -> list[int]:
    ps, p = [], 2
    while p * p <= n:
        if n % p == 0:
            ps.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        ps.append(n)
    return ps


@dataclass(frozen=True)
class EtaQuotient:
    """The product of eta(m*tau)**e_m over divisors m of ``level``."""

    level: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        ms = [m for m, _ in self.factors]
        if len(set(ms)) != len(ms):
            raise ValueError("eta quotient factors must have distinct m")
        for m in ms:
            if m <= 0 or self.level % m:
                raise ValueError(f"{m} does not divide the level {self.level}")

    @classmethod
    def from_exponents(cls, level: int, exps: Mapping[int, int]) -> "EtaQuotient":
        return cls(level, tuple(sorted((m, e) for m, e in exps.items() if e)))

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(e for _, e in self.factors), 2)

    @property
    def leading_exponent(self) -> Fraction:
        return Fraction(sum(m * e for m, e in self.factors), 24)

    def exponent(self, m: int) -> int:
        return dict(self.factors).get(m, 0)


T_QUOTIENT = EtaQuotient.from_exponents(8, {1: 8, 2: -8, 4: -8, 8: 8})
Y_QUOTIENT = EtaQuotient.from_exponents(8, {1: -4, 2: 6, 4: 6, 8: -4})


def _euler_product_power(m: int, e: int, n: int) -> list[int]:
    """Integer coefficients of prod_k (1 - q^{mk})^e below q^n."""
    c = [0] * n
    if n:
        c[0] = 1
    for step in range(m, n, m):
        for _ in range(abs(e)):
            if e > 0:
                # multiply by (1 - q^step)
                for i in range(n - 1, step - 1, -1):
                    c[i] -= c[i - step]
            else:
                # divide by (1 - q^step)
                for i in range(step, n):
                    c[i] += c[i - step]
    return c


def eta_qexp(eq: EtaQuotient, order: int) -> QSeries:
    """Exact q-expansion of an eta quotient through q^(order-1)."""
    lead = eq.leading_exponent
    if lead.denominator != 1:
        raise FractionalExponentError(f"leading exponent {lead} is not integral")
    if lead < 0:
        raise ValueError("eta quotient has a pole at infinity")
    v = int(lead)
    n = max(order - v, 0)
    acc = [1] + [0] * (n - 1) if n else []
    for m, e in eq.factors:
        part = _euler_product_power(m, e, n)
        acc = _int_convolve(acc, part, n)
    return QSeries(acc, v, order)


def _int_convolve(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, ai in enumerate(a[:n]):
        if ai:
            for j in range(n - i):
                out[i + j] += ai * b[j]
    return out


def t_series(order: int) -> QSeries:
    return eta_qexp(T_QUOTIENT, order)


def Y_series(order: int) -> QSeries:
    return eta_qexp(Y_QUOTIENT, order)


# ---------------------------------------------------------------------------
# cusps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CuspOrders:
    """Orders at the cusps of Gamma_0(N), one per cusp denominator.

    Orders are measured in the local uniformizer at each cusp (so cusp
    widths are already folded in).  For N = 8 the enumeration is
    (inf, 0, 1/2, 1/4) with denominators (8, 1, 2, 4).
    """

    level: int
    denominators: tuple[int, ...]
    orders: tuple[Fraction, ...]

    def as_tuple(self) -> tuple:
        return tuple(int(o) if o.denominator == 1 else o for o in self.orders)

    def __iter__(self):
        return iter(self.as_tuple())

    def __len__(self):
        return len(self.orders)


def cusp_denominators(N: int) -> tuple[int, ...]:
    """Cusp denominators in the order (inf, 0, remaining divisors ascending)."""
    if N == 1:
        return (1,)
    rest = [d for d in divisors(N) if d not in (1, N)]
    return (N, 1, *rest)


def cusp_width(N: int, d: int) -> int:
    """Width of a cusp with denominator d on Gamma_0(N)."""
    return N // gcd(d * d, N)


def ligozat_orders(eq: EtaQuotient) -> CuspOrders:
    """Orders of an eta quotient at each cusp class via Ligozat's formula."""
    N = eq.level
    dens = cusp_denominators(N)
    out = []
    for d in dens:
        s = Fraction(0)
        for delta, r in eq.factors:
            s += Fraction(gcd(d, delta) ** 2 * r, delta)
        out.append(Fraction(N, 24) * s / (gcd(d, N // d) * d))
    return CuspOrders(N, dens, tuple(out))


def gamma0_index(N: int) -> int:
    idx = N
    for p in prime_factors(N):
        idx = idx // p * (p + 1)
    return idx


def sturm_bound(N: int, k: int) -> int:
    """floor(k * [SL2(Z):Gamma_0(N)] / 12)."""
    if N < 1 or k < 2 or k % 2:
        raise ValueError("need N >= 1 and even k >= 2")
    return k * gamma0_index(N) // 12


def valence_total(orders: CuspOrders) -> Fraction:
    """Sum of cusp orders, weighted by the number of cusps per denominator."""
    N = orders.level
    total = Fraction(0)
    for d, o in zip(orders.denominators, orders.orders):
        total += _euler_phi(gcd(d, N // d)) * o
    return total


def _euler_phi(n: int) -> int:
    out = n
    for p in prime_factors(n):
        out = out // p * (p - 1)
    return out


# ---------------------------------------------------------------------------
# g_8 and its Eichler integral
# ---------------------------------------------------------------------------

def sigma3(n: int) -> int:
    return sum(d ** 3 for d in divisors(n))


def g8_coefficient(n: int) -> int:
    """a_n = sigma3(n) - 21 sigma3(n/2) + 84 sigma3(n/4) - 64 sigma3(n/8)."""
    a = sigma3(n)
    for m, c in ((2, -21), (4, 84), (8, -64)):
        if n % m == 0:
            a += c * sigma3(n // m)
    return a


def g8_coefficients(order: int) -> list[int]:
    """[a_0, a_1, ..., a_{order-1}] with a_0 = 0."""
    return [0] + [g8_coefficient(n) for n in range(1, order)]


def e4_series(order: int) -> QSeries:
    """E_4 = 1 + 240 sum n^3 q^n / (1 - q^n), expanded as a Lambert series."""
    c = [0] * order
    for n in range(1, order):
        n3 = n ** 3
        for k in range(n, order, n):
            c[k] += n3
    c = [240 * x for x in c]
    if order:
        c[0] = 1
    return QSeries(c, 0, order)


def _dilate(s: QSeries, m: int, order: int) -> QSeries:
    """s(q^m) truncated to ``order``."""
    c = [0] * order
    for n in range(0, (order + m - 1) // m):
        if n < s.order:
            c[n * m] = s[n]
    return QSeries(c, 0, order)


def g8_from_e4(order: int) -> QSeries:
    """(E4(q) - 21 E4(q^2) + 84 E4(q^4) - 64 E4(q^8)) / 240."""
    e4 = e4_series(order)
    acc = e4 - 21 * _dilate(e4, 2, order) + 84 * _dilate(e4, 4, order) \
        - 64 * _dilate(e4, 8, order)
    return acc / 240


def build_g8(order: int) -> QSeries:
    """g_8 = sum a_n q^n, cross-checked against the E_4 combination."""
    g = QSeries(g8_coefficients(order), 0, order)
    other = g8_from_e4(order)
    bad = g.first_mismatch(other)
    if bad is not None:
        raise AssertionError(f"g8 coefficient formulas disagree at q^{bad}")
    return g


def eichler_series(order: int, coeffs: list[int] | None = None) -> QSeries:
    """E(q) = sum a_n / n^3 q^n."""
    a = coeffs if coeffs is not None else g8_coefficients(order)
    return QSeries([0] + [Fraction(a[n], n ** 3) for n in range(1, order)], 0, order)


# ---------------------------------------------------------------------------
# exact identities
# ---------------------------------------------------------------------------

def _log_derivative_t(order: int) -> tuple[QSeries, QSeries, QSeries]:
    """t, D t and D t / t, each known through q^(order-1)."""
    t = t_series(order + 1)
    dt = series_theta(t)
    return t.truncate(order), dt.truncate(order), (dt / t).truncate(order)


def _quadratic_in_t(t: QSeries) -> QSeries:
    """1 - 24 t + 16 t^2."""
    return 1 - 24 * t + 16 * (t * t)


def check_wronskian(order: int = 200) -> CheckResult:
    """(Dt/t)^2 = Y^2 (1 - 24 t + 16 t^2) through q^(order-1)."""
    if order < 5:
        raise ValueError("order must be at least 5")
    t, _, logd = _log_derivative_t(order)
    Y = Y_series(order)
    lhs = logd * logd
    rhs = Y * Y * _quadratic_in_t(t)
    res = exact_check("wronskian", "Wronskian identity (Dt/t)^2 = Y^2 (1 - 24t + 16t^2)", lhs, rhs, order=order)
    res.details["lhs_head"] = [lhs[n] for n in range(5)]
    res.details["rhs_head"] = [rhs[n] for n in range(5)]
    return res


def check_phi(order: int = 200) -> CheckResult:
    """Phi from the variation-of-constants formula equals Y*Dt and g_8."""
    if order < 5:
        raise ValueError("order must be at least 5")
    t, dt, logd = _log_derivative_t(order)
    Y = Y_series(order)
    phi_def = logd ** 3 * t / (Y * _quadratic_in_t(t))
    phi_simple = Y * dt
    g8 = build_g8(order)
    m1 = phi_def.first_mismatch(phi_simple)
    m2 = phi_simple.first_mismatch(g8)
    mism = min((m for m in (m1, m2) if m is not None), default=None)
    ok = mism is None and min(phi_def.order, phi_simple.order, g8.order) >= order
    return CheckResult("phi_equals_g8", "Phi (variation of constants) = Y*Dt = g8", ok,
                       params={"order": order}, first_mismatch=mism,
                       details={"phi_head": [phi_def[n] for n in range(min(7, order))],
                                "g8_head": [g8[n] for n in range(min(7, order))]})


def check_parametrizations(order: int = 200, table=None) -> CheckResult:
    """A(t(q)) = Y(q) and B(t(q)) = E(q) Y(q), exactly."""
    from .seqs import extend_table

    if order < 1:
        raise ValueError("order must be positive")
    if table is None or table.n_max < order:
        table = extend_table(max(order, 1))
    t = t_series(order)
    Y = Y_series(order)
    A = QSeries(table.s[:order], 0, order)
    B = QSeries(table.B[:order], 0, order)
    E = eichler_series(order)
    first = series_compose(A, t)
    second = series_compose(B, t)
    EY = E * Y
    m1 = first.first_mismatch(Y)
    m2 = second.first_mismatch(EY)
    mism = min((m for m in (m1, m2) if m is not None), default=None)
    ok = mism is None and min(first.order, second.order, EY.order) >= order
    return CheckResult("parametrizations", "A(t) = Y and B(t) = E*Y", ok,
                       params={"order": order}, first_mismatch=mism,
                       details={"A_of_t_head": [first[n] for n in range(min(7, order))],
                                "B_of_t_head": [second[n] for n in range(min(7, order))]})


def check_g8_sources(order: int = 200) -> CheckResult:
    """Divisor-sum coefficients against the E_4 Lambert-series combination."""
    a = QSeries(g8_coefficients(order), 0, order)
    res = exact_check("g8_dual_source", "g8 from divisor sums vs the E4 combination", a,
                      g8_from_e4(order), order=order)
    return res


def check_cusp_orders() -> CheckResult:
    """Ligozat orders of t and Y plus the valence-formula totals."""
    ot = ligozat_orders(T_QUOTIENT).as_tuple()
    oy = ligozat_orders(Y_QUOTIENT).as_tuple()
    idx = gamma0_index(8)
    vt = valence_total(ligozat_orders(T_QUOTIENT))
    vy = valence_total(ligozat_orders(Y_QUOTIENT))
    ok = (ot == (1, 1, -1, -1) and oy == (0, 0, 1, 1)
          and vt == T_QUOTIENT.weight * idx / 12 and vy == Y_QUOTIENT.weight * idx / 12
          and T_QUOTIENT.leading_exponent == ot[0])
    return CheckResult("cusp_orders", "Ligozat cusp orders of t and Y", ok,
                       details={"ord_t": list(ot), "ord_Y": list(oy),
                                "cusps": ["inf", "0", "1/2", "1/4"],
                                "normalization": "local uniformizer at each cusp "
                                                 "(widths 1, 8, 2, 1)"})


def check_sturm() -> CheckResult:
    b = sturm_bound(8, 4)
    return CheckResult("sturm_bound", "Sturm bound for weight 4 on Gamma0(8)", b == 4,
                       params={"N": 8, "k": 4}, details={"bound": b})
