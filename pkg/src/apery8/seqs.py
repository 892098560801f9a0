"""The level-8 Apery-like sequence s_n, its companion B_n, and their ODEs.

Both sequences satisfy

    (n+1)^3 u_{n+1} = (2n+1)(12n^2+12n+4) u_n - 16 n^3 u_{n-1},

with (s_0, s_1) = (1, 4) and (B_0, B_1) = (0, 1).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import mpmath

from .checks import CheckResult
from .exactq import QSeries, QuadRat, series_derivative

BINOMIAL_CHECK_LIMIT = 200

# t0 = (3 - 2 sqrt 2)/4, the smaller root of 16 z^2 - 24 z + 1
T0 = QuadRat(Fraction(3, 4), Fraction(-1, 2))
T1 = QuadRat(Fraction(3, 4), Fraction(1, 2))


class IntegralityError(ArithmeticError):
    """The s-recurrence produced a non-integer."""


def s_binomial(n: int) -> int:
    """s_n = sum_k C(n,k)^2 C(2k,n)^2."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(comb(n, k) ** 2 * comb(2 * k, n) ** 2 for k in range(n + 1))


def _rec_coeffs(n: int) -> tuple[int, int, int]:
    """(lead, mid, back) with lead*u_{n+1} = mid*u_n - back*u_{n-1}."""
    return (n + 1) ** 3, (2 * n + 1) * (12 * n * n + 12 * n + 4), 16 * n ** 3


@dataclass
class SeqTable:
    """s_0..s_{n_max} (integers) and B_0..B_{n_max} (rationals).

    ``Bnorm[n]`` is the integer (n+1)!^3 B_{n+1} / 4^n, maintained by its
    own integer recurrence for n + 1 <= n_max.
    """

    n_max: int
    s: list[int] = field(default_factory=list)
    B: list[Fraction] = field(default_factory=list)
    Bnorm: list[int] = field(default_factory=list)


def extend_table(n_max: int, binomial_check_limit: int = BINOMIAL_CHECK_LIMIT) -> SeqTable:
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    s = [1, 4]
    B = [Fraction(0), Fraction(1)]
    for n in range(1, n_max):
        lead, mid, back = _rec_coeffs(n)
        num = mid * s[n] - back * s[n - 1]
        q, r = divmod(num, lead)
        if r:
            raise IntegralityError(f"s_{n + 1} is not an integer")
        s.append(q)
        B.append((mid * B[n] - back * B[n - 1]) / lead)

    # (n+1)!^3 B_{n+1} / 4^n obeys U_n = (2n+1)(3n^2+3n+1) U_{n-1} - n^6 U_{n-2}
    bn = [1]
    if n_max >= 2:
        bn.append(21)
    prev2, prev = 1, 21
    for n in range(2, n_max):
        cur = (2 * n + 1) * (3 * n * n + 3 * n + 1) * prev - n ** 6 * prev2
        bn.append(cur)
        prev2, prev = prev, cur

    for n in range(min(n_max, binomial_check_limit) + 1):
        if s_binomial(n) != s[n]:
            raise AssertionError(f"recurrence and binomial sum disagree at n={n}")
    return SeqTable(n_max, s, B, bn)


def apery_ratio(n: int, table: SeqTable | None = None) -> Fraction:
    """B_n / s_n, exactly."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if table is None or table.n_max < n:
        table = extend_table(n, binomial_check_limit=0)
    return table.B[n] / table.s[n]


# ---------------------------------------------------------------------------
# differential operators
# ---------------------------------------------------------------------------

# theta^3 - 4z(2 theta+1)(3 theta^2+3 theta+1) + 16 z^2 (theta+1)^3,
# as (z-power, coefficients of the theta-polynomial in increasing degree)
THETA_OPERATOR: tuple[tuple[int, tuple[int, ...]], ...] = (
    (0, (0, 0, 0, 1)),
    (1, (-4, -20, -36, -24)),
    (2, (16, 48, 48, 16)),
)


def _poly_eval(coeffs, x):
    out = 0
    for c in reversed(coeffs):
        out = out * x + c
    return out


def apply_theta_operator(f: QSeries, op=THETA_OPERATOR) -> QSeries:
    """Apply sum_j z^j P_j(theta) to a power series in z."""
    if f.valuation < 0:
        raise ValueError("expected a power series")
    order = f.order
    out = [Fraction(0)] * order
    for shift, poly in op:
        for n in range(order - shift):
            c = f[n]
            if c:
                out[n + shift] += _poly_eval(poly, n) * c
    return QSeries(out, 0, order)


def apply_ordinary_operator(y: QSeries) -> QSeries:
    """z^2(16z^2-24z+1)y''' + 3z(32z^2-36z+1)y'' + (112z^2-80z+1)y' + 4(4z-1)y."""
    z = QSeries([0, 1], 0, y.order + 4)
    d1 = series_derivative(y)
    d2 = series_derivative(d1)
    d3 = series_derivative(d2)
    p3 = z * z * (16 * z * z - 24 * z + 1)
    p2 = 3 * z * (32 * z * z - 36 * z + 1)
    p1 = 112 * z * z - 80 * z + 1
    p0 = 4 * (4 * z - 1)
    out = p3 * d3 + p2 * d2 + p1 * d1 + p0 * y
    return out


def _generating_series(table: SeqTable, which: str, order: int) -> QSeries:
    vals = table.s if which == "s" else table.B
    return QSeries(vals[:order], 0, order)


def check_theta_ode(order: int = 200, table: SeqTable | None = None) -> CheckResult:
    """L[A] = 0 and L[B] = z through z^(order-1)."""
    if order < 3:
        raise ValueError("order must be at least 3")
    if table is None or table.n_max < order:
        table = extend_table(order, binomial_check_limit=0)
    LA = apply_theta_operator(_generating_series(table, "s", order))
    LB = apply_theta_operator(_generating_series(table, "B", order))
    zero = QSeries.zero(order)
    z = QSeries([0, 1], 0, order)
    m1 = LA.first_mismatch(zero)
    m2 = LB.first_mismatch(z)
    mism = min((m for m in (m1, m2) if m is not None), default=None)
    return CheckResult("theta_ode", "theta-form operator: L[A] = 0, L[B] = z", mism is None,
                       params={"order": order}, first_mismatch=mism)


def check_ordinary_ode(order: int = 200, table: SeqTable | None = None) -> CheckResult:
    """The ordinary third-order ODE annihilates A through z^(order-1)."""
    if order < 4:
        raise ValueError("order must be at least 4")
    if table is None or table.n_max < order + 3:
        table = extend_table(order + 3, binomial_check_limit=0)
    # y''' loses three orders; feed three extra coefficients
    A = _generating_series(table, "s", order + 3)
    LA = apply_ordinary_operator(A)
    mism = LA.first_mismatch(QSeries.zero(order))
    ok = mism is None and LA.order >= order
    return CheckResult("ordinary_ode", "third-order ODE annihilates A", ok,
                       params={"order": order}, first_mismatch=mism)


# ---------------------------------------------------------------------------
# indicial analysis at t0 over Q(sqrt 2)
# ---------------------------------------------------------------------------

# ODE coefficients p_k(z) of y^(k), increasing powers of z
ORDINARY_COEFFS: tuple[tuple[int, ...], ...] = (
    (-4, 16),                 # y
    (1, -80, 112),            # y'
    (0, 3, -108, 96),         # y''
    (0, 0, 1, -24, 16),       # y'''
)


def _poly_mul(a, b):
    out = [QuadRat(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _shift_to_eps(poly: tuple[int, ...], z0: QuadRat) -> list[QuadRat]:
    """Coefficients in eps of poly(z0 (1 - eps))."""
    lin = [z0, -z0]
    out = [QuadRat(0)]
    power = [QuadRat(1)]
    for c in poly:
        term = [c * x for x in power]
        out = [a + b for a, b in _zip_pad(out, term)]
        power = _poly_mul(power, lin)
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [QuadRat(0)] * (n - len(a))
    b = list(b) + [QuadRat(0)] * (n - len(b))
    return zip(a, b)


def _falling(k: int) -> list[int]:
    """Coefficients of r(r-1)...(r-k+1) in increasing degree."""
    out = [1]
    for j in range(k):
        nxt = [0] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i + 1] += c
            nxt[i] -= j * c
        out = nxt
    return out


def indicial_polynomial(z0: QuadRat = T0, coeffs=ORDINARY_COEFFS) -> tuple[list[QuadRat], list[QuadRat]]:
    """Leading behaviour of the ODE at z = z0 (1 - eps) on y = eps^r.

    Returns ``(top, indicial)``: the eps^(r-3) coefficient (zero at a regular
    singular point) and the eps^(r-2) coefficient, each as a polynomial in r
    with QuadRat coefficients (increasing degree).
    """
    inv = QuadRat(1) / z0
    order = len(coeffs) - 1
    top = [QuadRat(0)] * (order + 1)
    ind = [QuadRat(0)] * (order + 1)
    for k, p in enumerate(coeffs):
        eps_poly = _shift_to_eps(p, z0)
        # d^k/dz^k eps^r = (-1/z0)^k r(r-1)..(r-k+1) eps^(r-k)
        scale = (-inv) ** k
        ff = _falling(k)
        for target, exp_needed in ((top, k - 3), (ind, k - 2)):
            if 0 <= exp_needed < len(eps_poly):
                c = eps_poly[exp_needed] * scale
                for i, f in enumerate(ff):
                    target[i] = target[i] + c * f
    return top, ind


def _rational_roots(poly: list[Fraction]) -> list[Fraction]:
    """Rational roots of a rational polynomial (increasing degree), with multiplicity."""
    from math import lcm

    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()
    roots: list[Fraction] = []
    while poly and poly[0] == 0:
        roots.append(Fraction(0))
        poly.pop(0)
    if len(poly) <= 1:
        return roots
    den = 1
    for c in poly:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in poly]
    cands = set()
    for p in _divs(abs(ints[0])):
        for q in _divs(abs(ints[-1])):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    for c in sorted(cands):
        while len(poly) > 1 and _poly_eval(poly, c) == 0:
            roots.append(c)
            poly = _synthetic_div(poly, c)
    return sorted(roots)


def _divs(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _synthetic_div(poly, r):
    """Divide by (x - r); poly in increasing degree."""
    hi = list(reversed(poly))
    out = [hi[0]]
    for c in hi[1:-1]:
        out.append(c + out[-1] * r)
    return list(reversed(out))


def indicial_at_t0() -> list[QuadRat]:
    """Local exponents of the ordinary ODE at t0, computed over Q(sqrt 2)."""
    top, ind = indicial_polynomial()
    if any(c != 0 for c in top):
        raise AssertionError("t0 is not a regular singular point")
    lead = ind[-1]
    while lead == 0:
        ind = ind[:-1]
        lead = ind[-1]
    normed = [c / lead for c in ind]
    if not all(c.is_rational() for c in normed):
        raise AssertionError("indicial polynomial is not a QuadRat multiple of a rational one")
    return [QuadRat(r) for r in _rational_roots([c.a for c in normed])]


def indicial_value(r) -> QuadRat:
    _, ind = indicial_polynomial()
    return _poly_eval(ind, QuadRat(Fraction(r)))


def check_indicial() -> CheckResult:
    """Indicial polynomial = -8 sqrt2 * r(2r-1)(r-1), roots {0, 1/2, 1}."""
    top, ind = indicial_polynomial()
    target = [QuadRat(0), QuadRat(1), QuadRat(-3), QuadRat(2)]  # r(2r-1)(r-1)
    factor = QuadRat(0, -8)
    proportional = all(c == factor * t for c, t in _zip_pad(ind, target))
    roots = indicial_at_t0()
    ok = (all(c == 0 for c in top) and proportional
          and roots == [QuadRat(0), QuadRat(Fraction(1, 2)), QuadRat(1)])
    return CheckResult("indicial_t0", "local exponents 0, 1/2, 1 at t0 over Q(sqrt 2)", ok,
                       details={"indicial": [str(c) for c in ind],
                                "roots": [str(r.a) for r in roots]})


# ---------------------------------------------------------------------------
# sequence-level checks
# ---------------------------------------------------------------------------

def check_binomial_agreement(table: SeqTable, limit: int = 200) -> CheckResult:
    n = min(limit, table.n_max)
    bad = next((k for k in range(n + 1) if s_binomial(k) != table.s[k]), None)
    return CheckResult("s_binomial_vs_recurrence", "binomial sum equals recurrence for s_n", bad is None,
                       params={"n_max": n}, first_mismatch=bad)


def check_integrality(table: SeqTable) -> CheckResult:
    """s_n integral and (n+1)!^3 B_{n+1} / 4^n integral for all n + 1 <= n_max."""
    bad = None
    for n in range(table.n_max):
        x = table.B[n + 1] * factorial(n + 1) ** 3 / 4 ** n
        if x.denominator != 1 or x != table.Bnorm[n]:
            bad = n
            break
    s_ok = all(isinstance(v, int) for v in table.s)
    return CheckResult("integrality", "integrality of s_n and (n+1)!^3 B_{n+1} / 4^n",
                       bad is None and s_ok, params={"n_max": table.n_max},
                       first_mismatch=bad)


def successive_errors(table: SeqTable, lo: int, hi: int, prec: int) -> list:
    """Ratios e_{n+1}/e_n of e_n = B_n/s_n - (7/32)zeta(3) for lo <= n < hi."""
    from .apreal import const_zeta3, rat_to_mpf

    with mpmath.workdps(prec + 15):
        c = mpmath.mpf(7) / 32 * const_zeta3(prec)
        errs = [rat_to_mpf(apery_ratio(n, table), prec) - c for n in range(lo, hi + 1)]
        return [errs[i + 1] / errs[i] for i in range(len(errs) - 1)]


@dataclass
class GrowthDiagnostics:
    growth_ratio: object          # s_{n+1}/s_n at n_max - 1
    growth_gap: object            # distance to 1/t0
    alpha_estimates: list         # s_n t0^n n^{3/2} at a few n
    error_ratios: list            # e_{n+1}/e_n of the Apery ratio
    expected_error_ratio: object  # 17 - 12 sqrt 2 = t0/t1


def growth_diagnostics(n_max: int = 100, prec: int = 50, table: SeqTable | None = None) -> GrowthDiagnostics:
    if n_max < 50:
        raise ValueError("n_max must be at least 50")
    if table is None or table.n_max < n_max:
        table = extend_table(n_max, binomial_check_limit=0)
    # e_n ~ 0.0294^n, so resolving it needs about 1.6 n digits
    wp = max(prec, int(1.6 * n_max) + 30)
    with mpmath.workdps(wp + 15):
        t0 = T0.to_mpf(wp)
        inv_t0 = (QuadRat(1) / T0).to_mpf(wp)
        ratio = mpmath.mpf(table.s[n_max]) / table.s[n_max - 1]
        alphas = []
        for n in (n_max // 4, n_max // 2, n_max):
            alphas.append(table.s[n] * t0 ** n * mpmath.mpf(n) ** 1.5)
        errs = successive_errors(table, 30, n_max, wp) if n_max > 31 else []
        expected = QuadRat(17, -12).to_mpf(wp)
        return GrowthDiagnostics(ratio, abs(ratio - inv_t0), alphas, errs, expected)


def check_apery_limit(n: int = 60, prec: int = 60, table: SeqTable | None = None,
                      tol=None) -> CheckResult:
    """|B_n/s_n - (7/32) zeta(3)| below ``tol`` (default 10^-40)."""
    from .apreal import apery_constant, rat_to_mpf

    if table is None or table.n_max < n:
        table = extend_table(n, binomial_check_limit=0)
    tol = mpmath.mpf(10) ** -40 if tol is None else tol
    with mpmath.workdps(prec + 15):
        res = abs(rat_to_mpf(apery_ratio(n, table), prec) - apery_constant(prec))
    return CheckResult("apery_limit", "B_n/s_n -> (7/32) zeta(3)", bool(res < tol),
                       params={"n": n, "prec": prec}, residual=res, tolerance=tol)


def check_error_ratio(lo: int = 30, hi: int = 60, table: SeqTable | None = None,
                      rel: float = 0.2) -> CheckResult:
    """Successive error ratios of B_n/s_n within ``rel`` of 17 - 12 sqrt 2."""
    if table is None or table.n_max < hi:
        table = extend_table(hi, binomial_check_limit=0)
    wp = int(1.6 * hi) + 30
    ratios = successive_errors(table, lo, hi, wp)
    with mpmath.workdps(wp):
        rho = QuadRat(17, -12).to_mpf(wp)
        worst = max(abs(r / rho - 1) for r in ratios)
    return CheckResult("apery_error_ratio", "empirical convergence rate t0/t1 = 17 - 12 sqrt 2",
                       bool(worst < rel), params={"lo": lo, "hi": hi}, residual=worst,
                       tolerance=rel,
                       details={"min_ratio": min(ratios), "max_ratio": max(ratios),
                                "expected": rho})


def check_growth(table: SeqTable, prec: int = 50) -> CheckResult:
    """s_{n+1}/s_n approaches 1/t0 = 12 + 8 sqrt 2 (gap shrinks from n/2 to n)."""
    n = table.n_max
    with mpmath.workdps(prec + 15):
        inv_t0 = (QuadRat(1) / T0).to_mpf(prec)
        gap_half = abs(mpmath.mpf(table.s[n // 2]) / table.s[n // 2 - 1] - inv_t0)
        gap_full = abs(mpmath.mpf(table.s[n]) / table.s[n - 1] - inv_t0)
    ratios = [table.B[k] / table.s[k] for k in range(9, n + 1)]
    steps = [abs(b - a) for a, b in zip(ratios, ratios[1:])]
    monotone = all(b < a for a, b in zip(steps, steps[1:]))
    return CheckResult("growth", "growth rate s_{n+1}/s_n -> 1/t0 = 12 + 8 sqrt 2",
                       bool(gap_full < gap_half and monotone), params={"n_max": n},
                       residual=gap_full,
                       details={"gap_at_half": gap_half, "inverse_t0": inv_t0})
