"""Numeric checks of the Fricke transformation laws around tau* = i/(2 sqrt 2)."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mpc, mpf

from .apreal import (GUARD, E_numeric, E_prime_numeric, F_eval, Y_numeric, Y_prime_numeric,
                     apery_constant, const_zeta3, fricke, g8_numeric, t_numeric, tau_on_geodesic,
                     tau_star, tolerance)
from .checks import CheckResult
from .seqs import T0

DEFAULT_SAMPLES = ("1/2i", "i", "3/10+7/10i", "1/5+3/5i", "tau*", "1/4+3/4i")
DEFAULT_Y = ("1/3", "1/2", "1", "2", "3", "5")


def parse_tau(label: str, prec: int):
    """Turn a label like ``"3/10+7/10i"``, ``"i"`` or ``"tau*"`` into an mpc."""
    text = label.replace(" ", "")
    if text in ("tau*", "tau_star"):
        return tau_star(prec)
    if not text.endswith("i"):
        raise ValueError(f"cannot parse sample point {label!r}")
    body = text[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut > 0:
        re_part, im_part = body[:cut], body[cut:]
    else:
        re_part, im_part = "0", body
    if im_part in ("", "+"):
        im_part = "1"
    elif im_part == "-":
        im_part = "-1"
    re_q, im_q = Fraction(re_part), Fraction(im_part)
    with mpmath.workdps(prec + GUARD):
        return mpc(mpf(re_q.numerator) / re_q.denominator, mpf(im_q.numerator) / im_q.denominator)


def random_samples(seed: int, count: int = 3) -> tuple[str, ...]:
    """Reproducible extra sample points with Re in [-1/2, 1/2], Im in [3/10, 6/5]."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        re = Fraction(rng.randint(-500, 500), 1000)
        im = Fraction(rng.randint(300, 1200), 1000)
        out.append(f"{re}+{im}i")
    return tuple(out)


@dataclass
class FrickeCheckConfig:
    sample_points: tuple[str, ...] = DEFAULT_SAMPLES
    prec: int = 50
    tolerance: object = None

    def __post_init__(self):
        if self.tolerance is None:
            self.tolerance = tolerance(self.prec)
        for label in self.sample_points:
            tau = parse_tau(label, self.prec)
            if tau.imag < mpf("0.1"):
                raise ValueError(f"sample {label} has Im(tau) < 0.1")


def _sweep(name: str, anchor: str, cfg: FrickeCheckConfig, residual_fn) -> CheckResult:
    residuals = {}
    with mpmath.workdps(cfg.prec + GUARD):
        for label in cfg.sample_points:
            tau = parse_tau(label, cfg.prec)
            residuals[label] = abs(residual_fn(tau, cfg.prec))
        worst = max(residuals, key=lambda k: residuals[k])
        r = residuals[worst]
    return CheckResult(name, anchor, bool(r < cfg.tolerance), params={"prec": cfg.prec},
                       residual=r, tolerance=cfg.tolerance,
                       details={"worst": worst, "per_sample": residuals})


def t_invariance_residual(tau, prec):
    return t_numeric(fricke(tau, prec), prec) - t_numeric(tau, prec)


def Y_fricke_residual(tau, prec):
    return Y_numeric(fricke(tau, prec), prec) + 8 * tau ** 2 * Y_numeric(tau, prec)


def g8_fricke_residual(tau, prec):
    # (g8|_4 W8)(tau) = 8^2 (8 tau)^-4 g8(W8 tau)
    return 64 * (8 * tau) ** -4 * g8_numeric(fricke(tau, prec), prec) + g8_numeric(tau, prec)


def period_polynomial_residual(tau, prec):
    lhs = 8 * tau ** 2 * E_numeric(fricke(tau, prec), prec) + E_numeric(tau, prec)
    return lhs - apery_constant(prec) * (8 * tau ** 2 + 1)


def check_t_invariance(cfg: FrickeCheckConfig | None = None) -> CheckResult:
    return _sweep("t_fricke_invariance", "Fricke invariance t(W8 tau) = t(tau)",
                  cfg or FrickeCheckConfig(), t_invariance_residual)


def check_Y_fricke(cfg: FrickeCheckConfig | None = None) -> CheckResult:
    return _sweep("Y_fricke", "Y(W8 tau) = -8 tau^2 Y(tau)",
                  cfg or FrickeCheckConfig(), Y_fricke_residual)


def check_g8_fricke(cfg: FrickeCheckConfig | None = None) -> CheckResult:
    return _sweep("g8_fricke", "g8|_4 W8 = -g8",
                  cfg or FrickeCheckConfig(), g8_fricke_residual)


def check_period_polynomial(cfg: FrickeCheckConfig | None = None) -> CheckResult:
    return _sweep("period_polynomial", "period polynomial E|_-2 W8 + E = (7/32) zeta(3) (8 tau^2 + 1)",
                  cfg or FrickeCheckConfig(), period_polynomial_residual)


def F_residual(y, prec):
    c = apery_constant(prec)
    return F_eval(y, prec) - y ** 2 * F_eval(1 / y, prec) - c * (1 - y ** 2)


def _as_mpf(y, prec):
    with mpmath.workdps(prec + GUARD):
        if isinstance(y, str):
            y = Fraction(y)
        if isinstance(y, Fraction):
            return mpf(y.numerator) / y.denominator
        return mpf(y)


def check_F_functional(y_samples=DEFAULT_Y, prec: int = 50) -> CheckResult:
    """F(y) - y^2 F(1/y) = (7/32) zeta(3) (1 - y^2), plus R(1/y) = -y^-2 R(y)."""
    tol = tolerance(prec)
    residuals, antisym = {}, {}
    with mpmath.workdps(prec + GUARD):
        for label in y_samples:
            y = _as_mpf(label, prec)
            if y <= 0:
                raise ValueError("y samples must be positive")
            r = F_residual(y, prec)
            r_inv = F_residual(1 / y, prec)
            residuals[str(label)] = abs(r)
            antisym[str(label)] = abs(r_inv + r / y ** 2)
        worst = max(residuals, key=lambda k: residuals[k])
        ok = residuals[worst] < tol and max(antisym.values()) < tol
    return CheckResult("F_functional", "F(y) - y^2 F(1/y) = (7/32) zeta(3) (1 - y^2)",
                       bool(ok), params={"prec": prec}, residual=residuals[worst], tolerance=tol,
                       details={"worst": worst, "per_sample": residuals, "antisymmetry": antisym})


def check_geodesic_consistency(y_samples=DEFAULT_Y, prec: int = 50) -> CheckResult:
    """Period-polynomial residual at tau(y) equals the F residual at y."""
    tol = tolerance(prec)
    gaps = {}
    with mpmath.workdps(prec + GUARD):
        for label in y_samples:
            y = _as_mpf(label, prec)
            gaps[str(label)] = abs(period_polynomial_residual(tau_on_geodesic(y, prec), prec)
                                   - F_residual(y, prec))
        worst = max(gaps, key=lambda k: gaps[k])
    return CheckResult("geodesic_consistency", "period polynomial on the geodesic tau(y) = iy/(2 sqrt 2)",
                       bool(gaps[worst] < tol), params={"prec": prec}, residual=gaps[worst],
                       tolerance=tol, details={"per_sample": gaps})


def check_derivative_identities(prec: int = 50) -> CheckResult:
    """E(t*) + E'(t*)/(2i sqrt2) = (7/32) zeta(3) and Y'(t*) = 2i sqrt2 Y(t*)."""
    if prec < 30:
        raise ValueError("prec must be at least 30")
    tol = tolerance(prec)
    with mpmath.workdps(prec + GUARD):
        ts = tau_star(prec)
        k = 2j * mpmath.sqrt(2)
        E, Ep = E_numeric(ts, prec), E_prime_numeric(ts, prec)
        Y, Yp = Y_numeric(ts, prec), Y_prime_numeric(ts, prec)
        r_E = abs(E + Ep / k - apery_constant(prec))
        r_Y = abs(Yp - k * Y)
        im_E = abs(E.imag)
        # central differences as a coarse independent cross-check
        h = mpf(10) ** (-(prec // 3))
        fd_E = (E_numeric(ts + h, prec) - E_numeric(ts - h, prec)) / (2 * h)
        fd_Y = (Y_numeric(ts + h, prec) - Y_numeric(ts - h, prec)) / (2 * h)
        fd_tol = mpf(10) ** (-(prec // 3) + 3)
        fd_gap = max(abs(fd_E - Ep), abs(fd_Y - Yp))
        residual = max(r_E, r_Y, im_E)
    ok = residual < tol and fd_gap < fd_tol
    return CheckResult("derivative_identities", "E + E'/(2i sqrt 2) = (7/32) zeta(3) and Y' = 2i sqrt 2 Y at tau*", bool(ok),
                       params={"prec": prec}, residual=residual, tolerance=tol,
                       details={"E_identity": r_E, "Y_identity": r_Y, "Im_E": im_E,
                                "finite_difference_gap": fd_gap})


def t_fixed_point_value(prec: int = 50):
    """t(tau*) numerically, asserted equal to (3 - 2 sqrt 2)/4."""
    if prec < 20:
        raise ValueError("prec must be at least 20")
    with mpmath.workdps(prec + GUARD):
        val = t_numeric(tau_star(prec), prec)
        gap = abs(val - T0.to_mpf(prec))
        if gap >= tolerance(prec) or abs(val.imag) >= tolerance(prec):
            raise AssertionError(f"t(tau*) differs from (3-2sqrt2)/4 by {mpmath.nstr(gap, 5)}")
        return val.real


def check_t0(prec: int = 50) -> CheckResult:
    tol = tolerance(prec)
    with mpmath.workdps(prec + GUARD):
        val = t_numeric(tau_star(prec), prec)
        gap = abs(val - T0.to_mpf(prec))
        ok = gap < tol and 0 < val.real < 1
    return CheckResult("t0_value", "t(tau*) = (3 - 2 sqrt 2)/4", bool(ok),
                       params={"prec": prec}, residual=gap, tolerance=tol,
                       details={"t_tau_star": val.real})


# ---------------------------------------------------------------------------
# L-values from the Euler factor at 2
# ---------------------------------------------------------------------------

EULER_FACTOR = (1, -21, 84, -64)  # in x = 2^-s


def euler_factor_product() -> tuple[int, ...]:
    """Coefficients of (1 - x)(1 - 4x)(1 - 16x)."""
    out = [1]
    for c in (1, 4, 16):
        nxt = out + [0]
        for i, v in enumerate(out):
            nxt[i + 1] -= c * v
        out = nxt
    return tuple(out)


def euler_factor(s: int) -> Fraction:
    x = Fraction(1, 2 ** s) if s >= 0 else Fraction(2 ** -s)
    return sum(c * x ** i for i, c in enumerate(EULER_FACTOR))


def l_value_3() -> Fraction:
    """L(g8, 3) / zeta(3) = zeta(0) * factor(3), with zeta(0) = -1/2."""
    return Fraction(-1, 2) * euler_factor(3)


def l_value_1(prec: int = 50):
    """L(g8, 1) as the s -> 1 limit of zeta(s) zeta(s-3) * factor(s).

    zeta(s) has residue 1 and zeta(s-3) vanishes simply, so the limit is
    factor(1) * zeta'(-2).  Returns ``(closed, limit)``: the former from
    the exact factor and zeta'(-2), the latter from symmetric evaluation
    at s = 1 +- h.
    """
    with mpmath.workdps(2 * prec + GUARD):
        closed = mpf(euler_factor(1).numerator) / euler_factor(1).denominator \
            * mpmath.zeta(-2, derivative=1)
        h = mpf(10) ** (-(prec // 2 + 5))

        def f(s):
            x = mpf(2) ** -s
            return mpmath.zeta(s) * mpmath.zeta(s - 3) * (1 - 21 * x + 84 * x ** 2 - 64 * x ** 3)

        limit = (f(1 + h) + f(1 - h)) / 2
    return closed, limit


def check_l_values(prec: int = 50) -> CheckResult:
    tol = mpf(10) ** (-40) if prec >= 50 else tolerance(prec)
    poly_ok = euler_factor_product() == EULER_FACTOR
    l3 = l_value_3()
    l2_factor = euler_factor(2)
    with mpmath.workdps(prec + GUARD):
        z3 = const_zeta3(prec)
        closed, limit = l_value_1(prec)
        target = -7 * z3 / (8 * mpmath.pi ** 2)
        r1 = max(abs(closed - target), abs(limit - target))
    ok = poly_ok and l3 == Fraction(7, 32) and l2_factor == 0 and r1 < tol
    return CheckResult("l_values", "Euler factor at 2 and L(g8, s) at s = 1, 2, 3", bool(ok),
                       params={"prec": prec}, residual=r1, tolerance=tol,
                       details={"euler_product": list(euler_factor_product()),
                                "L3_over_zeta3": l3, "factor_at_2": l2_factor,
                                "L1": closed})


def check_zeta3(prec: int = 50) -> CheckResult:
    from .apreal import zeta3_apery, zeta3_az

    a, b = zeta3_apery(prec), zeta3_az(prec)
    tol = mpf(10) ** (-prec)
    with mpmath.workdps(prec + GUARD):
        gap = abs(a - b)
    return CheckResult("zeta3_dual_source", "zeta(3) from two independent series", bool(gap < tol),
                       params={"prec": prec}, residual=gap, tolerance=tol,
                       details={"zeta3": a})


@dataclass
class NumericSuite:
    cfg: FrickeCheckConfig = field(default_factory=FrickeCheckConfig)
    y_samples: tuple = DEFAULT_Y

    def run(self) -> list[CheckResult]:
        p = self.cfg.prec
        return [
            check_zeta3(p),
            check_l_values(p),
            check_t_invariance(self.cfg),
            check_Y_fricke(self.cfg),
            check_g8_fricke(self.cfg),
            check_period_polynomial(self.cfg),
            check_F_functional(self.y_samples, p),
            check_geodesic_consistency(self.y_samples, p),
            check_derivative_identities(p),
            check_t0(p),
        ]
