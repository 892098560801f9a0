"""
Fricke involution, numerically
==============================

Evaluate eta quotients at high precision and watch t, Y, g8 and the Eichler
integral E transform under tau -> -1/(8 tau).
"""
import mpmath

from apery8.apreal import E_numeric, apery_constant, fricke, t_numeric, tau_star
from apery8.fricke import (FrickeCheckConfig, NumericSuite, parse_tau,
                           period_polynomial_residual)

prec = 50
tau = parse_tau("3/10+7/10i", prec)
with mpmath.workdps(prec + 15):
    w = fricke(tau, prec)
    print("t(tau)    =", mpmath.nstr(t_numeric(tau, prec), 20))
    print("t(W8 tau) =", mpmath.nstr(t_numeric(w, prec), 20))

    # E fails to be invariant by exactly a quadratic period polynomial
    lhs = 8 * tau ** 2 * E_numeric(w, prec) + E_numeric(tau, prec)
    print("8 tau^2 E(W8 tau) + E(tau) =", mpmath.nstr(lhs, 20))
    print("(7/32) zeta(3) (8 tau^2+1) =", mpmath.nstr(apery_constant(prec) * (8 * tau ** 2 + 1), 20))
    print("residual:", mpmath.nstr(abs(period_polynomial_residual(tau, prec)), 3))

    # at the fixed point tau* the Hauptmodul takes the value t0
    print("t(tau*) =", mpmath.nstr(t_numeric(tau_star(prec), prec).real, 30))
    print("t0      =", mpmath.nstr((3 - 2 * mpmath.sqrt(2)) / 4, 30))

for r in NumericSuite(FrickeCheckConfig(prec=prec)).run():
    print(r.line())
