"""
Exact q-series identities at level 8
====================================

Build the Hauptmodul t and the weight-2 form Y as eta quotients, then check
that the generating function of s_n composed with t gives back Y.
"""
from apery8 import QSeries, extend_table
from apery8.etamod import (Y_series, build_g8, eichler_series, ligozat_orders,
                           T_QUOTIENT, Y_QUOTIENT, t_series)
from apery8.exactq import series_compose, series_theta

order = 12
t = t_series(order)
Y = Y_series(order)
print("t =", t)
print("Y =", Y)

# the cusp orders explain why t is a Hauptmodul: one simple zero, one simple pole
# on the Fricke quotient
print("ord t:", ligozat_orders(T_QUOTIENT).as_tuple())
print("ord Y:", ligozat_orders(Y_QUOTIENT).as_tuple())

# A(z) = sum s_n z^n, substituted z = t(q)
table = extend_table(order)
A = QSeries(table.s[:order], 0, order)
print("A(t) - Y =", series_compose(A, t) - Y)

# Y * Dt is the weight-4 newform g8
g8 = build_g8(order)
print("Y*Dt - g8 =", Y * series_theta(t) - g8)

# the companion B(z) composes to E*Y, where E is the Eichler integral of g8
B = QSeries(table.B[:order], 0, order)
print("B(t) - E*Y =", series_compose(B, t) - eichler_series(order) * Y)
