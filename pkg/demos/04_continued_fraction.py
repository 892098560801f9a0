"""
A polynomial continued fraction for 8/(7 zeta(3))
==================================================

The continuants of PCF((2n+1)(3n^2+3n+1), -n^6) are the sequences s and B
in disguise, so the convergents inherit the Apery limit.
"""
from math import factorial

import mpmath

from apery8 import APERY8_PCF, build_continuants, extend_table, pcf_value

pair = build_continuants(APERY8_PCF, 60)
print("P_0..P_4:", pair.P[:5])
print("Q_0..Q_4:", pair.Q[:5])

# P_n Q_{n-1} - Q_n P_{n-1} = -(n!)^6 at every step
n = 10
print("determinant at n=10:", pair.P[n] * pair.Q[n - 1] - pair.Q[n] * pair.P[n - 1],
      "vs", -factorial(n) ** 6)

# the bridge to s and B
table = extend_table(61)
print("P_5/Q_5 == s_6/(4 B_6):", pair.convergent(5) == table.s[6] / (4 * table.B[6]))

for n_max in (10, 20, 40, 60):
    val, res = pcf_value(APERY8_PCF, n_max, 50, pair)
    print(f"n={n_max:2d}  P/Q = {mpmath.nstr(val, 25)}  error = {mpmath.nstr(res, 3)}")
