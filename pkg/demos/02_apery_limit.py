"""
The Apery limit B_n/s_n
=======================

Both sequences obey the same three-term recurrence. Their ratio tends to
(7/32) zeta(3), and each step gains a factor of about 17 - 12 sqrt 2.
"""
import mpmath

from apery8 import apery_ratio, extend_table
from apery8.apreal import apery_constant, rat_to_mpf
from apery8.seqs import growth_diagnostics

table = extend_table(80)
print("s_0..s_6:", table.s[:7])
print("B_0..B_4:", [str(b) for b in table.B[:5]])

prec = 130
with mpmath.workdps(prec + 15):
    target = apery_constant(prec)
    for n in (5, 10, 20, 40, 60, 80):
        err = rat_to_mpf(apery_ratio(n, table), prec) - target
        print(f"n={n:3d}  |B_n/s_n - 7 zeta(3)/32| = {mpmath.nstr(abs(err), 5)}")

diag = growth_diagnostics(80, 50, table)
print("successive error ratios (last 5):", [mpmath.nstr(r, 8) for r in diag.error_ratios[-5:]])
print("17 - 12 sqrt 2 =", mpmath.nstr(diag.expected_error_ratio, 8))
print("s_{n+1}/s_n at n = 80:", mpmath.nstr(diag.growth_ratio, 10),
      "(tends to 12 + 8 sqrt 2 =", mpmath.nstr(12 + 8 * mpmath.sqrt(2), 10), ")")
