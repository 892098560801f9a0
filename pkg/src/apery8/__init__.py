"""Exact and high-precision verification of the level-8 Apery limit.

B_n / s_n -> (7/32) zeta(3), and PCF((2n+1)(3n^2+3n+1), -n^6) = 8/(7 zeta(3)).
"""
from .exactq import QSeries, QuadRat
from .etamod import EtaQuotient, T_QUOTIENT, Y_QUOTIENT, eta_qexp, ligozat_orders, sturm_bound
from .seqs import apery_ratio, extend_table, s_binomial
from .pcf import APERY8_PCF, build_continuants, pcf_value

__version__ = "0.1.0"
