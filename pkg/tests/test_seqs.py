from fractions import Fraction

import mpmath
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from apery8 import seqs
from apery8.exactq import QSeries, QuadRat
from apery8.seqs import (T0, apery_ratio, extend_table, growth_diagnostics, s_binomial)


@pytest.fixture(scope="module")
def table():
    return extend_table(300, binomial_check_limit=0)


def test_s_head():
    assert [s_binomial(n) for n in range(5)] == [1, 4, 40, 544, 8536]


def test_B_head(table):
    assert table.B[:4] == [0, 1, Fraction(21, 2), Fraction(3862, 27)]
    # 27 B_3 = 380 B_2 - 128 B_1
    assert 27 * table.B[3] == 380 * table.B[2] - 128 * table.B[1]


def test_binomial_matches_recurrence(table):
    assert all(s_binomial(n) == table.s[n] for n in range(0, 201))


def test_integrality(table):
    from math import factorial
    for n in range(300):
        val = factorial(n + 1) ** 3 * table.B[n + 1] / 4 ** n
        assert val.denominator == 1 and val == table.Bnorm[n]


def test_s_positive_and_increasing(table):
    assert all(0 < a < b for a, b in zip(table.s[1:], table.s[2:]))


def test_apery_ratio_small():
    assert apery_ratio(1) == Fraction(1, 4)
    assert apery_ratio(2) == Fraction(21, 80)
    with pytest.raises(ValueError):
        apery_ratio(0)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 120))
def test_ratios_increase_monotonically(n):
    assert apery_ratio(n) < apery_ratio(n + 1)


# -- ODEs --------------------------------------------------------------------

def test_theta_operator_on_A_and_B(table):
    order = 120
    LA = seqs.apply_theta_operator(QSeries(table.s[:order], 0, order))
    LB = seqs.apply_theta_operator(QSeries(table.B[:order], 0, order))
    assert LA.is_zero()
    assert LB.first_mismatch(QSeries([0, 1], 0, order)) is None


def test_theta_operator_on_one():
    out = seqs.apply_theta_operator(QSeries([1], 0, 4))
    assert [out[n] for n in range(3)] == [0, -4, 16]


def test_ordinary_operator_on_one():
    out = seqs.apply_ordinary_operator(QSeries([1], 0, 6))
    assert [out[n] for n in range(3)] == [-4, 16, 0]


def test_ode_checks(table):
    assert seqs.check_theta_ode(200, table)
    assert seqs.check_ordinary_ode(200, table)


def test_ode_check_detects_corruption():
    bad = extend_table(40, binomial_check_limit=0)
    bad.s[17] += 1
    r = seqs.check_theta_ode(30, bad)
    assert not r and r.first_mismatch == 17


# -- indicial analysis ----------------------------------------------------------

def sympy_indicial():
    """Frobenius at x = z - t0 on x^r, rescaled to y = eps^r with z = t0(1 - eps)."""
    z, r = sp.symbols("z r")
    t0 = (3 - 2 * sp.sqrt(2)) / 4
    p3 = z ** 2 * (16 * z ** 2 - 24 * z + 1)
    p2 = 3 * z * (32 * z ** 2 - 36 * z + 1)
    assert sp.simplify(p3.subs(z, t0)) == 0
    lead3 = sp.diff(p3, z).subs(z, t0)
    lead2 = p2.subs(z, t0)
    return r, sp.expand(sp.radsimp((lead3 * r * (r - 1) * (r - 2) + lead2 * r * (r - 1)) / t0 ** 2))


def test_indicial_matches_sympy():
    r, expr = sympy_indicial()
    assert sp.simplify(expr - (-8 * sp.sqrt(2)) * r * (2 * r - 1) * (r - 1)) == 0
    _, ind = seqs.indicial_polynomial()
    poly = sp.Poly(expr, r)
    for k, c in enumerate(ind):
        want = sp.nsimplify(poly.coeff_monomial(r ** k))
        got = sp.Rational(c.a.numerator, c.a.denominator) + \
            sp.Rational(c.b.numerator, c.b.denominator) * sp.sqrt(2)
        assert sp.simplify(want - got) == 0


def test_indicial_roots():
    assert seqs.indicial_at_t0() == [QuadRat(0), QuadRat(Fraction(1, 2)), QuadRat(1)]
    top, _ = seqs.indicial_polynomial()
    assert all(c == 0 for c in top)


def test_indicial_value():
    assert seqs.indicial_value(2) == QuadRat(0, -48)
    assert seqs.indicial_value(Fraction(1, 2)) == QuadRat(0)


def test_indicial_check():
    assert seqs.check_indicial()


def test_t0_is_root():
    assert 16 * T0 * T0 - 24 * T0 + 1 == QuadRat(0)
    assert T0 * seqs.T1 == QuadRat(Fraction(1, 16))


# -- limits and growth -------------------------------------------------------------

def test_apery_limit(table):
    r = seqs.check_apery_limit(60, 60, table)
    assert r and r.residual < mpmath.mpf(10) ** -40


def test_apery_limit_oracle(table):
    with mpmath.workdps(80):
        err = abs(mpmath.mpf(table.B[60].numerator) / table.B[60].denominator / table.s[60]
                  - mpmath.mpf(7) / 32 * mpmath.zeta(3))
    assert err < mpmath.mpf(10) ** -40


def test_error_ratio(table):
    assert seqs.check_error_ratio(30, 60, table)


def test_growth_diagnostics(table):
    g = growth_diagnostics(100, 50, table)
    with mpmath.workdps(40):
        rate = 17 - 12 * mpmath.sqrt(2)
        assert all(abs(x / rate - 1) < 0.01 for x in g.error_ratios[-20:])
        assert g.growth_gap < 0.5
        a, b, c = g.alpha_estimates
        assert abs(c / b - 1) < abs(b / a - 1)


def test_growth_diagnostics_rejects_small_n():
    with pytest.raises(ValueError):
        growth_diagnostics(20)


def test_growth_check(table):
    assert seqs.check_growth(table, 50)
