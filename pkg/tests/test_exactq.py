from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apery8.exactq import (CompositionValuationError, DivisionByZeroSeries, QSeries, QuadRat,
                           series_add, series_compose, series_div, series_mul, series_pow_int,
                           series_theta)

T_HEAD = [0, 1, -8, 28, -64, 142, -352]
Y_HEAD = [1, 4, 8, 16, 24, 24, 32]
A_HEAD = [1, 4, 40, 544, 8536]


def S(cs, val=0, order=None):
    return QSeries(cs, val, order)


def coeffs(s, upto=None):
    return [s[n] for n in range(0, upto if upto is not None else s.order)]


# -- oracles ------------------------------------------------------------------

def naive_mul(a, b, n):
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j < n:
                out[i + j] += x * y
    return out


def naive_compose(outer, inner, n):
    """sum_k outer[k] * inner^k with repeated naive multiplication."""
    out = [Fraction(0)] * n
    power = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for c in outer:
        out = [o + c * p for o, p in zip(out, power)]
        power = naive_mul(power, inner, n)
    return out


# -- examples -------------------------------------------------------------------

def test_add_cancellation():
    assert coeffs(S([1, 1], order=5) + S([1, -1], order=5)) == [2, 0, 0, 0, 0]


def test_add_identity():
    A = S(A_HEAD)
    assert series_add(A, QSeries.zero(5)) == A


def test_add_t_and_Y():
    got = S(T_HEAD) + S(Y_HEAD)
    assert coeffs(got, 4) == [1, 5, 0, 44]


def test_mul_examples():
    assert coeffs(S([1, 1], order=4) * S([1, -1], order=4)) == [1, 0, -1, 0]
    A = S(A_HEAD)
    assert coeffs(A * A, 3) == [1, 8, 96]
    prod = S([1], 3, 20) * S([1], 5, 20)
    assert prod.valuation == 8 and prod[8] == 1


def test_mul_matches_naive():
    A = S(A_HEAD)
    assert coeffs(A * A) == naive_mul(A_HEAD, A_HEAD, 5)


def test_div_examples():
    assert coeffs(S([1, 0, -1], order=5) / S([1, -1], order=5), 3) == [1, 1, 0]
    assert coeffs(S([1], 2, 10) / S([1], 2, 10), 1) == [1]


def test_log_derivative_of_t():
    t = S(T_HEAD)
    logd = series_theta(t) / t
    # independent long division of D t / t, both shifted by q
    num = [n * c for n, c in enumerate(T_HEAD)][1:]
    den = T_HEAD[1:]
    q = []
    for n in range(len(num)):
        q.append(Fraction(num[n] - sum(q[k] * den[n - k] for k in range(n)), den[0]))
    assert coeffs(logd, 6) == q == [1, -8, -8, -32, 24, -48]
    # its square is the shared Wronskian expansion
    assert coeffs(logd * logd, 5) == [1, -16, 48, 64, 624]


def test_div_by_zero_series():
    with pytest.raises(DivisionByZeroSeries):
        series_div(S([1], order=4), QSeries.zero(4))


def test_pow_examples():
    assert coeffs(series_pow_int(S([1, -1], order=5), -1)) == [1, 1, 1, 1, 1]
    assert coeffs(series_pow_int(S([1, 1], order=5), 0), 1) == [1]
    assert coeffs(series_pow_int(S([1, -1], order=5), 8), 4) == [1, -8, 28, -56]


def test_theta_examples():
    assert series_theta(S([1], 5, 10))[5] == 5
    assert series_theta(S([7], order=4)).is_zero()
    assert coeffs(series_theta(S(T_HEAD)), 4) == [0, 1, -16, 84]


def test_compose_A_of_t():
    got = series_compose(S(A_HEAD), S(T_HEAD))
    assert coeffs(got) == Y_HEAD[:5]


def test_compose_identity():
    f = S(T_HEAD)
    assert coeffs(series_compose(S([0, 1], order=7), f)) == T_HEAD


def test_compose_B_of_t():
    B = S([0, 1, Fraction(21, 2)])
    got = series_compose(B, S(T_HEAD))
    assert coeffs(got, 3) == [0, 1, Fraction(5, 2)]


def test_compose_matches_naive():
    got = series_compose(S(A_HEAD), S(T_HEAD[:5]))
    assert coeffs(got) == naive_compose(A_HEAD, T_HEAD[:5], 5)


def test_compose_rejects_constant_term():
    with pytest.raises(CompositionValuationError):
        series_compose(S(A_HEAD), S([1, 1, 0]))


def test_order_propagation():
    a = S([1, 2, 3], order=3)
    b = S([1, 1, 1, 1, 1], order=5)
    assert (a + b).order == 3
    assert (a * b).order == 3
    assert (S([1], 2, 6) * b).order == 6  # q^2 * O(q^5) -> exact through q^6


def test_laurent_intermediate():
    inv = series_div(S([1], order=5), S(T_HEAD))
    assert inv.is_laurent and inv.valuation == -1
    back = inv * S(T_HEAD)
    assert back[0] == 1 and not back.is_laurent


# -- QuadRat ------------------------------------------------------------------

def test_quadrat_norm_and_inverse():
    t0 = QuadRat(Fraction(3, 4), Fraction(-1, 2))
    assert (t0 * t0.conjugate()).is_rational()
    assert t0.norm() == Fraction(1, 16)
    assert QuadRat(1) / t0 == QuadRat(12, 8)


def test_quadrat_embedding():
    import mpmath
    x = QuadRat(Fraction(3, 4), Fraction(-1, 2))
    v = x.to_mpf(40)
    with mpmath.workdps(60):
        direct = mpmath.mpf(3) / 4 - mpmath.sqrt(2) / 2
        assert abs(v - direct) < mpmath.mpf(10) ** -39


# -- properties ---------------------------------------------------------------

rats = st.fractions(min_value=-20, max_value=20, max_denominator=7)


def series_st(order=8):
    return st.lists(rats, min_size=order, max_size=order).map(lambda cs: QSeries(cs, 0, order))


def unit_series_st(order=8):
    return st.tuples(rats.filter(lambda x: x != 0), st.lists(rats, min_size=order - 1,
                                                           max_size=order - 1)
                     ).map(lambda p: QSeries([p[0], *p[1]], 0, order))


@settings(max_examples=60, deadline=None)
@given(series_st(), series_st(), series_st())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@settings(max_examples=60, deadline=None)
@given(series_st(), unit_series_st())
def test_div_inverts_mul(a, b):
    assert series_div(series_mul(a, b), b) == a


@settings(max_examples=40, deadline=None)
@given(unit_series_st(6), st.integers(-3, 3), st.integers(-3, 3))
def test_pow_additive(a, e1, e2):
    lhs = series_pow_int(a, e1 + e2)
    rhs = series_pow_int(a, e1) * series_pow_int(a, e2)
    assert lhs.first_mismatch(rhs) is None


@settings(max_examples=60, deadline=None)
@given(series_st(), series_st())
def test_theta_is_derivation(a, b):
    assert series_theta(a * b) == series_theta(a) * b + a * series_theta(b)


@settings(max_examples=60, deadline=None)
@given(rats, rats, rats, rats)
def test_quadrat_field_laws(a, b, c, d):
    x, y = QuadRat(a, b), QuadRat(c, d)
    assert (x * y).norm() == x.norm() * y.norm()
    if y.norm() != 0:
        assert (x / y) * y == x
