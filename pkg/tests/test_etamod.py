from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apery8 import etamod
from apery8.etamod import (T_QUOTIENT, Y_QUOTIENT, EtaQuotient, FractionalExponentError,
                           build_g8, e4_series, eta_qexp, g8_coefficient, g8_coefficients,
                           ligozat_orders, sigma3, sturm_bound, t_series, Y_series)


# -- oracle: Euler's pentagonal-number theorem ---------------------------------

def pentagonal(n):
    """prod (1 - q^k) below q^n as sum (-1)^k q^{k(3k-1)/2}."""
    c = [0] * n
    k = 0
    while True:
        hit = False
        for j in (k, -k) if k else (0,):
            e = j * (3 * j - 1) // 2
            if e < n:
                c[e] += (-1) ** (abs(j) % 2)
                hit = True
        if not hit:
            return c
        k += 1


def mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        for j in range(n - i):
            out[i + j] += x * b[j]
    return out


def inv(a, n):
    out = [Fraction(0)] * n
    out[0] = Fraction(1, a[0])
    for k in range(1, n):
        out[k] = -sum(a[j] * out[k - j] for j in range(1, k + 1)) / a[0]
    return out


def dilate(a, m, n):
    out = [0] * n
    for i, x in enumerate(a):
        if i * m < n:
            out[i * m] = x
    return out


def oracle_quotient(exps, n, shift):
    """prod_m (prod_k (1 - q^{mk}))^{e_m}, shifted by q^shift."""
    base = pentagonal(n)
    acc = [1] + [0] * (n - 1)
    for m, e in exps.items():
        f = dilate(base, m, n)
        if e < 0:
            f = inv(f, n)
        for _ in range(abs(e)):
            acc = mul(acc, f, n)
    return ([0] * shift + acc)[:n]


def test_euler_product_matches_pentagonal():
    assert etamod._euler_product_power(1, 1, 60) == pentagonal(60)
    assert pentagonal(8) == [1, -1, -1, 0, 0, 1, 0, 1]


@pytest.mark.parametrize("m,e", [(1, 3), (2, -2), (4, 5), (8, -4)])
def test_euler_product_powers(m, e):
    n = 40
    assert etamod._euler_product_power(m, e, n) == oracle_quotient({m: e}, n, 0)


def test_t_head():
    t = t_series(7)
    assert [t[n] for n in range(7)] == [0, 1, -8, 28, -64, 142, -352]


def test_Y_head():
    Y = Y_series(7)
    assert [Y[n] for n in range(7)] == [1, 4, 8, 16, 24, 24, 32]


def test_t_and_Y_against_oracle():
    n = 50
    t = t_series(n)
    Y = Y_series(n)
    assert [t[k] for k in range(n)] == oracle_quotient({1: 8, 2: -8, 4: -8, 8: 8}, n, 1)
    assert [Y[k] for k in range(n)] == oracle_quotient({1: -4, 2: 6, 4: 6, 8: -4}, n, 0)


def test_fractional_exponent_rejected():
    with pytest.raises(FractionalExponentError):
        eta_qexp(EtaQuotient.from_exponents(1, {1: 1}), 5)


def test_eta_quotient_validation():
    with pytest.raises(ValueError):
        EtaQuotient.from_exponents(8, {3: 1})


def test_weights():
    assert T_QUOTIENT.weight == 0 and Y_QUOTIENT.weight == 2
    assert T_QUOTIENT.leading_exponent == 1 and Y_QUOTIENT.leading_exponent == 0


# -- cusps -----------------------------------------------------------------

def test_ligozat_orders():
    assert ligozat_orders(T_QUOTIENT).as_tuple() == (1, 1, -1, -1)
    assert ligozat_orders(Y_QUOTIENT).as_tuple() == (0, 0, 1, 1)


def test_ligozat_delta_level_one():
    delta = EtaQuotient.from_exponents(1, {1: 24})
    assert ligozat_orders(delta).as_tuple() == (1,)


def test_valence_totals():
    idx = etamod.gamma0_index(8)
    assert idx == 12
    assert etamod.valence_total(ligozat_orders(T_QUOTIENT)) == 0
    assert etamod.valence_total(ligozat_orders(Y_QUOTIENT)) == Y_QUOTIENT.weight * idx / 12


def test_cusp_widths():
    assert [etamod.cusp_width(8, d) for d in etamod.cusp_denominators(8)] == [1, 8, 2, 1]


@pytest.mark.parametrize("N,k,b", [(8, 4, 4), (1, 12, 1), (8, 2, 2)])
def test_sturm(N, k, b):
    assert sturm_bound(N, k) == b


def test_sturm_rejects_odd_weight():
    with pytest.raises(ValueError):
        sturm_bound(8, 3)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 2000))
def test_divisors_and_factors(n):
    assert etamod.divisors(n) == [d for d in range(1, n + 1) if n % d == 0]
    prod = 1
    for p in etamod.prime_factors(n):
        assert all(p % q for q in range(2, p))
        while n % (prod * p) == 0 and prod * p <= n:
            prod *= p
    assert prod == n


# -- g8 ---------------------------------------------------------------------------

def test_g8_head():
    assert g8_coefficients(7) == [0, 1, -12, 28, -32, 126, -336]
    assert g8_coefficient(8) == -256


def test_g8_sources_agree():
    assert build_g8(300).first_mismatch(etamod.g8_from_e4(300)) is None


def test_e4_head():
    e4 = e4_series(4)
    assert [e4[n] for n in range(4)] == [1, 240, 2160, 6720]


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 60), st.integers(1, 60))
def test_g8_multiplicative(m, n):
    from math import gcd
    if gcd(m, n) == 1:
        assert g8_coefficient(m * n) == g8_coefficient(m) * g8_coefficient(n)


def test_g8_equals_Y_Dt():
    n = 80
    t = [k * c for k, c in enumerate(oracle_quotient({1: 8, 2: -8, 4: -8, 8: 8}, n, 1))]
    Y = oracle_quotient({1: -4, 2: 6, 4: 6, 8: -4}, n, 0)
    assert mul(Y, t, n) == g8_coefficients(n)


def test_sigma3():
    assert [sigma3(n) for n in range(1, 7)] == [1, 9, 28, 73, 126, 252]


# -- exact identity checks ---------------------------------------------------

@pytest.mark.parametrize("order", [5, 60])
def test_identity_checks(order):
    assert etamod.check_wronskian(order)
    assert etamod.check_phi(order)
    assert etamod.check_parametrizations(order)
    assert etamod.check_g8_sources(order)


def test_wronskian_heads():
    r = etamod.check_wronskian(5)
    assert r.details["lhs_head"] == r.details["rhs_head"] == [1, -16, 48, 64, 624]


def test_phi_head():
    r = etamod.check_phi(7)
    assert r.details["phi_head"] == [0, 1, -12, 28, -32, 126, -336]


def test_parametrization_heads():
    r = etamod.check_parametrizations(7)
    assert r.details["A_of_t_head"] == [1, 4, 8, 16, 24, 24, 32]
    assert r.details["B_of_t_head"][:3] == [0, 1, Fraction(5, 2)]


def test_cusp_and_sturm_checks():
    assert etamod.check_cusp_orders()
    assert etamod.check_sturm()
