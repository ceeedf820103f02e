"""Expansions and identities of the Gamma0(2) modular objects."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vvmf2.errors import NotAFormError
from vvmf2.forms import (
    eisenstein_E2,
    eisenstein_E4,
    eta_pow,
    eta_tail_coeffs,
    form_monomial,
    g_parity_form,
    g_slash_S,
    hauptmodul,
    identity_suite,
    jacobi_theta,
    modular_D,
    monomial_basis,
    monomial_coordinates,
    sigma,
    theta4_and_E,
    weight2_G,
)
from vvmf2.qseries import PureQSeries, equal_through


def divisor_sum(n, power=1):
    return sum(d**power for d in range(1, n + 1) if n % d == 0)


def test_sigma_against_enumeration():
    for n in range(1, 60):
        assert sigma(n) == divisor_sum(n)
        assert sigma(n, 3) == divisor_sum(n, 3)


def test_E2_coefficients():
    s = eisenstein_E2(6).series
    assert s.coeff(0) == 1
    assert s.coeff(1) == -24
    assert [s.coeff(n) for n in (2, 3, 4)] == [-72, -96, -168]


def test_E4_coefficients():
    s = eisenstein_E4(4).series
    assert s.coeff(1) == 240
    assert s.coeff(2) == 2160
    assert s.coeff(3) == 6720


def test_G_coefficients():
    s = weight2_G(5).series
    assert [s.coeff(n) for n in range(4)] == [1, 24, 24, 96]
    assert s.coeff(4) == 24  # 24 sigma(4) - 48 sigma(2)


def test_G_parity_form_agreement_deep():
    assert equal_through(weight2_G(500).series, g_parity_form(500), 500)


def test_eta_powers():
    eta2 = eta_pow(2, 8).series
    assert eta2.lead == Fraction(1, 12)
    assert eta2.coeff(Fraction(1, 12)) == 1
    assert eta2.coeff(Fraction(13, 12)) == -2
    assert eta_pow(0, 5).series.coeff(0) == 1
    prod = eta_pow(-2, 8).series * eta2
    assert equal_through(prod, PureQSeries.constant(1, 8), 7)
    with pytest.raises(ValueError):
        eta_pow(3, 5)
    tail = eta_tail_coeffs(2, 6)
    assert tail[0] == 1 and all(c.denominator == 1 for c in tail)


def test_hauptmodul_expansion():
    K, J = hauptmodul(6)
    assert K.lead == -1 and K.coeff(-1) == 1
    assert K.coeff(0) == 40
    assert K.coeff(1) == 276
    assert J.coeff(-1) == Fraction(1, 64)
    # multiply-back oracle, independent of the division that produced K
    e4 = eisenstein_E4(8).series
    g = weight2_G(8).series
    assert equal_through(K * (e4 - g * g), 192 * (g * g), 6)


def test_modular_D_examples():
    for k in (-2, 0, 1, 6):
        eta2k = eta_pow(2 * k, 12).series
        res = modular_D(k, eta2k)
        assert res.is_zero
    g = weight2_G(12).series
    e4 = eisenstein_E4(12).series
    d2g = modular_D(2, g)
    assert equal_through(d2g, Fraction(1, 6) * e4 - Fraction(1, 3) * (g * g), 10)
    # the sign-flipped variant is genuinely different
    assert not equal_through(d2g, Fraction(-1, 6) * e4 - Fraction(1, 3) * (g * g), 10)
    assert modular_D(0, PureQSeries.constant(1, 5)).is_zero


def test_product_rule_for_modular_D():
    g = weight2_G(10).series
    e4 = eisenstein_E4(10).series
    lhs = modular_D(6, g * e4)
    rhs = g * modular_D(4, e4) + e4 * modular_D(2, g)
    assert equal_through(lhs, rhs, 9)


def test_identity_suite_passes():
    report = identity_suite(50)
    failed = [c.name for c in report.checks if not c.passed]
    assert not failed, failed
    assert report.all_passed


def test_identity_suite_requires_depth():
    with pytest.raises(ValueError):
        identity_suite(5)


def four_squares_count(n):
    count = 0
    import math

    bound = math.isqrt(n)
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            rem = n - a * a - b * b
            if rem < 0:
                continue
            for c in range(-bound, bound + 1):
                rem2 = rem - c * c
                if rem2 < 0:
                    continue
                d = math.isqrt(rem2)
                if d * d == rem2:
                    count += 2 if d else 1
    return count


def test_theta4_counts_four_squares():
    th4, _ = theta4_and_E(25)
    for n in range(1, 26):
        assert th4.coeff(n) == four_squares_count(n)


def test_theta4_and_eta_quotient_identity():
    th4, curly_e = theta4_and_E(60)
    assert th4.coeff(1) == 8
    assert th4.coeff(2) == 24
    g = weight2_G(60).series
    assert equal_through(g, th4 + 16 * curly_e, 60)


def test_jacobi_theta_transform_inputs():
    th = jacobi_theta(10)
    assert [th.coeff(n) for n in range(5)] == [1, 2, 0, 0, 2]


def test_g_slash_S():
    s = g_slash_S(4)
    assert s.coeff(0) == Fraction(-1, 2)
    assert s.step == Fraction(1, 4)
    # theta^4(tau/4) has constant term 1; the eta quotient has lead exponent 0
    th4_quarter = jacobi_theta(20).rescale(Fraction(1, 4)) ** 4
    assert th4_quarter.coeff(0) == 1
    quotient = eta_pow(8, 20).series.rescale(Fraction(1, 4)) * eta_pow(
        -4, 12
    ).series.rescale(Fraction(1, 2))
    assert quotient.lead == 0


def test_monomial_basis():
    assert monomial_basis(4) == [(2, 0), (0, 1)]
    assert monomial_basis(2) == [(1, 0)]
    assert monomial_basis(3) == []
    assert monomial_basis(-2) == []
    dims = [len(monomial_basis(k)) for k in range(0, 30, 2)]
    assert dims == sorted(dims)
    assert [len(monomial_basis(k)) for k in (0, 2, 4)] == [1, 1, 2]


def test_monomial_coordinates_examples():
    e4 = eisenstein_E4(10).series
    assert monomial_coordinates(e4, 4) == {(0, 1): 1}
    g = weight2_G(10).series
    combo = g * g + 2 * e4
    assert monomial_coordinates(combo, 4) == {(2, 0): 1, (0, 1): 2}
    with pytest.raises(NotAFormError):
        monomial_coordinates(eisenstein_E2(10).series, 2)
    with pytest.raises(NotAFormError):
        monomial_coordinates(e4, 0)


@given(
    st.lists(
        st.fractions(min_value=Fraction(-5), max_value=Fraction(5), max_denominator=4),
        min_size=1,
        max_size=4,
    ),
    st.integers(min_value=0, max_value=6).map(lambda k: 2 * k),
)
@settings(max_examples=40, deadline=None)
def test_monomial_coordinates_roundtrip(coeffs, k):
    basis = monomial_basis(k)
    if not basis:
        return
    coeffs = (coeffs * len(basis))[: len(basis)]
    combo = None
    for c, (a, b) in zip(coeffs, basis):
        term = form_monomial(a, b, len(basis) + 4) * c
        combo = term if combo is None else combo + term
    if combo.is_zero:
        return
    got = monomial_coordinates(combo, k)
    want = {ab: c for c, ab in zip(coeffs, basis) if c}
    assert {ab: c for ab, c in got.items() if c} == want


def test_g_slash_S_full_series_oracle():
    # independent route: the slashed series coincides with -(1/2) G(tau/2),
    # which the theta/eta construction never references
    gs = g_slash_S(25)
    g_half = weight2_G(52).series.rescale(Fraction(1, 2))
    assert equal_through(gs, Fraction(-1, 2) * g_half, 25)
