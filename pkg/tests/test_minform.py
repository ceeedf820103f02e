"""The minimal form: closed-form sequences against the series recursion."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vvmf2.errors import ConsistencyError, NotAFormError
from vvmf2.forms import form_monomial, hauptmodul, modular_D
from vvmf2.minform import (
    decompose,
    deriv_components,
    gauss_2f1,
    h_closed,
    h_frobenius,
    indicial,
    minimal_form,
    mlde_residual,
    seq_f,
    t_lists,
    tables_DC,
    weight_basis,
)
from vvmf2.params import ExponentData, params_from_exponents, seed_exponents
from vvmf2.qseries import PureQSeries, equal_through
from vvmf2.quadratic import QuadNum, gen_binomial, pochhammer

M2 = params_from_exponents(seed_exponents("m2"))
M5 = params_from_exponents(seed_exponents("m5"))
SQRT2 = QuadNum(Fraction(0), Fraction(1), 2)


def k0_two_instance():
    return params_from_exponents(
        ExponentData(2, Fraction(0), Fraction(1, 2), SQRT2, -SQRT2)
    )


def test_gauss_2f1_basics():
    assert gauss_2f1(SQRT2, SQRT2 + 1, Fraction(1, 2), 0) == 1
    for n in range(5):
        assert gauss_2f1(Fraction(1), Fraction(1), Fraction(1), n) == 1
    with pytest.raises(ZeroDivisionError):
        gauss_2f1(Fraction(1), Fraction(1), Fraction(-2), 3)


@given(
    st.fractions(min_value=Fraction(-4), max_value=Fraction(4), max_denominator=6),
    st.fractions(min_value=Fraction(-2), max_value=Fraction(2), max_denominator=4),
    st.integers(min_value=0, max_value=10),
)
@settings(max_examples=60)
def test_halving_identity(rat, surd, m):
    A = QuadNum(rat, surd, 2)
    lhs = pochhammer(A, m) * pochhammer(A + Fraction(1, 2), m)
    rhs = pochhammer(2 * A, 2 * m) / 4**m
    assert lhs == rhs


def test_tables():
    D, C = tables_DC(8)
    for k in range(9):
        assert D[k][k] == 1
        for s in range(k):
            assert D[k][s] == 0
    for t in range(1, 9):
        for d in range(t):
            assert C[t][d] == 0
    assert C[0][0] == 1 and all(C[0][d] == 0 for d in range(1, 9))
    assert C[1][1] == -40
    assert C[1][2] == 1324


def test_seq_f_spot_values():
    f, ft = seq_f(M2, 3)
    assert f[0] == 1 and ft[0] == 1
    # hand-evaluable pieces: g(1,0) and g(0,1)
    g10 = 16 * pochhammer(2 * M2.A, 2) / (Fraction(1, 2) * 1)
    g01 = gen_binomial(M2.r, 1) * (-1) * 64
    assert g10 == QuadNum(Fraction(256), Fraction(64), 2)
    assert g01 == QuadNum(Fraction(0), Fraction(-64), 2)
    assert f[1] == g10 + g01 == 256


def test_seq_f_requires_assumptions():
    bad = params_from_exponents(
        ExponentData(0, Fraction(0), Fraction(1, 2), Fraction(1, 4), Fraction(-1, 4))
    )
    with pytest.raises(ConsistencyError):
        seq_f(bad, 3)


def test_indicial_roots():
    for p in (M2, M5):
        assert indicial(p, p.l1) == 0
        assert indicial(p, p.l2) == 0
        assert indicial(p, p.l1 + 3) != 0


@pytest.mark.parametrize("params", [M2, M5], ids=["m2", "m5"])
def test_pipelines_agree(params):
    hc, hct = h_closed(params, 25)
    hf, hft = h_frobenius(params, 25)
    assert hc == hf
    assert hct == hft
    assert hc[1] == 256 if params is M2 else True


def test_h_by_direct_series_arithmetic():
    # third route: no tables, no recursion; plain truncated series algebra
    Kmax = 12
    p = M2
    K, _ = hauptmodul(Kmax + 2)
    kinv = K.inv()
    f, _ = seq_f(p, Kmax)
    total = PureQSeries.constant(1, len(kinv.coeffs))
    power = PureQSeries.constant(1, len(kinv.coeffs))
    for k in range(1, Kmax + 1):
        power = power * kinv
        total = total + power * f[k]
    one_plus_x = kinv.shifted(-1)
    direct = one_plus_x.pow_binomial(p.l1).shifted(p.l1) * total
    assert direct.lead == p.l1 and direct.coeff(p.l1) == 1
    h, _ = h_closed(p, Kmax)
    for n in range(Kmax + 1):
        assert direct.coeff(p.l1 + n) == h[n]


def test_h_by_direct_series_arithmetic_second_component():
    Kmax = 10
    p = M2
    K, _ = hauptmodul(Kmax + 2)
    kinv = K.inv()
    _, ft = seq_f(p, Kmax)
    total = PureQSeries.constant(1, len(kinv.coeffs))
    power = PureQSeries.constant(1, len(kinv.coeffs))
    for k in range(1, Kmax + 1):
        power = power * kinv
        total = total + power * ft[k]
    one_plus_x = kinv.shifted(-1)
    direct = one_plus_x.pow_binomial(p.l2).shifted(p.l2) * total
    _, ht = h_closed(p, Kmax)
    for n in range(Kmax + 1):
        assert direct.coeff(p.l2 + n) == ht[n]


@pytest.mark.parametrize("params", [M2, M5, k0_two_instance()], ids=["m2", "m5", "k0=2"])
def test_minimal_form_and_residual(params):
    mf = minimal_form(params, 15, "both")
    lead1 = Fraction(params.k0, 12) + params.l1
    lead2 = Fraction(params.k0, 12) + params.l2
    assert mf.comp1.coeff(lead1) == 1
    assert mf.comp2.coeff(lead2) == 1
    assert mlde_residual(params, mf.comp1).is_zero
    assert mlde_residual(params, mf.comp2).is_zero
    if params.k0 == 0:
        assert mf.tables.d == mf.tables.h
    else:
        assert mf.tables.d != mf.tables.h


def test_minimal_form_methods_match():
    a = minimal_form(M2, 10, "closed")
    b = minimal_form(M2, 10, "frobenius")
    assert a.tables.h == b.tables.h
    assert a.tables.d_tilde == b.tables.d_tilde
    with pytest.raises(ValueError):
        minimal_form(M2, 10, "numerology")


@pytest.mark.parametrize("params", [M2, k0_two_instance()], ids=["k0=0", "k0=2"])
def test_deriv_components(params):
    mf = minimal_form(params, 12, "both")
    d1, d2 = deriv_components(mf)  # raises PipelineMismatch if formula drifts
    t1, t2 = t_lists(mf)
    assert t1[0] == params.l1
    assert t2[0] == params.l2
    if params.k0 == 0:
        assert t1[1] == mf.tables.d[1] * (1 + params.l1) == 256
        lead2 = Fraction(params.k0, 12) + params.l2
        assert d2.coeff(lead2) == Fraction(1, 2)
    direct = modular_D(params.k0, mf.comp1)
    assert equal_through(direct, d1, Fraction(params.k0, 12) + params.l1 + 11)


def test_weight_basis_counts():
    mf = minimal_form(M2, 8, "both")
    at_k0 = weight_basis(mf, M2.k0)
    assert len(at_k0) == 1 and not at_k0[0].derivative
    assert weight_basis(mf, M2.k0 + 1) == []
    at_k0_4 = weight_basis(mf, M2.k0 + 4)
    assert len(at_k0_4) == 3
    labels = {b.label for b in at_k0_4}
    assert labels == {"G^2*E4^0*F'", "G^0*E4^1*F'", "G^1*E4^0*DF'"}


def test_decompose_trivial_and_roundtrip():
    mf = minimal_form(M2, 16, "both")
    d1, d2 = deriv_components(mf)
    m1, m2 = decompose(mf, mf.comp1, mf.comp2, M2.k0)
    assert m1.coeff(0) == 1 and m2.is_zero
    m1, m2 = decompose(mf, d1, d2, M2.k0 + 2)
    assert m1.is_zero and m2.coeff(0) == 1

    n = len(mf.comp1.coeffs) + 1
    m1_true = form_monomial(3, 0, n) + 2 * form_monomial(1, 1, n)
    m2_true = form_monomial(2, 0, n) - 5 * form_monomial(0, 1, n)
    z1 = m1_true * mf.comp1 + m2_true * d1
    z2 = m1_true * mf.comp2 + m2_true * d2
    r1, r2 = decompose(mf, z1, z2, M2.k0 + 6)
    for nn in range(int(r1.horizon)):
        assert r1.coeff(nn) == m1_true.coeff(nn)
    for nn in range(int(r2.horizon)):
        assert r2.coeff(nn) == m2_true.coeff(nn)


def test_decompose_rejects_outside_span():
    mf = minimal_form(M2, 12, "both")
    z1 = mf.comp1 + PureQSeries.make(M2.l1 + 3, [1] + [0] * 8)
    with pytest.raises(NotAFormError):
        decompose(mf, z1, mf.comp2, M2.k0)


def test_decompose_rejects_off_grid():
    mf = minimal_form(M2, 12, "both")
    shifted = mf.comp1.shifted(Fraction(1, 3))
    with pytest.raises(ConsistencyError):
        decompose(mf, shifted, mf.comp2, M2.k0)


def test_2f1_reformulation():
    # the hypergeometric coefficients at (A, 1/2+A, 1+A-B), rescaled by the
    # Hauptmodul normalization 64^m, are exactly the n = 0 slice of g
    A, B = M2.A, M2.B
    one_plus_diff = 1 + A - B
    for m in range(13):
        lhs = gauss_2f1(A, A + Fraction(1, 2), one_plus_diff, m) * 2 ** (6 * m)
        rhs = (
            2 ** (4 * m)
            * pochhammer(2 * A, 2 * m)
            / (pochhammer(one_plus_diff, m) * math.factorial(m))
        )
        assert lhs == rhs
    f, _ = seq_f(M2, 12)
    # subtracting the pure 2F1 slice leaves the binomial-tail contributions
    g_m0 = [
        gauss_2f1(A, A + Fraction(1, 2), one_plus_diff, m) * 2 ** (6 * m)
        for m in range(13)
    ]
    assert f[0] == g_m0[0]
    assert f[1] - g_m0[1] == gen_binomial(M2.r, 1) * (-64)


def test_sequence_values_live_in_the_field():
    mf = minimal_form(M2, 12, "both")
    for value in (*mf.tables.h, *mf.tables.d, *mf.tables.f):
        assert isinstance(value, (Fraction, QuadNum))
        if isinstance(value, QuadNum):
            assert value.M == 2
    # empirical and provable: h and d are rational (the recursion is rational)
    for value in (*mf.tables.h, *mf.tables.d):
        assert value == (value.conjugate() if isinstance(value, QuadNum) else value)


def test_negative_minimal_weight():
    params = params_from_exponents(
        ExponentData(-2, Fraction(0), Fraction(1, 2), SQRT2, -SQRT2)
    )
    mf = minimal_form(params, 10, "both")
    assert mf.comp1.lead == Fraction(-1, 6)
    assert mlde_residual(params, mf.comp1).is_zero
    assert mlde_residual(params, mf.comp2).is_zero
    deriv_components(mf)  # exact cross-check against the operator
