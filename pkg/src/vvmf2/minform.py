"""Two independent constructions of the normalized minimal-weight form.

The closed-form route evaluates the hypergeometric sequence formulas:
integer tables D(s,k) and C(t,d) coming from powers of the integral
Hauptmodul, the quadratic-field sequence f(k) built out of Pochhammer
symbols, and the double convolution producing h(K).  The independent
route runs a Frobenius power-series recursion directly on the weight-zero
differential equation.  ``minimal_form(..., method="both")`` insists the
two agree coefficient by coefficient; any disagreement is a bug, not
data, and raises ``PipelineMismatch``.

The minimal form and its modular derivative generate everything of
higher weight; ``weight_basis`` lists the monomial multiples and
``decompose`` inverts that construction exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, PipelineMismatch
from .forms import (
    eisenstein_E2,
    eisenstein_E4,
    eta_tail_coeffs,
    form_monomial,
    hauptmodul,
    modular_D,
    monomial_basis,
    monomial_coordinates,
    sigma,
    weight2_G,
)
from .params import InstanceParams, check_assumptions
from .qseries import PureQSeries, equal_through
from .quadratic import FieldElement, gen_binomial, pochhammer


def gauss_2f1(alpha, beta, gamma, n: int) -> FieldElement:
    """The n-th Taylor coefficient (alpha)_n (beta)_n / ((gamma)_n n!)."""
    if n < 0:
        raise ValueError("gauss_2f1 needs n >= 0")
    den = pochhammer(gamma, n)
    if not den:
        raise ZeroDivisionError(f"({gamma})_{n} vanishes")
    return pochhammer(alpha, n) * pochhammer(beta, n) / den / math.factorial(n)


def tables_DC(Kmax: int) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """Integer tables D[k][s] and C[t][d] for 0 <= s, d, t, k <= Kmax.

    D(s,k) is the q^s coefficient of the (-k)-th Hauptmodul power, C(t,d)
    the q^d coefficient of the t-th power of its normalized deviation
    from q^-1.  Non-integer entries signal a series bug upstream.
    """
    K, _ = hauptmodul(Kmax + 2)
    Kinv = K.inv()
    one = PureQSeries.constant(1, len(Kinv.coeffs))

    def integer_row(series: PureQSeries, low: int) -> tuple[int, ...]:
        row = []
        for s in range(Kmax + 1):
            c = series.coeff(s) if s >= low else Fraction(0)
            if c.denominator != 1:
                raise ArithmeticError(f"non-integer table entry {c} at q^{s}")
            row.append(int(c))
        return tuple(row)

    d_rows = [tuple([1] + [0] * Kmax)]
    power = one
    for k in range(1, Kmax + 1):
        power = power * Kinv
        d_rows.append(integer_row(power, k))

    x = Kinv.shifted(-1) - one
    c_rows = [tuple([1] + [0] * Kmax)]
    xpow = one
    for t in range(1, Kmax + 1):
        xpow = xpow * x
        c_rows.append(integer_row(xpow, t))
    return tuple(d_rows), tuple(c_rows)


def _f_list(A, first_minus_second: Fraction, r, Kmax: int) -> list:
    """f(k) = sum over m+n=k of C(r,n) (-1)^n 2^(4m+6n) (2A)_{2m} / ((1+A-B)_m m!)."""
    poch_2A = [None] * (Kmax + 1)
    acc = 1
    two_A = 2 * A
    for m in range(Kmax + 1):
        if m:
            acc = acc * (two_A + (2 * m - 2)) * (two_A + (2 * m - 1))
        poch_2A[m] = acc
    shifted = 1 + first_minus_second
    denoms = [Fraction(1)] * (Kmax + 1)
    for m in range(1, Kmax + 1):
        denoms[m] = denoms[m - 1] * (shifted + (m - 1)) * m
    binom_r = [gen_binomial(r, n) for n in range(Kmax + 1)]
    out = []
    for k in range(Kmax + 1):
        total = Fraction(0)
        for m in range(k + 1):
            n = k - m
            sign = 1 if n % 2 == 0 else -1
            total = total + binom_r[n] * (sign * 2 ** (4 * m + 6 * n)) * poch_2A[m] / denoms[m]
        out.append(total)
    return out


def seq_f(params: InstanceParams, Kmax: int) -> tuple[list, list]:
    """The pair of f-sequences (plain and tilde, i.e. with A and B swapped)."""
    flags = check_assumptions(params)
    if not flags.all_pass:
        raise ConsistencyError(f"instance fails structural assumptions: {flags}")
    diff = params.l1 - params.l2
    f = _f_list(params.A, diff, params.r, Kmax)
    f_tilde = _f_list(params.B, -diff, params.r, Kmax)
    return f, f_tilde


def h_closed(params: InstanceParams, Kmax: int, tables=None, fs=None) -> tuple[list, list]:
    """The h-sequences by the closed double-sum formula (h(0) = 1 normalized)."""
    d_table, c_table = tables if tables is not None else tables_DC(Kmax)
    f, f_tilde = fs if fs is not None else seq_f(params, Kmax)

    def assemble(f_seq: list, exponent: Fraction) -> list:
        inner_fd = [
            sum((f_seq[k] * d_table[k][s] for k in range(s + 1)), Fraction(0))
            for s in range(Kmax + 1)
        ]
        binom = [gen_binomial(exponent, t) for t in range(Kmax + 1)]
        inner_cb = [
            sum((binom[t] * c_table[t][dd] for t in range(dd + 1)), Fraction(0))
            for dd in range(Kmax + 1)
        ]
        return [
            sum((inner_cb[dd] * inner_fd[K - dd] for dd in range(K + 1)), Fraction(0))
            for K in range(Kmax + 1)
        ]

    return assemble(f, params.l1), assemble(f_tilde, params.l2)


def indicial(params: InstanceParams, x: Fraction) -> Fraction:
    """The indicial polynomial at infinity of the weight-zero equation."""
    return x * x + (params.a - Fraction(1, 6)) * x + (params.b + params.c)


def h_frobenius(params: InstanceParams, Kmax: int) -> tuple[list, list]:
    """The h-sequences by power-series recursion on the weight-zero equation.

    Writing the equation as theta^2 f + P theta f + Q f = 0 with
    P = a*G - E2/6 and Q = b*G^2 + c*E4, the substitution
    f = q^l (1 + sum c_n q^n) forces

        I(l + n) c_n = - sum_{j=1..n} (p_j (l + n - j) + q_j) c_{n-j}

    where I is the indicial polynomial; I(l) = 0 and the other root
    differs by a non-integer, so every step divides by a nonzero value.
    """
    e2 = eisenstein_E2(Kmax).series
    e4 = eisenstein_E4(Kmax).series
    g = weight2_G(Kmax).series
    g2 = g * g
    count = Kmax + 1
    p = [params.a * g.coeff(j) - e2.coeff(j) / 6 for j in range(count)]
    q = [params.b * g2.coeff(j) + params.c * e4.coeff(j) for j in range(count)]

    def run(l: Fraction) -> list:
        if indicial(params, l) != 0:
            raise ConsistencyError(f"{l} is not an indicial root")
        cs = [Fraction(1)]
        for n in range(1, count):
            rhs = Fraction(0)
            for j in range(1, n + 1):
                rhs -= (p[j] * (l + n - j) + q[j]) * cs[n - j]
            den = indicial(params, l + n)
            if den == 0:
                raise ConsistencyError(f"indicial value vanishes at {l + n}")
            cs.append(rhs / den)
        return cs

    return run(params.l1), run(params.l2)


@dataclass(frozen=True)
class SeqTables:
    """Every sequence computed for one instance, kept for reports and scans."""

    Kmax: int
    D: tuple
    C: tuple
    f: tuple
    f_tilde: tuple
    h: tuple
    h_tilde: tuple
    e: tuple
    d: tuple
    d_tilde: tuple


@dataclass(frozen=True)
class MinimalForm:
    """The normalized minimal-weight vector: two pure q-expansions."""

    params: InstanceParams
    comp1: PureQSeries
    comp2: PureQSeries
    tables: SeqTables
    method: str


def _convolve_unit(e: list, h: list) -> list:
    """Coefficients of (1 + sum e q)(1 + sum h q); both lists start at index 0 with 1."""
    n = min(len(e), len(h))
    return [sum((e[i] * h[k - i] for i in range(k + 1)), Fraction(0)) for k in range(n)]


def instance_lattice(params: InstanceParams) -> int:
    return math.lcm(
        24,
        (Fraction(params.k0, 12) + params.l1).denominator,
        (Fraction(params.k0, 12) + params.l2).denominator,
    )


def minimal_form(params: InstanceParams, Kmax: int, method: str = "both") -> MinimalForm:
    """Build the normalized minimal form to relative order Kmax.

    method "closed" uses the sequence formulas, "frobenius" the series
    recursion, and "both" (the default for anything feeding denominator
    analysis) runs the two and requires exact agreement.
    """
    if method not in ("closed", "frobenius", "both"):
        raise ValueError(f"unknown method {method!r}")
    d_table, c_table = tables_DC(Kmax) if method != "frobenius" else ((), ())
    fs = seq_f(params, Kmax) if method != "frobenius" else ([], [])

    if method == "closed":
        h, ht = h_closed(params, Kmax, (d_table, c_table), fs)
    elif method == "frobenius":
        h, ht = h_frobenius(params, Kmax)
    else:
        h, ht = h_closed(params, Kmax, (d_table, c_table), fs)
        hf, htf = h_frobenius(params, Kmax)
        for K in range(Kmax + 1):
            if h[K] != hf[K] or ht[K] != htf[K]:
                raise PipelineMismatch(
                    f"closed-form and recursion disagree at K={K}: "
                    f"{h[K]} vs {hf[K]} / {ht[K]} vs {htf[K]}"
                )

    e = eta_tail_coeffs(2 * params.k0, Kmax)
    d = _convolve_unit(e, h)
    dt = _convolve_unit(e, ht)
    lattice = instance_lattice(params)
    comp1 = PureQSeries.make(Fraction(params.k0, 12) + params.l1, d, 1, lattice)
    comp2 = PureQSeries.make(Fraction(params.k0, 12) + params.l2, dt, 1, lattice)
    tables = SeqTables(
        Kmax=Kmax,
        D=d_table,
        C=c_table,
        f=tuple(fs[0]),
        f_tilde=tuple(fs[1]),
        h=tuple(h),
        h_tilde=tuple(ht),
        e=tuple(e),
        d=tuple(d),
        d_tilde=tuple(dt),
    )
    return MinimalForm(params, comp1, comp2, tables, method)


def mlde_residual(params: InstanceParams, u: PureQSeries) -> PureQSeries:
    """Apply the full weight-k0 operator; exact zero certifies a solution."""
    k0 = params.k0
    order = len(u.coeffs)
    e4 = eisenstein_E4(order).series
    g = weight2_G(order).series
    du = modular_D(k0, u)
    return (
        modular_D(k0 + 2, du)
        + params.a * (g * du)
        + (params.b * (g * g) + params.c * e4) * u
    )


def t_lists(mf: MinimalForm) -> tuple[list, list]:
    """Coefficient lists of the modular derivative of the minimal form.

    t(K) = d(K)(K + l) + 2 k0 sum_{n=1..K} sigma(n) d(K-n), the n = K term
    using d(0) = 1; the leading entry is l itself.
    """
    p = mf.params
    k0 = p.k0

    def build(dlist: tuple, l: Fraction) -> list:
        out: list = [l]
        for K in range(1, len(dlist)):
            val = dlist[K] * (K + l)
            if k0:
                val = val + 2 * k0 * sum(
                    (sigma(n) * dlist[K - n] for n in range(1, K + 1)), Fraction(0)
                )
            out.append(val)
        return out

    return build(mf.tables.d, p.l1), build(mf.tables.d_tilde, p.l2)


def deriv_components(mf: MinimalForm) -> tuple[PureQSeries, PureQSeries]:
    """The modular derivative of both components, cross-checked exactly.

    Built from the coefficient formula, then compared against applying
    the derivative operator directly to the series; disagreement is a
    hard failure.
    """
    p = mf.params
    t1, t2 = t_lists(mf)
    lattice = mf.comp1.lattice
    s1 = PureQSeries.make(Fraction(p.k0, 12) + p.l1, t1, 1, lattice)
    s2 = PureQSeries.make(Fraction(p.k0, 12) + p.l2, t2, 1, lattice)
    for built, comp, lead, n in (
        (s1, mf.comp1, Fraction(p.k0, 12) + p.l1, len(t1)),
        (s2, mf.comp2, Fraction(p.k0, 12) + p.l2, len(t2)),
    ):
        direct = modular_D(p.k0, comp)
        if not equal_through(built, direct, lead + n - 1):
            raise PipelineMismatch("derivative coefficient formula disagrees with operator")
    return s1, s2


@dataclass(frozen=True)
class BasisElement:
    """One member of the weight-k basis: a monomial times F' or its derivative."""

    a: int
    b: int
    derivative: bool
    comp1: PureQSeries
    comp2: PureQSeries

    @property
    def label(self) -> str:
        core = "DF'" if self.derivative else "F'"
        return f"G^{self.a}*E4^{self.b}*{core}"


def weight_basis(mf: MinimalForm, k: int) -> list[BasisElement]:
    """All monomial multiples of F' and DF' landing in weight k."""
    p = mf.params
    n = len(mf.comp1.coeffs) + 1
    out = []
    for a, b in monomial_basis(k - p.k0):
        mon = form_monomial(a, b, n)
        out.append(BasisElement(a, b, False, mon * mf.comp1, mon * mf.comp2))
    if monomial_basis(k - p.k0 - 2):
        d1, d2 = deriv_components(mf)
        for a, b in monomial_basis(k - p.k0 - 2):
            mon = form_monomial(a, b, n)
            out.append(BasisElement(a, b, True, mon * d1, mon * d2))
    return out


def decompose(
    mf: MinimalForm,
    Z1: PureQSeries,
    Z2: PureQSeries,
    k: int,
    validate: bool = True,
) -> tuple[PureQSeries, PureQSeries]:
    """Write (Z1, Z2) as m1*F' + m2*DF' with scalar forms m1, m2.

    Solves the coefficientwise 2x2 systems recursively; the matrix
    [[1, l1], [1, l2]] is invertible because l1 != l2.  With validate on,
    both outputs are checked to be genuine forms of the right weights via
    their monomial coordinates.
    """
    p = mf.params
    lead1 = Fraction(p.k0, 12) + p.l1
    lead2 = Fraction(p.k0, 12) + p.l2
    for z, lead in ((Z1, lead1), (Z2, lead2)):
        if not z.is_zero:
            rel = z.lead - lead
            if rel.denominator != 1 or rel < 0:
                raise ConsistencyError(
                    f"component lead {z.lead} is not on the grid {lead} + Z>=0"
                )
    t1, t2 = t_lists(mf)
    d, dt = mf.tables.d, mf.tables.d_tilde
    n_avail = min(
        int(Z1.horizon - lead1),
        int(Z2.horizon - lead2),
        len(d),
    )
    det = p.l2 - p.l1
    m1: list = []
    m2: list = []
    for n in range(n_avail):
        s1 = Z1.coeff(lead1 + n)
        s2 = Z2.coeff(lead2 + n)
        for j in range(n):
            s1 = s1 - (m1[j] * d[n - j] + m2[j] * t1[n - j])
            s2 = s2 - (m1[j] * dt[n - j] + m2[j] * t2[n - j])
        m2n = (s2 - s1) / det
        m1n = s1 - p.l1 * m2n
        m1.append(m1n)
        m2.append(m2n)
    m1s = PureQSeries.make(0, m1)
    m2s = PureQSeries.make(0, m2)
    if validate:
        monomial_coordinates(m1s, k - p.k0)
        monomial_coordinates(m2s, k - p.k0 - 2)
    return m1s, m2s
