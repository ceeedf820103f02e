"""Exact q-expansions of the modular objects living on Gamma0(2).

Provides the Eisenstein series E2 and E4, the weight-two form G, even
powers of the eta function, the normalized Hauptmodul pair (K, J) with
K = 64*J integral, the modular derivative D_k, the Jacobi theta^4 and
eta-quotient companions used at the other cusp, and the monomial basis
G^a E4^b of each weight together with exact coordinates in it.

Named expansions are cached in-process (longest prefix wins) and,
optionally, on disk under $VVMF2_CACHE_DIR.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NotAFormError, TruncationError
from .qseries import PureQSeries, equal_through

CACHE_DIR_ENV = "VVMF2_CACHE_DIR"


@lru_cache(maxsize=None)
def sigma(n: int, power: int = 1) -> int:
    """Divisor sum sigma_power(n) by direct enumeration."""
    if n < 1:
        raise ValueError("sigma needs n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**power
            e = n // d
            if e != d:
                total += e**power
        d += 1
    return total


@dataclass(frozen=True)
class FormSeries:
    """A q-expansion tagged with its weight."""

    weight: int
    series: PureQSeries

    def coeff(self, exponent):
        return self.series.coeff(exponent)


# ---------------------------------------------------------------------------
# generation cache
# ---------------------------------------------------------------------------

_CACHE: dict[str, PureQSeries] = {}


def clear_cache():
    _CACHE.clear()


def _prefix(s: PureQSeries, count: int) -> PureQSeries:
    return PureQSeries(s.lead, s.step, s.coeffs[:count], s.lattice)


def _disk_path(name: str):
    root = os.environ.get(CACHE_DIR_ENV)
    return os.path.join(root, f"{name}.json") if root else None


def _disk_load(name: str) -> PureQSeries | None:
    path = _disk_path(name)
    if not path or not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            data = json.load(fh)
        return PureQSeries(
            Fraction(data["lead"]),
            Fraction(data["step"]),
            tuple(Fraction(c) for c in data["coeffs"]),
            data["lattice"],
        )
    except (OSError, ValueError, KeyError):
        return None


def _disk_store(name: str, s: PureQSeries):
    path = _disk_path(name)
    if not path:
        return
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w") as fh:
            json.dump(
                {
                    "lead": str(s.lead),
                    "step": str(s.step),
                    "lattice": s.lattice,
                    "coeffs": [str(c) for c in s.coeffs],
                },
                fh,
            )
    except OSError:
        pass


def _cached(name: str, count: int, builder) -> PureQSeries:
    """Longest-prefix cache: builder(count) must yield >= count coefficients."""
    s = _CACHE.get(name)
    if s is None or len(s.coeffs) < count:
        s = _disk_load(name)
        if s is None or len(s.coeffs) < count:
            s = builder(count)
            _disk_store(name, s)
        _CACHE[name] = s
    return _prefix(s, count)


# ---------------------------------------------------------------------------
# the generators
# ---------------------------------------------------------------------------


def _build_e2(count: int) -> PureQSeries:
    return PureQSeries.make(0, [1] + [-24 * sigma(n) for n in range(1, count)])


def _build_e4(count: int) -> PureQSeries:
    return PureQSeries.make(0, [1] + [240 * sigma(n, 3) for n in range(1, count)])


def _build_g(count: int) -> PureQSeries:
    e2 = _cached("E2", count, _build_e2)
    e2_doubled = _cached("E2", count // 2 + 1, _build_e2).rescale(2)
    return -e2 + 2 * e2_doubled


def eisenstein_E2(N: int) -> FormSeries:
    """E2 = 1 - 24 sum sigma(n) q^n to order N (weight tag 2, quasi-modular)."""
    return FormSeries(2, _cached("E2", N + 1, _build_e2))


def eisenstein_E4(N: int) -> FormSeries:
    """E4 = 1 + 240 sum sigma_3(n) q^n to order N."""
    return FormSeries(4, _cached("E4", N + 1, _build_e4))


def weight2_G(N: int) -> FormSeries:
    """The weight-two form on Gamma0(2): -E2(q) + 2 E2(q^2), to order N."""
    return FormSeries(2, _cached("G", N + 1, _build_g))


def g_parity_form(N: int) -> PureQSeries:
    """The same form assembled from sigma-parity data: 1 + 24 sum over odd
    arguments plus (24 sigma(2n) - 48 sigma(n)) q^(2n); G must equal it."""
    cs = [Fraction(1)]
    for n in range(1, N + 1):
        if n % 2 == 1:
            cs.append(Fraction(24 * sigma(n)))
        else:
            cs.append(Fraction(24 * sigma(n) - 48 * sigma(n // 2)))
    return PureQSeries.make(0, cs)


def _build_euler(count: int) -> PureQSeries:
    # prod (1 - q^n) via the pentagonal number theorem
    cs = [Fraction(0)] * count
    cs[0] = Fraction(1)
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        if e1 >= count and e2 >= count:
            break
        sign = 1 if k % 2 == 0 else -1
        if e1 < count:
            cs[e1] = Fraction(sign)
        if e2 < count:
            cs[e2] = Fraction(sign)
        k += 1
    return PureQSeries.make(0, cs)


def eta_pow(twok: int, N: int) -> FormSeries:
    """eta^twok = q^(twok/24) * prod (1-q^n)^twok for even twok, to relative order N."""
    if twok % 2 != 0:
        raise ValueError("eta_pow needs an even power of eta")

    def build(count: int) -> PureQSeries:
        euler = _cached("euler", count, _build_euler)
        return euler.pow_binomial(twok).shifted(Fraction(twok, 24))

    return FormSeries(twok // 2, _cached(f"eta^{twok}", N + 1, build))


def eta_tail_coeffs(twok: int, N: int) -> list[Fraction]:
    """Coefficients e(0)=1, e(1), ..., e(N) of the unit part of eta^twok."""
    s = eta_pow(twok, N).series
    return [s.coeff(Fraction(twok, 24) + n) for n in range(N + 1)]


def _build_hauptK(count: int) -> PureQSeries:
    # K = 192 G^2 / (E4 - G^2), a simple pole at infinity with residue 1
    e4 = _cached("E4", count + 2, _build_e4)
    g = _cached("G", count + 2, _build_g)
    g2 = g * g
    return (192 * g2) * (e4 - g2).inv()


def hauptmodul(N: int) -> tuple[PureQSeries, PureQSeries]:
    """The pair (K, J) with J = K/64, known through exponent N (K = q^-1 + ...)."""
    if N < 2:
        N = 2
    K = _cached("hauptK", N + 2, _build_hauptK)
    return K, K * Fraction(1, 64)


def modular_D(k: int, u: PureQSeries) -> PureQSeries:
    """The weight-k modular derivative: theta(u) - (k/12) E2 u."""
    th = u.theta()
    if k == 0:
        return th
    span = len(u.coeffs) * u.step
    e2 = _cached("E2", int(span) + 2, _build_e2)
    return th - Fraction(k, 12) * (e2 * u)


# ---------------------------------------------------------------------------
# identity suite
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class IdentityReport:
    order: int
    checks: tuple[IdentityCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def vanishes_through(s: PureQSeries, exponent) -> bool:
    e = Fraction(exponent)
    if s.horizon <= e:
        raise TruncationError(f"vanishing through q^{e} undecidable at horizon {s.horizon}")
    return s.is_zero or s.lead > e


def identity_suite(N: int) -> IdentityReport:
    """Verify the exact series identities tying together G, E2, E4, J and K.

    Every check is an exact coefficient comparison through order N;
    failures are reported, never raised.
    """
    if N < 10:
        raise ValueError("identity_suite needs N >= 10")
    margin = N + 8
    e2 = _cached("E2", margin + 1, _build_e2)
    e4 = _cached("E4", margin + 1, _build_e4)
    g = _cached("G", margin + 1, _build_g)
    K, J = hauptmodul(margin)
    one = PureQSeries.constant(1, margin + 2)
    g2 = g * g
    thJ = J.theta()

    checks = []

    def record(name: str, ok: bool, detail: str = ""):
        checks.append(IdentityCheck(name, ok, detail))

    record("theta-J", equal_through(thJ, (one - J) * g, N))
    record("theta-J-weight6", equal_through((e4 - g2) * thJ, e4 * g - 4 * (g2 * g), N))
    record(
        "theta-G",
        equal_through(g.theta(), Fraction(1, 6) * (e2 * g + e4 - 2 * g2), N),
    )
    # D2(G) = theta(G) - E2 G / 6 = (E4 - 2 G^2)/6, forced by the theta-G identity
    record(
        "D2-G",
        equal_through(
            modular_D(2, g),
            Fraction(1, 6) * e4 - Fraction(1, 3) * g2,
            N,
        ),
    )
    record(
        "theta2-J",
        equal_through(
            thJ.theta(),
            g2 * (one - J) * (3 * one - 7 * J) * (6 * J).inv()
            + Fraction(1, 6) * (e2 * thJ),
            N,
        ),
    )
    record("E4-J-ratio", equal_through(e4 * J, g2 * (J + 3 * one), N))

    diff = g2 - e4
    bad = [
        n
        for n in range(N + 1)
        if diff.coeff(n).denominator != 1 or diff.coeff(n) % 192 != 0
    ]
    record("192-divisibility", not bad, f"failing orders {bad[:4]}" if bad else "")

    Kq = K.shifted(1)
    bad = [n for n in range(N + 1) if Kq.coeff(n).denominator != 1]
    unit = Kq.coeff(0) == 1
    record(
        "Kq-integral-unit",
        not bad and unit,
        "" if (not bad and unit) else f"non-integer orders {bad[:4]}, c0={Kq.coeff(0)}",
    )

    record("G-parity-form", equal_through(g, g_parity_form(margin), N))

    for k in (-2, 0, 1, 6):
        eta2k = eta_pow(2 * k, margin).series
        res = modular_D(k, eta2k)
        record(f"eta-kernel-k={k}", vanishes_through(res, Fraction(k, 12) + N))

    eta2 = eta_pow(2, margin).series
    record("theta-eta", equal_through(12 * eta2.theta(), e2 * eta2, Fraction(1, 12) + N))

    return IdentityReport(N, tuple(checks))


# ---------------------------------------------------------------------------
# the other cusp: theta^4 and the eta quotient
# ---------------------------------------------------------------------------


def jacobi_theta(N: int) -> PureQSeries:
    """theta = 1 + 2 sum q^(n^2), to order N."""

    def build(count: int) -> PureQSeries:
        cs = [Fraction(0)] * count
        cs[0] = Fraction(1)
        n = 1
        while n * n < count:
            cs[n * n] = Fraction(2)
            n += 1
        return PureQSeries.make(0, cs)

    return _cached("theta", N + 1, build)


def theta4_and_E(N: int) -> tuple[PureQSeries, PureQSeries]:
    """(theta^4, E) with E = eta(4 tau)^8 / eta(2 tau)^4, both to order N."""
    th = jacobi_theta(N)
    th4 = (th * th) * (th * th)
    m4 = N // 4 + 2
    m2 = N // 2 + 2
    quotient = eta_pow(8, m4).series.rescale(4) * eta_pow(-4, m2).series.rescale(2)
    return th4, quotient.truncated_at(Fraction(N + 1))


def g_slash_S(N: int) -> PureQSeries:
    """The weight-two slash of G by S as an exact series in powers of q^(1/4).

    Computed from the closed form -(1/4) theta^4(tau/4)
    - (1/4) eta^8(tau/4) eta^-4(tau/2); the constant term is exactly -1/2.
    """
    count = 4 * N + 5
    th4_quarter = jacobi_theta(count).rescale(Fraction(1, 4)) ** 4
    eta_quarter = eta_pow(8, count).series.rescale(Fraction(1, 4))
    eta_half = eta_pow(-4, 2 * N + 4).series.rescale(Fraction(1, 2))
    return Fraction(-1, 4) * th4_quarter + Fraction(-1, 4) * (eta_quarter * eta_half)


# ---------------------------------------------------------------------------
# monomial basis of M_k(Gamma0(2)) = C[G, E4]
# ---------------------------------------------------------------------------


def monomial_basis(k: int) -> list[tuple[int, int]]:
    """All (a, b) with 2a + 4b = k, a, b >= 0; empty for odd or negative k."""
    if k < 0 or k % 2 != 0:
        return []
    return [((k - 4 * b) // 2, b) for b in range(k // 4 + 1)]


def form_monomial(a: int, b: int, N: int) -> PureQSeries:
    """G^a * E4^b to order N."""
    g = _cached("G", N + 1, _build_g)
    e4 = _cached("E4", N + 1, _build_e4)
    return (g**a) * (e4**b)


def _solve_exact(rows: list[list], rhs: list) -> list:
    """Gaussian elimination with pivoting on the first nonzero entry."""
    n = len(rows)
    m = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            raise NotAFormError("singular coefficient system")
        m[col], m[pivot] = m[pivot], m[col]
        inv = m[col][col]
        m[col] = [x / inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def monomial_coordinates(f: PureQSeries, k: int) -> dict[tuple[int, int], object]:
    """Coordinates of f in the basis {G^a E4^b : 2a+4b = k}.

    Solves the square system given by the first dim M_k coefficients, then
    checks every further known coefficient of f; any residual means f is
    not a form of weight k on Gamma0(2).
    """
    basis = monomial_basis(k)
    r = len(basis)
    if r == 0:
        if f.is_zero:
            return {}
        raise NotAFormError(f"M_{k} is zero but the series is not")
    if f.lead < 0:
        raise NotAFormError("a holomorphic form cannot have a pole at infinity")
    known = int(f.horizon) if f.horizon == int(f.horizon) else int(f.horizon) + 1
    if known < r:
        raise TruncationError(f"need at least {r} coefficients, have {known}")
    mons = [form_monomial(a, b, known + 1) for a, b in basis]
    rows = [[mon.coeff(n) for mon in mons] for n in range(r)]
    rhs = [f.coeff(n) for n in range(r)]
    sol = _solve_exact(rows, rhs)
    for n in range(r, known):
        if n >= f.horizon:
            break
        predicted = sum((sol[i] * mons[i].coeff(n) for i in range(r)), Fraction(0))
        if predicted != f.coeff(n):
            raise NotAFormError(f"residual at order {n}: series is not in M_{k}")
    return {basis[i]: sol[i] for i in range(r) if sol[i]}
