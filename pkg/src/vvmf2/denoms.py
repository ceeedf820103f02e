"""Prime sets and finite-range verification of the unbounded-denominator laws.

For an instance with field constant M and reduced exponent difference
u/v, the relevant primes are the odd p with (M/p) = -1 lying in the
arithmetic progressions u mod v (set S) and -u mod v (set S~, equal to S
when v = 2).  The prediction under test: writing p_K = u + K*v, once K
is large enough that the proof's side conditions hold, p_K divides the
denominator of the K-th coefficient of the first component while all
earlier coefficients stay p_K-integral; the tilde component behaves the
same against S~.  "Large enough" is not effective, so primes failing an
auditable side condition are reported as exempt instead of asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError
from .forms import form_monomial
from .minform import MinimalForm, deriv_components
from .params import InstanceParams, check_assumptions
from .qseries import PureQSeries
from .quadratic import (
    QuadNum,
    denominator_of,
    half_form,
    is_p_integral,
    is_prime,
    legendre,
    pochhammer,
    primes_upto,
)

DEFAULT_FACTOR_BOUND = 10**6


@dataclass(frozen=True)
class PrimeSets:
    """The prime sets S and S~ truncated at a search bound."""

    M: int
    u: int
    v: int
    bound: int
    S: tuple[int, ...]
    S_tilde: tuple[int, ...]


def prime_sets(params: InstanceParams, bound: int) -> PrimeSets:
    """Enumerate S and S~ up to the bound by sieve, Legendre test and congruence."""
    if not check_assumptions(params).all_pass:
        raise ConsistencyError("prime sets need the structural assumptions to hold")
    M, u, v = params.field_M, params.u, params.v
    inert = [p for p in primes_upto(bound) if p != 2 and legendre(M, p) == -1]
    return PrimeSets(
        M=M,
        u=u,
        v=v,
        bound=bound,
        S=tuple(p for p in inert if (p - u) % v == 0),
        S_tilde=tuple(p for p in inert if (p + u) % v == 0),
    )


def factor_trial(n: int, bound: int) -> tuple[dict[int, int], int]:
    """Trial-divide |n| up to the bound; returns (factors, unfactored cofactor)."""
    n = abs(n)
    factors: dict[int, int] = {}
    d = 2
    while d <= bound and d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        if n <= bound * bound:
            factors[n] = factors.get(n, 0) + 1
            n = 1
    return factors, n


@dataclass(frozen=True)
class ScanRecord:
    """Denominator data for a single sequence entry."""

    index: int
    denominator: int
    factors: dict[int, int]
    cofactor: int
    p_integral: dict[int, bool]


def denom_scan(
    seq, primes, factor_bound: int = DEFAULT_FACTOR_BOUND
) -> list[ScanRecord]:
    """Denominator and per-prime integrality verdicts for each sequence entry.

    Divisibility is always tested on the denominator itself, never
    through the (possibly incomplete) factor list.
    """
    out = []
    for i, z in enumerate(seq):
        den = denominator_of(z)
        factors, cofactor = factor_trial(den, factor_bound)
        out.append(
            ScanRecord(
                index=i,
                denominator=den,
                factors=factors,
                cofactor=cofactor,
                p_integral={p: den % p != 0 for p in primes},
            )
        )
    return out


# ---------------------------------------------------------------------------
# the minimal-weight verification
# ---------------------------------------------------------------------------


def side_condition_audit(params: InstanceParams, p: int, K: int | None = None) -> list[str]:
    """Names of the proof's side conditions that p fails (empty = fully audited).

    The conditions are those actually used in the argument: p odd, p
    coprime to 12, to v and to the denominators of the leading exponents,
    p larger than K, p prime to the coordinates of 2A and -r, and p
    dividing no negative member of the progression {u + j*v}.
    """
    failed = []
    if p == 2:
        failed.append("p odd")
    if 12 % p == 0:
        failed.append("p divides 12")
    if K is not None and p <= K:
        failed.append("p <= K")
    if params.v % p == 0:
        failed.append("p divides v")
    for label, value in (("2A", 2 * params.A), ("-r", -params.r)):
        hf = half_form(value)
        if hf.y % p == 0:
            failed.append(f"p divides y-part of {label}")
        if hf.Z % p == 0:
            failed.append(f"p divides denominator of {label}")
    for label, value in (("l1", params.l1), ("l2", params.l2)):
        if value.denominator % p == 0:
            failed.append(f"p divides denominator of {label}")
    j = 1
    while params.u + j * params.v < 0:
        if (params.u + j * params.v) % p == 0:
            failed.append(f"p divides negative progression member {params.u + j * params.v}")
        j += 1
    return failed


@dataclass(frozen=True)
class UbdRow:
    """Verdict for one index K of one coefficient sequence."""

    K: int
    p: int
    is_prime: bool
    in_S: bool
    exempt: tuple[str, ...]
    divides: bool | None
    earlier_integral: bool | None

    @property
    def asserted(self) -> bool:
        return self.is_prime and self.in_S and not self.exempt

    @property
    def passed(self) -> bool | None:
        if not self.asserted:
            return None
        return bool(self.divides and self.earlier_integral)


@dataclass(frozen=True)
class PrimeSummary:
    """Per-prime digest: where the prime first divides a denominator."""

    p: int
    first_division_K: int | None
    expected_K: int | None
    verdict: str  # "pass", "fail" or "exempt"


@dataclass(frozen=True)
class DenomReport:
    """Finite-range unbounded-denominator report for one instance."""

    Kmax: int
    factor_bound: int
    rows_d: tuple[UbdRow, ...]
    rows_h: tuple[UbdRow, ...]
    rows_d_tilde: tuple[UbdRow, ...]
    scan_d: tuple[ScanRecord, ...]
    scan_d_tilde: tuple[ScanRecord, ...]
    summary_d: tuple[PrimeSummary, ...]
    summary_d_tilde: tuple[PrimeSummary, ...]
    threshold: int | None
    exceptional: tuple[int, ...]

    @property
    def all_asserted_pass(self) -> bool:
        rows = self.rows_d + self.rows_h + self.rows_d_tilde
        return all(r.passed for r in rows if r.asserted)


def _scan_rows(
    seq: tuple, params: InstanceParams, Kmax: int, u: int, v: int
) -> list[UbdRow]:
    M = params.field_M
    rows = []
    for K in range(1, Kmax + 1):
        p = u + K * v
        prime = p >= 2 and is_prime(p)
        if not prime:
            rows.append(UbdRow(K, p, False, False, (), None, None))
            continue
        in_s = p != 2 and legendre(M, p) == -1
        exempt = tuple(side_condition_audit(params, p, K)) if in_s else ()
        divides = earlier = None
        if in_s:
            divides = denominator_of(seq[K]) % p == 0
            earlier = all(is_p_integral(seq[i], p) for i in range(1, K))
        rows.append(UbdRow(K, p, True, in_s, exempt, divides, earlier))
    return rows


def verify_ubd(
    mf: MinimalForm,
    Kmax: int | None = None,
    factor_bound: int = DEFAULT_FACTOR_BOUND,
) -> DenomReport:
    """Check the prime-by-prime denominator prediction over a finite range.

    Scans the d-sequence and the h-sequence against p_K = u + K*v and the
    tilde sequence against -u + K*v.  Rows failing an audited side
    condition are informational; any other failure is a real failure.
    """
    p = mf.params
    t = mf.tables
    if Kmax is None:
        Kmax = t.Kmax
    if Kmax > t.Kmax:
        raise ConsistencyError(f"minimal form only computed through K={t.Kmax}")
    if mf.method != "both":
        raise ConsistencyError("denominator analysis requires method='both'")
    rows_d = _scan_rows(t.d[: Kmax + 1], p, Kmax, p.u, p.v)
    rows_h = _scan_rows(t.h[: Kmax + 1], p, Kmax, p.u, p.v)
    rows_dt = _scan_rows(t.d_tilde[: Kmax + 1], p, Kmax, -p.u, p.v)

    asserted = [r for r in rows_d + rows_h + rows_dt if r.asserted]
    failed = sorted({r.p for r in asserted if not r.passed})
    threshold = None
    for candidate in sorted({r.p for r in asserted}):
        if all(r.passed for r in asserted if r.p >= candidate):
            threshold = candidate
            break

    def summarize(rows: list[UbdRow], seq: tuple) -> tuple[PrimeSummary, ...]:
        out = []
        for r in rows:
            if not (r.is_prime and r.in_S):
                continue
            first = next(
                (K for K in range(1, Kmax + 1) if denominator_of(seq[K]) % r.p == 0),
                None,
            )
            verdict = "exempt" if r.exempt else ("pass" if r.passed else "fail")
            out.append(PrimeSummary(r.p, first, r.K, verdict))
        return tuple(out)

    primes_seen = sorted({r.p for r in rows_d if r.is_prime and r.in_S})
    return DenomReport(
        Kmax=Kmax,
        factor_bound=factor_bound,
        rows_d=tuple(rows_d),
        rows_h=tuple(rows_h),
        rows_d_tilde=tuple(rows_dt),
        scan_d=tuple(denom_scan(t.d[: Kmax + 1], primes_seen, factor_bound)),
        scan_d_tilde=tuple(denom_scan(t.d_tilde[: Kmax + 1], primes_seen, factor_bound)),
        summary_d=summarize(rows_d, t.d),
        summary_d_tilde=summarize(rows_dt, t.d_tilde),
        threshold=threshold,
        exceptional=tuple(failed),
    )


# ---------------------------------------------------------------------------
# the quadratic-field divisibility probe
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProbeVerdict:
    """Outcome of probing Pochhammer numerators against an inert prime."""

    status: str  # "pass", "fail" or "inconclusive"
    p: int
    tmax: int
    Z: int
    x: int
    y: int
    bad_shifts: tuple[int, ...]
    bad_indices: tuple[int, ...]


def pochhammer_numerator_probe(X: QuadNum, R: Fraction, p: int, tmax: int) -> ProbeVerdict:
    """Probe that p never divides the numerator of (X+R)_t for t <= tmax.

    Requires p odd with (M/p) = -1 and X irrational.  With Y = Z*X =
    (x + y sqrt M)/2 the norm of Y + (R+j)Z reduces mod p to
    ((x + 2(R+j)Z)^2 - M y^2)/4, which is nonzero whenever p does not
    divide y; the probe evaluates those norms for j < tmax and also
    checks the Pochhammer numerators directly.  If p divides y the
    hypothesis fails and the result is inconclusive.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if not isinstance(X, QuadNum) or X.surd == 0:
        raise ValueError("X must be a quadratic irrational")
    if legendre(X.M, p) != -1:
        raise ValueError(f"M={X.M} must be a non-residue mod p={p}")
    R = Fraction(R)
    if R.denominator % p == 0:
        raise ValueError("p divides the denominator of R")
    hf = half_form(X)
    if hf.y % p == 0:
        return ProbeVerdict("inconclusive", p, tmax, hf.Z, hf.x, hf.y, (), ())

    bad_shifts = []
    for j in range(tmax):
        four_norm = (hf.x + 2 * (R + j) * hf.Z) ** 2 - X.M * hf.y**2
        if four_norm.numerator % p == 0:
            bad_shifts.append(j)

    bad_indices = []
    value = X + R
    poch = pochhammer(value, 0)
    for t in range(1, tmax + 1):
        poch = poch * (value + (t - 1))
        numerator = denominator_of(poch) * poch
        norm = numerator.norm() if isinstance(numerator, QuadNum) else numerator * numerator
        if norm.numerator % p == 0:
            bad_indices.append(t)

    status = "pass" if not bad_shifts and not bad_indices else "fail"
    return ProbeVerdict(
        status, p, tmax, hf.Z, hf.x, hf.y, tuple(bad_shifts), tuple(bad_indices)
    )


# ---------------------------------------------------------------------------
# general weight
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneralWeightRow:
    p: int
    exempt: tuple[str, ...]
    first_hit_1: int | None
    first_hit_2: int | None

    @property
    def asserted(self) -> bool:
        return not self.exempt

    @property
    def passed(self) -> bool | None:
        if self.exempt:
            return None
        return self.first_hit_1 is not None and self.first_hit_2 is not None


@dataclass(frozen=True)
class GeneralWeightReport:
    k: int
    Kmax: int
    rows: tuple[GeneralWeightRow, ...]

    @property
    def all_asserted_pass(self) -> bool:
        return all(r.passed for r in self.rows if r.asserted)


def combination(
    mf: MinimalForm,
    m1_map: dict[tuple[int, int], object],
    m2_map: dict[tuple[int, int], object],
    k: int,
) -> tuple[PureQSeries, PureQSeries]:
    """The vector m1*F' + m2*DF' from monomial coefficient maps of the right weights."""
    p = mf.params

    def check_weights(coeff_map, want: int):
        for a, b in coeff_map:
            if 2 * a + 4 * b != want:
                raise ConsistencyError(
                    f"monomial G^{a}E4^{b} has weight {2 * a + 4 * b}, need {want}"
                )

    check_weights(m1_map, k - p.k0)
    check_weights(m2_map, k - p.k0 - 2)
    n = len(mf.comp1.coeffs) + 1
    d1, d2 = deriv_components(mf)

    def scalar_form(coeff_map) -> PureQSeries | None:
        total = None
        for (a, b), c in sorted(coeff_map.items()):
            term = form_monomial(a, b, n) * c
            total = term if total is None else total + term
        return total

    m1 = scalar_form(m1_map)
    m2 = scalar_form(m2_map)
    z1 = z2 = None
    if m1 is not None:
        z1, z2 = m1 * mf.comp1, m1 * mf.comp2
    if m2 is not None:
        t1, t2 = m2 * d1, m2 * d2
        z1 = t1 if z1 is None else z1 + t1
        z2 = t2 if z2 is None else z2 + t2
    if z1 is None:
        raise ConsistencyError("empty combination")
    return z1, z2


def ubd_general(
    mf: MinimalForm,
    m1_map: dict[tuple[int, int], object],
    m2_map: dict[tuple[int, int], object],
    k: int,
    Kmax: int,
    prime_bound: int,
) -> GeneralWeightReport:
    """Scan a general-weight combination for denominator hits, prime by prime.

    For every audited prime in S the first component must show a
    coefficient whose denominator the prime divides within Kmax steps of
    its leading exponent; the second component is scanned against S~.
    """
    p = mf.params
    z1, z2 = combination(mf, m1_map, m2_map, k)
    sets = prime_sets(p, prime_bound)

    def first_hit(z: PureQSeries, prime: int, lead: Fraction) -> int | None:
        for n in range(Kmax + 1):
            e = lead + n
            if e >= z.horizon:
                break
            if denominator_of(z.coeff(e)) % prime == 0:
                return n
        return None

    lead1 = Fraction(p.k0, 12) + p.l1
    lead2 = Fraction(p.k0, 12) + p.l2
    rows = []
    for prime in sorted(set(sets.S) | set(sets.S_tilde)):
        exempt = tuple(side_condition_audit(p, prime))
        hit1 = first_hit(z1, prime, lead1) if prime in sets.S else None
        hit2 = first_hit(z2, prime, lead2) if prime in sets.S_tilde else None
        rows.append(GeneralWeightRow(prime, exempt, hit1, hit2))
    return GeneralWeightReport(k=k, Kmax=Kmax, rows=tuple(rows))
