"""Translate representation data into the parameter pack of the order-two MLDE.

A representation instance is described by its minimal weight k0, the two
leading exponents l1, l2 of the weight-zero system at infinity, and the
two indicial roots r1, r2 at the cusp 0 (a conjugate pair when
irrational).  From those the coefficients a, b, c of the differential
equation, the hypergeometric parameters A, B, the quadratic field
constant M and the reduced difference u/v = A - B all follow by exact
algebra:

    l1 + l2 = 1/6 - a        l1*l2 = b + c
    r1 + r2 = a + 1/3        r1*r2 = b + 4c
    A = r + l1,  B = r + l2,  r = r1

with the consistency constraint l1 + l2 + r1 + r2 = 1/2.

The module also carries a small symbolic model of the induced
representations built from a character of the principal congruence
subgroup of level two: monomial 2x2 matrices whose entries are formal
exponentials e^(2 pi i (t0 + t1*xi2)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError
from .quadratic import QuadNum

FieldValue = Fraction | QuadNum


def _rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    n = math.isqrt(x.numerator)
    d = math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def _as_value(x) -> FieldValue:
    return Fraction(x) if isinstance(x, int) else x


def _rational_part(x: FieldValue, relation: str) -> Fraction:
    """Extract a Fraction from a value that must be rational."""
    if isinstance(x, QuadNum):
        if x.surd != 0:
            raise ConsistencyError(f"{relation} must be rational, got {x}")
        return x.rat
    return x


@dataclass(frozen=True)
class ExponentData:
    """Leading exponents at infinity and indicial roots at the cusp 0."""

    k0: int
    l1: Fraction
    l2: Fraction
    r1: FieldValue
    r2: FieldValue


@dataclass(frozen=True)
class InstanceParams:
    """The full parameter pack of one representation instance."""

    k0: int
    a: Fraction
    b: Fraction
    c: Fraction
    l1: Fraction
    l2: Fraction
    r: FieldValue
    A: FieldValue
    B: FieldValue
    M: int | None
    u: int
    v: int

    @property
    def field_M(self) -> int:
        if self.M is None:
            raise ConsistencyError("instance has rational r: no quadratic field attached")
        return self.M


def params_from_exponents(e: ExponentData) -> InstanceParams:
    """Solve the indicial relations for (a, b, c, A, B, u, v, M)."""
    l1, l2 = Fraction(e.l1), Fraction(e.l2)
    r1, r2 = _as_value(e.r1), _as_value(e.r2)

    if (l1 - l2).denominator == 1:
        raise ConsistencyError("l1 - l2 in Z")

    if isinstance(r1, QuadNum) and r1.surd != 0:
        if not (isinstance(r2, QuadNum) and r2 == r1.conjugate()):
            raise ConsistencyError("r1, r2 must be a conjugate pair")
    else:
        r1 = _rational_part(r1, "r1")
        r2 = _rational_part(r2, "r2")

    total = l1 + l2 + r1 + r2
    if total != Fraction(1, 2):
        raise ConsistencyError(f"l1+l2+r1+r2 = {total} != 1/2")

    a = Fraction(1, 6) - l1 - l2
    r_product = _rational_part(r1 * r2, "r1*r2")
    c = (r_product - l1 * l2) / 3
    b = l1 * l2 - c

    r = r1
    A = r + l1
    B = r + l2
    diff = l1 - l2
    M = r.M if isinstance(r, QuadNum) and r.surd != 0 else None
    return InstanceParams(
        k0=e.k0, a=a, b=b, c=c, l1=l1, l2=l2, r=r, A=A, B=B,
        M=M, u=diff.numerator, v=diff.denominator,
    )


def roots_from_abc(
    a: Fraction, b: Fraction, c: Fraction, M: int, k0: int = 0
) -> ExponentData:
    """Invert params_from_exponents: solve both indicial quadratics exactly.

    The exponent quadratic must split over Q; the root quadratic must
    split over Q or over Q(sqrt(M)).  l1 is the root with the smaller
    denominator (ties broken by smaller absolute value); r1 is the root
    with positive surd when irrational.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    disc_l = (a - Fraction(1, 6)) ** 2 - 4 * (b + c)
    s = _rational_sqrt(disc_l)
    if s is None:
        raise ConsistencyError("exponent discriminant is not a rational square")
    if s == 0:
        raise ConsistencyError("l1 = l2 (double root)")
    base = (Fraction(1, 6) - a) / 2
    roots = sorted(
        (base + s / 2, base - s / 2),
        key=lambda x: (x.denominator, abs(x)),
    )
    l1, l2 = roots[0], roots[1]

    half_sum = (a + Fraction(1, 3)) / 2
    disc_r = (a + Fraction(1, 3)) ** 2 - 4 * (b + 4 * c)
    t = _rational_sqrt(disc_r)
    if t is not None:
        r1: FieldValue = half_sum + t / 2
        r2: FieldValue = half_sum - t / 2
    else:
        t = _rational_sqrt(disc_r / M)
        if t is None:
            raise ConsistencyError(
                f"root discriminant {disc_r} is not M={M} times a rational square"
            )
        r1 = QuadNum(half_sum, t / 2, M)
        r2 = r1.conjugate()
    return ExponentData(k0=k0, l1=l1, l2=l2, r1=r1, r2=r2)


@dataclass(frozen=True)
class AssumptionReport:
    """Structural flags the denominator theory depends on."""

    difference_nonintegral: bool
    exponents_rational: bool
    c_rational: bool
    r_quadratic: bool
    v_greater_one: bool

    @property
    def all_pass(self) -> bool:
        return (
            self.difference_nonintegral
            and self.exponents_rational
            and self.c_rational
            and self.r_quadratic
            and self.v_greater_one
        )


def check_assumptions(p: InstanceParams) -> AssumptionReport:
    diff = p.l1 - p.l2
    return AssumptionReport(
        difference_nonintegral=diff.denominator > 1,
        exponents_rational=isinstance(p.l1, Fraction) and isinstance(p.l2, Fraction),
        c_rational=isinstance(p.c, Fraction),
        r_quadratic=isinstance(p.r, QuadNum) and p.r.surd != 0,
        v_greater_one=p.v > 1,
    )


# ---------------------------------------------------------------------------
# induced representations, modelled symbolically
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CircleExp:
    """The formal exponential e^(2 pi i (t0 + t1*xi2)) with t0 reduced mod 1."""

    t0: Fraction
    t1: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "t0", Fraction(self.t0) % 1)
        object.__setattr__(self, "t1", Fraction(self.t1))

    @property
    def is_root_of_unity(self) -> bool:
        return self.t1 == 0

    def __mul__(self, other: "CircleExp") -> "CircleExp":
        return CircleExp(self.t0 + other.t0, self.t1 + other.t1)

    def inverse(self) -> "CircleExp":
        return CircleExp(-self.t0, -self.t1)

    def __repr__(self):
        return f"e(2*pi*i*({self.t0} + {self.t1}*xi2))"


_ONE_EXP = CircleExp(Fraction(0))


@dataclass(frozen=True)
class MonomialMatrix2:
    """A 2x2 matrix with one nonzero entry per row and column.

    ``swap=False`` is diag(e1, e2); ``swap=True`` is antidiag with e1 in
    the top-right and e2 in the bottom-left.
    """

    swap: bool
    e1: CircleExp
    e2: CircleExp

    def __mul__(self, other: "MonomialMatrix2") -> "MonomialMatrix2":
        if not self.swap and not other.swap:
            return MonomialMatrix2(False, self.e1 * other.e1, self.e2 * other.e2)
        if not self.swap and other.swap:
            return MonomialMatrix2(True, self.e1 * other.e1, self.e2 * other.e2)
        if self.swap and not other.swap:
            return MonomialMatrix2(True, self.e1 * other.e2, self.e2 * other.e1)
        return MonomialMatrix2(False, self.e1 * other.e2, self.e2 * other.e1)

    @property
    def is_scalar(self) -> bool:
        return not self.swap and self.e1 == self.e2

    @property
    def trace_is_zero(self) -> bool:
        """Exactly decidable: antidiagonal, or diagonal entries differing by -1."""
        if self.swap:
            return True
        return self.e1.t1 == self.e2.t1 and (self.e1.t0 - self.e2.t0) % 1 == Fraction(1, 2)


def _identity() -> MonomialMatrix2:
    return MonomialMatrix2(False, _ONE_EXP, _ONE_EXP)


WORD_TOKENS = ("T", "T^-1", "U^2", "U^-2", "-I")


def rep_word_eval(word, xi1: Fraction) -> MonomialMatrix2:
    """Evaluate the induced representation on a word in T, U^2 and -I.

    The generator images are antidiag(1, alpha) for T and
    diag(beta, alpha/beta) for U^2, with alpha = e^(2 pi i xi1) a root of
    unity and beta = e^(2 pi i xi2) kept formal.
    """
    xi1 = Fraction(xi1)
    alpha = CircleExp(xi1)
    beta = CircleExp(Fraction(0), Fraction(1))
    gens = {
        "T": MonomialMatrix2(True, _ONE_EXP, alpha),
        "T^-1": MonomialMatrix2(True, alpha.inverse(), _ONE_EXP),
        "U^2": MonomialMatrix2(False, beta, alpha * beta.inverse()),
        "U^-2": MonomialMatrix2(False, beta.inverse(), alpha.inverse() * beta),
        "-I": _identity(),
    }
    if isinstance(word, str):
        word = word.split()
    out = _identity()
    for token in word:
        if token not in gens:
            raise ValueError(f"unknown generator {token!r}; use one of {WORD_TOKENS}")
        out = out * gens[token]
    return out


@dataclass(frozen=True)
class InducedClasses:
    """Congruence classes mod Z of the exponents of an induced instance."""

    k0: int
    m_classes: tuple[Fraction, Fraction]
    l_classes: tuple[Fraction, Fraction]
    r_classes: tuple[QuadNum, QuadNum]

    def exponents(self, shifts: tuple[int, int, int, int]) -> ExponentData:
        """Concrete ExponentData from integer shifts (validated downstream)."""
        s1, s2, s3, s4 = shifts
        return ExponentData(
            k0=self.k0,
            l1=self.l_classes[0] + s1,
            l2=self.l_classes[1] + s2,
            r1=self.r_classes[0] + s3,
            r2=self.r_classes[1] + s4,
        )


def induced_exponent_classes(
    xi1: Fraction, xi2: QuadNum, k0: int, shift_sign: str
) -> InducedClasses:
    """Exponent classes of the representation induced from a character.

    The eigenvalues of the image of T are the two square roots of
    e^(2 pi i xi1), so the m-classes are xi1/2 and xi1/2 + 1/2.  The
    l-classes are the m-classes shifted by k0/6, with the sign of the
    shift chosen by ``shift_sign`` ("plus" or "minus"); the two
    conventions coincide whenever 6 divides k0.  The r-classes are
    -xi2 - k0/3 and xi2 - xi1 - k0/3.
    """
    if shift_sign not in ("plus", "minus"):
        raise ValueError("shift_sign must be 'plus' or 'minus'")
    if not isinstance(xi2, QuadNum) or xi2.surd == 0:
        raise ConsistencyError("xi2 must be a quadratic irrational")
    xi1 = Fraction(xi1)
    m1 = (xi1 / 2) % 1
    m2 = (xi1 / 2 + Fraction(1, 2)) % 1
    shift = Fraction(k0, 6) if shift_sign == "plus" else -Fraction(k0, 6)
    l1 = (m1 + shift) % 1
    l2 = (m2 + shift) % 1

    def reduce_mod_one(x: QuadNum) -> QuadNum:
        return QuadNum(x.rat % 1, x.surd, x.M)

    r1 = reduce_mod_one(-xi2 - Fraction(k0, 3))
    r2 = reduce_mod_one(xi2 - xi1 - Fraction(k0, 3))
    return InducedClasses(k0, (m1, m2), (l1, l2), (r1, r2))


# ---------------------------------------------------------------------------
# worked instances
# ---------------------------------------------------------------------------


def seed_exponents(name: str) -> ExponentData:
    """Built-in instances: 'm2' (field constant 2) and 'm5' (field constant 5)."""
    if name == "m2":
        return ExponentData(
            k0=0, l1=Fraction(0), l2=Fraction(1, 2),
            r1=QuadNum(Fraction(0), Fraction(1), 2),
            r2=QuadNum(Fraction(0), Fraction(-1), 2),
        )
    if name == "m5":
        return ExponentData(
            k0=0, l1=Fraction(0), l2=Fraction(1, 2),
            r1=QuadNum(Fraction(0), Fraction(1), 5),
            r2=QuadNum(Fraction(0), Fraction(-1), 5),
        )
    raise ValueError(f"unknown seed instance {name!r} (try 'm2' or 'm5')")
