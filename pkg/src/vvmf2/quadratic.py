"""Exact arithmetic in Q and in a fixed real or imaginary quadratic field Q(sqrt(M)).

Rationals are plain ``fractions.Fraction``; quadratic irrationals are
``QuadNum`` values ``rat + surd*sqrt(M)`` with ``M`` square-free.  Mixed
operations promote rationals into the quadratic field, while two
``QuadNum`` with different ``M`` never mix (one field per computation).

Also houses the small number-theoretic kit the rest of the package leans
on: Pochhammer symbols, generalized binomial coefficients, Legendre
symbols, primality, and denominators of algebraic numbers (smallest
positive ``Z`` with ``Z*z`` an algebraic integer).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Rational = int | Fraction

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond any prime used here."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(bound: int) -> list[int]:
    """All primes <= bound, by sieve."""
    if bound < 2:
        return []
    flags = bytearray([1]) * (bound + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(bound) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [i for i, f in enumerate(flags) if f]


def legendre(M: int, p: int) -> int:
    """Legendre symbol (M/p) for an odd prime p: 0, +1 or -1."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"legendre symbol needs an odd prime, got p={p}")
    a = M % p
    if a == 0:
        return 0
    s = pow(a, (p - 1) // 2, p)
    return 1 if s == 1 else -1


def is_square_free(m: int) -> bool:
    if m == 0:
        return False
    m = abs(m)
    d = 2
    while d * d <= m:
        if m % (d * d) == 0:
            return False
        while m % d == 0:
            m //= d
        d += 1
    return True


def _as_fraction(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class QuadNum:
    """An element rat + surd*sqrt(M) of Q(sqrt(M)), M square-free and not 0 or 1."""

    rat: Fraction
    surd: Fraction
    M: int

    def __post_init__(self):
        object.__setattr__(self, "rat", _as_fraction(self.rat))
        object.__setattr__(self, "surd", _as_fraction(self.surd))
        if self.M in (0, 1) or not is_square_free(self.M):
            raise ValueError(f"M must be square-free and not 0 or 1, got {self.M}")

    # -- structure ---------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.surd == 0

    def conjugate(self) -> "QuadNum":
        return QuadNum(self.rat, -self.surd, self.M)

    def norm(self) -> Fraction:
        """Field norm rat^2 - M*surd^2 (product with the conjugate)."""
        return self.rat * self.rat - self.M * self.surd * self.surd

    def trace(self) -> Fraction:
        return 2 * self.rat

    def as_fraction(self) -> Fraction:
        if self.surd != 0:
            raise ValueError(f"{self} is irrational")
        return self.rat

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "QuadNum | None":
        if isinstance(other, QuadNum):
            if other.M != self.M:
                raise ValueError(f"mixed quadratic fields: M={self.M} vs M={other.M}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum(_as_fraction(other), Fraction(0), self.M)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum(self.rat + o.rat, self.surd + o.surd, self.M)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum(self.rat - o.rat, self.surd - o.surd, self.M)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QuadNum(-self.rat, -self.surd, self.M)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum(
            self.rat * o.rat + self.M * self.surd * o.surd,
            self.rat * o.surd + self.surd * o.rat,
            self.M,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadNum":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(M))")
        return QuadNum(self.rat / n, -self.surd / n, self.M)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadNum(Fraction(1), Fraction(0), self.M)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QuadNum):
            if other.M != self.M:
                # distinct fields only share the rationals
                return self.surd == 0 and other.surd == 0 and self.rat == other.rat
            return self.rat == other.rat and self.surd == other.surd
        if isinstance(other, (int, Fraction)):
            return self.surd == 0 and self.rat == other
        return NotImplemented

    def __hash__(self):
        if self.surd == 0:
            return hash(self.rat)
        return hash((self.rat, self.surd, self.M))

    def __bool__(self):
        return self.rat != 0 or self.surd != 0

    def __repr__(self):
        if self.surd == 0:
            return str(self.rat)
        if self.rat == 0:
            return f"{self.surd}*sqrt({self.M})"
        sign = "+" if self.surd > 0 else "-"
        return f"{self.rat} {sign} {abs(self.surd)}*sqrt({self.M})"


FieldElement = Fraction | QuadNum


def quad(x: Rational | QuadNum, M: int) -> QuadNum:
    """Embed a rational into Q(sqrt(M)); pass QuadNum of matching M through."""
    if isinstance(x, QuadNum):
        if x.M != M:
            raise ValueError(f"mixed quadratic fields: M={x.M} vs M={M}")
        return x
    return QuadNum(_as_fraction(x), Fraction(0), M)


def norm_trace(z: QuadNum | Rational) -> tuple[Fraction, Fraction]:
    """(norm, trace) of z, i.e. the non-leading minimal-polynomial data."""
    if isinstance(z, QuadNum):
        return z.norm(), z.trace()
    z = _as_fraction(z)
    return z * z, 2 * z


def pochhammer(z, n: int):
    """Rising factorial z(z+1)...(z+n-1); empty product 1 for n = 0."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    out = QuadNum(Fraction(1), Fraction(0), z.M) if isinstance(z, QuadNum) else Fraction(1)
    for i in range(n):
        out = out * (z + i)
    return out


def gen_binomial(z, t: int):
    """Generalized binomial coefficient C(z, t) = (-1)^t (-z)_t / t!."""
    if t < 0:
        raise ValueError("gen_binomial needs t >= 0")
    sign = 1 if t % 2 == 0 else -1
    return sign * pochhammer(-z, t) / math.factorial(t)


def _is_algebraic_integer(z: FieldElement) -> bool:
    if isinstance(z, QuadNum) and z.surd != 0:
        return z.trace().denominator == 1 and z.norm().denominator == 1
    r = z.rat if isinstance(z, QuadNum) else _as_fraction(z)
    return r.denominator == 1


@lru_cache(maxsize=None)
def _sorted_divisors(n: int) -> tuple[int, ...]:
    divs = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            divs.append(d)
            if d != n // d:
                divs.append(n // d)
        d += 1
    return tuple(sorted(divs))


def denominator_of(z: QuadNum | Rational) -> int:
    """Smallest positive Z with Z*z an algebraic integer (1 for z = 0).

    Every algebraic integer of Q(sqrt(M)) has the shape (x + y*sqrt(M))/2
    with x, y integers, so Z divides 2*lcm of the coordinate denominators;
    candidates run over those divisors in ascending order and are tested
    through integrality of trace and norm.
    """
    if isinstance(z, QuadNum):
        if not z:
            return 1
        if z.surd == 0:
            return z.rat.denominator
        bound = 2 * math.lcm(z.rat.denominator, z.surd.denominator)
        for cand in _sorted_divisors(bound):
            if _is_algebraic_integer(cand * z):
                return cand
        raise AssertionError(f"no denominator within forced bound for {z}")
    z = _as_fraction(z)
    return z.denominator if z else 1


def is_p_integral(z: QuadNum | Rational, p: int) -> bool:
    """True iff the prime p does not divide the denominator of z."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    return denominator_of(z) % p != 0


@dataclass(frozen=True)
class HalfForm:
    """Z*z written as (x + y*sqrt(M))/2 with Z the denominator of z."""

    Z: int
    x: int
    y: int
    M: int


def half_form(z: QuadNum) -> HalfForm:
    """Half-integer coordinates of the numerator of z."""
    if not z:
        raise ValueError("half_form needs z != 0")
    Z = denominator_of(z)
    x = 2 * Z * z.rat
    y = 2 * Z * z.surd
    if x.denominator != 1 or y.denominator != 1:
        raise AssertionError(f"numerator of {z} is not half-integral")
    return HalfForm(Z, int(x), int(y), z.M)


def divides_in_integers(p: int, z: QuadNum | Rational) -> bool:
    """True iff an algebraic integer z is divisible by p in the algebraic integers."""
    if not _is_algebraic_integer(z):
        raise ValueError(f"{z} is not an algebraic integer")
    return _is_algebraic_integer(z / p if isinstance(z, QuadNum) else _as_fraction(z) / p)
