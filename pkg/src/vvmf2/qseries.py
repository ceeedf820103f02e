"""Truncated exact power series q^lead * (c0 + c1 q^step + c2 q^(2*step) + ...).

The leading exponent and the step are rationals whose denominators divide
the series' lattice constant (24 by default, which covers eta, q^(1/2)
and q^(1/4) expansions at once).  Truncation is explicit: a series knows
its coefficients up to, but not including, ``horizon``; reading past the
horizon raises instead of silently returning zero.

A zero series keeps ``coeffs == ()`` and records in ``lead`` the exponent
up to which it is known to vanish.  Coefficients are ``Fraction`` or
``QuadNum`` and may be mixed; arithmetic promotes through the coefficient
operators themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import LatticeMismatch, TruncationError
from .quadratic import FieldElement, QuadNum

Scalar = Union[int, Fraction, QuadNum]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _num(x: Scalar) -> FieldElement:
    return Fraction(x) if isinstance(x, int) else x


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    """Positive generator of the group Z*a + Z*b inside Q."""
    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    return Fraction(
        math.gcd(a.numerator * b.denominator, b.numerator * a.denominator),
        a.denominator * b.denominator,
    )


@dataclass(frozen=True)
class PureQSeries:
    """A pure q-expansion, truncated, with exponents on a fixed lattice."""

    lead: Fraction
    step: Fraction
    coeffs: tuple
    lattice: int = 24

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.lattice % self.lead.denominator != 0:
            raise LatticeMismatch(
                f"leading exponent {self.lead} is off the 1/{self.lattice} lattice"
            )
        if self.lattice % self.step.denominator != 0:
            raise LatticeMismatch(f"step {self.step} is off the 1/{self.lattice} lattice")
        if self.coeffs and not self.coeffs[0]:
            raise ValueError("non-normalized series: leading coefficient is zero")

    # -- bookkeeping -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def horizon(self) -> Fraction:
        """First exponent about which nothing is known (exclusive bound)."""
        return self.lead + len(self.coeffs) * self.step

    @property
    def order(self) -> int:
        """Truncation order N: coefficients c0..cN are known."""
        return len(self.coeffs) - 1

    def coeff(self, exponent: Scalar) -> FieldElement:
        """Coefficient of q^exponent; 0 off the support, error past the horizon."""
        e = Fraction(exponent) if isinstance(exponent, int) else exponent
        if e >= self.horizon:
            raise TruncationError(f"coefficient of q^{e} is beyond horizon q^{self.horizon}")
        if self.is_zero or e < self.lead:
            return _ZERO
        rel = (e - self.lead) / self.step
        if rel.denominator != 1:
            return _ZERO
        return self.coeffs[int(rel)]

    def _check_partner(self, other: "PureQSeries"):
        if self.lattice != other.lattice:
            raise LatticeMismatch(
                f"lattice mismatch: 1/{self.lattice} vs 1/{other.lattice}"
            )

    # -- construction helpers ----------------------------------------------

    @staticmethod
    def make(
        lead: Scalar,
        coeffs,
        step: Scalar = 1,
        lattice: int = 24,
    ) -> "PureQSeries":
        """Normalize (strip leading zeros, keep the horizon) and build."""
        lead = Fraction(lead)
        step = Fraction(step)
        cs = [_num(c) for c in coeffs]
        k = 0
        while k < len(cs) and not cs[k]:
            k += 1
        horizon = lead + len(cs) * step
        if k == len(cs):
            return PureQSeries(horizon, step, (), lattice)
        return PureQSeries(lead + k * step, step, tuple(cs[k:]), lattice)

    @staticmethod
    def zero(horizon: Scalar, step: Scalar = 1, lattice: int = 24) -> "PureQSeries":
        return PureQSeries(Fraction(horizon), Fraction(step), (), lattice)

    @staticmethod
    def constant(value: Scalar, count: int, lattice: int = 24) -> "PureQSeries":
        """value + O(q^count) with integer steps."""
        return PureQSeries.make(0, [value] + [0] * (count - 1), 1, lattice)

    # -- grid alignment ----------------------------------------------------

    def _on_grid(self, base: Fraction, g: Fraction, length: int) -> list:
        """Coefficients re-indexed on the grid base + i*g, i < length."""
        out = [_ZERO] * length
        for i, c in enumerate(self.coeffs):
            j = (self.lead + i * self.step - base) / g
            out[int(j)] = c
        return out

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PureQSeries):
            return NotImplemented
        self._check_partner(other)
        horizon = min(self.horizon, other.horizon)
        if self.is_zero and other.is_zero:
            return PureQSeries.zero(horizon, self.step, self.lattice)
        if self.is_zero:
            return other.truncated_at(horizon)
        if other.is_zero:
            return self.truncated_at(horizon)
        g = _frac_gcd(_frac_gcd(self.step, other.step), self.lead - other.lead)
        base = min(self.lead, other.lead)
        length = int((horizon - base) / g)
        a = self.truncated_at(horizon)._on_grid(base, g, length)
        for i, c in enumerate(other.truncated_at(horizon)._on_grid(base, g, length)):
            a[i] = a[i] + c
        return PureQSeries.make(base, a, g, self.lattice)

    def __sub__(self, other):
        if not isinstance(other, PureQSeries):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return PureQSeries(self.lead, self.step, tuple(-c for c in self.coeffs), self.lattice)

    def truncated_at(self, horizon: Fraction) -> "PureQSeries":
        """Forget knowledge at and beyond the given exponent."""
        if horizon >= self.horizon:
            return self
        if self.is_zero or horizon <= self.lead:
            return PureQSeries.zero(min(horizon, self.horizon), self.step, self.lattice)
        n = (horizon - self.lead) / self.step
        keep = int(n) + (1 if n.denominator != 1 else 0)
        return PureQSeries(self.lead, self.step, self.coeffs[:keep], self.lattice)

    def scaled(self, c: Scalar) -> "PureQSeries":
        """Scalar multiple; a zero scalar yields the zero series."""
        c = _num(c)
        if not c:
            return PureQSeries.zero(self.horizon, self.step, self.lattice)
        return PureQSeries(self.lead, self.step, tuple(c * x for x in self.coeffs), self.lattice)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadNum)):
            return self.scaled(other)
        if not isinstance(other, PureQSeries):
            return NotImplemented
        self._check_partner(other)
        if self.is_zero or other.is_zero:
            # 0 + O(q^H) times v = O(q^(H + lead_v))
            if self.is_zero and other.is_zero:
                h = self.horizon + other.horizon
            elif self.is_zero:
                h = self.horizon + other.lead
            else:
                h = other.horizon + self.lead
            return PureQSeries.zero(h, self.step, self.lattice)
        if self.step == other.step:
            a, b, g = list(self.coeffs), list(other.coeffs), self.step
        else:
            g = _frac_gcd(self.step, other.step)
            a = self._on_grid(self.lead, g, int((self.horizon - self.lead) / g))
            b = other._on_grid(other.lead, g, int((other.horizon - other.lead) / g))
        n = min(len(a), len(b))
        prod = [_ZERO] * n
        for i, ai in enumerate(a):
            if i >= n:
                break
            if not ai:
                continue
            top = min(n - i, len(b))
            for j in range(top):
                if b[j]:
                    prod[i + j] = prod[i + j] + ai * b[j]
        return PureQSeries.make(self.lead + other.lead, prod, g, self.lattice)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QuadNum)):
            return self.scaled(other)
        return NotImplemented

    def inv(self) -> "PureQSeries":
        """Two-sided inverse to the truncation order."""
        if self.is_zero:
            raise ZeroDivisionError("cannot invert a zero series")
        c0 = self.coeffs[0]
        b0 = c0.inverse() if isinstance(c0, QuadNum) else 1 / c0
        n = len(self.coeffs)
        out = [b0] + [_ZERO] * (n - 1)
        for i in range(1, n):
            acc = _ZERO
            for j in range(1, i + 1):
                if self.coeffs[j]:
                    acc = acc + self.coeffs[j] * out[i - j]
            out[i] = -b0 * acc
        return PureQSeries(-self.lead, self.step, tuple(out), self.lattice)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        if n == 0:
            return PureQSeries.constant(1, max(len(self.coeffs), 1), self.lattice)
        out = None
        base = self
        while n:
            if n & 1:
                out = base if out is None else out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def pow_binomial(self, gamma: Scalar) -> "PureQSeries":
        """(1 + X)^gamma for a series 1 + X with X supported above exponent 0.

        Evaluated by the standard power recurrence (u w' = gamma u' w),
        which reproduces the binomial sum sum_t C(gamma, t) X^t exactly.
        """
        if self.is_zero or self.lead != 0 or self.coeffs[0] != 1:
            raise ValueError("binomial power needs a series with leading term exactly 1 at q^0")
        gamma = _num(gamma)
        n = len(self.coeffs)
        w: list = [_ONE] + [_ZERO] * (n - 1)
        for m in range(1, n):
            acc = _ZERO
            for k in range(1, m + 1):
                uk = self.coeffs[k]
                if uk:
                    acc = acc + ((gamma + 1) * k - m) * uk * w[m - k]
            w[m] = acc / m
        return PureQSeries.make(0, w, self.step, self.lattice)

    # -- calculus and substitutions -----------------------------------------

    def theta(self) -> "PureQSeries":
        """The operator q d/dq: the coefficient of q^e picks up a factor e."""
        if self.is_zero:
            return self
        return PureQSeries.make(
            self.lead,
            [(self.lead + i * self.step) * c for i, c in enumerate(self.coeffs)],
            self.step,
            self.lattice,
        )

    def rescale(self, factor: Scalar) -> "PureQSeries":
        """Substitute q -> q^factor (replace tau by factor*tau)."""
        f = Fraction(factor)
        if f <= 0:
            raise ValueError("rescale factor must be positive")
        if self.is_zero:
            return PureQSeries.zero(self.lead * f, self.step * f, self.lattice)
        return PureQSeries(self.lead * f, self.step * f, self.coeffs, self.lattice)

    def shifted(self, delta: Scalar) -> "PureQSeries":
        """Multiply by q^delta."""
        d = Fraction(delta)
        return PureQSeries(self.lead + d, self.step, self.coeffs, self.lattice)

    # -- presentation --------------------------------------------------------

    def render_text(self, terms: int = 8) -> str:
        if self.is_zero:
            return f"0 + O(q^{self.horizon})"
        parts = []
        for i, c in enumerate(self.coeffs[:terms]):
            if not c:
                continue
            e = self.lead + i * self.step
            if e == 0:
                parts.append(f"{c}")
            else:
                parts.append(f"({c})*q^({e})")
        tail = " + ..." if len(self.coeffs) > terms else ""
        return " + ".join(parts or ["0"]) + tail + f" + O(q^{self.horizon})"

    def __repr__(self):
        return f"PureQSeries({self.render_text(4)})"


def equal_through(u: PureQSeries, v: PureQSeries, exponent: Scalar) -> bool:
    """Exact equality of two series through the given exponent (inclusive).

    Raises TruncationError if either side is not known that far; identity
    checks must never pass by running out of coefficients.
    """
    e = Fraction(exponent)
    diff = u - v
    if diff.horizon <= e:
        raise TruncationError(
            f"equality through q^{e} undecidable: difference known only below q^{diff.horizon}"
        )
    return diff.is_zero or diff.lead > e
