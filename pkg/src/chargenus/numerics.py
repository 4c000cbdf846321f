"""Exact rational helpers: Bernoulli numbers, even zeta values and rational intervals.

All rationals are :class:`fractions.Fraction`, which is always normalized.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Union

__all__ = [
    "RationalInterval",
    "bernoulli",
    "signed_bernoulli",
    "zeta_even_coeff",
    "pi_enclosure",
    "interval_ops",
]

_signed: list[Fraction] = [Fraction(1)]
_signed_lock = threading.Lock()


def signed_bernoulli(n: int) -> Fraction:
    """Signed Bernoulli number B_n with B_1 = -1/2.

    Uses sum_{j=0}^{n} C(n+1, j) B_j = 0 and caches the sequence.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    with _signed_lock:
        while len(_signed) <= n:
            m = len(_signed)
            s = sum(comb(m + 1, j) * _signed[j] for j in range(m))
            _signed.append(-s / (m + 1))
        return _signed[n]


def bernoulli(m: int) -> Fraction:
    """Unsigned nontrivial Bernoulli number: B_1 = 1/6, B_2 = 1/30, B_3 = 1/42, ...

    Equals (-1)^(m-1) times the signed Bernoulli number of index 2m.
    """
    if m < 1:
        raise ValueError(f"bernoulli index must be >= 1, got {m}")
    value = signed_bernoulli(2 * m)
    return value if m % 2 == 1 else -value


def zeta_even_coeff(m: int) -> Fraction:
    """zeta(2m) / pi^(2m) as an exact rational, i.e. 2^(2m-1) B_m / (2m)!."""
    if m < 1:
        raise ValueError(f"zeta index must be >= 1, got {m}")
    return Fraction(2 ** (2 * m - 1)) * bernoulli(m) / factorial(2 * m)


Number = Union[int, Fraction]


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval [lo, hi] with rational endpoints; lo == hi is allowed."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Number) -> "RationalInterval":
        return cls(Fraction(x), Fraction(x))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        if isinstance(x, RationalInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def __add__(self, other):
        other = _as_interval(other)
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __mul__(self, other):
        other = _as_interval(other)
        products = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ]
        return RationalInterval(min(products), max(products))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("interval power needs a non-negative integer exponent")
        if n == 0:
            return RationalInterval.point(1)
        a, b = self.lo**n, self.hi**n
        if n % 2 == 1 or self.lo >= 0:
            return RationalInterval(min(a, b), max(a, b))
        if self.hi <= 0:
            return RationalInterval(b, a)
        return RationalInterval(Fraction(0), max(a, b))

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def _as_interval(x) -> RationalInterval:
    if isinstance(x, RationalInterval):
        return x
    return RationalInterval.point(x)


_PI = RationalInterval(Fraction(333, 106), Fraction(355, 113))


def pi_enclosure() -> RationalInterval:
    """[333/106, 355/113], two continued-fraction convergents on either side of pi."""
    return _PI


def interval_ops(a: RationalInterval, b, op: str) -> RationalInterval:
    """Apply ``op`` (``add``, ``mul`` or ``int_power``) soundly.

    For ``int_power`` the second argument is the integer exponent.
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "int_power":
        return a**b
    raise ValueError(f"unknown interval op {op!r}")
