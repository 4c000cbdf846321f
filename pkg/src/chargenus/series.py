"""Partitions, truncated power series and multiplicative sequences.

A multiplicative sequence K = (K_1, K_2, ...) attached to a power series
Q(z) = 1 + q_1 z + q_2 z^2 + ... is read off from prod_j Q(x_j): its weight-n
part is symmetric in the formal roots x_j, and rewriting it in the elementary
symmetric functions v_i of the roots gives K_n(v_1, ..., v_n).
"""
from __future__ import annotations

import enum
import threading
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence

__all__ = [
    "Partition",
    "partitions_of",
    "conjugate",
    "dominates",
    "PowerSeries",
    "series_arith",
    "GenusKind",
    "q_series",
    "GradedPolynomial",
    "elementary_in_monomials",
    "multiplicative_sequence",
    "genus_coefficient",
]


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Construction sorts its input, so ``Partition((1, 2)) == Partition((2, 1))``.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if parts and parts[-1] < 1:
            raise ValueError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def parts(self) -> tuple:
        return tuple(self)

    @property
    def weight(self) -> int:
        return sum(self)

    def __repr__(self):
        return f"Partition({tuple(self)!r})"


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(n: int) -> list:
    """All partitions of ``n`` in reverse-lexicographic order, (n) first."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return [Partition(p) for p in _partitions(n, n)]


def conjugate(p: Sequence[int]) -> Partition:
    if not p:
        return Partition()
    return Partition(sum(1 for part in p if part > i) for i in range(p[0]))


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """True if a >= b in dominance order (same weight assumed)."""
    sa = sb = 0
    for i in range(max(len(a), len(b))):
        sa += a[i] if i < len(a) else 0
        sb += b[i] if i < len(b) else 0
        if sa < sb:
            return False
    return True


class PowerSeries:
    """Power series truncated after z^order, with Fraction coefficients."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable, order: Optional[int] = None):
        coeffs = [Fraction(c) for c in coefficients]
        if order is not None:
            coeffs = (coeffs + [Fraction(0)] * (order + 1))[: order + 1]
        if not coeffs:
            raise ValueError("a power series needs at least a constant term")
        self.coefficients = tuple(coeffs)

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([1], order)

    @classmethod
    def variable(cls, order: int) -> "PowerSeries":
        return cls([0, 1], order)

    @property
    def truncation_order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, j: int) -> Fraction:
        return self.coefficients[j]

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"PowerSeries({[str(c) for c in self.coefficients]})"

    def _check(self, other: "PowerSeries"):
        if other.truncation_order != self.truncation_order:
            raise ValueError("power series must share a truncation order")

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        return PowerSeries(a + b for a, b in zip(self.coefficients, other.coefficients))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        return PowerSeries(a - b for a, b in zip(self.coefficients, other.coefficients))

    def __neg__(self):
        return PowerSeries(-a for a in self.coefficients)

    def scale(self, c) -> "PowerSeries":
        return PowerSeries(c * a for a in self.coefficients)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        a, b = self.coefficients, other.coefficients
        n = len(a)
        return PowerSeries(sum(a[i] * b[j - i] for i in range(j + 1)) for j in range(n))

    def __truediv__(self, other: "PowerSeries") -> "PowerSeries":
        self._check(other)
        b = other.coefficients
        if b[0] == 0:
            raise ZeroDivisionError("divisor series has zero constant term")
        a = self.coefficients
        out: list = []
        for j in range(len(a)):
            s = a[j] - sum(out[i] * b[j - i] for i in range(j))
            out.append(s / b[0])
        return PowerSeries(out)

    def exp(self) -> "PowerSeries":
        """exp of a series with zero constant term, via f' = a' f."""
        a = self.coefficients
        if a[0] != 0:
            raise ValueError("exp needs a zero constant term")
        out = [Fraction(1)]
        for j in range(1, len(a)):
            out.append(sum(i * a[i] * out[j - i] for i in range(1, j + 1)) / j)
        return PowerSeries(out)

    def compose_scale(self, c) -> "PowerSeries":
        """f(c z)."""
        c = Fraction(c)
        return PowerSeries(a * c**j for j, a in enumerate(self.coefficients))

    def shift_down(self, k: int = 1) -> "PowerSeries":
        """Divide by z^k; the first k coefficients must vanish. Loses k orders."""
        if any(self.coefficients[:k]):
            raise ValueError("series is not divisible by z^%d" % k)
        return PowerSeries(self.coefficients[k:])

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coefficients, order)


def series_arith(a: PowerSeries, b=None, op: str = "add") -> PowerSeries:
    """Dispatch one of ``add``, ``mul``, ``div``, ``exp`` or ``compose_scale``.

    ``exp`` ignores ``b``; ``compose_scale`` takes the scalar as ``b``.
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "exp":
        return a.exp()
    if op == "compose_scale":
        return a.compose_scale(b)
    raise ValueError(f"unknown series op {op!r}")


class GenusKind(enum.Enum):
    SIGNATURE = "L"
    AHAT = "Ahat"
    TODD = "Todd"

    @property
    def variable(self) -> str:
        """Prefix of the graded variables the sequence is read in."""
        return "c" if self is GenusKind.TODD else "p"

    @classmethod
    def parse(cls, name: str) -> "GenusKind":
        key = name.strip().lower()
        for kind in cls:
            if key in (kind.value.lower(), kind.name.lower()):
                return kind
        if key in ("sigma", "l-genus"):
            return cls.SIGNATURE
        raise ValueError(f"unknown genus {name!r}; expected L, Ahat or Todd")


def _sinh_cosh(order: int):
    """sinh(t) and cosh(t) truncated after t^order, built from exp(t) and exp(-t)."""
    t = PowerSeries.variable(order)
    e_plus = t.exp()
    e_minus = (-t).exp()
    half = Fraction(1, 2)
    return (e_plus - e_minus).scale(half), (e_plus + e_minus).scale(half)


def _even_part_in_z(series: PowerSeries, order: int) -> PowerSeries:
    odd = series.coefficients[1::2]
    if any(odd):
        raise ArithmeticError("odd powers of t survived in an even series")
    return PowerSeries(series.coefficients[0::2], order)


@lru_cache(maxsize=None)
def q_series(kind: GenusKind, order: int) -> PowerSeries:
    """Characteristic power series of the genus, truncated after degree ``order``.

    Signature: sqrt(z)/tanh(sqrt(z)); Ahat: (sqrt(z)/2)/sinh(sqrt(z)/2), both
    in z.  Todd: x/(1 - exp(-x)) in x.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if kind is GenusKind.TODD:
        n = order + 1
        x = PowerSeries.variable(n)
        denom = (PowerSeries.one(n) - (-x).exp()).shift_down(1)
        return PowerSeries.one(order) / denom.truncate(order)

    # work in t = sqrt(z); need t^(2*order), plus one for the shift
    n = 2 * order + 1
    sinh, cosh = _sinh_cosh(n)
    sinh_over_t = sinh.shift_down(1)
    cosh = cosh.truncate(n - 1)
    if kind is GenusKind.SIGNATURE:
        in_t = cosh / sinh_over_t
    else:
        in_t = PowerSeries.one(n - 1) / sinh_over_t.compose_scale(Fraction(1, 2))
    return _even_part_in_z(in_t, order)


class GradedPolynomial:
    """Polynomial in graded variables v_1, v_2, ... with deg v_i = i.

    ``terms`` maps a Partition (i_1, ..., i_r), meaning v_{i_1}...v_{i_r}, to a
    nonzero Fraction.  Terms heavier than ``grade_cap`` are dropped.
    """

    __slots__ = ("_terms", "grade_cap")

    def __init__(self, terms: Optional[Mapping] = None, grade_cap: int = 0):
        self.grade_cap = grade_cap
        clean: dict = {}
        for key, value in (terms or {}).items():
            key = Partition(key)
            if key.weight > grade_cap:
                continue
            value = Fraction(value)
            total = clean.get(key, Fraction(0)) + value
            if total:
                clean[key] = total
            else:
                clean.pop(key, None)
        self._terms = MappingProxyType(clean)

    @property
    def terms(self) -> Mapping:
        return self._terms

    @classmethod
    def constant(cls, c, grade_cap: int) -> "GradedPolynomial":
        return cls({(): c}, grade_cap)

    @classmethod
    def variable(cls, i: int, grade_cap: int) -> "GradedPolynomial":
        return cls({(i,): 1}, grade_cap)

    def coefficient(self, key) -> Fraction:
        return self._terms.get(Partition(key), Fraction(0))

    def homogeneous_part(self, weight: int) -> "GradedPolynomial":
        return GradedPolynomial(
            {k: v for k, v in self._terms.items() if k.weight == weight}, self.grade_cap
        )

    def without_variable(self, i: int) -> "GradedPolynomial":
        """Drop every monomial containing v_i."""
        return GradedPolynomial(
            {k: v for k, v in self._terms.items() if i not in k}, self.grade_cap
        )

    def with_cap(self, grade_cap: int) -> "GradedPolynomial":
        return GradedPolynomial(self._terms, grade_cap)

    def __eq__(self, other):
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        merged = dict(self._terms)
        for k, v in other._terms.items():
            merged[k] = merged.get(k, 0) + v
        return GradedPolynomial(merged, min(self.grade_cap, other.grade_cap))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        return self + (-other)

    def scale(self, c) -> "GradedPolynomial":
        return GradedPolynomial({k: c * v for k, v in self._terms.items()}, self.grade_cap)

    def __mul__(self, other):
        if not isinstance(other, GradedPolynomial):
            return self.scale(other)
        cap = min(self.grade_cap, other.grade_cap)
        out: dict = {}
        for ka, va in self._terms.items():
            wa = ka.weight
            for kb, vb in other._terms.items():
                if wa + kb.weight > cap:
                    continue
                key = Partition(ka + kb)
                out[key] = out.get(key, 0) + va * vb
        return GradedPolynomial(out, cap)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "GradedPolynomial":
        result = GradedPolynomial.constant(1, self.grade_cap)
        for _ in range(n):
            result = result * self
        return result

    def substitute(self, images: Mapping, grade_cap: int) -> "GradedPolynomial":
        """Replace v_i by ``images[i]`` and expand, truncating at ``grade_cap``."""
        cache: dict = {}

        def power(i: int, e: int) -> GradedPolynomial:
            if (i, e) not in cache:
                cache[(i, e)] = images[i].with_cap(grade_cap) ** e
            return cache[(i, e)]

        total = GradedPolynomial({}, grade_cap)
        for key, value in self._terms.items():
            term = GradedPolynomial.constant(value, grade_cap)
            for i, e in Counter(key).items():
                term = term * power(i, e)
            total = total + term
        return total

    def evaluate(self, values: Mapping) -> Fraction:
        """Pair each monomial with ``values[partition]`` (missing keys count as 0)."""
        return sum(
            (v * values.get(k, 0) for k, v in self._terms.items()), Fraction(0)
        )

    def __repr__(self):
        return f"GradedPolynomial({self.format()}, cap={self.grade_cap})"

    def format(self, var: str = "v") -> str:
        if not self._terms:
            return "0"
        items = sorted(self._terms.items(), key=lambda kv: (kv[0].weight, kv[0]))
        return " + ".join(f"({v})*{monomial_name(k, var)}" for k, v in items)


def monomial_name(key: Sequence[int], var: str = "v") -> str:
    """Monomial string with ascending indices, e.g. ``c1^2*c3``; ``1`` if empty."""
    if not key:
        return "1"
    counts = sorted(Counter(key).items())
    return "*".join(f"{var}{i}" + (f"^{e}" if e >= 2 else "") for i, e in counts)


@lru_cache(maxsize=None)
def _count_01(rows: tuple, cols: tuple) -> int:
    # Number of 0-1 matrices with the given row and column sums.
    # `cols` is a partition; equal column sums are interchangeable.
    if not rows:
        return 0 if cols else 1
    r, rest = rows[0], rows[1:]
    if r > len(cols):
        return 0
    groups = sorted(Counter(cols).items(), reverse=True)
    total = 0

    def choose(g: int, need: int, weight: int, taken: list):
        nonlocal total
        if g == len(groups):
            if need == 0:
                new_cols = []
                for (value, mult), t in zip(groups, taken):
                    new_cols += [value] * (mult - t) + [value - 1] * t
                key = tuple(sorted((c for c in new_cols if c > 0), reverse=True))
                total += weight * _count_01(rest, key)
            return
        mult = groups[g][1]
        for t in range(min(mult, need) + 1):
            choose(g + 1, need - t, weight * comb(mult, t), taken + [t])

    choose(0, r, 1, [])
    return total


def elementary_in_monomials(mu: Sequence[int], lam: Sequence[int]) -> int:
    """Coefficient of the monomial symmetric function m_lam in e_mu."""
    return _count_01(tuple(Partition(mu)), tuple(Partition(lam)))


_seq_lock = threading.Lock()
_seq_cache: dict = {}


def multiplicative_sequence(
    kind: GenusKind, n: int, roots: Optional[int] = None
) -> GradedPolynomial:
    """K_n for ``kind`` as a polynomial in v_1..v_n (homogeneous of weight n).

    ``roots`` is the number N of formal roots; any N >= n gives the same K_n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    roots = n if roots is None else roots
    key = (kind, n, min(roots, n))
    with _seq_lock:
        cached = _seq_cache.get(key)
    if cached is not None:
        return cached
    result = _solve_sequence(kind, n, roots)
    with _seq_lock:
        return _seq_cache.setdefault(key, result)


def _solve_sequence(kind: GenusKind, n: int, roots: int) -> GradedPolynomial:
    q = q_series(kind, n).coefficients
    # prod_j Q(x_j) = sum_lam (prod_i q_{lam_i}) m_lam
    basis = [lam for lam in partitions_of(n) if len(lam) <= roots]
    coeffs: dict = {}
    solved: list = []
    # e_{lam'} = m_lam + (terms m_nu with nu dominated by lam): process in
    # reverse-lex order so every e_mu contributing to m_lam is already known.
    for lam in basis:
        target = Fraction(prod(q[part] for part in lam))
        for mu, c in solved:
            if c and dominates(conjugate(mu), lam):
                target -= c * elementary_in_monomials(mu, lam)
        mu = conjugate(lam)
        coeffs[mu] = target
        solved.append((mu, target))
    return GradedPolynomial(coeffs, n)


def genus_coefficient(kind: GenusKind, part: Sequence[int]) -> Fraction:
    """Coefficient of v_{i_1}...v_{i_r} in K_{weight}, e.g. h_2 = 7/45 for (2,)."""
    part = Partition(part)
    if part.weight < 1:
        raise ValueError("partition weight must be >= 1")
    return multiplicative_sequence(kind, part.weight).coefficient(part)
