"""Chern numbers of almost complex manifolds and the genera computed from them.

A :class:`ChernData` stores the Chern numbers of a closed almost complex
2n-manifold, one integer per partition of n.  By Milnor's theorem these
numbers determine the complex cobordism class, so they are all the rest of
the package ever looks at.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import Mapping, Optional

from .series import (
    GenusKind,
    GradedPolynomial,
    Partition,
    PowerSeries,
    monomial_name,
    multiplicative_sequence,
    partitions_of,
)

__all__ = [
    "ChernDataError",
    "ManifestError",
    "VerificationFailure",
    "ChernData",
    "PontryaginData",
    "GenusReport",
    "validate",
    "pontryagin_in_chern",
    "chern_to_pontryagin",
    "euler_char",
    "genera",
    "product_chern_data",
    "fixture_cpn",
    "chern_numbers_equal",
    "first_difference",
    "ClassIdentityResult",
    "verify_class_identity",
    "parse_monomial",
    "format_monomial",
    "load_manifest",
    "dump_manifest",
]


class ChernDataError(ValueError):
    pass


class ManifestError(ValueError):
    pass


class VerificationFailure(Exception):
    """An identity that must hold exactly did not; points at an engine bug."""


@dataclass(frozen=True)
class ChernData:
    """Chern numbers of a 2n-manifold; absent partitions have number 0.

    Keys are normalized to :class:`Partition` (non-increasing parts) and zero
    values are dropped, so two instances compare equal exactly when they
    describe the same numbers.
    """

    half_dim: int
    numbers: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.half_dim, int) or self.half_dim < 1:
            raise ChernDataError(f"half_dim must be a positive integer, got {self.half_dim!r}")
        clean: dict = {}
        for key, value in dict(self.numbers).items():
            part = Partition(key)
            if part in clean:
                raise ChernDataError(f"duplicate Chern monomial {format_monomial(part)}")
            if isinstance(value, bool) or int(value) != value:
                raise ChernDataError(
                    f"Chern number of {format_monomial(part)} must be an integer, got {value!r}"
                )
            clean[part] = int(value)
        object.__setattr__(self, "numbers", {k: v for k, v in clean.items() if v})

    @property
    def dim(self) -> int:
        return 2 * self.half_dim

    def __getitem__(self, key) -> int:
        return self.numbers.get(Partition(key), 0)

    def __hash__(self):
        return hash((self.half_dim, frozenset(self.numbers.items())))


@dataclass(frozen=True)
class PontryaginData:
    """Pontryagin numbers of a 4k-manifold, keyed by partitions of k."""

    half_weight: int
    numbers: Mapping = field(default_factory=dict)

    def __getitem__(self, key) -> Fraction:
        return self.numbers.get(Partition(key), Fraction(0))


@dataclass(frozen=True)
class GenusReport:
    signature: Fraction
    a_hat: Fraction
    todd: Fraction
    euler: int

    @property
    def signature_integral(self) -> bool:
        return self.signature.denominator == 1

    @property
    def todd_integral(self) -> bool:
        return self.todd.denominator == 1

    @property
    def a_hat_integral(self) -> bool:
        return self.a_hat.denominator == 1


def validate(d: ChernData) -> bool:
    for key in d.numbers:
        if key.weight != d.half_dim:
            raise ChernDataError(
                f"monomial {format_monomial(key)} has weight {key.weight}, "
                f"but dim {d.dim} needs weight {d.half_dim}"
            )
    return True


def _chern_total(cap: int) -> dict:
    c = {0: GradedPolynomial.constant(1, cap)}
    for i in range(1, cap + 1):
        c[i] = GradedPolynomial.variable(i, cap)
    return c


@lru_cache(maxsize=None)
def pontryagin_in_chern(i: int, grade_cap: int) -> GradedPolynomial:
    """p_i as a polynomial in c_1, c_2, ... (weight 2i).

    From sum (-1)^i p_i = (sum (-1)^a c_a)(sum c_b).
    """
    c = _chern_total(max(grade_cap, 2 * i))
    total = GradedPolynomial({}, grade_cap)
    for a in range(2 * i + 1):
        term = (c[a] * c[2 * i - a]).with_cap(grade_cap)
        total = total + term.scale((-1) ** a)
    return total.scale((-1) ** i)


def _pontryagin_images(grade_cap: int) -> dict:
    return {i: pontryagin_in_chern(i, grade_cap) for i in range(1, grade_cap // 2 + 1)}


def chern_to_pontryagin(d: ChernData) -> PontryaginData:
    """Pontryagin numbers recovered from Chern numbers; empty unless 4 | dim."""
    n = d.half_dim
    if n % 2:
        return PontryaginData(0, {})
    k = n // 2
    numbers = {part: _pontryagin_monomial(part, n).evaluate(d.numbers) for part in partitions_of(k)}
    return PontryaginData(k, numbers)


@lru_cache(maxsize=None)
def _pontryagin_monomial(part: Partition, n: int) -> GradedPolynomial:
    return GradedPolynomial({part: 1}, n // 2).substitute(_pontryagin_images(n), n)


def euler_char(d: ChernData) -> int:
    return d[(d.half_dim,)]


def genera(d: ChernData) -> GenusReport:
    """Signature, Ahat genus, Todd genus and Euler characteristic."""
    validate(d)
    n = d.half_dim
    signature = a_hat = Fraction(0)
    if n % 2 == 0:
        pont = chern_to_pontryagin(d)
        signature = multiplicative_sequence(GenusKind.SIGNATURE, n // 2).evaluate(pont.numbers)
        a_hat = multiplicative_sequence(GenusKind.AHAT, n // 2).evaluate(pont.numbers)
    todd = multiplicative_sequence(GenusKind.TODD, n).evaluate(d.numbers)
    return GenusReport(signature, a_hat, todd, euler_char(d))


@lru_cache(maxsize=None)
def _split_expansion(part: Partition, na: int, nb: int) -> tuple:
    # c_i(M x N) = sum_{s+t=i} c_s(M) c_t(N); keep only bidegree (na, nb)
    terms: dict = {(Partition(), Partition()): 1}
    for i in part:
        nxt: dict = {}
        for (left, right), coeff in terms.items():
            wl, wr = left.weight, right.weight
            for s in range(i + 1):
                t = i - s
                if wl + s > na or wr + t > nb:
                    continue
                key = (
                    Partition(left + ((s,) if s else ())),
                    Partition(right + ((t,) if t else ())),
                )
                nxt[key] = nxt.get(key, 0) + coeff
        terms = nxt
    return tuple(
        (left, right, coeff)
        for (left, right), coeff in terms.items()
        if left.weight == na and right.weight == nb
    )


def product_chern_data(a: ChernData, b: ChernData) -> ChernData:
    """Chern numbers of the product manifold via the Whitney formula."""
    validate(a)
    validate(b)
    na, nb = a.half_dim, b.half_dim
    numbers = {}
    for part in partitions_of(na + nb):
        numbers[part] = sum(
            coeff * a[left] * b[right]
            for left, right, coeff in _split_expansion(part, na, nb)
        )
    return ChernData(na + nb, numbers)


def fixture_cpn(n: int) -> ChernData:
    """CP^n: total Chern class (1+h)^(n+1) with h^n = 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return ChernData(n, {p: prod(comb(n + 1, i) for i in p) for p in partitions_of(n)})


def first_difference(a: ChernData, b: ChernData) -> Optional[Partition]:
    """First partition (reverse-lex order) where the numbers differ; None if equal.

    Raises ChernDataError if the dimensions differ.
    """
    if a.half_dim != b.half_dim:
        raise ChernDataError(f"dimensions differ: {a.dim} vs {b.dim}")
    keys = set(a.numbers) | set(b.numbers)
    known = [p for p in partitions_of(a.half_dim) if p in keys]
    stray = sorted(keys - set(known), reverse=True)
    for key in known + stray:
        if a[key] != b[key]:
            return key
    return None


def chern_numbers_equal(a: ChernData, b: ChernData) -> bool:
    """Milnor: complex cobordant iff all Chern numbers agree."""
    return a.half_dim == b.half_dim and a.numbers == b.numbers


@dataclass
class ClassIdentityResult:
    holds: bool
    sign: int
    max_degree: int
    per_weight: dict  # sign -> {weight: bool}
    c1_free: dict  # weight -> bool

    @property
    def c1_free_holds(self) -> bool:
        return all(self.c1_free.values())


def _total_class(kind: GenusKind, weight_cap: int, in_pontryagin: bool) -> GradedPolynomial:
    limit = weight_cap // 2 if in_pontryagin else weight_cap
    total = GradedPolynomial.constant(1, limit)
    for n in range(1, limit + 1):
        total = total + multiplicative_sequence(kind, n).with_cap(limit)
    return total


def _exp_half_c1(sign: int, cap: int) -> GradedPolynomial:
    series = PowerSeries.variable(cap).scale(Fraction(sign, 2)).exp()
    return GradedPolynomial({(1,) * j: c for j, c in enumerate(series.coefficients)}, cap)


def verify_class_identity(max_degree: int) -> ClassIdentityResult:
    """Compare the Ahat class (p_i written in c_j) with exp(+-c_1/2) * Todd class.

    Raises VerificationFailure if neither sign works through ``max_degree``.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    cap = max_degree
    a_hat = _total_class(GenusKind.AHAT, cap, True).substitute(_pontryagin_images(cap), cap)
    todd = _total_class(GenusKind.TODD, cap, False)

    per_weight = {}
    for sign in (-1, 1):
        rhs = _exp_half_c1(sign, cap) * todd
        per_weight[sign] = {
            w: a_hat.homogeneous_part(w) == rhs.homogeneous_part(w) for w in range(cap + 1)
        }
    good = [s for s in (-1, 1) if all(per_weight[s].values())]
    if not good:
        raise VerificationFailure(
            f"Ahat = exp(+-c1/2) Td fails for both signs below weight {max_degree}"
        )
    a_free = a_hat.without_variable(1)
    t_free = todd.without_variable(1)
    c1_free = {
        w: a_free.homogeneous_part(w) == t_free.homogeneous_part(w) for w in range(cap + 1)
    }
    return ClassIdentityResult(True, good[0], max_degree, per_weight, c1_free)


_FACTOR = re.compile(r"c([1-9][0-9]*)(?:\^([0-9]+))?$")


def parse_monomial(text: str) -> Partition:
    """Parse ``c1^2*c3`` style strings; factors strictly ascending, no ``^1``."""
    if not isinstance(text, str) or not text:
        raise ManifestError(f"bad Chern monomial {text!r}")
    parts: list = []
    last = 0
    for factor in text.split("*"):
        m = _FACTOR.match(factor)
        if not m:
            raise ManifestError(f"bad Chern monomial {text!r}: cannot read factor {factor!r}")
        index = int(m.group(1))
        if m.group(2) is None:
            exponent = 1
        else:
            if m.group(2).startswith("0") or int(m.group(2)) < 2:
                raise ManifestError(
                    f"bad Chern monomial {text!r}: exponent must be >= 2 when written"
                )
            exponent = int(m.group(2))
        if index <= last:
            raise ManifestError(f"bad Chern monomial {text!r}: factors must be sorted ascending")
        last = index
        parts += [index] * exponent
    return Partition(parts)


def format_monomial(part) -> str:
    return monomial_name(Partition(part), "c")


def load_manifest(text: str) -> ChernData:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest is not valid JSON: {exc}") from None
    if not isinstance(obj, dict) or "dim" not in obj or "chern" not in obj:
        raise ManifestError("manifest needs fields 'dim' and 'chern'")
    dim = obj["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim <= 0 or dim % 2:
        raise ManifestError(f"dim must be a positive even integer, got {dim!r}")
    chern = obj["chern"]
    if not isinstance(chern, dict):
        raise ManifestError("'chern' must map monomial strings to integers")
    numbers = {}
    for key, value in chern.items():
        part = parse_monomial(key)
        if part.weight != dim // 2:
            raise ManifestError(
                f"monomial {key!r} has weight {part.weight}, but dim {dim} needs weight {dim // 2}"
            )
        if isinstance(value, bool) or not isinstance(value, int):
            raise ManifestError(f"Chern number for {key!r} must be an integer, got {value!r}")
        numbers[part] = value
    return ChernData(dim // 2, numbers)


def dump_manifest(d: ChernData) -> str:
    chern = {format_monomial(p): d[p] for p in partitions_of(d.half_dim) if d[p]}
    return json.dumps({"dim": d.dim, "chern": chern}, indent=2) + "\n"
