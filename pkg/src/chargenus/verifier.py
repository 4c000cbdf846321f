"""Exact checks of the signature / Ahat / Todd relations in dimensions 4k and 8k,
and the arithmetic that rules out total Betti number 3 outside dimension 4.

Everything here is exact rational arithmetic except the one inequality that
involves pi, which goes through :func:`chargenus.numerics.pi_enclosure`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Optional

from .charnum import (
    ChernData,
    VerificationFailure,
    chern_numbers_equal,
    fixture_cpn,
    format_monomial,
    genera,
)
from .numerics import bernoulli, pi_enclosure, zeta_even_coeff
from .series import GenusKind, genus_coefficient

__all__ = [
    "LemmaCoefficients",
    "coefficients",
    "lemma1_residual",
    "lemma2_residual",
    "lemma3_report",
    "lemma3_residual",
    "Status",
    "EstimateReport",
    "estimates_check",
    "corollary_ratios",
    "corollary_check",
    "Branch",
    "Classification",
    "classify_8k",
    "classify_chern_data",
    "ReplayError",
    "ReplayResult",
    "replay_dim4",
    "SignCase",
    "ExclusionCertificate",
    "exclusion_8k",
]


def frac(x) -> str:
    """Exact ``p/q`` string; integers print without a denominator."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class LemmaCoefficients:
    k: int
    r_k: Fraction
    c_td: Fraction
    c_sigma: Fraction
    c_chi: Fraction
    a_k: Fraction
    b_k: Fraction

    @property
    def a_2k(self) -> Fraction:
        return -bernoulli(2 * self.k) / (2 * factorial(4 * self.k))

    @property
    def a_kk(self) -> Fraction:
        # a_{k,k} = a_k^2/2 - a_{2k}/2, checked against the engine for small k
        return self.a_k**2 / 2 - self.a_2k / 2


def coefficients(k: int) -> LemmaCoefficients:
    """C_Td, C_sigma, C_chi and r_k for dimension 8k, from Bernoulli numbers."""
    if k < 1:
        raise ValueError("k must be >= 1")
    b_k = bernoulli(k)
    b_2k = bernoulli(2 * k)
    r_k = b_2k / (comb(4 * k, 2 * k) * b_k**2)
    check = zeta_even_coeff(2 * k) / (2 * zeta_even_coeff(k) ** 2)
    if r_k != check:
        raise VerificationFailure(f"r_{k} from Bernoulli ({r_k}) != zeta form ({check})")
    c_td = 2 ** (4 * k + 1) * ((2 ** (4 * k - 1) - 1) * (1 - r_k) + (3 - 2 ** (2 * k + 1)))
    c_sigma = 1 + r_k
    c_chi = Fraction(2 ** (4 * k + 1) * (2 ** (2 * k) - 1) ** 2) * b_2k / factorial(4 * k)
    a_k = -b_k / (2 * factorial(2 * k))
    return LemmaCoefficients(k, r_k, Fraction(c_td), c_sigma, c_chi, a_k, b_k)


def lemma1_residual(k: int, p_k_value: int) -> Fraction:
    """sigma + 2^(2k+1)(2^(2k-1)-1) Ahat for a 4k-manifold whose only
    nonzero Pontryagin number is p_k; always 0."""
    sigma = genus_coefficient(GenusKind.SIGNATURE, (k,)) * p_k_value
    a_hat = genus_coefficient(GenusKind.AHAT, (k,)) * p_k_value
    return sigma + 2 ** (2 * k + 1) * (2 ** (2 * k - 1) - 1) * a_hat


def lemma2_residual(k: int, pk_sq: int, p2k: int) -> Fraction:
    """LHS - RHS of the 8k relation when only p_k^2 and p_{2k} are nonzero."""
    L, A = GenusKind.SIGNATURE, GenusKind.AHAT
    sigma = genus_coefficient(L, (2 * k,)) * p2k + genus_coefficient(L, (k, k)) * pk_sq
    a_hat = genus_coefficient(A, (2 * k,)) * p2k + genus_coefficient(A, (k, k)) * pk_sq
    lhs = sigma + 2 ** (4 * k + 1) * (2 ** (4 * k - 1) - 1) * a_hat
    rhs = (
        2 ** (4 * k)
        * (2 ** (2 * k) - 1) ** 2
        * (bernoulli(k) / (2 * factorial(2 * k))) ** 2
        * pk_sq
    )
    return lhs - rhs


def lemma3_report(k: int, c2k_sq: int, c4k: int) -> dict:
    """Residuals of the 8k Todd/signature/Euler relation and its intermediate steps.

    Input is a c_1-free 8k-manifold with only c_{2k}^2 and c_{4k} nonzero.
    Every value in the returned dict must be exactly zero.
    """
    data = ChernData(4 * k, {(2 * k, 2 * k): c2k_sq, (4 * k,): c4k})
    g = genera(data)
    co = coefficients(k)
    A = GenusKind.AHAT
    a_k = genus_coefficient(A, (k,))
    a_2k = genus_coefficient(A, (2 * k,))
    a_kk = genus_coefficient(A, (k, k))
    sigma, td, chi = g.signature, g.todd, g.euler
    big = 2 ** (4 * k + 1) * (2 ** (4 * k - 1) - 1)
    pref = 2 ** (4 * k + 2) * (2 ** (2 * k) - 1) ** 2 * a_k**2
    return {
        "main": co.c_td * td - (co.c_sigma * sigma - co.c_chi * chi),
        "ahat_equals_todd": g.a_hat - td,
        "sign_ahat": sigma + big * td - pref * c2k_sq,
        "todd_in_chern": td - ((a_2k + 4 * a_kk) * c2k_sq + 2 * a_2k * chi),
        "todd_sign_ahat": pref * (td - 2 * a_2k * chi) - (a_2k + 4 * a_kk) * (sigma + big * td),
        "normalization": (a_2k + 4 * a_kk) / (2 * a_k**2) - (1 + co.r_k),
        "a_k_closed_form": a_k - co.a_k,
    }


def lemma3_residual(k: int, c2k_sq: int, c4k: int) -> Fraction:
    """C_Td * Td - (C_sigma * sigma - C_chi * chi); always 0.

    Raises VerificationFailure if an intermediate identity is off.
    """
    report = lemma3_report(k, c2k_sq, c4k)
    bad = {name: v for name, v in report.items() if name != "main" and v != 0}
    if bad:
        raise VerificationFailure(f"8k Todd relation: intermediate identities fail at k={k}: {bad}")
    return report["main"]


class Status(enum.Enum):
    VERIFIED = "verified"
    INCONCLUSIVE = "inconclusive"
    VIOLATED = "violated"


@dataclass
class EstimateReport:
    k: int
    c_sigma: Status
    c_chi: Status
    c_td: Status

    @property
    def statuses(self) -> dict:
        return {"c_sigma": self.c_sigma, "c_chi": self.c_chi, "c_td": self.c_td}

    @property
    def all_verified(self) -> bool:
        return all(s is Status.VERIFIED for s in self.statuses.values())


def _decide(flag: bool) -> Status:
    return Status.VERIFIED if flag else Status.VIOLATED


def estimates_check(k: int) -> EstimateReport:
    """1 < C_sigma < 3/2, 0 < C_chi < 8 (2/pi)^(4k), C_Td >= (3/5) 2^(8k-3)."""
    co = coefficients(k)
    sigma_status = _decide(1 < co.c_sigma < Fraction(3, 2))
    td_status = _decide(co.c_td >= Fraction(3, 5) * 2 ** (8 * k - 3))

    # C_chi < 8 (2/pi)^(4k)  <=>  C_chi pi^(4k) < 8 * 2^(4k)
    bound = 8 * 2 ** (4 * k)
    pi_pow = pi_enclosure() ** (4 * k)
    if co.c_chi <= 0:
        chi_status = Status.VIOLATED
    elif co.c_chi * pi_pow.hi < bound:
        chi_status = Status.VERIFIED
    elif co.c_chi * pi_pow.lo >= bound:
        chi_status = Status.VIOLATED
    else:
        chi_status = Status.INCONCLUSIVE
    return EstimateReport(k, sigma_status, chi_status, td_status)


def corollary_ratios(k: int) -> tuple:
    co = coefficients(k)
    return co.c_td / (co.c_sigma + co.c_chi), co.c_sigma / co.c_chi


def corollary_check(k: int) -> tuple:
    """(C_Td/(C_sigma+C_chi) > 4^k, C_sigma/C_chi >= 3^k), decided exactly."""
    first, second = corollary_ratios(k)
    return first > 4**k, second >= 3**k


class Branch(enum.Enum):
    NULL_COBORDANT = "NullCobordant"
    TODD_NONZERO = "ToddNonzero"
    SIGNATURE_NONZERO = "SignatureNonzero"
    CONTRADICTION = "Contradiction"


@dataclass
class Classification:
    branch: Branch
    betti_lower_bound: Optional[int]
    k: int
    todd: Fraction
    signature: Fraction
    euler: int
    integral: bool
    note: str = ""

    def render(self) -> str:
        bound = "none" if self.betti_lower_bound is None else str(self.betti_lower_bound)
        lines = [
            f"k={self.k} dim={8 * self.k}",
            f"todd={frac(self.todd)} sigma={frac(self.signature)} chi={self.euler}",
            f"integral={'true' if self.integral else 'false'}",
            f"branch={self.branch.value}",
            f"betti_lower_bound={bound}",
        ]
        if self.note:
            lines.append(f"note={self.note}")
        return "\n".join(lines)


def classify_8k(k: int, c2k_sq: int, c4k: int) -> Classification:
    """Which case of the 8k trichotomy the numbers (c_{2k}^2, c_{4k}) fall in."""
    g = genera(ChernData(4 * k, {(2 * k, 2 * k): c2k_sq, (4 * k,): c4k}))
    td, sigma, chi = g.todd, g.signature, g.euler
    integral = g.todd_integral and g.signature_integral
    note = "" if integral else "sigma or Td is not an integer; no almost complex manifold has these numbers"
    if td != 0:
        # total Betti >= max(|sigma|, |chi|) > 4^k
        return Classification(Branch.TODD_NONZERO, 4**k + 1, k, td, sigma, chi, integral, note)
    if sigma != 0:
        _, ratio = corollary_ratios(k)
        if abs(chi) != ratio * abs(sigma):
            raise VerificationFailure(f"Td=0 but |chi| != (C_sigma/C_chi)|sigma| at k={k}")
        return Classification(Branch.SIGNATURE_NONZERO, 3**k, k, td, sigma, chi, integral, note)
    if c2k_sq == 0 and c4k == 0:
        return Classification(Branch.NULL_COBORDANT, None, k, td, sigma, chi, integral, note)
    return Classification(
        Branch.CONTRADICTION, None, k, td, sigma, chi, integral,
        "Td = sigma = 0 with nonzero Chern numbers",
    )


def classify_chern_data(d: ChernData) -> Classification:
    """Classify manifest data; it must be 8k-dimensional with only c_{2k}^2, c_{4k}."""
    if d.half_dim % 4:
        raise ValueError(f"classification needs dim divisible by 8, got {d.dim}")
    k = d.half_dim // 4
    allowed = {(2 * k, 2 * k), (4 * k,)}
    extra = [p for p in d.numbers if tuple(p) not in allowed]
    if extra:
        raise ValueError(
            "classification needs c_{2k}^2 and c_{4k} to be the only nonzero numbers; "
            f"found {format_monomial(extra[0])}"
        )
    return classify_8k(k, d[(2 * k, 2 * k)], d[(4 * k,)])


class ReplayError(Exception):
    pass


@dataclass
class ReplayResult:
    sigma: int
    todd: int
    c1_sq: int
    c2: int
    cobordant_to_cp2: bool
    relation: str = ""
    sigma_residue: tuple = ()

    def render(self) -> str:
        return "\n".join(
            [
                "premises: total Betti 3 => chi=3, b_2=1 => |sigma|<=1, sigma and Td integers",
                f"relation: {self.relation}",
                f"sigma_mod: sigma = {self.sigma_residue[0]} mod {self.sigma_residue[1]}",
                f"sigma={self.sigma}",
                f"todd={self.todd}",
                f"c1^2={self.c1_sq}",
                f"c2={self.c2}",
                f"cobordant_to_CP2={'true' if self.cobordant_to_cp2 else 'false'}",
            ]
        )


def replay_dim4() -> ReplayResult:
    """Solve for the Chern numbers of a 4-manifold with total Betti number 3."""
    chi = 3
    # sigma and Td are affine in x = c1^2 once c2 = chi is fixed
    base = genera(ChernData(2, {(2,): chi}))
    unit = genera(ChernData(2, {(1, 1): 1}))
    s0, s1 = base.signature, unit.signature
    t0, t1 = base.todd, unit.todd
    slope = s1 / t1
    const = s0 - slope * t0
    # sigma = slope * Td + const
    if slope.denominator != 1 or const.denominator != 1:
        raise ReplayError(f"sigma = {slope} Td + {const} is not an integral relation")
    slope, const = int(slope), int(const)
    residue = (const % abs(slope), abs(slope))
    solutions = []
    for sigma in (-1, 0, 1):
        todd = Fraction(sigma - const, slope)
        if todd.denominator != 1:
            continue
        x = (sigma - s0) / s1
        if x.denominator != 1:
            continue
        solutions.append((sigma, int(todd), int(x)))
    if len(solutions) != 1:
        raise ReplayError(f"expected one integral solution, found {solutions}")
    sigma, todd, c1_sq = solutions[0]
    if sigma % residue[1] != residue[0]:
        raise ReplayError("solution does not satisfy the congruence")
    result = ChernData(2, {(1, 1): c1_sq, (2,): chi})
    relation = f"sigma + {-const} = {slope} * Td"
    return ReplayResult(
        sigma, todd, c1_sq, chi,
        chern_numbers_equal(result, fixture_cpn(2)),
        relation, residue,
    )


@dataclass
class SignCase:
    sigma: int
    todd: Fraction
    contradiction: Optional[str]
    detail: str = ""
    solved_c2k_sq: Optional[Fraction] = None
    solved_chi: Optional[Fraction] = None


@dataclass
class ExclusionCertificate:
    k: int
    coefficients: LemmaCoefficients
    cases: list = field(default_factory=list)
    chi: int = 3

    @property
    def excluded(self) -> bool:
        return all(case.contradiction for case in self.cases)

    def render(self) -> str:
        co = self.coefficients
        lines = [
            f"[k={self.k}]",
            f"premises: dim={8 * self.k} total_betti=3 chi={self.chi} sigma in {{-1,+1}} "
            "Td integer; only c_{2k}^2 and c_{4k} nonzero",
            f"r_k={frac(co.r_k)}",
            f"C_td={frac(co.c_td)}",
            f"C_sigma={frac(co.c_sigma)}",
            f"C_chi={frac(co.c_chi)}",
        ]
        for case in self.cases:
            line = f"sigma={case.sigma:+d}: todd={frac(case.todd)} contradiction={case.contradiction or 'none'}"
            if case.detail:
                line += f" ({case.detail})"
            lines.append(line)
        lines.append(f"excluded={'true' if self.excluded else 'false'}")
        return "\n".join(lines)


def _solve_td_zero(co: LemmaCoefficients, sigma: int) -> tuple:
    """Solve the two intermediate identities for (c_{2k}^2, chi) given Td = 0."""
    k = co.k
    pref = 2 ** (4 * k + 2) * (2 ** (2 * k) - 1) ** 2 * co.a_k**2
    c2k_sq = Fraction(sigma) / pref
    chi = -(co.a_2k + 4 * co.a_kk) * c2k_sq / (2 * co.a_2k)
    return c2k_sq, chi


def exclusion_8k(k: int, strict: bool = False) -> ExclusionCertificate:
    """Check that no 8k-manifold with chi = 3 and sigma = +-1 survives the relations.

    With ``strict`` a k where no contradiction fires raises VerificationFailure.
    """
    co = coefficients(k)
    cert = ExclusionCertificate(k, co)
    chi = cert.chi
    first_bound, _ = corollary_check(k)
    for sigma in (1, -1):
        todd = (co.c_sigma * sigma - co.c_chi * chi) / co.c_td
        if todd.denominator != 1:
            cert.cases.append(SignCase(sigma, todd, "todd-non-integral"))
            continue
        if todd != 0:
            if first_bound and max(abs(sigma), chi) <= 4**k:
                cert.cases.append(
                    SignCase(sigma, todd, "betti-bound",
                             f"max(|sigma|,|chi|)={max(abs(sigma), chi)} <= 4^k={4**k}")
                )
            else:
                cert.cases.append(SignCase(sigma, todd, None, "Td != 0 but no bound fires"))
            continue
        c2k_sq, solved_chi = _solve_td_zero(co, sigma)
        if solved_chi != chi:
            cert.cases.append(
                SignCase(sigma, todd, "chi-mismatch",
                         f"Td=0 forces c_2k^2={frac(c2k_sq)}, chi={frac(solved_chi)} != {chi}",
                         c2k_sq, solved_chi)
            )
        elif chi < 3**k:
            cert.cases.append(
                SignCase(sigma, todd, "betti-bound", f"chi={chi} < 3^k={3**k}", c2k_sq, solved_chi)
            )
        else:
            cert.cases.append(
                SignCase(sigma, todd, None,
                         f"Td=0 is consistent: c_2k^2={frac(c2k_sq)}, chi={frac(solved_chi)}",
                         c2k_sq, solved_chi)
            )
    if strict and not cert.excluded:
        raise VerificationFailure(f"no contradiction fires at k={k}:\n{cert.render()}")
    return cert
