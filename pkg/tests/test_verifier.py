import random
from fractions import Fraction
from math import comb

import pytest

from chargenus.charnum import ChernData, fixture_cpn, chern_numbers_equal, genera
from chargenus.numerics import bernoulli, zeta_even_coeff
from chargenus.series import GenusKind, genus_coefficient
from chargenus.verifier import (
    Branch,
    Status,
    classify_8k,
    classify_chern_data,
    coefficients,
    corollary_check,
    corollary_ratios,
    estimates_check,
    exclusion_8k,
    lemma1_residual,
    lemma2_residual,
    lemma3_report,
    lemma3_residual,
    replay_dim4,
)
from chargenus.charnum import VerificationFailure


def test_coefficients_k1():
    co = coefficients(1)
    assert co.r_k == Fraction(1, 5)
    assert co.c_td == Fraction(96, 5) == Fraction(3, 5) * 2**5
    assert co.c_sigma == Fraction(6, 5)
    assert co.c_sigma / co.c_chi == 3
    assert coefficients(2).c_sigma / coefficients(2).c_chi == 15


@pytest.mark.parametrize("k", range(1, 21))
def test_r_k_two_ways(k):
    co = coefficients(k)
    assert comb(4 * k, 2 * k) * bernoulli(k) ** 2 * co.r_k == bernoulli(2 * k)
    assert co.r_k == zeta_even_coeff(2 * k) / zeta_even_coeff(k) ** 2 / 2
    assert co.c_sigma == 1 + co.r_k


def test_r_k_below_half():
    assert all(coefficients(k).r_k < Fraction(1, 2) for k in range(1, 65))


@pytest.mark.parametrize("k", range(1, 9))
def test_closed_form_a_kk_matches_engine(k):
    co = coefficients(k)
    assert co.a_2k == genus_coefficient(GenusKind.AHAT, (2 * k,))
    assert co.a_kk == genus_coefficient(GenusKind.AHAT, (k, k))


def test_lemma1_examples():
    # h_1 * 24 + 8 a_1 * 24 = 8 - 8
    assert lemma1_residual(1, 24) == 0
    assert lemma1_residual(3, 7) == 0
    for k in range(1, 5):
        assert lemma1_residual(k, 0) == 0


def test_lemma2_examples():
    assert lemma2_residual(1, 1, 0) == 0
    assert lemma2_residual(2, 5, -3) == 0
    for t in (-5, 0, 11):
        assert lemma2_residual(1, 0, t) == 0
    # hand numbers at k = 1
    lhs = Fraction(-1, 45) + 2**5 * 7 * Fraction(7, 5760)
    assert lhs == 2**4 * 9 * Fraction(1, 24) ** 2


def test_lemma3_examples():
    for k in range(1, 4):
        assert lemma3_residual(k, 0, 0) == 0
    for c in (0, 3, 48):
        assert lemma3_residual(1, 16, c) == 0
    assert lemma3_residual(2, 9, 3) == 0
    assert all(v == 0 for v in lemma3_report(2, 9, 3).values())


def test_lemma3_cross_check_k1():
    # Td of an 8-manifold with only c2^2 and c4, by the explicit Todd polynomial
    g = genera(ChernData(4, {(2, 2): 16, (4,): 48}))
    todd4 = (-Fraction(1, 720)) * 48 + Fraction(3, 720) * 16
    assert g.todd == todd4 == 0
    assert g.signature == 16


@pytest.mark.parametrize("name", ["lemma1", "lemma2", "lemma3"])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_lemma_random(name, k):
    rng = random.Random(1000 * k + len(name))
    for _ in range(100):
        x, y = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        if name == "lemma1":
            assert lemma1_residual(k, x) == 0
        elif name == "lemma2":
            assert lemma2_residual(k, x, y) == 0
        else:
            assert lemma3_residual(k, x, y) == 0


@pytest.mark.parametrize("k", [1, 2, 10])
def test_estimates_examples(k):
    rep = estimates_check(k)
    assert rep.all_verified


def test_estimates_k1_values():
    co = coefficients(1)
    assert 1 < co.c_sigma < Fraction(3, 2)
    assert co.c_td == Fraction(3, 5) * 2 ** 5


def test_estimates_sweep():
    for k in range(1, 65):
        rep = estimates_check(k)
        assert Status.VIOLATED not in rep.statuses.values()
        assert rep.c_sigma is not Status.INCONCLUSIVE and rep.c_td is not Status.INCONCLUSIVE


def test_corollary():
    assert corollary_check(1) == (True, True)
    assert corollary_ratios(1)[1] == 3
    assert corollary_check(2) == (True, True)
    assert corollary_ratios(2)[1] == 15
    assert all(corollary_check(k) == (True, True) for k in range(1, 65))


def test_classify_examples():
    assert classify_8k(1, 0, 0).branch is Branch.NULL_COBORDANT
    c = classify_8k(1, 0, 3)
    assert c.branch is Branch.TODD_NONZERO
    assert c.todd == 2 * Fraction(-1, 1440) * 3
    assert c.betti_lower_bound >= 5 and not c.integral
    s = classify_8k(1, 16, 48)
    assert s.branch is Branch.SIGNATURE_NONZERO
    assert s.todd == 0 and abs(s.euler) == 3 * abs(s.signature)
    assert s.betti_lower_bound == 3


def test_classify_null_invariant():
    rng = random.Random(5)
    for _ in range(30):
        a, b = rng.randint(-50, 50), rng.randint(-50, 50)
        c = classify_8k(1, a, b)
        if c.branch is Branch.NULL_COBORDANT:
            assert a == b == 0


def test_classify_manifest_guard():
    with pytest.raises(ValueError):
        classify_chern_data(fixture_cpn(2))
    with pytest.raises(ValueError):
        classify_chern_data(ChernData(4, {(2, 2): 1, (1, 1, 1, 1): 1}))
    assert classify_chern_data(ChernData(4, {(2, 2): 16, (4,): 48})).branch is Branch.SIGNATURE_NONZERO


def test_replay_dim4():
    r = replay_dim4()
    assert (r.sigma, r.todd, r.c1_sq, r.c2) == (1, 1, 9, 3)
    assert r.cobordant_to_cp2
    assert r.sigma_residue == (1, 4)
    assert chern_numbers_equal(ChernData(2, {(1, 1): r.c1_sq, (2,): r.c2}), fixture_cpn(2))


@pytest.mark.parametrize("k", [2, 5])
def test_exclusion_examples(k):
    cert = exclusion_8k(k, strict=True)
    assert cert.excluded
    assert "excluded=true" in cert.render()


def test_exclusion_k1_is_consistent():
    # sigma = +1, Td = 0 solves both intermediate identities with c2^2 = 1, chi = 3
    cert = exclusion_8k(1)
    plus = next(case for case in cert.cases if case.sigma == 1)
    assert plus.todd == 0
    assert (plus.solved_c2k_sq, plus.solved_chi) == (1, 3)
    assert plus.contradiction is None
    g = genera(ChernData(4, {(2, 2): 1, (4,): 3}))
    assert (g.signature, g.todd, g.euler) == (1, 0, 3)
    with pytest.raises(VerificationFailure):
        exclusion_8k(1, strict=True)


def test_exclusion_sweep_k_ge_2():
    for k in range(2, 33):
        assert exclusion_8k(k).excluded
