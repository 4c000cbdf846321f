from collections import Counter
from fractions import Fraction
from itertools import product as iproduct
from math import factorial

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.polys.polyfuncs import symmetrize

from chargenus.numerics import bernoulli
from chargenus.series import (
    GenusKind,
    GradedPolynomial,
    Partition,
    PowerSeries,
    conjugate,
    elementary_in_monomials,
    genus_coefficient,
    multiplicative_sequence,
    partitions_of,
    q_series,
    series_arith,
)

L, A, TD = GenusKind.SIGNATURE, GenusKind.AHAT, GenusKind.TODD


def brute_partitions(n):
    found = set()
    for length in range(1, n + 1):
        for parts in iproduct(range(1, n + 1), repeat=length):
            if sum(parts) == n:
                found.add(tuple(sorted(parts, reverse=True)))
    return found


def test_partition_type():
    p = Partition((1, 3, 2))
    assert tuple(p) == (3, 2, 1) and p.weight == 6
    assert p == Partition((3, 2, 1))
    with pytest.raises(ValueError):
        Partition((2, 0))


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (4, 5), (8, 22)])
def test_partition_counts(n, count):
    parts = partitions_of(n)
    assert len(parts) == count
    assert len(set(parts)) == count


@pytest.mark.parametrize("n", range(1, 9))
def test_partitions_brute_force(n):
    parts = partitions_of(n)
    assert set(map(tuple, parts)) == brute_partitions(n)
    assert [tuple(p) for p in parts] == sorted((tuple(p) for p in parts), reverse=True)
    assert all(p.weight == n for p in parts)
    assert partitions_of(1) == [Partition((1,))]


def test_conjugate():
    assert conjugate((3, 1)) == Partition((2, 1, 1))
    for p in partitions_of(7):
        assert conjugate(conjugate(p)) == p


def brute_e_in_m(mu, lam):
    # coefficient of x^lam in prod e_{mu_i}, by expanding over subsets
    from itertools import combinations

    nvars = len(lam)
    monos = Counter({(0,) * nvars: 1})
    for r in mu:
        nxt = Counter()
        for mono, c in monos.items():
            for s in combinations(range(nvars), r):
                m = list(mono)
                for i in s:
                    m[i] += 1
                nxt[tuple(m)] += c
        monos = nxt
    return monos[tuple(lam)]


@pytest.mark.parametrize("n", range(1, 7))
def test_elementary_in_monomials(n):
    for mu in partitions_of(n):
        for lam in partitions_of(n):
            assert elementary_in_monomials(mu, lam) == brute_e_in_m(mu, lam)


def test_series_examples():
    one_plus_z = PowerSeries([1, 1], 3)
    geometric = PowerSeries([1, -1, 1, -1], 3)
    assert one_plus_z * geometric == PowerSeries.one(3)
    assert series_arith(PowerSeries.zero(5), op="exp") == PowerSeries.one(5)
    e = series_arith(PowerSeries.variable(5), op="exp")
    assert e.coefficients == tuple(Fraction(1, factorial(j)) for j in range(6))
    assert series_arith(e, Fraction(2), "compose_scale")[3] == Fraction(8, 6)
    assert series_arith(one_plus_z, geometric, "add")[1] == 0


def test_series_errors():
    with pytest.raises(ZeroDivisionError):
        PowerSeries.one(3) / PowerSeries.variable(3)
    with pytest.raises(ValueError):
        PowerSeries.one(3).exp()
    with pytest.raises(ValueError):
        PowerSeries.one(3) + PowerSeries.one(4)


coeff = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@settings(max_examples=100, deadline=None)
@given(st.lists(coeff, min_size=6, max_size=6), st.lists(coeff, min_size=5, max_size=5), coeff.filter(bool))
def test_div_mul_round_trip(a, b_tail, b0):
    sa = PowerSeries(a)
    sb = PowerSeries([b0] + b_tail)
    assert series_arith(series_arith(sa, sb, "mul"), sb, "div") == sa
    assert (sa / sb) * sb == sa


@settings(max_examples=50, deadline=None)
@given(st.lists(coeff, min_size=5, max_size=5), st.lists(coeff, min_size=5, max_size=5))
def test_exp_is_homomorphism(a, b):
    sa = PowerSeries([0] + a)
    sb = PowerSeries([0] + b)
    assert (sa + sb).exp() == sa.exp() * sb.exp()


t = sympy.Symbol("t")


def sympy_even_coeffs(expr, order):
    s = sympy.series(expr, t, 0, 2 * order + 2).removeO()
    return [Fraction(str(s.coeff(t, 2 * j))) for j in range(order + 1)]


def test_q_series_examples():
    assert q_series(L, 1)[1] == Fraction(1, 3)
    assert q_series(A, 1)[1] == Fraction(-1, 24)
    assert q_series(TD, 2).coefficients == (1, Fraction(1, 2), Fraction(1, 12))
    for kind in GenusKind:
        assert q_series(kind, 0).coefficients == (1,)


def test_q_series_against_sympy():
    order = 6
    assert list(q_series(L, order).coefficients) == sympy_even_coeffs(t / sympy.tanh(t), order)
    assert list(q_series(A, order).coefficients) == sympy_even_coeffs((t / 2) / sympy.sinh(t / 2), order)
    todd = sympy.series(t / (1 - sympy.exp(-t)), t, 0, order + 1).removeO()
    assert list(q_series(TD, order).coefficients) == [
        Fraction(str(todd.coeff(t, j))) for j in range(order + 1)
    ]


def test_multiplicative_sequence_examples():
    assert multiplicative_sequence(L, 1) == GradedPolynomial({(1,): Fraction(1, 3)}, 1)
    assert multiplicative_sequence(L, 2) == GradedPolynomial(
        {(2,): Fraction(7, 45), (1, 1): Fraction(-1, 45)}, 2
    )
    assert multiplicative_sequence(A, 2) == GradedPolynomial(
        {(2,): Fraction(-1, 1440), (1, 1): Fraction(7, 5760)}, 2
    )
    assert multiplicative_sequence(TD, 2) == GradedPolynomial(
        {(2,): Fraction(1, 12), (1, 1): Fraction(1, 12)}, 2
    )
    # Todd K_3 = c1 c2 / 24
    assert multiplicative_sequence(TD, 3).terms == {Partition((2, 1)): Fraction(1, 24)}


def test_genus_coefficient_examples():
    assert genus_coefficient(L, (2,)) == Fraction(7, 45)
    assert genus_coefficient(A, (1,)) == Fraction(-1, 24)
    assert genus_coefficient(L, (1, 1)) == Fraction(-1, 45)
    assert genus_coefficient(A, (2,)) == Fraction(-1, 1440)
    with pytest.raises(ValueError):
        genus_coefficient(L, ())


def sympy_sequence(kind, n):
    """K_n by brute force: expand prod Q(x_j) in n variables and symmetrize."""
    xs = sympy.symbols(f"x1:{n + 1}")
    q = q_series(kind, n).coefficients
    z_is_square = kind is not TD
    total = 1
    for x in xs:
        var = x**2 if z_is_square else x
        total *= sum(sympy.Rational(c.numerator, c.denominator) * var**j for j, c in enumerate(q))
    total = sympy.expand(total)
    deg = 2 * n if z_is_square else n
    part = sum(term for term in total.as_ordered_terms() if sympy.Poly(term, *xs).total_degree() == deg)
    if z_is_square:
        part = part.subs({x**2: sympy.Symbol(f"y{i}") for i, x in enumerate(xs)})
        ys = sympy.symbols(f"y0:{n}")
        sym, rest, defs = symmetrize(part, *ys, formal=True)
    else:
        sym, rest, defs = symmetrize(part, *xs, formal=True)
    assert rest == 0
    names = [s for s, _ in defs]
    poly = sympy.Poly(sym, *names)
    out = {}
    for exps, c in poly.terms():
        key = Partition(i + 1 for i, e in enumerate(exps) for _ in range(e))
        out[key] = Fraction(c.p, c.q)
    return out


@pytest.mark.parametrize("kind", list(GenusKind))
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sequence_against_symmetrize(kind, n):
    assert dict(multiplicative_sequence(kind, n).terms) == sympy_sequence(kind, n)


def h_closed(m):
    return Fraction(2 ** (2 * m) * (2 ** (2 * m - 1) - 1)) * bernoulli(m) / factorial(2 * m)


def a_closed(m):
    return -bernoulli(m) / (2 * factorial(2 * m))


@pytest.mark.parametrize("m", range(1, 11))
def test_closed_forms(m):
    h = genus_coefficient(L, (m,))
    a = genus_coefficient(A, (m,))
    assert h == h_closed(m)
    assert a == a_closed(m)
    assert h == -(2 ** (2 * m + 1)) * (2 ** (2 * m - 1) - 1) * a


@pytest.mark.parametrize("k", range(1, 9))
def test_middle_coefficient(k):
    for kind in (L, A):
        single = genus_coefficient(kind, (k,))
        double = genus_coefficient(kind, (2 * k,))
        assert genus_coefficient(kind, (k, k)) == single**2 / 2 - double / 2


@pytest.mark.parametrize("kind", list(GenusKind))
@pytest.mark.parametrize("n", range(1, 7))
def test_roots_independent(kind, n):
    assert multiplicative_sequence(kind, n, roots=n) == multiplicative_sequence(kind, n, roots=n + 3)


def test_homogeneous():
    for kind in GenusKind:
        for n in range(1, 8):
            assert all(p.weight == n for p in multiplicative_sequence(kind, n).terms)


def to_sympy(poly, var, grading):
    return sum(
        sympy.Rational(c.numerator, c.denominator)
        * sympy.prod([var[i] * grading**i for i in key])
        for key, c in poly.terms.items()
    )


@pytest.mark.parametrize("kind", list(GenusKind))
def test_multiplicativity(kind):
    cap = 4
    g = sympy.Symbol("g")
    v = {i: sympy.Symbol(f"v{i}") for i in range(1, cap + 1)}
    w = {i: sympy.Symbol(f"w{i}") for i in range(1, cap + 1)}
    u = {m: sum(v.get(i, 1 if i == 0 else 0) * w.get(m - i, 1 if m == i else 0)
                for i in range(m + 1)) for m in range(1, cap + 1)}
    full = lambda var: 1 + sum(to_sympy(multiplicative_sequence(kind, n), var, g) for n in range(1, cap + 1))

    def truncate(expr):
        e = sympy.expand(expr)
        return sum(e.coeff(g, j) * g**j for j in range(cap + 1))

    # graded substitution: u_m carries g^m
    product_side = truncate(full(v) * full(w))
    u_graded = {m: sympy.expand(u[m].subs({**{v[i]: v[i] * g**i for i in v}, **{w[i]: w[i] * g**i for i in w}}) / g**m) for m in u}
    whitney_side = truncate(full(u_graded))
    assert sympy.expand(product_side - whitney_side) == 0


def test_graded_polynomial_basics():
    x = GradedPolynomial.variable(1, 3)
    y = GradedPolynomial.variable(2, 3)
    p = (x + y) * (x + y)
    assert p.terms == {Partition((1, 1)): 1, Partition((2, 1)): 2}
    assert (x - x).terms == {}
    assert p.without_variable(2).terms == {Partition((1, 1)): 1}
    assert p.evaluate({Partition((1, 1)): 5}) == 5
    assert GradedPolynomial({(1,): 0, (3,): 2}, 3).terms == {Partition((3,)): 2}
    q = y.substitute({2: x * x}, 3)
    assert q.terms == {Partition((1, 1)): 1}


def test_kind_parse():
    assert GenusKind.parse("L") is L
    assert GenusKind.parse("ahat") is A
    assert GenusKind.parse("Todd") is TD
    with pytest.raises(ValueError):
        GenusKind.parse("elliptic")
