import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tamagawa.arith import (
    INF,
    PrimeFactorization,
    as_fraction,
    enumerate_rationals,
    factorize,
    height,
    inverse_mod,
    is_prime,
    is_squarefree,
    legendre_symbol,
    primes_up_to,
    squarefree_part,
    squarefree_range,
    valuation,
)


def test_valuation_examples():
    assert valuation(Fraction(-48, 5), 2) == 4
    assert valuation(Fraction(1, 12), 3) == -1
    assert valuation(0, 7) == INF


def test_valuation_rejects_composite():
    with pytest.raises(ValueError):
        valuation(12, 4)


nonzero = st.fractions().filter(lambda x: x != 0)


@given(nonzero, nonzero, st.sampled_from([2, 3, 5, 7, 31]))
def test_valuation_multiplicative(x, y, p):
    assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)


def test_factorize_known_values():
    # 2^82 and 2 * 31^2 appear in the torsion-family argument
    assert factorize(2**82).as_dict() == {2: 82}
    assert factorize(1922).as_dict() == {2: 1, 31: 2}
    assert str(factorize(-1922)) == "-2*31^2"


def test_factorize_exhaustive_small_range():
    for n in range(1, 10**6 + 1):
        f = factorize(n)
        assert f.value() == n


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=2, max_value=2**64))
def test_factorize_roundtrip_64bit(n):
    f = factorize(n)
    assert f.complete
    assert f.value() == n
    assert all(is_prime(p) for p in f.primes)


def test_factorize_budget_reports_cofactor():
    p, q = 1000000007, 1000000009
    f = factorize(p * q, budget=10)
    assert not f.complete
    assert f.cofactor == p * q
    assert factorize(p * q).as_dict() == {p: 1, q: 1}


def test_factorize_hints_are_only_a_speedup():
    p, q = 1000000007, 1000000009
    n = p * q * 12
    assert factorize(n, budget=10, hints=[p]).as_dict() == {2: 2, 3: 1, p: 1, q: 1}


def test_factorize_rejects_zero():
    with pytest.raises(ValueError):
        factorize(0)


def test_prime_factorization_str():
    assert str(PrimeFactorization(((2, 3), (5, 1)))) == "2^3*5"


@pytest.mark.parametrize("n, expected", [(561, False), (2**61 - 1, True), (1, False), (2, True), (3215031751, False)])
def test_is_prime(n, expected):
    assert is_prime(n) is expected


def test_squarefree_part_range():
    for d in range(-10**4, 10**4 + 1):
        if d == 0:
            continue
        s, m = squarefree_part(d)
        assert s * m * m == d
        assert m > 0
        assert all(s % (q * q) for q in range(2, math.isqrt(abs(s)) + 1))


def test_squarefree_part_examples():
    assert squarefree_part(-108) == (-3, 6)
    assert squarefree_part(1) == (1, 1)
    assert is_squarefree(30) and not is_squarefree(12)


def test_legendre_against_brute_force():
    for p in primes_up_to(199)[1:]:
        squares = {x * x % p for x in range(1, p)}
        for a in range(-p, 2 * p):
            want = 0 if a % p == 0 else (1 if a % p in squares else -1)
            assert legendre_symbol(a, p) == want


def test_legendre_rejects_two_and_composites():
    with pytest.raises(ValueError):
        legendre_symbol(3, 2)
    with pytest.raises(ValueError):
        legendre_symbol(3, 15)


def test_inverse_mod():
    assert inverse_mod(3, 7) == 5
    with pytest.raises(ValueError):
        inverse_mod(2, 4)


def test_enumerate_rationals_counts():
    # |p| <= H, 1 <= q <= H, gcd(p, q) = 1
    assert len(list(enumerate_rationals(3))) == 15
    assert len(list(enumerate_rationals(4))) == 23
    brute = {Fraction(p, q) for q in range(1, 8) for p in range(-7, 8) if math.gcd(p, q) == 1}
    got = list(enumerate_rationals(7))
    assert set(got) == brute and len(got) == len(brute)


def test_enumerate_rationals_order_and_height():
    got = list(enumerate_rationals(2))
    assert got == [Fraction(x) for x in (-2, -1, 0, 1, 2)] + [Fraction(-1, 2), Fraction(1, 2)]
    assert all(height(x) <= 2 for x in got)


def test_squarefree_range():
    ds = squarefree_range(10)
    assert ds == [-10, -7, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10]
    assert len(squarefree_range(30)) == 38


def test_as_fraction():
    assert as_fraction("-7/2") == Fraction(-7, 2)
    assert as_fraction(3) == Fraction(3)
    with pytest.raises(TypeError):
        as_fraction(0.5)
