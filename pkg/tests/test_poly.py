from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tamagawa.poly import (
    Poly,
    RationalFunction,
    content_primitive,
    count_roots_mod_p,
    is_squarefree,
    parse_poly,
    poly_gcd,
    quadratic_splits_mod_p,
    resultant,
    roots_mod_p,
    substitute_mobius,
    sylvester_resultant,
)

x = Poly.x()


def test_basic_arithmetic():
    f = Poly([1, 2, 1])
    assert f == (x + 1) ** 2
    assert f.degree == 2 and f.lead == 1
    q, r = f.divmod(x + 1)
    assert q == x + 1 and r.is_zero()
    assert f.derivative() == 2 * x + 2
    assert f(Fraction(1, 2)) == Fraction(9, 4)
    assert Poly([0, 0, 0]).is_zero() and Poly([]).degree == -1


def test_trailing_zeros_trimmed():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)


def test_format_and_parse_roundtrip():
    f = Poly([-2, -9, 2, 1])
    assert f.format() == "x^3 + 2x^2 - 9x - 2"
    assert parse_poly("x^3+2x^2-9x-2") == f
    assert parse_poly("-2,-9,2,1") == f
    assert parse_poly("3T^3 - 4T^2 - 27T + 4") == Poly([4, -27, -4, 3])


# -- resultants


@pytest.mark.parametrize(
    "f, g, expected",
    [
        (x - 2, x**2 + 1, 5),
        (x + 1, x**2 - x + 1, 3),  # res(h+1, h^2-h+1) = 3 from the 18-isogeny argument
        (x, 3 * x**2 - 3 * x + 1, 1),  # res(m, 3m^2-3m+1) = 1
    ],
)
def test_resultant_examples(f, g, expected):
    assert resultant(f, g) == expected


def test_resultant_linear_is_evaluation():
    g = Poly([5, -3, 0, 7, 2])
    for a in range(-5, 6):
        assert resultant(x - a, g) == g(a)


def test_resultant_errors_and_zero():
    with pytest.raises(ValueError):
        resultant(Poly([]), Poly([]))
    assert resultant(Poly([]), x + 1) == 0


small_polys = st.lists(st.integers(-20, 20), min_size=1, max_size=6).map(Poly).filter(lambda f: not f.is_zero())


@settings(max_examples=200, deadline=None)
@given(small_polys, small_polys)
def test_resultant_matches_sylvester(f, g):
    assert resultant(f, g) == sylvester_resultant(f, g)


@settings(max_examples=200, deadline=None)
@given(small_polys, small_polys)
def test_resultant_antisymmetry(f, g):
    assert resultant(f, g) == (-1) ** (f.degree * g.degree) * resultant(g, f)


@settings(max_examples=200, deadline=None)
@given(small_polys, st.lists(st.integers(-6, 6), min_size=1, max_size=4), st.sampled_from([1, -1, 2, -3]))
def test_resultant_evaluation_product(f, roots, lc):
    g = Poly.from_roots(roots, lc)
    prod = Fraction(1)
    for b in roots:
        prod *= f(b)
    # Sylvester convention: res(f, g) = (-1)^(mn) lc(g)^m prod f(beta)
    assert resultant(f, g) == (-1) ** (f.degree * g.degree) * Fraction(lc) ** f.degree * prod


def test_resultant_rational_coefficients():
    f = Poly([Fraction(1, 2), 1])
    g = Poly([Fraction(-1, 3), 0, 1])
    assert resultant(f, g) == sylvester_resultant(f, g)


# -- content, gcd


@pytest.mark.parametrize(
    "f, content, prim",
    [
        (Poly([Fraction(4, 3), Fraction(2, 3)]), Fraction(2, 3), Poly([2, 1])),
        (Poly([-9, 0, 6]), 3, Poly([-3, 0, 2])),
        (Poly([0, -1]), -1, Poly([0, 1])),
    ],
)
def test_content_primitive(f, content, prim):
    assert content_primitive(f) == (content, prim)


def test_content_primitive_zero():
    with pytest.raises(ValueError):
        content_primitive(Poly([]))


def test_gcd_and_squarefree():
    f = (x - 1) ** 2 * (x + 3)
    assert poly_gcd(f, f.derivative()) == x - 1
    assert not is_squarefree(f)
    assert is_squarefree(x**3 - x + 1)


# -- rational functions and Mobius maps


def test_rational_function_normalization():
    F = RationalFunction(2 * (x - 1) * (x + 2), 4 * (x - 1))
    assert F.den == Poly([1])
    assert F.num == (x + 2) * Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        RationalFunction(x, Poly([]))
    with pytest.raises(ZeroDivisionError):
        RationalFunction(Poly([1]), x)(0)


@pytest.mark.parametrize(
    "mobius, expected",
    [
        ((0, 1, 1, 0), RationalFunction(Poly([1, -1]), x)),  # u -> 1/m
        ((2, 1, 0, 1), RationalFunction(2 * x)),  # u -> 2n + 1
        ((1, 0, 0, 1), RationalFunction(x - 1)),
    ],
)
def test_substitute_mobius_examples(mobius, expected):
    assert substitute_mobius(RationalFunction(x - 1), mobius) == expected


def test_substitute_mobius_degenerate():
    with pytest.raises(ValueError):
        substitute_mobius(RationalFunction(x), (1, 2, 2, 4))


mobius_maps = st.tuples(*[st.integers(-4, 4)] * 4).filter(lambda m: m[0] * m[3] - m[1] * m[2] != 0)


@settings(max_examples=100, deadline=None)
@given(small_polys, small_polys, mobius_maps)
def test_substitute_mobius_inverse(n, d, m):
    F = RationalFunction(n, d)
    a, b, c, dd = m
    assert substitute_mobius(substitute_mobius(F, m), (dd, -b, -c, a)) == F


# -- arithmetic mod p

P = Poly([11664, 0, 0, 1])  # T^3 + 11664


@pytest.mark.parametrize("p, count", [(7, 0), (5, 1), (31, 3)])
def test_roots_mod_p_j0_cubic(p, count):
    assert count_roots_mod_p(P, p) == count


def test_roots_mod_p_rejects_zero_mod_p():
    with pytest.raises(ValueError):
        roots_mod_p(Poly([3, 6]), 3)


@settings(max_examples=300, deadline=None)
@given(small_polys, st.sampled_from([2, 3, 5, 7, 11, 13, 47, 97, 101, 1009]))
def test_roots_mod_p_matches_brute_force(f, p):
    if all(c.numerator % p == 0 for c in f.coeffs):
        return
    got = roots_mod_p(f, p)
    assert len(got) <= f.degree
    assert got == {r for r in range(p) if f(r).numerator % p == 0}


def test_roots_mod_large_prime():
    p = 2**61 - 1
    f = Poly.from_roots([3, 10**12, -5])
    assert roots_mod_p(f, p) == {3, 10**12, p - 5}


@pytest.mark.parametrize("b, c, p, expected", [(1, 0, 2, True), (1, 1, 2, False), (0, -5, 11, True), (0, -2, 5, False)])
def test_quadratic_splits(b, c, p, expected):
    assert quadratic_splits_mod_p(b, c, p) is expected
