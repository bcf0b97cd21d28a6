import random
from fractions import Fraction

import pytest

from tamagawa.families import cubic_field_poly, load_torsion_family
from tamagawa.padic import IndeterminateError, count_padic_roots, rational_roots, splits_completely_at
from tamagawa.poly import Poly, is_squarefree

PRINTED = [Poly([4, -27, -4, 3]), Poly([47, 54, -47, -6]), Poly([-2, -9, 2, 1])]


@pytest.mark.parametrize("f", PRINTED)
def test_printed_cubics_split_at_2(f):
    # [PAPER] 2 splits completely in each of the three cubic fields
    assert splits_completely_at(f, 2)
    rep = count_padic_roots(f, 2)
    assert rep.root_count == 3 and len(rep.certified_roots) == 3


def test_certificates_hold():
    for f in PRINTED:
        cs = f.int_coeffs()
        for r in count_padic_roots(f, 2).certified_roots:
            g = Poly(list(reversed(cs))) if r.reciprocal else f
            v_f = _v(g(r.residue).numerator, 2)
            v_df = _v(g.derivative()(r.residue).numerator, 2)
            assert v_df == r.derivative_valuation
            assert v_f > 2 * v_df and r.precision > v_df


def _v(n: int, p: int) -> float:
    if n == 0:
        return float("inf")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _random_cubics(seed: int, n: int):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        cs = [rng.randint(-60, 60) for _ in range(3)] + [rng.choice([1, -1, 2, 3, 4, 6, 8])]
        f = Poly(cs)
        if is_squarefree(f):
            out.append(f)
    return out


def test_count_matches_pari(pari):
    # [DERIVED] PARI factorpadic: linear factors over Q_p are the roots in Q_p
    for f in _random_cubics(5, 120):
        P = pari.Pol(list(reversed([int(c) for c in f.coeffs])))
        for p in (2, 3, 5, 7):
            fac = pari.factorpadic(P, p, 60)
            want = sum(int(e) for g, e in zip(fac[0], fac[1]) if pari.poldegree(g) == 1)
            assert count_padic_roots(f, p).root_count == want, (f, p)


def test_reverse_invariance():
    for f in _random_cubics(6, 40):
        if f.coeffs[0] == 0:
            continue
        for p in (2, 3):
            assert count_padic_roots(f, p).root_count == count_padic_roots(f.reverse(), p).root_count


def test_integer_roots_are_found():
    f = Poly.from_roots([8, -24, Fraction(1, 4)], 4)
    assert rational_roots(f) == [Fraction(-24), Fraction(1, 4), Fraction(8)]
    assert count_padic_roots(f, 2).root_count == 3
    with pytest.raises(ValueError):
        splits_completely_at(f, 2)


def test_errors():
    with pytest.raises(ValueError):
        count_padic_roots(Poly([1, 0, 1]), 2)
    with pytest.raises(ValueError):
        count_padic_roots(Poly.from_roots([1, 1, 2]), 2)
    with pytest.raises(ValueError):
        count_padic_roots(Poly([1, 2, 3, 4]), 9)


def test_precision_cap_is_reported():
    F = load_torsion_family()
    f = cubic_field_poly(F, Fraction(1, 2))
    with pytest.raises(IndeterminateError):
        count_padic_roots(f, 2, max_precision=4)
    assert count_padic_roots(f, 2, max_precision=2048).root_count == 3


def test_fiber_cubic_needs_high_precision():
    F = load_torsion_family()
    for u in (2, 3, Fraction(-1, 2)):
        rep = count_padic_roots(cubic_field_poly(F, u), 2, max_precision=2048)
        assert rep.root_count == 3
