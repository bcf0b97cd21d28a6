from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tamagawa.arith import primes_up_to
from tamagawa.curve import Curve, Transformation, apply_transform, quadratic_twist
from tamagawa.tate import (
    I,
    Istar,
    KodairaSymbol,
    UnsupportedTwistError,
    conductor,
    global_data_at_primes,
    minimal_twist,
    predict_twist_type,
    split_classification_c6,
    table1_consistent,
    tamagawa_number,
    tate_local,
)

from conftest import random_curves


def _pari_kodaira(code: int) -> str:
    code = int(code)
    named = {1: "I0", 2: "II", 3: "III", 4: "IV", -1: "I0*", -2: "II*", -3: "III*", -4: "IV*"}
    if code in named:
        return named[code]
    return f"I{code - 4}" if code > 4 else f"I{-code - 4}*"


@pytest.mark.parametrize(
    "a, N, c",
    [
        ((0, -1, 1, -10, -20), 11, 5),
        ((0, 0, 1, -1, 0), 37, 1),
        ((0, 0, 1, 0, 0), 27, 1),
        ((1, 0, 0, -1070, 7812), 210, 512),
        ((0, 1, 0, -36, -140), 20, 2),
        ((1, 0, 1, 4, -6), 14, 6),
    ],
)
def test_known_curves(a, N, c):
    G = tamagawa_number(Curve(*a))
    assert G.complete
    assert G.conductor_value == N and G.c_E == c
    assert conductor(Curve(*a)).value() == N


def test_local_data_11a1():
    L = tate_local(Curve(0, -1, 1, -10, -20), 11)
    assert (str(L.kodaira), L.split_class, L.f_p, L.c_p) == ("I5", "split", 1, 5)
    assert tate_local(Curve(0, -1, 1, -10, -20), 5).kodaira.is_good


def test_tate_local_non_integral_and_non_minimal():
    E = Curve(0, -1, 1, -10, -20)
    for T in (Transformation(Fraction(1, 11), 3, 2, 1), Transformation(5, 1, 0, 0)):
        F = apply_transform(E, T)
        assert tate_local(F, 11).summary() == tate_local(E, 11).summary()


def test_tate_local_rejects_composite():
    with pytest.raises(ValueError):
        tate_local(Curve(0, -1, 1, -10, -20), 15)


@pytest.mark.parametrize("seed", [10, 11])
def test_tate_matches_pari(pari, seed):
    # [DERIVED] PARI's elllocalred is an independent implementation
    for E in random_curves(seed, 150, bound=300):
        P = pari.ellinit([int(a) for a in E.ainvs])
        G = tamagawa_number(E)
        assert G.conductor_value == int(pari.ellglobalred(P)[0]), E
        for L in G.locals:
            f, kod, _, c = pari.elllocalred(P, L.p)[:4]
            assert (L.f_p, str(L.kodaira), L.c_p) == (int(f), _pari_kodaira(kod), int(c)), (E, L.p)
            assert table1_consistent(L)


def test_tate_matches_pari_on_twists_at_2_and_3(pari):
    for E in random_curves(12, 30, bound=30):
        for d in (-1, 2, -2, 3, -3, 6, -6):
            Ed = quadratic_twist(E, d)
            P = pari.ellinit([int(a) if a.denominator == 1 else str(a) for a in Ed.ainvs])
            for p in (2, 3):
                f, kod, _, c = pari.elllocalred(P, p)[:4]
                L = tate_local(Ed, p)
                assert (L.f_p, str(L.kodaira), L.c_p) == (int(f), _pari_kodaira(kod), int(c)), (E, d, p)


def test_split_classifier_agrees():
    for E in random_curves(13, 100, bound=100):
        for L in tamagawa_number(E).locals:
            if L.p > 2 and L.kodaira.is_multiplicative:
                assert split_classification_c6(E, L.p) == L.split_class


def test_split_classifier_errors():
    E = Curve(0, -1, 1, -10, -20)
    with pytest.raises(ValueError):
        split_classification_c6(E, 2)
    with pytest.raises(ValueError):
        split_classification_c6(E, 5)


def test_kodaira_symbols():
    assert KodairaSymbol.parse("I_3*") == Istar(3)
    assert KodairaSymbol.parse("IV*") == KodairaSymbol("IV*")
    assert str(I(0)) == "I0" and I(0).is_good and I(2).is_multiplicative
    with pytest.raises(ValueError):
        KodairaSymbol("II", 3)
    with pytest.raises(ValueError):
        KodairaSymbol.parse("V")


@pytest.mark.parametrize("E", random_curves(14, 40, bound=60))
def test_predict_twist_type_odd(E):
    G = tamagawa_number(E)
    for p in [q for q in primes_up_to(13) if q > 2]:
        L = tate_local(E, p)
        d = p if p % 4 == 1 else -p
        assert predict_twist_type(L, d) == tate_local(quadratic_twist(E, d), p).kodaira
        assert predict_twist_type(L, 7 if p != 7 else 5) == L.kodaira  # unit twist keeps the type
    assert G.complete


def test_predict_twist_type_at_2():
    E = Curve(1, -1, 0, 7, 7)
    L = tate_local(E, 2)
    assert L.kodaira == I(1)
    assert predict_twist_type(L, 5) == I(1)
    assert predict_twist_type(L, -1) == Istar(5) == tate_local(quadratic_twist(E, -1), 2).kodaira
    assert predict_twist_type(L, 10) == Istar(9) == tate_local(quadratic_twist(E, 10), 2).kodaira
    with pytest.raises(UnsupportedTwistError):
        predict_twist_type(tate_local(Curve.short(-1, 0), 2), 3)


def test_global_data_at_primes_matches_full():
    E = Curve(1, 0, 0, -1070, 7812)
    for d in (-7, 11, 13):
        Ed = quadratic_twist(E, d)
        a = global_data_at_primes(Ed, {2, 3, 5, 7, abs(d)})
        b = tamagawa_number(Ed)
        assert (a.conductor_value, a.c_E) == (b.conductor_value, b.c_E)


def test_minimal_twist_reduces_conductor():
    E = Curve(0, -1, 1, -10, -20)
    for d in (-3, 5, -26, 30):
        e, F = minimal_twist(quadratic_twist(E, d))
        assert tamagawa_number(F).conductor_value == 11
        assert F == E


@settings(max_examples=40, deadline=None)
@given(st.integers(-40, 40), st.integers(-40, 40), st.integers(-40, 40))
def test_table1_on_random_curves(a4, a6, a2):
    try:
        E = Curve(1, a2, 0, a4, a6)
    except ValueError:
        return
    for L in tamagawa_number(E).locals:
        assert table1_consistent(L)
