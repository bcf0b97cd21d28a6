import json
from fractions import Fraction

import pytest

from tamagawa.arith import enumerate_rationals, primes_up_to
from tamagawa.curve import minimal_invariants_key, minimal_model
from tamagawa.families import (
    ANCHOR_U2,
    ANCHOR_U_HALF,
    FIXED_J_TABLE,
    CuspError,
    FamilyValidationError,
    SingularFiberError,
    cubic_field_poly,
    curve_from_j,
    designated_prime,
    fixed_j_list,
    j_map_eval,
    load_jmap,
    load_torsion_family,
)
from tamagawa.poly import Poly, count_roots_mod_p, resultant
from tamagawa.tate import minimal_twist, tamagawa_number, tate_local

F = load_torsion_family()


def test_family_anchors():
    # [PAPER] the two printed minimal models and their c_2
    for u, anchor, c2 in ((2, ANCHOR_U2, 14), (Fraction(1, 2), ANCHOR_U_HALF, 28)):
        Emin, _ = minimal_model(F.fiber(u), hints=F.hints(u))
        assert Emin == anchor
        L = tate_local(Emin, 2)
        assert (str(L.kodaira), L.split_class, L.c_p) == (f"I{c2}", "split", c2)


def test_family_discriminant_shape():
    disc = F.discriminant.num
    assert disc.valuation_at(1) == 14 and disc.valuation_at(-1) == 14
    # [PAPER] res(u -+ 1, Delta / (u -+ 1)^14) = 2^82 and res(u -+ 1, c4) = 2^32
    for r in (1, -1):
        lin = Poly([-r, 1])
        q, rem = F.short_disc().divmod(lin**14)
        assert rem.is_zero()
        assert resultant(lin, q) == 2**82
        assert resultant(lin, F.short_c4()) == 2**32


def test_singular_fibers():
    for u in (1, -1):
        with pytest.raises(SingularFiberError):
            F.fiber(u)


def test_exceptional_class():
    # u = 0, 3, -3 all give the conductor 1922 curve
    keys = {minimal_invariants_key(F.fiber(u), hints=F.hints(u)) for u in (0, 3, -3)}
    assert len(keys) == 1
    G = tamagawa_number(F.fiber(0), hints=F.hints(0))
    assert G.conductor.as_dict() == {2: 1, 31: 2} and G.c_E == 14


def _same_splitting(f: Poly, g: Poly, bound: int = 3000) -> bool:
    df, dg = resultant(f, f.derivative()), resultant(g, g.derivative())
    for p in primes_up_to(bound):
        if df.numerator % p == 0 or dg.numerator % p == 0:
            continue
        if (f.lead.numerator * g.lead.numerator) % p == 0:
            continue
        if count_roots_mod_p(f, p) != count_roots_mod_p(g, p):
            return False
    return True


@pytest.mark.parametrize(
    "u, printed",
    [
        (2, Poly([4, -27, -4, 3])),
        (Fraction(1, 2), Poly([47, 54, -47, -6])),
        (0, Poly([-2, -9, 2, 1])),
    ],
)
def test_cubic_field_matches_printed_cubics(u, printed):
    # [PAPER] the printed cubic fields; same field => same splitting of unramified primes
    assert _same_splitting(cubic_field_poly(F, u), printed)


def test_cubic_field_is_distinguishing():
    assert not _same_splitting(cubic_field_poly(F, 2), Poly([-2, -9, 2, 1]))


def test_cubic_field_matches_pari(pari):
    for u, printed in ((2, "3*x^3-4*x^2-27*x+4"), (0, "x^3+2*x^2-9*x-2")):
        ours = pari.Pol(list(reversed([int(c) for c in cubic_field_poly(F, u).coeffs])))
        assert pari.nfisisom(ours, pari(printed))


def test_corrupted_family_file_rejected(tmp_path):
    src = json.loads(open(F.source).read())
    src["A4"][0] = str(Fraction(src["A4"][0]) + 1)
    bad = tmp_path / "family.json"
    bad.write_text(json.dumps(src))
    with pytest.raises(FamilyValidationError):
        load_torsion_family(bad)
    bad.write_text("{")
    with pytest.raises(FamilyValidationError):
        load_torsion_family(bad)


def test_family_checksum_stable():
    assert load_torsion_family().checksum == F.checksum and len(F.checksum) == 64


@pytest.mark.parametrize("n", [6, 8, 10, 18])
def test_jmap_cusps(n):
    M = load_jmap(n)
    for c in M.cusp_values:
        with pytest.raises(CuspError):
            j_map_eval(n, c)


@pytest.mark.parametrize("n", [6, 8, 10, 18])
def test_jmap_gives_n_isogeny(pari, n):
    # [DERIVED] PARI's isogeny matrix has an entry n in E's own row
    M = load_jmap(n)
    hs = [h for h in enumerate_rationals(3) if h not in M.cusp_values][:6]
    for h in hs:
        E = minimal_model(curve_from_j(M(h)))[0]
        row = pari.ellisomat(pari.ellinit([int(a) for a in E.ainvs]))[1][0]
        assert n in [int(x) for x in row], (n, h)


def test_jmap_unknown_level():
    with pytest.raises(ValueError):
        load_jmap(7)


def test_jmap_6_examples():
    # [PAPER] h = -10 lies over the conductor 20 class, h = -6 gives j = 0
    assert j_map_eval(6, -6) == 0
    _, E = minimal_twist(curve_from_j(j_map_eval(6, -10)))
    G = tamagawa_number(E)
    assert (G.conductor_value, G.c_E) == (20, 3)
    assert str(G.local_at(2).kodaira) == "IV"


@pytest.mark.parametrize("j", [Fraction(0), Fraction(1728), Fraction(-3375), Fraction(5, 7), Fraction(16384, 5)])
def test_curve_from_j(j):
    assert curve_from_j(j).j == j


@pytest.mark.parametrize("n", sorted(FIXED_J_TABLE))
def test_fixed_j_designated_prime(n):
    p = designated_prime(n)
    for j in fixed_j_list(n):
        assert curve_from_j(j).j == j
        assert p in {L.p for L in tamagawa_number(curve_from_j(j)).locals}


def test_fixed_j_errors():
    with pytest.raises(ValueError):
        fixed_j_list(11)
    with pytest.raises(ValueError):
        designated_prime(11)
