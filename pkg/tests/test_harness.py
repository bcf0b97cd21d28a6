import json
from fractions import Fraction

import pytest

from tamagawa.curve import quadratic_twist
from tamagawa.families import curve_from_j, load_jmap, load_torsion_family
from tamagawa.harness.properties import DEFAULT_SIZES, run_property_suite
from tamagawa.harness.report import FAIL, PASS, CheckResult, ScanReport, merge
from tamagawa.harness.scans import (
    check_36_class,
    conductor_20_representative,
    conductor_80_representative,
    irreducible_density,
    isogeny_dichotomy,
    scan_isogeny_family,
    scan_torsion_family,
    torsion_witness_primes,
    verify_fixed_isogeny,
)
from tamagawa.poly import Poly
from tamagawa.tate import minimal_twist, tamagawa_number, tate_local

F = load_torsion_family()


def test_torsion_scan_small_height():
    r = scan_torsion_family(F, 3, workers=1)
    assert r.ok and r.summary["skipped"] == 0
    tagged = {str(x.instance["u"]) for x in r.results if x.exception_tag}
    assert tagged == {"0", "3", "-3"}
    for x in r.results:
        if x.exception_tag:
            assert x.exception_tag["conductor"] == 1922 and x.exception_tag["c_E"] == 14


def test_torsion_scan_deterministic_across_workers():
    a = scan_torsion_family(F, 2, workers=1).to_json()
    b = scan_torsion_family(F, 2, workers=2).to_json()
    assert a == b
    assert json.loads(a)["config"]["family_checksum"] == F.checksum


def test_torsion_witness_primes():
    assert torsion_witness_primes(Fraction(2)) == [3]
    assert torsion_witness_primes(Fraction(-1, 2)) == [3]
    assert torsion_witness_primes(Fraction(4, 7)) == [3, 7, 11]


def test_x0_scan_deterministic_and_ordered():
    a = scan_isogeny_family(10, 2, 6, workers=1)
    b = scan_isogeny_family(10, 2, 6, workers=2)
    assert a.to_json() == b.to_json()
    keys = [(x.instance["h"], x.instance["d"]) for x in a.results]
    assert len(keys) == len(set(keys))


def test_x0_failure_has_replay():
    r = scan_isogeny_family(6, 6, 30, only_h=[Fraction(-6)], only_d=[-21], workers=1)
    (x,) = r.results
    assert x.verdict == FAIL
    assert x.replay == "tamagawa scan x0 --n 6 --h=-6 --d=-21"
    assert x.details["c_E"] == 3 and x.details["conductor"] == 21168


@pytest.mark.parametrize("h", [Fraction(-6), Fraction(-2)])
def test_x0_10_type_III_at_2(h):
    # [PAPER] twists of the conductor 768 curves, type III at 2 with c_2 = 2
    _, E0 = minimal_twist(curve_from_j(load_jmap(10)(h)))
    assert tamagawa_number(E0).conductor_value == 768
    for d in (-7, -3, -1, 5, 13, 21):
        L = tate_local(quadratic_twist(E0, d), 2)
        assert str(L.kodaira) in ("III", "III*") and L.c_p == 2


@pytest.mark.parametrize("h", [Fraction(1), Fraction(-2), Fraction(-4), Fraction(1, 2)])
def test_x0_18_conductor_14_twists(h):
    # [PAPER] these h give twists of conductor 14 curves with c_E = 2
    _, E = minimal_twist(curve_from_j(load_jmap(18)(h)))
    G = tamagawa_number(E)
    assert (G.conductor_value, G.c_E) == (14, 2)
    assert isogeny_dichotomy(18, G, E.j) == (False, True)


def test_x0_6_h_minus_12_c3_is_2():
    # [PAPER] type III at 3 persists under twisting, so c_3 = 2
    _, E0 = minimal_twist(curve_from_j(load_jmap(6)(-12)))
    for d in (-5, -3, -1, 2, 3, 7, 30):
        assert tate_local(quadratic_twist(E0, d), 3).c_p == 2


def test_36_class():
    x = check_36_class(30)
    assert x.verdict == PASS
    assert x.details["c_E_6_found"]


def test_isogeny_dichotomy_unknown_n():
    with pytest.raises(ValueError):
        isogeny_dichotomy(7, tamagawa_number(curve_from_j(0)), Fraction(0))


def test_fixed_isogeny_small():
    r = verify_fixed_isogeny(19, 10)
    assert r.ok and r.summary["total"] > 0


def test_i0star_representatives():
    d, E, G = conductor_20_representative()
    assert (G.conductor_value, G.c_E) == (20, 3)
    assert str(tate_local(E, 2).kodaira) == "IV"
    d, E, G = conductor_80_representative()
    assert (G.conductor_value, G.c_E) == (80, 1)


def test_irreducible_density():
    # [DERIVED] counted independently in the polynomial tests; [PAPER] density 1/3
    k, n = irreducible_density(Poly([11664, 0, 0, 1]), 10**4)
    assert n == 1229 and 0.28 <= k / n <= 0.38


def test_property_suite_deterministic():
    small = {k: max(1, v // 10) for k, v in DEFAULT_SIZES.items()}
    a = run_property_suite(3, small).to_json()
    assert a == run_property_suite(3, small).to_json()
    assert json.loads(a)["config"]["seed"] == 3


def test_property_suite_rejects_unknown_size():
    with pytest.raises(ValueError):
        run_property_suite(0, {"nope": 1})


def test_report_merge_and_summary():
    a = ScanReport("a", {}, [CheckResult("p", {"i": 1}, PASS, sort_key=(1,))])
    b = ScanReport("b", {}, [CheckResult("p", {"i": 0}, FAIL, replay="x", sort_key=(0,))])
    m = merge("m", {"k": Fraction(1, 2)}, [a, b])
    m.sort()
    assert [r.instance["i"] for r in m.results] == [0, 1]
    assert m.summary == {"pass": 1, "fail": 1, "skipped": 0, "total": 2, "exceptions": 0}
    assert not m.ok and json.loads(m.to_json())["config"] == {"k": "1/2"}
