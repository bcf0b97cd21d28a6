"""Walk through a few fibers of the Z/2 x Z/14 torsion family.

For each u we print the minimal model, the reduction at 2 and at the odd
primes of u -+ 1, and how many roots the 2-torsion cubic has in Q_2.
"""

from fractions import Fraction

from tamagawa import count_padic_roots, load_torsion_family, minimal_model, tamagawa_number
from tamagawa.families import cubic_field_poly
from tamagawa.harness.scans import TORSION_PRECISION

F = load_torsion_family()

for u in (Fraction(2), Fraction(1, 2), Fraction(0), Fraction(-5, 3)):
    E, _ = minimal_model(F.fiber(u), hints=F.hints(u))
    G = tamagawa_number(E, hints=F.hints(u))
    print(f"u = {u}: {E}")
    print(f"  conductor {G.conductor}, c_E = {G.c_E}")
    for L in G.locals:
        if L.c_p > 1:
            print(f"  p = {L.p}: {L.kodaira} ({L.split_class}), c_p = {L.c_p}")
    roots = count_padic_roots(cubic_field_poly(F, u), 2, TORSION_PRECISION).root_count
    print(f"  2-torsion cubic has {roots} roots in Q_2")
