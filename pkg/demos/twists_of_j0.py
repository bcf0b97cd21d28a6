"""Tamagawa numbers of quadratic twists of y^2 + y = x^3.

Twisting by a prime p of good reduction gives type I0* at p, with
c_p = 1 + (roots of T^3 + 11664 mod p).  The odd c_E > 1 all come from
type IV or IV* at 3, which no I0* prime can make even.
"""

from tamagawa import Curve, quadratic_twist, tamagawa_number
from tamagawa.arith import squarefree_range

E = Curve(0, 0, 1, 0, 0)
counts: dict[int, list[int]] = {}
for d in squarefree_range(40):
    G = tamagawa_number(quadratic_twist(E, d))
    counts.setdefault(G.c_E, []).append(d)
    kinds = " ".join(f"{L.p}:{L.kodaira}/{L.c_p}" for L in G.locals)
    print(f"d = {d:4d}  N = {G.conductor_value:8d}  c_E = {G.c_E}  {kinds}")

print()
for c in sorted(counts):
    print(f"c_E = {c}: {len(counts[c])} twists")
