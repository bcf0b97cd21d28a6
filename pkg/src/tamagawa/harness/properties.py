"""Seeded cross-module property checks, one CheckResult per property.

Every sample comes from a single ``random.Random(seed)`` stream, so a seed and a
set of sample sizes pin down the whole run.  Failures keep the first few
counterexamples in the evidence list.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable

from ..arith import (
    enumerate_rationals,
    factorize,
    is_prime,
    legendre_symbol,
    primes_up_to,
    squarefree_part,
    squarefree_range,
    valuation,
)
from ..curve import (
    Curve,
    IncompleteFactorizationError,
    SingularCurveError,
    apply_transform,
    Transformation,
    minimal_invariants_key,
    minimal_model,
    quadratic_twist,
)
from ..families import curve_from_j, load_jmap, load_torsion_family
from ..padic import IndeterminateError, count_padic_roots
from ..poly import Poly, RationalFunction, is_squarefree, resultant, roots_mod_p, substitute_mobius
from ..tate import (
    LocalData,
    UnsupportedTwistError,
    predict_twist_type,
    split_classification_c6,
    table1_consistent,
    tamagawa_number,
    tate_local,
)
from .report import FAIL, PASS, CheckResult, ScanReport

__all__ = ["DEFAULT_SIZES", "run_property_suite"]

DEFAULT_SIZES = {
    "valuation": 500,
    "factor_range": 10**5,
    "factor_random": 1000,
    "squarefree": 10**4,
    "legendre_bound": 200,
    "resultant": 150,
    "resultant_sign": 100,
    "mobius": 100,
    "roots_mod_p": 300,
    "curves": 200,
    "rescalings": 100,
    "twist_twice": 100,
    "twist_coherence": 250,
    "twist_coherence_2": 60,
    "jmap_height": 4,
    "torsion_fibers": 20,
    "padic_reverse": 50,
    "padic_integer_roots": 30,
}

MAX_EVIDENCE = 5


class _Property:
    def __init__(self, name: str, module: str):
        self.name, self.module = name, module
        self.samples = 0
        self.bad: list = []

    def check(self, ok: bool, witness) -> None:
        self.samples += 1
        if not ok:
            self.bad.append(witness)

    def result(self, index: int, floor: int = 0) -> CheckResult:
        ok = not self.bad and self.samples >= floor
        details = {"samples": self.samples, "passed": self.samples - len(self.bad)}
        if floor:
            details["required_samples"] = floor
        return CheckResult(
            self.name,
            {"module": self.module},
            PASS if ok else FAIL,
            [_describe(w) for w in self.bad[:MAX_EVIDENCE]],
            None,
            details,
            None,
            False,
            (index,),
        )


def _describe(w):
    if isinstance(w, tuple):
        return [_describe(x) for x in w]
    if isinstance(w, (Curve, Poly)):
        return str(w)
    return w


def _rand_poly(rng: random.Random, deg: int, bound: int = 9) -> Poly:
    cs = [rng.randint(-bound, bound) for _ in range(deg)] + [rng.choice([c for c in range(-bound, bound + 1) if c])]
    return Poly(cs)


def _random_curves(rng: random.Random, n: int) -> list[Curve]:
    """Mix of small generic models and models built to have bad reduction at a chosen prime."""
    out: list[Curve] = []
    primes = [2, 3, 5, 7, 11, 13]
    while len(out) < n:
        kind = rng.randrange(3)
        try:
            if kind == 0:
                a = [rng.randint(-3, 3) for _ in range(3)] + [rng.randint(-30, 30), rng.randint(-30, 30)]
                E = Curve(*a)
            elif kind == 1:
                p = rng.choice(primes)
                A = rng.randint(-9, 9) * p ** rng.randint(0, 3)
                B = rng.randint(-9, 9) * p ** rng.randint(0, 5)
                E = Curve.short(A, B)
            else:
                # a node at (0, 0) mod p: multiplicative reduction by construction
                p = rng.choice(primes[1:])
                a1, a2 = rng.randint(-3, 3), rng.randint(-3, 3)
                E = Curve(a1, a2, 0, p * rng.randint(-5, 5), p ** rng.randint(1, 4) * rng.choice([1, -1, 2, -3]))
        except SingularCurveError:
            continue
        out.append(E)
    return out


def _bad_primes(E: Curve) -> list[int]:
    f = factorize(E.disc.numerator)
    return [p for p in f.primes if not tate_local(E, p).kodaira.is_good]


def run_property_suite(seed: int = 0, sizes: dict | None = None) -> ScanReport:
    sz = dict(DEFAULT_SIZES)
    if sizes:
        unknown = set(sizes) - set(sz)
        if unknown:
            raise ValueError(f"unknown sample sizes: {sorted(unknown)}")
        sz.update(sizes)
    rng = random.Random(seed)
    props: list[tuple[_Property, int]] = []
    locals_seen: list[LocalData] = []
    curves_seen: list[Curve] = []

    def new(name: str, module: str, floor: int = 0) -> _Property:
        P = _Property(name, module)
        props.append((P, floor))
        return P

    def local(E: Curve, p: int) -> LocalData:
        L = tate_local(E, p)
        locals_seen.append(L)
        return L

    # -- exact arithmetic
    P = new("valuation-multiplicative", "arith")
    for _ in range(sz["valuation"]):
        p = rng.choice(primes_up_to(50))
        x = Fraction(rng.choice([1, -1]) * rng.randint(1, 10**6), rng.randint(1, 10**4))
        y = Fraction(rng.choice([1, -1]) * rng.randint(1, 10**6), rng.randint(1, 10**4))
        P.check(valuation(x * y, p) == valuation(x, p) + valuation(y, p), (str(x), str(y), p))

    P = new("factorize-roundtrip", "arith")
    for n in range(1, sz["factor_range"] + 1):
        f = factorize(n)
        P.check(f.complete and f.value() == n and all(is_prime(q) for q in f.primes), n)
    for _ in range(sz["factor_random"]):
        n = rng.getrandbits(64) | 1
        f = factorize(n)
        P.check(f.value() == n and all(is_prime(q) for q in f.primes), n)

    P = new("squarefree-part", "arith")
    for d in range(-sz["squarefree"], sz["squarefree"] + 1):
        if d == 0:
            continue
        s, m = squarefree_part(d)
        P.check(s * m * m == d and all(s % (q * q) for q in range(2, math.isqrt(abs(s)) + 1)), d)

    P = new("legendre-brute-force", "arith")
    for p in primes_up_to(sz["legendre_bound"] - 1):
        if p == 2:
            continue
        squares = {x * x % p for x in range(1, p)}
        for a in range(p):
            want = 0 if a == 0 else (1 if a in squares else -1)
            P.check(legendre_symbol(a, p) == want, (a, p))

    # -- polynomials
    P = new("resultant-evaluation-oracle", "polynomials", floor=100)
    for _ in range(sz["resultant"]):
        f = _rand_poly(rng, rng.randint(0, 4))
        roots = [rng.randint(-5, 5) for _ in range(rng.randint(1, 4))]
        lc = rng.choice([1, -1, 2, 3, -5])
        g = Poly.from_roots(roots, lc)
        # Sylvester convention: res(f, g) = (-1)^(deg f deg g) lc(g)^deg f prod f(beta)
        oracle = (-1) ** (f.degree * g.degree) * Fraction(lc) ** f.degree
        for b in roots:
            oracle *= f(b)
        P.check(resultant(f, g) == oracle, (f, g))

    P = new("resultant-antisymmetry", "polynomials")
    for _ in range(sz["resultant_sign"]):
        f, g = _rand_poly(rng, rng.randint(1, 5)), _rand_poly(rng, rng.randint(1, 5))
        P.check(resultant(f, g) == (-1) ** (f.degree * g.degree) * resultant(g, f), (f, g))

    P = new("mobius-inverse", "polynomials")
    done = 0
    while done < sz["mobius"]:
        a, b, c, d = (rng.randint(-4, 4) for _ in range(4))
        if a * d - b * c == 0:
            continue
        F = RationalFunction(_rand_poly(rng, rng.randint(0, 3)), _rand_poly(rng, rng.randint(0, 3)))
        back = substitute_mobius(substitute_mobius(F, (a, b, c, d)), (d, -b, -c, a))
        P.check(back == F, (str(F.num), str(F.den), (a, b, c, d)))
        done += 1

    P = new("roots-mod-p", "polynomials")
    small_primes = primes_up_to(97)
    for _ in range(sz["roots_mod_p"]):
        f = _rand_poly(rng, rng.randint(1, 6), 50)
        p = rng.choice(small_primes)
        if all(c.numerator % p == 0 for c in f.coeffs):
            continue
        got = roots_mod_p(f, p)
        brute = {x for x in range(p) if f(x).numerator % p == 0}
        P.check(got == brute and len(got) <= f.degree, (f, p))

    # -- curves
    curves = _random_curves(rng, sz["curves"])
    P = new("minimal-model-idempotent", "weierstrass")
    for E in curves:
        Emin, _ = minimal_model(E)
        curves_seen.append(Emin)
        P.check(minimal_model(Emin)[0] == Emin, E)

    P = new("minimal-discriminant-bound", "weierstrass")
    for _ in range(sz["rescalings"]):
        E = rng.choice(curves)
        # u = 1/m with integral r, s, t keeps the model integral and multiplies the discriminant by m^12
        u = Fraction(1, rng.choice([1, 2, 3, 5, 6, 10]))
        T = Transformation(u, rng.randint(-3, 3), rng.randint(-2, 2), rng.randint(-3, 3))
        E2 = apply_transform(E, T)
        curves_seen.append(E2)
        Emin, _ = minimal_model(E2)
        ok = all(valuation(Emin.disc, q) <= valuation(E2.disc, q) for q in (2, 3, 5, 7))
        P.check(ok and minimal_invariants_key(E2) == minimal_invariants_key(E), (E, T.as_list()))

    P = new("twist-twice", "weierstrass")
    for _ in range(sz["twist_twice"]):
        E = rng.choice(curves)
        d = rng.choice([d for d in squarefree_range(30) if d != 1])
        Ed = quadratic_twist(E, d)
        curves_seen.append(Ed)
        P.check(minimal_invariants_key(quadratic_twist(Ed, d)) == minimal_invariants_key(E), (E, d))

    # -- local reduction
    P = new("twist-coherence", "local-reduction", floor=200)
    P2 = new("twist-coherence-2-multiplicative", "local-reduction")
    attempts = 0
    while P.samples < sz["twist_coherence"] and attempts < 50 * sz["twist_coherence"]:
        attempts += 1
        E = rng.choice(curves)
        bad = _bad_primes(E)
        if not bad:
            continue
        p = rng.choice(bad)
        L = local(E, p)
        if p == 2 and not L.kodaira.is_multiplicative:
            continue
        units = [d for d in squarefree_range(30) if d % p]
        if p == 2:
            d = rng.choice([d for d in squarefree_range(30) if d != 1])
        else:
            d = rng.choice(units) * (p if rng.random() < 0.6 else 1)
        Ld = local(quadratic_twist(E, d), p)
        try:
            want = predict_twist_type(L, d)
        except UnsupportedTwistError:
            continue
        (P2 if p == 2 else P).check(Ld.kodaira == want, (E, d, p, str(L.kodaira), str(Ld.kodaira)))

    # y^2 + xy = x^3 + a2 x^2 + a4 x + a6 with 2 | a4, a6 has a node at (0, 0) mod 2
    while P2.samples < sz["twist_coherence_2"]:
        try:
            E = Curve(1, rng.randint(-2, 2), 0, 2 * rng.randint(-6, 6), 2 ** rng.randint(1, 6) * rng.choice([1, -1, 3, -5]))
        except SingularCurveError:
            continue
        L = local(E, 2)
        d = rng.choice([d for d in squarefree_range(30) if d != 1])
        Ld = local(quadratic_twist(E, d), 2)
        P2.check(Ld.kodaira == predict_twist_type(L, d), (E, d, 2, str(L.kodaira), str(Ld.kodaira)))

    P = new("split-classifier-agreement", "local-reduction")
    for E in curves:
        for p in _bad_primes(E):
            L = local(E, p)
            if p != 2 and L.kodaira.is_multiplicative:
                P.check(split_classification_c6(E, p) == L.split_class, (E, p))

    P = new("tamagawa-product", "local-reduction")
    for E in curves[: sz["curves"] // 2]:
        G = tamagawa_number(E)
        locals_seen.extend(G.locals)
        P.check(G.c_E == math.prod(L.c_p for L in G.locals) and G.complete, E)

    # -- families
    P = new("jmap-roundtrip", "families")
    for n in (6, 8, 10, 18):
        M = load_jmap(n)
        for h in enumerate_rationals(sz["jmap_height"]):
            if h in M.cusp_values:
                continue
            j = M(h)
            E = curve_from_j(j)
            curves_seen.append(E)
            P.check(E.j == j, (n, str(h)))

    P = new("torsion-fiber-2-adic", "families")
    F = load_torsion_family()
    us = [u for u in enumerate_rationals(20) if u not in (1, -1)]
    for u in rng.sample(us, min(sz["torsion_fibers"], len(us))):
        try:
            Emin, _ = minimal_model(F.fiber(u), hints=F.hints(u))
        except IncompleteFactorizationError:
            continue
        curves_seen.append(Emin)
        v = valuation(Emin.disc, 2)
        P.check(v > 0 and v % 14 == 0, str(u))

    # -- p-adic roots
    P = new("padic-reverse-invariance", "p-adic")
    Pc = new("padic-certificates", "p-adic")
    done = 0
    while done < sz["padic_reverse"]:
        f = _rand_poly(rng, 3, 12)
        if f.coeffs[0] == 0 or not is_squarefree(f):
            continue
        p = rng.choice([2, 3, 5, 7])
        try:
            a = count_padic_roots(f, p)
            b = count_padic_roots(f.reverse(), p)
        except IndeterminateError:
            continue
        done += 1
        P.check(a.root_count == b.root_count, (f, p))
        cs = f.int_coeffs()
        for r in a.certified_roots:
            g = list(reversed(cs)) if r.reciprocal else cs
            val = sum(c * r.residue**i for i, c in enumerate(g))
            Pc.check(val % p**r.precision == 0, (f, p, r.residue, r.precision))

    P = new("padic-integer-roots", "p-adic")
    done = 0
    while done < sz["padic_integer_roots"]:
        roots = rng.sample(range(-20, 21), 3)
        f = Poly.from_roots(roots)
        disc = math.prod((x - y) ** 2 for i, x in enumerate(roots) for y in roots[i + 1:])
        p = rng.choice([q for q in primes_up_to(50) if disc % q])
        P.check(count_padic_roots(f, p).root_count == 3, (f, p))
        done += 1

    # -- checks over everything computed above
    P = new("invariant-identities", "weierstrass")
    for E in curves + curves_seen:
        inv = E.invariants
        ok = inv.c4**3 - inv.c6**2 == 1728 * inv.disc and 4 * inv.b8 == inv.b2 * inv.b6 - inv.b4**2
        P.check(ok, E)

    P = new("table1-consistency", "local-reduction")
    Pf = new("conductor-exponent-conventions", "local-reduction")
    for L in locals_seen:
        P.check(table1_consistent(L), L.summary())
        K = L.kodaira
        if K.is_good:
            Pf.check(L.f_p == 0, L.summary())
        elif K.is_multiplicative:
            Pf.check(L.f_p == 1, L.summary())
        else:
            Pf.check(L.f_p >= 2, L.summary())

    report = ScanReport("props", {"seed": seed, "sizes": sz})
    report.results = [prop.result(i, floor) for i, (prop, floor) in enumerate(props)]
    return report
