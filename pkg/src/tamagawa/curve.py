"""Weierstrass models over the rationals.

A curve is stored in long form y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
Changes of coordinates follow the usual convention

    x = u^2 x' + r,   y = u^3 y' + s u^2 x' + t,

so that the discriminant of the new model is u^-12 times the old one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .arith import (
    TRIAL_LIMIT,
    RationalLike,
    as_fraction,
    factorize,
    int_valuation,
    squarefree_part,
)


class SingularCurveError(ValueError):
    """The Weierstrass coefficients have zero discriminant."""


class IncompleteFactorizationError(ArithmeticError):
    """A factorization needed for an exact answer did not finish within budget."""

    def __init__(self, n: int, cofactor: int):
        super().__init__(f"could not fully factor {n} (unfactored part {cofactor}); raise the budget")
        self.n = n
        self.cofactor = cofactor


@dataclass(frozen=True)
class Invariants:
    b2: Fraction
    b4: Fraction
    b6: Fraction
    b8: Fraction
    c4: Fraction
    c6: Fraction
    disc: Fraction
    j: Fraction


def _invariants(a1, a2, a3, a4, a6) -> Invariants:
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    j = c4**3 / disc if disc else Fraction(0)
    return Invariants(b2, b4, b6, b8, c4, c6, disc, j)


@dataclass(frozen=True)
class Curve:
    """An elliptic curve in long Weierstrass form; construction rejects singular models."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __init__(self, a1: RationalLike = 0, a2: RationalLike = 0, a3: RationalLike = 0,
                 a4: RationalLike = 0, a6: RationalLike = 0):
        for name, v in zip(("a1", "a2", "a3", "a4", "a6"), (a1, a2, a3, a4, a6)):
            object.__setattr__(self, name, as_fraction(v))
        if self.invariants.disc == 0:
            raise SingularCurveError(f"singular Weierstrass model {self.ainvs_str()}")

    @classmethod
    def short(cls, A: RationalLike, B: RationalLike) -> "Curve":
        return cls(0, 0, 0, A, B)

    @classmethod
    def from_list(cls, coeffs: Iterable[RationalLike]) -> "Curve":
        cs = list(coeffs)
        if len(cs) == 2:
            return cls.short(*cs)
        if len(cs) != 5:
            raise ValueError("a curve needs 5 Weierstrass coefficients (or 2 for a short model)")
        return cls(*cs)

    @property
    def ainvs(self) -> tuple[Fraction, Fraction, Fraction, Fraction, Fraction]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @cached_property
    def invariants(self) -> Invariants:
        return _invariants(*self.ainvs)

    @property
    def disc(self) -> Fraction:
        return self.invariants.disc

    @property
    def j(self) -> Fraction:
        return self.invariants.j

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.ainvs)

    def ainvs_str(self) -> str:
        return ",".join(str(a) for a in self.ainvs)

    def __str__(self) -> str:
        return f"[{self.ainvs_str()}]"

    def __repr__(self) -> str:
        return f"Curve({self.ainvs_str()})"


def invariants(E: Curve) -> Invariants:
    return E.invariants


def parse_curve(text: str) -> Curve:
    """Parse "a1,a2,a3,a4,a6" (or "A,B" for a short model); brackets are optional."""
    body = text.strip().strip("[]()")
    parts = [p.strip() for p in body.split(",") if p.strip()]
    try:
        values = [Fraction(p) for p in parts]
    except ValueError as exc:
        raise ValueError(f"bad curve literal {text!r}: {exc}") from None
    return Curve.from_list(values)


# -- transformations ---------------------------------------------------------


@dataclass(frozen=True)
class Transformation:
    u: Fraction
    r: Fraction
    s: Fraction
    t: Fraction

    def __init__(self, u: RationalLike = 1, r: RationalLike = 0, s: RationalLike = 0, t: RationalLike = 0):
        u = as_fraction(u)
        if u == 0:
            raise ValueError("transformation with u = 0")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "r", as_fraction(r))
        object.__setattr__(self, "s", as_fraction(s))
        object.__setattr__(self, "t", as_fraction(t))

    @classmethod
    def identity(cls) -> "Transformation":
        return cls(1, 0, 0, 0)

    def as_list(self) -> list[str]:
        return [str(self.u), str(self.r), str(self.s), str(self.t)]


def apply_transform(E: Curve, T: Transformation) -> Curve:
    a1, a2, a3, a4, a6 = E.ainvs
    u, r, s, t = T.u, T.r, T.s, T.t
    n1 = a1 + 2 * s
    n2 = a2 - s * a1 + 3 * r - s * s
    n3 = a3 + r * a1 + 2 * t
    n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
    n6 = a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1
    return Curve(n1 / u, n2 / u**2, n3 / u**3, n4 / u**4, n6 / u**6)


def compose(T1: Transformation, T2: Transformation) -> Transformation:
    """The transformation equal to applying T1 and then T2."""
    u1, r1, s1, t1 = T1.u, T1.r, T1.s, T1.t
    u2, r2, s2, t2 = T2.u, T2.r, T2.s, T2.t
    return Transformation(u1 * u2, r1 + u1 * u1 * r2, s1 + u1 * s2, t1 + u1 * u1 * s1 * r2 + u1**3 * t2)


def inverse(T: Transformation) -> Transformation:
    u, r, s, t = T.u, T.r, T.s, T.t
    return Transformation(1 / u, -r / u**2, -s / u, (r * s - t) / u**3)


def isomorphism(E: Curve, F: Curve) -> Transformation | None:
    """A transformation taking E to F, or None if they are not isomorphic over the rationals."""
    ie, jf = E.invariants, F.invariants
    if ie.j != jf.j:
        return None
    # u^12 = disc(E)/disc(F); u^2 from the c4/c6 ratios when available
    if ie.c4 != 0 and ie.c6 != 0:
        u2 = (ie.c6 * jf.c4) / (jf.c6 * ie.c4)
        cands = _rational_roots(u2, 2)
    elif ie.c6 == 0:
        cands = _rational_roots(ie.c4 / jf.c4, 4)
    else:
        cands = _rational_roots(ie.c6 / jf.c6, 6)
    for u in cands:
        s = (u * F.a1 - E.a1) / 2
        r = (u * u * F.a2 - E.a2 + s * E.a1 + s * s) / 3
        t = (u**3 * F.a3 - E.a3 - r * E.a1) / 2
        T = Transformation(u, r, s, t)
        if apply_transform(E, T) == F:
            return T
    return None


def _rational_roots(q: Fraction, n: int) -> list[Fraction]:
    """Real rational n-th roots of q (both signs for even n)."""
    if q == 0:
        return []
    if n % 2 == 0 and q < 0:
        return []
    num = _exact_root(abs(q.numerator), n)
    den = _exact_root(q.denominator, n)
    if num is None or den is None:
        return []
    root = Fraction(num, den)
    if n % 2 == 0:
        return [root, -root]
    return [root if q > 0 else -root]


def _exact_root(m: int, n: int) -> int | None:
    if m < 2:
        return m
    lo, hi = 1, 1 << (m.bit_length() // n + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**n <= m:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo**n == m else None


# -- twists ------------------------------------------------------------------


def short_model(E: Curve) -> Curve:
    """The isomorphic model y^2 = x^3 - (c4/48) x - c6/864."""
    inv = E.invariants
    return Curve.short(-inv.c4 / 48, -inv.c6 / 864)


def quadratic_twist(E: Curve, d: int) -> Curve:
    """Twist by the squarefree part of ``d``; the result is in short form."""
    if d == 0:
        raise ValueError("cannot twist by 0")
    s = squarefree_part(int(d))[0]
    sh = short_model(E)
    return Curve.short(sh.a4 * s * s, sh.a6 * s**3)


# -- minimal models ----------------------------------------------------------


def _denominator_scale(E: Curve) -> int:
    """An integer D with D^i a_i integral for every i, found without factoring."""
    return math.lcm(*(a.denominator for a in E.ainvs))


def _kraus_ok_at_3(c6: int) -> bool:
    return int_valuation(c6, 3) != 2


def _kraus_ok_at_2(c4: int, c6: int) -> bool:
    if c6 % 4 == 3:
        return True
    return int_valuation(c4, 2) >= 4 and c6 % 32 in (0, 8)


def _minimal_scale_exponent(p: int, c4: int, c6: int, disc: int) -> int:
    """Largest e such that (c4/p^4e, c6/p^6e) still comes from a p-integral model."""
    v4 = int_valuation(c4, p)
    v6 = int_valuation(c6, p)
    vd = int_valuation(disc, p)
    e = int(min(v4 / 4, v6 / 6, vd / 12))
    if p >= 5:
        return e
    while e > 0:
        c4e, c6e = c4 // p ** (4 * e), c6 // p ** (6 * e)
        ok = _kraus_ok_at_3(c6e) if p == 3 else _kraus_ok_at_2(c4e, c6e)
        if ok:
            return e
        e -= 1
    return 0


def _integral_c4c6(E: Curve) -> tuple[int, int, int, Fraction]:
    """Integral (c4, c6, disc) of an integral model of E and the scale u0 reaching it."""
    D = _denominator_scale(E)
    inv = E.invariants
    c4 = inv.c4 * D**4
    c6 = inv.c6 * D**6
    disc = inv.disc * D**12
    assert c4.denominator == c6.denominator == disc.denominator == 1
    return c4.numerator, c6.numerator, disc.numerator, Fraction(1, D)


def _reduced_c4c6(E: Curve, budget: int | None, hints: Iterable[int]) -> tuple[int, int, Fraction]:
    c4, c6, disc, u0 = _integral_c4c6(E)
    g = math.gcd(c4, c6)
    U = 1
    if g > 1:
        hint_list = list(hints)
        fac = factorize(g, budget, hints=hint_list)
        if not fac.complete:
            # Primes of the unfactored part might still allow rescaling; only proceed if none can
            if not _cofactor_irrelevant(fac.cofactor, c4, c6):
                raise IncompleteFactorizationError(g, fac.cofactor)
        for p in fac.primes:
            e = _minimal_scale_exponent(p, c4, c6, disc)
            if e:
                U *= p**e
                c4 //= p ** (4 * e)
                c6 //= p ** (6 * e)
                disc //= p ** (12 * e)
    return c4, c6, u0 * U


def _cofactor_irrelevant(m: int, c4: int, c6: int) -> bool:
    """True when no prime of the unfactored part ``m`` of gcd(c4, c6) can have p^4 | c4 and p^6 | c6.

    All primes of ``m`` exceed the trial-division limit, so a relevant prime
    would force m >= p^4 > TRIAL_LIMIT^4.
    """
    return m < TRIAL_LIMIT**4


def _model_from_c4c6(c4: int, c6: int) -> Curve:
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    b4, r = divmod(b2 * b2 - c4, 24)
    assert r == 0, "c4 not congruent to b2^2 mod 24"
    b6, r = divmod(-(b2**3) + 36 * b2 * b4 - c6, 216)
    assert r == 0, "c6 inconsistent with b2, b4"
    a1 = b2 % 2
    a3 = b6 % 2
    a2 = (b2 - a1) // 4
    a4 = (b4 - a1 * a3) // 2
    a6 = (b6 - a3) // 4
    return Curve(a1, a2, a3, a4, a6)


def minimal_model(E: Curve, budget: int | None = None, hints: Iterable[int] = ()) -> tuple[Curve, Transformation]:
    """Global minimal model in reduced Laska-Kraus-Connell form and the map reaching it.

    ``hints`` are integers sharing primes with the curve's invariants; they only
    speed up factoring of gcd(c4, c6).  Raises :class:`IncompleteFactorizationError`
    if a prime that might allow rescaling could not be identified.
    """
    c4, c6, _ = _reduced_c4c6(E, budget, hints)
    Emin = _model_from_c4c6(c4, c6)
    T = isomorphism(E, Emin)
    assert T is not None, "minimal model is not isomorphic to the input"
    return Emin, T


def minimal_invariants_key(E: Curve, budget: int | None = None, hints: Iterable[int] = ()) -> tuple[int, int]:
    """(c4, c6) of the global minimal model: equal keys iff rationally isomorphic."""
    c4, c6, _ = _reduced_c4c6(E, budget, hints)
    return c4, c6


def is_minimal(E: Curve, budget: int | None = None) -> bool:
    if not E.is_integral():
        return False
    inv = E.invariants
    return minimal_invariants_key(E, budget) == (inv.c4.numerator, inv.c6.numerator)
