"""Local reduction data via Tate's algorithm, valid in every residue characteristic.

The implementation follows the classic step-by-step algorithm: make the
singular point of the reduction sit at (0, 0), read off multiplicative and the
small additive types from valuations, analyse the cubic T^3 + bT^2 + cT + d for
the starred types, and rescale by p whenever the model turns out not to be
minimal.  All arithmetic is on integers; the accumulated change of coordinates
is tracked exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .arith import PrimeFactorization, factorize, int_valuation, legendre_symbol, require_prime
from .curve import (
    Curve,
    IncompleteFactorizationError,
    Transformation,
    apply_transform,
    compose,
    minimal_model,
    quadratic_twist,
)
from .poly import Poly, quadratic_splits_mod_p, roots_mod_p

__all__ = [
    "KodairaSymbol",
    "LocalData",
    "GlobalData",
    "tate_local",
    "split_classification_c6",
    "conductor",
    "tamagawa_number",
    "global_data_at_primes",
    "minimal_twist",
    "predict_twist_type",
    "table1_consistent",
    "UnsupportedTwistError",
]

_KINDS = ("I", "I*", "II", "III", "IV", "II*", "III*", "IV*")


@dataclass(frozen=True, order=True)
class KodairaSymbol:
    kind: str
    k: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown Kodaira kind {self.kind!r}")
        if self.k < 0 or (self.k and self.kind not in ("I", "I*")):
            raise ValueError(f"bad index {self.k} for Kodaira kind {self.kind}")

    @classmethod
    def parse(cls, text: str) -> "KodairaSymbol":
        t = text.strip().replace("_", "")
        if t in _KINDS[2:]:
            return cls(t)
        if t.startswith("I") and t.endswith("*") and t[1:-1].isdigit():
            return cls("I*", int(t[1:-1]))
        if t.startswith("I") and t[1:].isdigit():
            return cls("I", int(t[1:]))
        raise ValueError(f"cannot parse Kodaira symbol {text!r}")

    @property
    def is_multiplicative(self) -> bool:
        return self.kind == "I" and self.k > 0

    @property
    def is_good(self) -> bool:
        return self.kind == "I" and self.k == 0

    def __str__(self) -> str:
        if self.kind == "I":
            return f"I{self.k}"
        if self.kind == "I*":
            return f"I{self.k}*"
        return self.kind


def I(k: int) -> KodairaSymbol:  # noqa: E743 - mirrors the notation
    return KodairaSymbol("I", k)


def Istar(k: int) -> KodairaSymbol:
    return KodairaSymbol("I*", k)


@dataclass(frozen=True)
class LocalData:
    p: int
    kodaira: KodairaSymbol
    split_class: str  # good | split | nonsplit | additive
    f_p: int
    c_p: int
    local_transformation: Transformation
    model: Curve = field(compare=False)
    disc_valuation: int = 0

    def summary(self) -> dict:
        return {
            "p": self.p,
            "kodaira": str(self.kodaira),
            "split": self.split_class,
            "f": self.f_p,
            "c": self.c_p,
        }


@dataclass(frozen=True)
class GlobalData:
    conductor: PrimeFactorization
    c_E: int
    locals: tuple[LocalData, ...]
    complete: bool
    minimal: Curve | None = None

    def local_at(self, p: int) -> LocalData | None:
        for L in self.locals:
            if L.p == p:
                return L
        return None

    @property
    def conductor_value(self) -> int:
        return self.conductor.value()


# -- mod-p helpers -----------------------------------------------------------


def _quad_has_root(a: int, b: int, c: int, p: int) -> bool:
    """Does a x^2 + b x + c have a root mod p (degenerate leading coefficient allowed)?"""
    a, b, c = a % p, b % p, c % p
    if a == 0:
        return b != 0 or c == 0
    if p == 2:
        return any((a * x * x + b * x + c) % 2 == 0 for x in (0, 1))
    disc = (b * b - 4 * a * c) % p
    return disc == 0 or pow(disc, (p - 1) // 2, p) == 1


def _cubic_root_count(b: int, c: int, d: int, p: int) -> int:
    return len(roots_mod_p(Poly([d, c, b, 1]), p))


def _rst(a: tuple[int, ...], r: int, s: int, t: int) -> tuple[int, ...]:
    a1, a2, a3, a4, a6 = a
    return (
        a1 + 2 * s,
        a2 - s * a1 + 3 * r - s * s,
        a3 + r * a1 + 2 * t,
        a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
        a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1,
    )


def _bs(a):
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def _disc(a) -> int:
    b2, b4, b6, b8 = _bs(a)
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def _c4c6(a):
    b2, b4, b6, _ = _bs(a)
    return b2 * b2 - 24 * b4, -(b2**3) + 36 * b2 * b4 - 216 * b6


class _Tracker:
    """Integer Weierstrass coefficients plus the composed transformation from the input."""

    def __init__(self, a: tuple[int, ...], T: Transformation):
        self.a = a
        self.T = T

    def rst(self, r: int, s: int, t: int) -> None:
        if r or s or t:
            self.a = _rst(self.a, r, s, t)
            self.T = compose(self.T, Transformation(1, r, s, t))

    def scale_down(self, p: int) -> None:
        new = []
        for ai, w in zip(self.a, (1, 2, 3, 4, 6)):
            q, rem = divmod(ai, p**w)
            assert rem == 0, "non-minimal model is not divisible as expected"
            new.append(q)
        self.a = tuple(new)
        self.T = compose(self.T, Transformation(p, 0, 0, 0))


def _p_integral(E: Curve, p: int) -> tuple[tuple[int, ...], Transformation]:
    """An integral model of E (scaling only by the denominators' lcm)."""
    D = math.lcm(*(a.denominator for a in E.ainvs))
    if D == 1:
        return tuple(a.numerator for a in E.ainvs), Transformation.identity()
    T = Transformation(Fraction(1, D))
    F = apply_transform(E, T)
    return tuple(a.numerator for a in F.ainvs), T


def tate_local(E: Curve, p: int) -> LocalData:
    """Kodaira symbol, split class, conductor exponent and Tamagawa number of E at p."""
    require_prime(p)
    a0, T0 = _p_integral(E, p)
    st = _Tracker(a0, T0)
    while True:
        res = _tate_pass(st, p)
        if res is not None:
            kod, split, fp, cp = res
            model = Curve(*st.a)
            vd = int_valuation(_disc(st.a), p)
            return LocalData(p, kod, split, fp, cp, st.T, model, vd)
        st.scale_down(p)


def _tate_pass(st: _Tracker, p: int):
    """One pass of Tate's algorithm; None signals a non-minimal model (caller rescales and repeats)."""
    inv = lambda x: pow(x, -1, p)  # noqa: E731
    a1, a2, a3, a4, a6 = st.a
    b2, b4, b6, b8 = _bs(st.a)
    c4, c6 = _c4c6(st.a)
    vd = int_valuation(_disc(st.a), p)
    if vd == 0:
        return I(0), "good", 0, 1

    # Move the singular point of the reduction to (0, 0): p | a3, a4, a6.
    if p == 2:
        if b2 % 2 == 0:
            r = a4 % 2
            t = (((r + a2) * r + a4) * r + a6) % 2
        else:
            r = a3 % 2
            t = (a4 + r * r) % 2
    elif p == 3:
        if b2 % 3 == 0:
            r = (-b6) % 3
        else:
            r = (-inv(b2) * b4) % 3
        t = (a1 * r + a3) % 3
    else:
        if c4 % p == 0:
            r = (-inv(12) * b2) % p
        else:
            r = (-inv(12 * c4) * (c6 + b2 * c4)) % p
        t = (-inv(2) * (a1 * r + a3)) % p
    st.rst(r, 0, t)
    a1, a2, a3, a4, a6 = st.a
    b2, b4, b6, b8 = _bs(st.a)
    assert a3 % p == 0 and a4 % p == 0 and a6 % p == 0

    # Multiplicative reduction
    if c4 % p:
        if quadratic_splits_mod_p(a1, -a2, p):
            return I(vd), "split", 1, vd
        return I(vd), "nonsplit", 1, 2 if vd % 2 == 0 else 1

    # Additive reduction: types II, III, IV
    if int_valuation(a6, p) < 2:
        return KodairaSymbol("II"), "additive", vd, 1
    if int_valuation(b8, p) < 3:
        return KodairaSymbol("III"), "additive", vd - 1, 2
    if int_valuation(b6, p) < 3:
        cp = 3 if _quad_has_root(1, a3 // p, -(a6 // p**2), p) else 1
        return KodairaSymbol("IV"), "additive", vd - 2, cp

    # Arrange p | a1, a2; p^2 | a3, a4; p^3 | a6.
    if p == 2:
        s = a2 % 2
        t = 2 * ((a6 // 4) % 2)
    else:
        s = (-a1 * inv(2)) % p
        t = (-a3 * inv(2)) % (p * p)
    st.rst(0, s, t)
    a1, a2, a3, a4, a6 = st.a
    assert a1 % p == 0 and a2 % p == 0 and a3 % p**2 == 0 and a4 % p**2 == 0 and a6 % p**3 == 0

    b = a2 // p
    c = a4 // p**2
    d = a6 // p**3
    w = 27 * d * d - b * b * c * c + 4 * b**3 * d - 18 * b * c * d + 4 * c**3
    x = 3 * c - b * b
    if w % p:
        # distinct roots: I0*
        return Istar(0), "additive", vd - 4, 1 + _cubic_root_count(b, c, d, p)
    if x % p:
        return _istar_m(st, p, b, c, d, x, vd)
    return _triple_root(st, p, b, d, vd)


def _istar_m(st: _Tracker, p: int, b: int, c: int, d: int, x: int, vd: int):
    inv = lambda y: pow(y, -1, p)  # noqa: E731
    # Move the double root of the cubic to T = 0.
    if p == 2:
        r = c % 2
    elif p == 3:
        r = (c * inv(b)) % 3
    else:
        r = ((b * c - 9 * d) * inv(2 * x)) % p
    st.rst(p * r, 0, 0)
    ix = iy = 3
    mx = my = p * p
    while True:
        a1, a2, a3, a4, a6 = st.a
        a2t = a2 // p
        a3t = a3 // my
        a4t = (a4 // p) // mx
        a6t = (a6 // mx) // my
        if (a3t * a3t + 4 * a6t) % p:
            cp = 4 if _quad_has_root(1, a3t, -a6t, p) else 2
            break
        t = my * (a6t % 2) if p == 2 else my * ((-a3t * inv(2)) % p)
        st.rst(0, 0, t)
        my *= p
        iy += 1
        a1, a2, a3, a4, a6 = st.a
        a2t = a2 // p
        a3t = a3 // my
        a4t = (a4 // p) // mx
        a6t = (a6 // mx) // my
        if (a4t * a4t - 4 * a6t * a2t) % p:
            cp = 4 if _quad_has_root(a2t, a4t, a6t, p) else 2
            break
        r = mx * ((a6t * a2t) % 2) if p == 2 else mx * ((-a4t * inv(2 * a2t)) % p)
        st.rst(r, 0, 0)
        mx *= p
        ix += 1
    m = ix + iy - 5
    return Istar(m), "additive", vd - m - 4, cp


def _triple_root(st: _Tracker, p: int, b: int, d: int, vd: int):
    inv = lambda y: pow(y, -1, p)  # noqa: E731
    if p == 2:
        r = b % 2
    elif p == 3:
        r = (-d) % 3
    else:
        r = (-b * inv(3)) % p
    st.rst(p * r, 0, 0)
    a1, a2, a3, a4, a6 = st.a
    a3t = a3 // p**2
    a6t = a6 // p**4
    if (a3t * a3t + 4 * a6t) % p:
        cp = 3 if _quad_has_root(1, a3t, -a6t, p) else 1
        return KodairaSymbol("IV*"), "additive", vd - 6, cp
    t = -p * p * (a6t % 2) if p == 2 else p * p * ((-a3t * inv(2)) % p)
    st.rst(0, 0, t)
    a1, a2, a3, a4, a6 = st.a
    if int_valuation(a4, p) < 4:
        return KodairaSymbol("III*"), "additive", vd - 7, 2
    if int_valuation(a6, p) < 6:
        return KodairaSymbol("II*"), "additive", vd - 8, 1
    return None


# -- global data -------------------------------------------------------------


def split_classification_c6(E: Curve, p: int) -> str:
    """Split/nonsplit at an odd multiplicative prime from the square class of -c6."""
    if p == 2:
        raise ValueError("the -c6 criterion needs an odd prime")
    L = tate_local(E, p)
    if not L.kodaira.is_multiplicative:
        raise ValueError(f"E does not have multiplicative reduction at {p} (type {L.kodaira})")
    c6 = L.model.invariants.c6.numerator
    return "split" if legendre_symbol(-c6, p) == 1 else "nonsplit"


def _global(E: Curve, budget: int | None, hints: Iterable[int]) -> GlobalData:
    hints = list(hints)
    try:
        Emin, _ = minimal_model(E, budget, hints)
        complete_min = True
    except IncompleteFactorizationError:
        D = math.lcm(*(a.denominator for a in E.ainvs))
        Emin = apply_transform(E, Transformation(Fraction(1, D)))
        complete_min = False
    disc = Emin.disc.numerator
    fac = factorize(disc, budget, hints=hints)
    locals_ = tuple(tate_local(Emin, p) for p in fac.primes)
    locals_ = tuple(L for L in locals_ if not L.kodaira.is_good)
    cond = PrimeFactorization(tuple((L.p, L.f_p) for L in locals_ if L.f_p), 1 if fac.complete else fac.cofactor)
    c_E = 1
    for L in locals_:
        c_E *= L.c_p
    return GlobalData(cond, c_E, locals_, fac.complete and complete_min, Emin if complete_min else None)


def global_data_at_primes(E: Curve, primes: Iterable[int], complete: bool = True) -> GlobalData:
    """GlobalData from Tate's algorithm at a caller-supplied finite set of primes.

    The caller vouches (through ``complete``) that the set contains every bad
    prime, e.g. the primes of an already-factored discriminant of a curve that
    E is a twist of, together with 2, 3 and the primes of the twisting factor.
    """
    locals_ = tuple(L for L in (tate_local(E, p) for p in sorted(set(primes))) if not L.kodaira.is_good)
    cond = PrimeFactorization(tuple((L.p, L.f_p) for L in locals_))
    c_E = 1
    for L in locals_:
        c_E *= L.c_p
    return GlobalData(cond, c_E, locals_, complete)


def minimal_twist(E: Curve, budget: int | None = None, hints: Iterable[int] = ()) -> tuple[int, Curve]:
    """A squarefree d and the minimal model of E^d, with E^d of least conductor among quadratic twists.

    Odd primes are decided one at a time (twisting by p only changes the
    reduction at p and 2); the squarefree class at 2 is then chosen among
    the twists by 1, -1, 2, -2, preferring the smaller conductor exponent and
    then the smaller discriminant valuation.  Raises IncompleteFactorizationError
    when the bad primes of E cannot be determined.
    """
    hints = list(hints)
    G = _global(E, budget, hints)
    if not G.complete:
        raise IncompleteFactorizationError(G.conductor.cofactor, G.conductor.cofactor)
    E = G.minimal
    d = 1
    for L in G.locals:
        if L.p == 2 or L.kodaira.is_multiplicative:
            continue
        Lp = tate_local(quadratic_twist(E, L.p), L.p)
        if (Lp.f_p, Lp.disc_valuation) < (L.f_p, L.disc_valuation):
            d *= L.p
    best = None
    for e in (1, -1, 2, -2):
        L2 = tate_local(quadratic_twist(E, d * e), 2)
        key = (L2.f_p, L2.disc_valuation)
        if best is None or key < best[0]:
            best = (key, d * e)
    d = best[1]
    Ed, _ = minimal_model(quadratic_twist(E, d), budget, hints + [abs(d)])
    return d, Ed


def conductor(E: Curve, budget: int | None = None, hints: Iterable[int] = ()) -> PrimeFactorization:
    """Conductor as a factorization; the cofactor is nonzero only when the discriminant did not factor."""
    return _global(E, budget, hints).conductor


def tamagawa_number(E: Curve, budget: int | None = None, hints: Iterable[int] = ()) -> GlobalData:
    """Local data at every bad prime and c_E, their Tamagawa product.

    When the minimal discriminant cannot be factored within budget the result
    is flagged incomplete and ``c_E`` is the product over the primes found,
    hence a divisor of the true value.
    """
    return _global(E, budget, hints)


# -- twists and Table 1 ------------------------------------------------------


class UnsupportedTwistError(ValueError):
    """Twist prediction requested outside the cases the tables cover."""


_STAR_SWAP = {
    "II": "IV*",
    "IV*": "II",
    "III": "III*",
    "III*": "III",
    "IV": "II*",
    "II*": "IV",
}


def predict_twist_type(L: LocalData, d: int) -> KodairaSymbol:
    """Kodaira symbol of the twist by squarefree ``d`` at L.p, from L alone."""
    p = L.p
    K = L.kodaira
    if p == 2:
        if not K.is_multiplicative:
            raise UnsupportedTwistError("at p = 2 only multiplicative reduction is predicted; rerun Tate's algorithm")
        if d % 4 == 1:
            return K
        # additive of type I*: the subscript grows by the conductor exponent of the character, minus 2
        return Istar(K.k + (4 if d % 4 == 3 else 8))
    if d % p:
        return K
    if K.kind == "I":
        return Istar(K.k)
    if K.kind == "I*":
        return I(K.k)
    return KodairaSymbol(_STAR_SWAP[K.kind])


def table1_consistent(L: LocalData) -> bool:
    """Check the (Kodaira symbol, split class, f_p, c_p) combination against the reduction-type table."""
    K, c, f, sc = L.kodaira, L.c_p, L.f_p, L.split_class
    if K.is_good:
        return sc == "good" and c == 1 and f == 0
    if K.kind == "I":
        if f != 1:
            return False
        if sc == "split":
            return c == K.k
        if sc == "nonsplit":
            return c == (2 if K.k % 2 == 0 else 1)
        return False
    if sc != "additive" or f < 2:
        return False
    max_f = {2: 8, 3: 5}.get(L.p, 2)
    if f > max_f:
        return False
    if K.kind in ("III", "III*"):
        return c == 2
    if K.kind in ("II", "II*"):
        return c == 1
    if K.kind in ("IV", "IV*"):
        return c in (1, 3)
    if K.kind == "I*":
        return c in (1, 2, 4) if K.k == 0 else c in (2, 4)
    return False
