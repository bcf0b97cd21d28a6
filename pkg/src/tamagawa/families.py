"""Curve sources: the one-parameter torsion family E_u and the X_0(n) j-maps.

The torsion family's coefficient polynomials live in ``data/torsion_family.json``.
Loading validates the file against two known fibers and the shape of the
discriminant, so a corrupted or mistranscribed file fails immediately.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable

from .arith import RationalLike, as_fraction
from .curve import Curve, SingularCurveError, minimal_model
from .poly import Poly, RationalFunction, content_primitive

__all__ = [
    "TorsionFamily",
    "FamilyValidationError",
    "SingularFiberError",
    "CuspError",
    "load_torsion_family",
    "specialize_torsion_family",
    "cubic_field_poly",
    "JMap",
    "load_jmap",
    "j_map_eval",
    "fixed_j_list",
    "FIXED_J_TABLE",
    "curve_from_j",
    "ANCHOR_U2",
    "ANCHOR_U_HALF",
]

ANCHOR_U2 = Curve(1, 0, 0, -31714388875, 2132064170125553)
ANCHOR_U_HALF = Curve(1, 0, 0, -35365397163613670, 2559848051274532647229668)


class FamilyValidationError(ValueError):
    """The family data failed one of the load-time checks."""


class SingularFiberError(SingularCurveError):
    """The requested fiber of a family is not an elliptic curve."""


class CuspError(ValueError):
    """The parameter is a cusp of the modular curve: no elliptic curve there."""


def integer_hints(x: Fraction, polys: Iterable[Poly]) -> list[int]:
    """Homogenized integer values q^deg f(p/q) of each factor at x = p/q, plus p and q."""
    p, q = x.numerator, x.denominator
    out = [p, q]
    for f in polys:
        val = sum(c * p**i * q ** (f.degree - i) for i, c in enumerate(f.coeffs))
        if val.denominator == 1 and val != 0:
            out.append(val.numerator)
    return [abs(v) for v in out if abs(v) > 1]


def _poly_list(raw, what: str) -> Poly:
    try:
        return Poly([Fraction(str(c)) for c in raw])
    except (TypeError, ValueError) as exc:
        raise FamilyValidationError(f"bad coefficient list for {what}: {exc}") from None


def _factored(raw, what: str) -> tuple[Fraction, tuple[tuple[Poly, int], ...]]:
    unit = Fraction(raw["unit"])
    facs = tuple((_poly_list(f, what), int(e)) for f, e in raw["factors"])
    return unit, facs


def _expand(unit: Fraction, facs) -> Poly:
    out = Poly([unit])
    for f, e in facs:
        out = out * f**e
    return out


# -- torsion family ------------------------------------------------------------


@dataclass(frozen=True)
class TorsionFamily:
    A2: Poly
    A4: Poly
    A6: Poly
    A: Poly | None
    B: Poly | None
    disc_factors: tuple[Poly, ...]
    checksum: str
    source: str

    @property
    def c4(self) -> Poly:
        b2 = 1 + 4 * self.A2
        return b2 * b2 - 48 * self.A4

    @property
    def c6(self) -> Poly:
        b2 = 1 + 4 * self.A2
        return -(b2**3) + 72 * b2 * self.A4 - 864 * self.A6

    @property
    def discriminant(self) -> RationalFunction:
        return RationalFunction((self.c4**3 - self.c6**2) * Fraction(1, 1728))

    def short_c4(self) -> Poly:
        return -48 * self.A

    def short_disc(self) -> Poly:
        return -16 * (4 * self.A**3 + 27 * self.B**2)

    def fiber(self, u: RationalLike) -> Curve:
        return specialize_torsion_family(self, u)

    def hints(self, u: RationalLike) -> list[int]:
        u = as_fraction(u)
        return integer_hints(u, self.disc_factors + (Poly([-1, 1]), Poly([1, 1])))


def _default_family_path() -> Path:
    return Path(str(resources.files("tamagawa") / "data" / "torsion_family.json"))


def load_torsion_family(path: str | Path | None = None) -> TorsionFamily:
    """Load and validate the family file; raises FamilyValidationError on any mismatch."""
    path = Path(path) if path is not None else _default_family_path()
    raw_bytes = path.read_bytes()
    try:
        data = json.loads(raw_bytes)
    except json.JSONDecodeError as exc:
        raise FamilyValidationError(f"{path}: not valid JSON ({exc})") from None
    if data.get("model") != "long":
        raise FamilyValidationError(f"{path}: expected \"model\": \"long\"")
    A2 = _poly_list(data["A2"], "A2")
    A4 = _poly_list(data["A4"], "A4")
    A6 = _poly_list(data["A6"], "A6")
    A = B = None
    if "short" in data:
        A = _poly_list(data["short"]["A"], "short.A")
        B = _poly_list(data["short"]["B"], "short.B")
    disc_factors: tuple[Poly, ...] = ()
    if "disc_factors" in data:
        unit, facs = _factored(data["disc_factors"], "disc_factors")
        disc_factors = tuple(f for f, _ in facs)
    fam = TorsionFamily(A2, A4, A6, A, B, disc_factors, hashlib.sha256(raw_bytes).hexdigest(), str(path))
    _validate(fam, data)
    return fam


def _validate(fam: TorsionFamily, data: dict) -> None:
    for u, anchor, name in ((Fraction(2), ANCHOR_U2, "u=2"), (Fraction(1, 2), ANCHOR_U_HALF, "u=1/2")):
        try:
            Emin, _ = minimal_model(fam.fiber(u), hints=fam.hints(u))
        except SingularCurveError:
            raise FamilyValidationError(f"anchor {name}: fiber is singular") from None
        if Emin != anchor:
            raise FamilyValidationError(f"anchor {name}: minimal model {Emin} differs from {anchor}")
    disc = fam.discriminant.num
    if disc.is_zero():
        raise FamilyValidationError("discriminant vanishes identically")
    for root in (1, -1):
        v = disc.valuation_at(root)
        if v != 14:
            raise FamilyValidationError(f"discriminant has order {v} at u={root}, expected 14")
    if fam.A is not None:
        if fam.short_c4() != fam.c4 or -864 * fam.B != fam.c6:
            raise FamilyValidationError("short model is not isomorphic to the long model")
    if "disc_factors" in data:
        unit, facs = _factored(data["disc_factors"], "disc_factors")
        if _expand(unit, facs) != disc:
            raise FamilyValidationError("disc_factors do not multiply to the discriminant")


def specialize_torsion_family(F: TorsionFamily, u: RationalLike) -> Curve:
    u = as_fraction(u)
    if u in (1, -1):
        raise SingularFiberError(f"u = {u} gives a singular fiber")
    try:
        return Curve(1, F.A2(u), 0, F.A4(u), F.A6(u))
    except SingularCurveError:
        raise SingularFiberError(f"u = {u} gives a singular fiber") from None


def cubic_field_poly(F: TorsionFamily, u: RationalLike) -> Poly:
    """Primitive integral cubic cutting out the field of definition of the fiber's 2-torsion.

    This is the 2-division polynomial 4x^3 + b2 x^2 + 2 b4 x + b6 of E_u.
    """
    E = specialize_torsion_family(F, u)
    inv = E.invariants
    return content_primitive(Poly([inv.b6, 2 * inv.b4, inv.b2, 4]))[1]


# -- X_0(n) j-maps -------------------------------------------------------------


@dataclass(frozen=True)
class JMap:
    n: int
    j: RationalFunction
    cusp_values: frozenset[Fraction]
    factor_polys: tuple[Poly, ...] = field(default=(), compare=False)

    def hints(self, h: RationalLike) -> list[int]:
        return integer_hints(as_fraction(h), self.factor_polys)

    def __call__(self, h: RationalLike) -> Fraction:
        return j_map_eval(self, h)


_JMAP_CACHE: dict[int, JMap] = {}


def load_jmap(n: int) -> JMap:
    """The j-map of X_0(n) for n in {6, 8, 10, 18}, validated against its stored factorizations."""
    if n in _JMAP_CACHE:
        return _JMAP_CACHE[n]
    raw = json.loads((resources.files("tamagawa") / "data" / "jmaps.json").read_text())
    if str(n) not in raw:
        raise ValueError(f"no j-map stored for X_0({n}); available: {sorted(int(k) for k in raw)}")
    d = raw[str(n)]
    num = _poly_list(d["num"], "num")
    den = _poly_list(d["den"], "den")
    polys: list[Poly] = []
    for key, target in (("num_factors", num), ("den_factors", den), ("j1728_factors", num - 1728 * den)):
        unit, facs = _factored(d[key], key)
        if _expand(unit, facs) != target:
            raise ValueError(f"X_0({n}) {key} do not multiply out")
        polys.extend(f for f, _ in facs)
    cusps = frozenset(Fraction(c) for c in d["cusps"])
    unit, den_facs = _factored(d["den_factors"], "den_factors")
    den_roots = {-f[0] / f[1] for f, _ in den_facs if f.degree == 1}
    if not den_roots <= cusps:
        raise ValueError(f"X_0({n}) cusp list misses denominator zeros {sorted(den_roots - cusps)}")
    M = JMap(n, RationalFunction(num, den), cusps, tuple(polys))
    if M.j.is_constant():
        raise ValueError(f"X_0({n}) j-map is constant")
    _JMAP_CACHE[n] = M
    return M


def j_map_eval(M: JMap | int, h: RationalLike) -> Fraction:
    if isinstance(M, int):
        M = load_jmap(M)
    h = as_fraction(h)
    if h in M.cusp_values:
        raise CuspError(f"h = {h} is a cusp of X_0({M.n})")
    return M.j(h)


# designated prime with type III in the twist class, and the class representative label
FIXED_J_TABLE: dict[int, list[tuple[Fraction, str, int]]] = {
    14: [(Fraction(-(3**3) * 5**3), "49a1", 7), (Fraction(3**3 * 5**3 * 17**3), "49a2", 7)],
    17: [(Fraction(-(17**2) * 101**3, 2), "14450p1", 5), (Fraction(-17 * 373**3, 2**17), "14450p2", 5)],
    19: [(Fraction(-(2**15) * 3**3), "361a1", 19)],
    37: [(Fraction(-7 * 11**3), "1225h1", 5), (Fraction(-7 * 137**3 * 2083**3), "1225h2", 5)],
    43: [(Fraction(-(2**18) * 3**3 * 5**3), "1849a1", 43)],
    67: [(Fraction(-(2**15) * 3**3 * 5**3 * 11**3), "4489a1", 67)],
    163: [(Fraction(-(2**18) * 3**3 * 5**3 * 23**3 * 29**3), "26569a1", 163)],
}


def fixed_j_list(n: int) -> list[Fraction]:
    if n not in FIXED_J_TABLE:
        raise ValueError(f"no fixed j-invariants for n = {n}; expected one of {sorted(FIXED_J_TABLE)}")
    return [j for j, _, _ in FIXED_J_TABLE[n]]


def designated_prime(n: int) -> int:
    if n not in FIXED_J_TABLE:
        raise ValueError(f"no fixed j-invariants for n = {n}")
    return FIXED_J_TABLE[n][0][2]


def curve_from_j(j: RationalLike) -> Curve:
    """Fixed representative with the given j-invariant."""
    j = as_fraction(j)
    if j == 0:
        return Curve(0, 0, 1, 0, 0)
    if j == 1728:
        return Curve(0, 0, 0, -1, 0)
    k = j - 1728
    return Curve(1, 0, 0, -36 / k, -1 / k)


def j_hints(j: Fraction) -> list[int]:
    """Numerators and denominators of j and j - 1728 (and the small primes 2, 3)."""
    k = j - 1728
    return [abs(v) for v in (j.numerator, j.denominator, k.numerator, 2, 3) if abs(v) > 1]
