"""Univariate polynomials and rational functions over the rationals.

Coefficients are stored ascending (``coeffs[i]`` multiplies ``x**i``) as
:class:`~fractions.Fraction`, with trailing zeros trimmed, so the zero
polynomial has an empty tuple and degree -1.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import RationalLike, as_fraction, require_prime

__all__ = [
    "Poly",
    "RationalFunction",
    "resultant",
    "sylvester_resultant",
    "substitute_mobius",
    "roots_mod_p",
    "quadratic_splits_mod_p",
    "content_primitive",
    "parse_poly",
]


def _trim(cs: list) -> tuple:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class Poly:
    """Immutable polynomial with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike | str] = ()):
        object.__setattr__(self, "coeffs", _trim([as_fraction(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self.coeffs,))

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def const(cls, c: RationalLike) -> "Poly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable[RationalLike], lead: RationalLike = 1) -> "Poly":
        out = cls([lead])
        for r in roots:
            out = out * cls([-as_fraction(r), 1])
        return out

    # -- basic properties

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError(f"{self} has non-integer coefficients")
        return [c.numerator for c in self.coeffs]

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        return self.format("x")

    def format(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{a}*{mono}" if a.denominator != 1 else f"{a}{mono}"
            else:
                body = str(a)
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly([1]), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lead
        q = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lc
            if c:
                q[k - dq] = c
                for i, b in enumerate(other.coeffs):
                    rem[k - dq + i] -= c * b
        return Poly(q), Poly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return Poly([c / self.lead for c in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; works for Fractions, ints and Polys."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if isinstance(x, Poly) and not isinstance(acc, Poly):
            return Poly([acc])
        return acc if not isinstance(acc, int) else Fraction(acc)

    def compose(self, g: "Poly") -> "Poly":
        return self(g)

    def reverse(self, n: int | None = None) -> "Poly":
        """x^n f(1/x) with n defaulting to deg f."""
        if n is None:
            n = self.degree
        if n < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        return Poly(list(reversed(list(self.coeffs) + [0] * (n - self.degree))))

    def shift_divide(self, k: int) -> "Poly":
        """Divide by x^k, requiring the low coefficients to vanish."""
        if any(self[i] for i in range(k)):
            raise ArithmeticError(f"x^{k} does not divide {self}")
        return Poly(self.coeffs[k:])

    def valuation_at(self, root: RationalLike) -> int:
        """Multiplicity of ``root`` as a zero of a nonzero polynomial."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        lin = Poly([-as_fraction(root), 1])
        f, m = self, 0
        while True:
            q, r = f.divmod(lin)
            if not r.is_zero():
                return m
            f, m = q, m + 1


def content_primitive(f: Poly) -> tuple[Fraction, Poly]:
    """Split off the rational content so that the primitive part is integral with gcd 1 and positive lead.

    >>> content_primitive(Poly([0, -1]))
    (Fraction(-1, 1), Poly(x))
    """
    if f.is_zero():
        raise ValueError("content of the zero polynomial")
    den = math.lcm(*(c.denominator for c in f.coeffs))
    ints = [(c * den).numerator for c in f.coeffs]
    g = math.gcd(*ints)
    if f.lead < 0:
        g = -g
    content = Fraction(g, den)
    return content, Poly([Fraction(a, g) for a in ints])


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over the rationals (zero if both are zero)."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
        if not b.is_zero():
            b = content_primitive(b)[1]
    return a.monic()


def is_squarefree(f: Poly) -> bool:
    return poly_gcd(f, f.derivative()).degree == 0


# -- resultants --------------------------------------------------------------


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of lc(b)^(deg a - deg b + 1) * a by b over the integers (ascending lists)."""
    db = len(b) - 1
    lc = b[-1]
    r = [x * lc ** (len(a) - db) for x in a]
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c:
            q, rem = divmod(c, lc)
            assert rem == 0
            for i, bi in enumerate(b):
                r[k - db + i] -= q * bi
    return _mod_trim(r[:db]) if db > 0 else []


def _int_resultant(a: list[int], b: list[int]) -> int:
    """Subresultant-PRS resultant of two nonzero integer polynomials (ascending)."""
    da, db = len(a) - 1, len(b) - 1
    sign = 1
    if da < db:
        a, b, da, db = b, a, db, da
        if da % 2 and db % 2:
            sign = -1
    if db == 0:
        return sign * b[0] ** da
    g = h = 1
    while db > 0:
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = _int_prem(a, b)
        if not r:
            return 0
        scale = g * h**delta
        a, b = b, [x // scale for x in r]
        da, db = db, len(b) - 1
        g = a[-1]
        h = g**delta // h ** (delta - 1) if delta >= 1 else h
    return sign * (b[0] ** da // h ** (da - 1))


def resultant(f: Poly, g: Poly) -> Fraction:
    """Resultant of two polynomials, equal to the Sylvester determinant.

    Contents are cleared first so the subresultant sequence runs over the
    integers; ``res(c*f, g) = c**deg(g) * res(f, g)`` restores the scale.
    """
    if f.is_zero() and g.is_zero():
        raise ValueError("resultant of two zero polynomials")
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    cf, pf = content_primitive(f)
    cg, pg = content_primitive(g)
    r = _int_resultant(pf.int_coeffs(), pg.int_coeffs())
    return Fraction(r) * cf ** g.degree * cg ** f.degree


def sylvester_resultant(f: Poly, g: Poly) -> Fraction:
    """Determinant of the Sylvester matrix by fraction Gaussian elimination (test oracle, small degrees)."""
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        raise ValueError("zero polynomial")
    size = m + n
    if size == 0:
        return Fraction(1)
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + fc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + gc + [Fraction(0)] * (size - n - 1 - i))
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        for r in range(col + 1, size):
            if rows[r][col]:
                factor = rows[r][col] / rows[col][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return det


# -- rational functions ------------------------------------------------------


class RationalFunction:
    """num/den in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly([1])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(num, den) if not num.is_zero() else den.monic()
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lead
        object.__setattr__(self, "num", Poly([c / lc for c in num.coeffs]))
        object.__setattr__(self, "den", den.monic())

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def __reduce__(self):
        return (RationalFunction, (self.num, self.den))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction(({self.num}) / ({self.den}))"

    def __call__(self, x: RationalLike) -> Fraction:
        x = as_fraction(x)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den - other.num * self.den, self.den * other.den)

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0


def _homogenize(f: Poly, k: int, a, b, c, d) -> Poly:
    """sum f_i (a t + b)^i (c t + d)^(k - i)."""
    lin1, lin2 = Poly([b, a]), Poly([d, c])
    out = Poly()
    for i, fi in enumerate(f.coeffs):
        if fi:
            out = out + fi * lin1**i * lin2 ** (k - i)
    return out


def substitute_mobius(F: RationalFunction, mobius: Sequence[int]) -> RationalFunction:
    """F((a t + b)/(c t + d)) as a normalized rational function in t."""
    a, b, c, d = (as_fraction(v) for v in mobius)
    if a * d - b * c == 0:
        raise ValueError("degenerate Mobius map (ad - bc = 0)")
    k = max(F.num.degree, F.den.degree, 0)
    return RationalFunction(_homogenize(F.num, k, a, b, c, d), _homogenize(F.den, k, a, b, c, d))


# -- arithmetic mod p --------------------------------------------------------


def _mod_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _mod_mul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _mod_trim([x % p for x in out])


def _mod_divmod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    r = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(r) - dg, 0)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k] * inv % p
        if c:
            q[k - dg] = c
            for i, b in enumerate(g):
                r[k - dg + i] = (r[k - dg + i] - c * b) % p
    return _mod_trim(q), _mod_trim(r[:dg])


def _mod_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    a, b = f, g
    while b:
        a, b = b, _mod_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _mod_powmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    out = [1]
    base = _mod_divmod(base, m, p)[1]
    while e:
        if e & 1:
            out = _mod_divmod(_mod_mul(out, base, p), m, p)[1]
        base = _mod_divmod(_mod_mul(base, base, p), m, p)[1]
        e >>= 1
    return out


def _split_roots(f: list[int], p: int, rng: random.Random, out: list[int]) -> None:
    """Roots of a monic squarefree product of distinct linear factors mod odd p (Cantor-Zassenhaus)."""
    d = len(f) - 1
    if d == 0:
        return
    if d == 1:
        out.append((-f[0]) % p)
        return
    while True:
        a = rng.randrange(p)
        w = _mod_powmod([a, 1], (p - 1) // 2, f, p)
        w = _mod_trim(list(w) + [])
        if not w:
            continue
        w[0] = (w[0] - 1) % p
        w = _mod_trim(w)
        g = _mod_gcd(f, w, p)
        if 0 < len(g) - 1 < d:
            _split_roots(g, p, rng, out)
            _split_roots(_mod_divmod(f, g, p)[0], p, rng, out)
            return


def _reduce_mod(f: Poly, p: int) -> list[int]:
    return _mod_trim([c % p for c in f.int_coeffs()])


def roots_mod_p(f: Poly, p: int) -> set[int]:
    """Distinct roots in [0, p) of an integer polynomial modulo the prime ``p``."""
    require_prime(p)
    fp = _reduce_mod(f, p)
    if not fp:
        raise ValueError(f"polynomial vanishes identically mod {p}; strip its content first")
    if len(fp) == 1:
        return set()
    if p <= 3:
        return {r for r in range(p) if sum(c * r**i for i, c in enumerate(fp)) % p == 0}
    # gcd(f, x^p - x) isolates the product of distinct linear factors
    xp = _mod_powmod([0, 1], p, fp, p)
    xp = xp + [0] * (2 - len(xp)) if len(xp) < 2 else list(xp)
    xp[1] = (xp[1] - 1) % p
    g = _mod_gcd(fp, _mod_trim(xp), p)
    if not g:
        g = _mod_gcd(fp, [], p)
    roots: list[int] = []
    _split_roots(g, p, random.Random(p), roots)
    return set(roots)


def count_roots_mod_p(f: Poly, p: int) -> int:
    return len(roots_mod_p(f, p))


def quadratic_splits_mod_p(b: int, c: int, p: int) -> bool:
    """True iff T^2 + bT + c has its roots in the field with p elements (a double root counts)."""
    require_prime(p)
    if p == 2:
        return any((t * t + b * t + c) % 2 == 0 for t in (0, 1))
    disc = (b * b - 4 * c) % p
    return disc == 0 or pow(disc, (p - 1) // 2, p) == 1


# -- parsing -----------------------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(?:([a-zA-Z])\s*(?:\^\s*(\d+))?)?")


def parse_poly(text: str) -> Poly:
    """Parse "c0,c1,...,cn" (ascending, exact rationals) or "x^3+2x^2-9x-2" (integer coefficients)."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial literal")
    if "," in s or re.fullmatch(r"[+-]?\d+(/\d+)?", s):
        return Poly([Fraction(part.strip()) for part in s.split(",")])
    s = s.replace(" ", "").replace("**", "^")
    var = None
    coeffs: dict[int, int] = {}
    pos = 0
    if s[0] not in "+-":
        s = "+" + s
    term_re = re.compile(r"([+-])(\d*)\*?(?:([a-zA-Z])(?:\^(\d+))?)?")
    while pos < len(s):
        m = term_re.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse polynomial literal {text!r} at position {pos}")
        sign, num, v, exp = m.groups()
        if v is not None:
            if var is None:
                var = v
            elif v != var:
                raise ValueError(f"polynomial literal {text!r} mixes variables")
            e = int(exp) if exp else 1
        else:
            if exp:
                raise ValueError(f"bad exponent in {text!r}")
            e = 0
        c = int(num) if num else 1
        coeffs[e] = coeffs.get(e, 0) + (-c if sign == "-" else c)
        pos = m.end()
    deg = max(coeffs)
    return Poly([coeffs.get(i, 0) for i in range(deg + 1)])
