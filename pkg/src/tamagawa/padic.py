"""Counting roots of integer cubics in Q_p by certified residue lifting.

Residue classes r mod p^k are refined through the reduction of
f(r + p^k y) / p^v, so the number of live classes never exceeds the degree even
when roots cluster p-adically.  A root is reported once its approximation
satisfies v(f(r)) > 2 v(f'(r)) (Hensel) with k > v(f'(r)), which puts the
whole class inside the uniqueness disk of that root.  Roots of negative valuation are the
reciprocals of roots of x^3 f(1/x) divisible by p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import int_valuation, require_prime
from .poly import Poly, content_primitive, is_squarefree

__all__ = [
    "CertifiedRoot",
    "PadicRootReport",
    "IndeterminateError",
    "count_padic_roots",
    "splits_completely_at",
    "rational_roots",
]

DEFAULT_MAX_PRECISION = 64


class IndeterminateError(ArithmeticError):
    """Lifting did not certify every root before reaching the precision cap."""


@dataclass(frozen=True)
class CertifiedRoot:
    residue: int  # approximation modulo p^precision
    precision: int
    value_valuation: float  # v(f(r)); inf when r is an exact root
    derivative_valuation: int  # v(f'(r))
    reciprocal: bool = False  # residue approximates 1/root (root has negative valuation)

    def as_dict(self) -> dict:
        return {
            "residue": self.residue,
            "precision": self.precision,
            "v_f": "inf" if math.isinf(self.value_valuation) else int(self.value_valuation),
            "v_df": self.derivative_valuation,
            "reciprocal": self.reciprocal,
        }


@dataclass(frozen=True)
class PadicRootReport:
    p: int
    root_count: int
    certified_roots: tuple[CertifiedRoot, ...] = field(default=())
    precision_used: int = 0

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "root_count": self.root_count,
            "precision_used": self.precision_used,
            "certified_roots": [r.as_dict() for r in self.certified_roots],
        }


def _eval(cs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _taylor(cs: list[int], a: int, scale: int) -> list[int]:
    """Coefficients of f(a + scale*y) in y."""
    out = list(cs)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += a * out[j + 1]
    m = 1
    for i in range(n):
        out[i] *= m
        m *= scale
    return out


def _reduction(cs: list[int], p: int, r: int, k: int) -> tuple[list[int], list[int]]:
    """f(r + p^k y) / p^v mod p (v the least coefficient valuation) and its derivative."""
    h = _taylor(cs, r, p**k)
    v = min(int_valuation(c, p) for c in h if c)
    hb = [(c // p**v) % p for c in h]
    return hb, [(i * c) % p for i, c in enumerate(hb)][1:]


def _certify(cs, dcs, p, r, k, max_precision, reciprocal) -> tuple[CertifiedRoot, int]:
    """r mod p^k isolates a single root; Newton-lift until the Hensel certificate holds."""
    while True:
        if k > max_precision:
            raise IndeterminateError(f"root near {r} mod {p}^{k - 1} not certified within precision {max_precision}")
        fr = _eval(cs, r)
        dfr = _eval(dcs, r)
        e = int_valuation(dfr, p)
        vf = int_valuation(fr, p)
        if not math.isinf(e) and vf > 2 * e and k > e:
            return CertifiedRoot(r, k, vf, int(e), reciprocal), k
        # the class holds exactly one root, so its reduction has exactly one simple root
        hb, _ = _reduction(cs, p, r, k)
        nxt = [y for y in range(p) if _eval(hb, y) % p == 0]
        if len(nxt) != 1:
            raise AssertionError("isolated root class did not refine uniquely")
        r, k = r + p**k * nxt[0], k + 1


def _lift_roots(cs: list[int], p: int, start: tuple[int, int], max_precision: int, reciprocal: bool):
    """Roots of f in the class start = (r, k), i.e. r + p^k Z_p.

    Each class (r, k) is examined through H(y) = f(r + p^k y) / p^v with v the
    least coefficient valuation: roots of H mod p give the subclasses that can
    hold roots, and a simple root of H mod p holds exactly one root of f.
    """
    dcs = [i * c for i, c in enumerate(cs)][1:]
    found: list[CertifiedRoot] = []
    used = start[1]
    stack = [start]
    while stack:
        r, k = stack.pop()
        if k > max_precision:
            raise IndeterminateError(f"roots near {r} mod {p}^{k - 1} unresolved; raise max_precision")
        used = max(used, k)
        hb, dhb = _reduction(cs, p, r, k)
        for y in range(p):
            if _eval(hb, y) % p:
                continue
            child = r + p**k * y
            if _eval(dhb, y) % p:
                root, kk = _certify(cs, dcs, p, child, k + 1, max_precision, reciprocal)
                found.append(root)
                used = max(used, kk)
            else:
                stack.append((child, k + 1))
    return found, used


def count_padic_roots(f: Poly, p: int, max_precision: int = DEFAULT_MAX_PRECISION) -> PadicRootReport:
    """Number of distinct roots of the squarefree cubic ``f`` in Q_p, with Hensel certificates."""
    require_prime(p)
    if f.degree != 3:
        raise ValueError(f"expected a cubic, got degree {f.degree}")
    if not is_squarefree(f):
        raise ValueError(f"{f} is not squarefree")
    _, g = content_primitive(f)
    cs = g.int_coeffs()
    integral, used1 = _lift_roots(cs, p, (0, 0), max_precision, False)
    rev = list(reversed(cs))
    outside, used2 = _lift_roots(rev, p, (0, 1), max_precision, True)
    roots = tuple(sorted(integral, key=lambda r: r.residue) + sorted(outside, key=lambda r: r.residue))
    return PadicRootReport(p, len(roots), roots, max(used1, used2))


def _integer_roots_monic(cs: list[int]) -> list[int]:
    """Integer roots of a monic integer polynomial of degree <= 3 (exact, by monotone bisection)."""
    deg = len(cs) - 1
    if deg <= 0:
        return []
    bound = 1 + max(abs(c) for c in cs[:-1])
    # Break [-bound, bound] at integers bracketing the real critical points: every
    # remaining interval of length > 1 is monotone, so a sign change locates the root.
    breaks = [-bound, bound]
    if deg == 3:
        # h' = 3y^2 + 2 a2 y + a1
        a, b, c = 3, 2 * cs[2], cs[1]
        disc = b * b - 4 * a * c
        if disc >= 0:
            s = math.isqrt(disc)
            for num in (-b - s, -b + s):
                c0 = num // (2 * a)
                breaks.extend(range(c0 - 1, c0 + 3))
    elif deg == 2:
        c0 = -cs[1] // 2
        breaks.extend(range(c0 - 1, c0 + 3))
    pts = sorted(set(min(max(x, -bound), bound) for x in breaks))
    out = set()
    for lo, hi in zip(pts, pts[1:]):
        for x in (lo, hi):
            if _eval(cs, x) == 0:
                out.add(x)
        flo, fhi = _eval(cs, lo), _eval(cs, hi)
        if flo * fhi < 0:
            a, b = lo, hi
            while b - a > 1:
                m = (a + b) // 2
                fm = _eval(cs, m)
                if fm == 0:
                    out.add(m)
                    break
                if (fm < 0) == (flo < 0):
                    a = m
                else:
                    b = m
    return sorted(out)


def rational_roots(f: Poly) -> list[Fraction]:
    """Rational roots of an integer polynomial of degree <= 3."""
    if f.degree > 3:
        raise ValueError("rational_roots supports degree <= 3")
    _, g = content_primitive(f)
    cs = g.int_coeffs()
    n = len(cs) - 1
    lc = cs[-1]
    # y = lc x turns g into a monic integer polynomial: lc^(n-1) g(y/lc)
    monic = [cs[i] * lc ** (n - 1 - i) for i in range(n)] + [1]
    return sorted({Fraction(y, lc) for y in _integer_roots_monic(monic)})


def splits_completely_at(f: Poly, p: int, max_precision: int = DEFAULT_MAX_PRECISION) -> bool:
    """True iff the irreducible cubic f has three roots in Q_p, i.e. p splits completely in Q[x]/(f)."""
    if f.degree != 3:
        raise ValueError(f"expected a cubic, got degree {f.degree}")
    if rational_roots(f):
        raise ValueError(f"{f} has a rational root, so it is reducible")
    return count_padic_roots(f, p, max_precision).root_count == 3
