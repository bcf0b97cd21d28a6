"""Exact integer and rational arithmetic: valuations, primality, factorization.

Rationals are :class:`fractions.Fraction` values throughout the package; every
constructor normalizes, so ``Fraction(4, 2) == Fraction(2)`` and zero is
``0/1``.  The factorizer combines trial division, Miller-Rabin and Brent's
variant of Pollard rho under an explicit iteration budget; anything it cannot
split within that budget is returned as an unfactored cofactor instead of being
silently dropped.
"""

from __future__ import annotations

import math
import os
import random
import bisect
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Union

Rational = Fraction
RationalLike = Union[int, Fraction]

INF = math.inf

TRIAL_LIMIT = 10**6
DEFAULT_BUDGET = 200_000
BUDGET_ENV = "TAMAGAWA_FACTOR_BUDGET"

# Deterministic Miller-Rabin bases: correct for all n < 3317044064679887385961981.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981
_MR_RANDOM_ROUNDS = 64


def _sieve(n: int) -> list[int]:
    flags = bytearray([1]) * (n + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, f in enumerate(flags) if f]


_SMALL_PRIMES: list[int] = []
_BLOCKS: list[tuple[int, int, int]] = []  # (product, start index, end index)
_BLOCK_SIZE = 256


def small_primes() -> list[int]:
    """Primes below the trial-division limit (computed once)."""
    if not _SMALL_PRIMES:
        _SMALL_PRIMES.extend(_sieve(TRIAL_LIMIT))
        for i in range(0, len(_SMALL_PRIMES), _BLOCK_SIZE):
            chunk = _SMALL_PRIMES[i : i + _BLOCK_SIZE]
            _BLOCKS.append((math.prod(chunk), i, i + len(chunk)))
    return _SMALL_PRIMES


def _trial_divide(m: int, found: dict[int, int]) -> int:
    """Strip all primes below TRIAL_LIMIT from ``m``; gcd against prime-block products skips empty blocks."""
    ps = small_primes()
    for prod, lo, hi in _BLOCKS:
        if ps[lo] * ps[lo] > m:
            break
        if math.gcd(prod, m) == 1:
            continue
        for p in ps[lo:hi]:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                found[p] = found.get(p, 0) + e
    return m


def default_budget() -> int:
    """Pollard-rho iteration budget, overridable through ``TAMAGAWA_FACTOR_BUDGET``."""
    value = os.environ.get(BUDGET_ENV)
    if value:
        return int(value)
    return DEFAULT_BUDGET


def as_fraction(x: RationalLike | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


# -- primality ---------------------------------------------------------------


def _mr_witness(a: int, d: int, s: int, n: int) -> bool:
    """True if ``a`` proves ``n`` composite."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


@lru_cache(maxsize=65536)
def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, 64 seeded random rounds above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_DETERMINISTIC_LIMIT:
        return not any(_mr_witness(a, d, s, n) for a in _MR_BASES)
    rng = random.Random(n)
    for _ in range(_MR_RANDOM_ROUNDS):
        a = rng.randrange(2, n - 1)
        if _mr_witness(a, d, s, n):
            return False
    return True


def require_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")
    return p


# -- valuations --------------------------------------------------------------


def int_valuation(n: int, p: int) -> int | float:
    """ord_p of a nonzero integer (``INF`` for 0); ``p`` is assumed prime."""
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x: RationalLike, p: int) -> int | float:
    """The p-adic valuation of a rational; ``math.inf`` for zero.

    >>> valuation(Fraction(1, 8), 2)
    -3
    """
    require_prime(p)
    x = as_fraction(x)
    if x == 0:
        return INF
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


# -- factorization -----------------------------------------------------------


@dataclass(frozen=True)
class PrimeFactorization:
    """Prime factors of ``|n|`` with an unfactored cofactor (1 when complete)."""

    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1
    sign: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def value(self) -> int:
        """The (signed) integer this factorization describes."""
        out = self.cofactor
        for p, e in self.factors:
            out *= p**e
        return self.sign * out

    def __str__(self) -> str:
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        if self.cofactor != 1:
            parts.append(f"[{self.cofactor}]")
        body = "*".join(parts) or "1"
        return ("-" if self.sign < 0 else "") + body


def _brent_rho(n: int, budget: int, rng: random.Random) -> tuple[int | None, int]:
    """Find a nontrivial factor of odd composite ``n``; returns (factor or None, iterations used)."""
    used = 0
    while used < budget:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and used < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            used += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g, used
    return None, used


def _perfect_power(n: int) -> tuple[int, int]:
    """Return (b, k) with b**k == n and k maximal among small exponents."""
    best = (n, 1)
    for k in range(2, n.bit_length() + 1):
        b = round(n ** (1.0 / k)) if n.bit_length() < 1000 else _iroot(n, k)
        for cand in (b - 1, b, b + 1):
            if cand > 1 and cand**k == n:
                best = (cand, k)
        if 2**k > n:
            break
    return best


def _iroot(n: int, k: int) -> int:
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _split_large(n: int, budget: int, rng: random.Random, out: dict[int, int], leftovers: list[int]) -> int:
    """Fully factor ``n`` (no factors below TRIAL_LIMIT) into ``out``; return iterations used."""
    stack = [n]
    used = 0
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        b, k = _perfect_power(m)
        if k > 1:
            stack.extend([b] * k)
            continue
        remaining = budget - used
        if remaining <= 0:
            leftovers.append(m)
            continue
        g, spent = _brent_rho(m, remaining, rng)
        used += spent
        if g is None:
            leftovers.append(m)
        else:
            stack.append(g)
            stack.append(m // g)
    return used


def factorize(n: int, budget: int | None = None, hints: Iterable[int] = ()) -> PrimeFactorization:
    """Factor a nonzero integer.

    ``budget`` caps the total Pollard-rho iterations (default from
    ``TAMAGAWA_FACTOR_BUDGET`` or 200000).  ``hints`` are integers believed to
    share prime factors with ``n``; they are factored first and their primes
    divided out, which makes products of many moderate values cheap.  The result
    is the same with or without hints, except for how much budget is needed.
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("factorize expects an int")
    if n == 0:
        raise ValueError("cannot factor 0")
    if budget is None:
        budget = default_budget()
    sign = -1 if n < 0 else 1
    m = abs(n)
    found: dict[int, int] = {}

    hint_primes: set[int] = set()
    for h in hints:
        g = math.gcd(abs(int(h)), m)
        if g > 1:
            hint_primes.update(factorize(g, budget).primes)
    for p in sorted(hint_primes):
        while m % p == 0:
            m //= p
            found[p] = found.get(p, 0) + 1

    m = _trial_divide(m, found)
    leftovers: list[int] = []
    if m > 1:
        if m < TRIAL_LIMIT**2 or is_prime(m):
            found[m] = found.get(m, 0) + 1
        else:
            _split_large(m, budget, random.Random(m), found, leftovers)
    cofactor = 1
    for c in leftovers:
        cofactor *= c
    return PrimeFactorization(tuple(sorted(found.items())), cofactor, sign)


def squarefree_part(d: int) -> tuple[int, int]:
    """Write ``d = s * m**2`` with ``s`` squarefree (same sign as ``d``) and ``m > 0``."""
    if d == 0:
        raise ValueError("squarefree_part(0) is undefined")
    fac = factorize(d, budget=10**7)
    if not fac.complete:
        raise ValueError(f"could not factor {d} to extract its squarefree part")
    s, m = fac.sign, 1
    for p, e in fac.factors:
        if e % 2:
            s *= p
        m *= p ** (e // 2)
    return s, m


def is_squarefree(d: int) -> bool:
    return d != 0 and squarefree_part(d)[1] == 1


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime ``p``, via Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"legendre_symbol needs an odd prime, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    if r == p - 1:
        return -1
    return r


def is_square_mod(a: int, p: int) -> bool:
    """True iff ``a`` is a square (possibly zero) modulo the prime ``p``."""
    if p == 2:
        return True
    return legendre_symbol(a, p) != -1


def inverse_mod(a: int, m: int) -> int:
    return pow(a, -1, m)


def enumerate_rationals(H: int) -> Iterator[Fraction]:
    """All p/q with gcd(p, q) = 1, 1 <= q <= H and |p| <= H.

    Ordered by ascending denominator, then ascending numerator, so ``H = 1``
    yields -1, 0, 1.
    """
    if H < 1:
        raise ValueError("height bound must be >= 1")
    for q in range(1, H + 1):
        for p in range(-H, H + 1):
            if math.gcd(p, q) == 1:
                yield Fraction(p, q)


def height(x: Fraction) -> int:
    """Naive height max(|p|, q)."""
    return max(abs(x.numerator), x.denominator)


def squarefree_range(D: int) -> list[int]:
    """Squarefree integers with 1 <= |d| <= D in the order -D..-1, 1..D."""
    pos = [d for d in range(1, D + 1) if is_squarefree(d)]
    return [-d for d in reversed(pos)] + pos


def primes_up_to(n: int) -> list[int]:
    if n <= TRIAL_LIMIT:
        ps = small_primes()
        return ps[: bisect.bisect_right(ps, n)]
    return _sieve(n)
