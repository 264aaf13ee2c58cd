"""
Exact modular arithmetic primitives.

Everything above this layer (surd symbols, triples, laws, campaigns) reduces to
these functions. Public inputs are bounded by 2**31 (INPUT_BOUND); Python ints
keep every intermediate exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Literal, Optional

import numpy as np

from errors import (
    BadResidueClass,
    EvenModulus,
    InputOutOfRange,
    NotInvertible,
    NotQuadraticResidue,
    NotResidue,
    RootCheckFailed,
    SharesFactor,
)

SymbolValue = Literal[-1, 0, 1]

INPUT_BOUND = 1 << 31

# Deterministic Miller-Rabin: bases 2..37 are exact below 3.3 * 10**24,
# the first four already below 3_215_031_751 > INPUT_BOUND.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_SMALL_LIMIT = 3_215_031_751
_MR_LIMIT = 1 << 64

_SEGMENT = 1 << 18


# ──────────────────────────────────────────────
# Powers and inverses
# ──────────────────────────────────────────────

def mod_pow(base: int, exp: int, modulus: int) -> int:
    """Return base**exp reduced into [0, modulus)."""
    if modulus < 2:
        raise InputOutOfRange(f"modulus must be >= 2, got {modulus}")
    if exp < 0:
        raise InputOutOfRange(f"exponent must be nonnegative, got {exp}")
    return pow(base, exp, modulus)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x0, x1, y0, y1 = 0, 1, 1, 0
    while a != 0:
        q, b, a = b // a, a, b % a
        y0, y1 = y1, y0 - q * y1
        x0, x1 = x1, x0 - q * x1
    return b, x0, y0


def inv_mod(a: int, n: int) -> int:
    """Inverse of a modulo n, in (0, n)."""
    if n < 2:
        raise InputOutOfRange(f"modulus must be >= 2, got {n}")
    g, x, _ = xgcd(a % n, n)
    if g != 1:
        raise NotInvertible(f"{a} has no inverse mod {n} (gcd {g})")
    return x % n


# ──────────────────────────────────────────────
# Quadratic and quartic symbols
# ──────────────────────────────────────────────

def jacobi(a: int, n: int) -> SymbolValue:
    """Jacobi symbol (a/n) for odd n >= 1; negative a is reduced first."""
    if n < 1 or n % 2 == 0:
        raise EvenModulus(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod(a: int, p: int) -> int:
    """Canonical square root of a modulo the odd prime p.

    Tonelli-Shanks; returns min(r, p - r), and 0 when p | a.
    """
    if p < 3 or not is_prime(p):
        raise BadResidueClass(f"square roots need an odd prime modulus, got {p}")
    a %= p
    if a == 0:
        return 0
    if jacobi(a, p) != 1:
        raise NotResidue(f"{a} is not a square mod {p}")

    if p % 4 == 3:
        x = pow(a, (p + 1) // 4, p)
    else:
        # p - 1 = q * 2**s with q odd
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while jacobi(z, p) != -1:
            z += 1
        c = pow(z, q, p)
        x = pow(a, (q + 1) // 2, p)
        t = pow(a, q, p)
        m = s
        while t != 1:
            t2i, i = t, 0
            for i in range(1, m):
                t2i = t2i * t2i % p
                if t2i == 1:
                    break
            b = pow(c, 1 << (m - i - 1), p)
            x = x * b % p
            c = b * b % p
            t = t * c % p
            m = i

    if x * x % p != a:
        raise RootCheckFailed(f"computed root {x} does not square to {a} mod {p}")
    return min(x, p - x)


def quartic_symbol(p: int, m: int) -> SymbolValue:
    """Rational quartic residue symbol (p/m)_4 for a prime m = 1 mod 4.

    Only defined here when p is a quadratic residue mod m, so the value is +1 or -1.
    """
    if m % 4 != 1 or not is_prime(m):
        raise BadResidueClass(f"quartic symbol needs a prime m = 1 mod 4, got {m}")
    r = p % m
    if r == 0:
        raise SharesFactor(f"{m} divides {p}")
    if jacobi(r, m) != 1:
        raise NotQuadraticResidue(f"{p} is not a square mod {m}")
    v = pow(r, (m - 1) // 4, m)
    if v == 1:
        return 1
    if v == m - 1:
        return -1
    raise RootCheckFailed(f"{p}^((m-1)/4) mod {m} = {v}, expected +-1")


def lift_symbol(s: int, q: int) -> int:
    """Map a +-1 symbol into its residue class {1, q-1} mod q."""
    return s % q


def symbol_from_residue(r: int, q: int) -> SymbolValue:
    """Inverse of lift_symbol; residues other than 1 and q-1 map to 0."""
    r %= q
    if r == 1:
        return 1
    if r == q - 1:
        return -1
    return 0


def sign_power(exponent: int) -> SymbolValue:
    """(-1)**exponent for integer exponent."""
    return -1 if exponent % 2 else 1


# ──────────────────────────────────────────────
# Orders and primality
# ──────────────────────────────────────────────

def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n >= 1 by trial division."""
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append(n)
    return factors


def mult_order(p: int, m: int) -> int:
    """Least f >= 1 with p**f = 1 mod the prime m; f divides m - 1."""
    r = p % m
    if r == 0:
        raise SharesFactor(f"{m} divides {p}")
    f = m - 1
    for ell in prime_factors(m - 1):
        while f % ell == 0 and pow(r, f // ell, m) == 1:
            f //= ell
    return f


def _miller_rabin_round(n: int, a: int, d: int, r: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic primality test (exact below 2**64)."""
    if n < 2:
        return False
    if n >= _MR_LIMIT:
        raise InputOutOfRange(f"{n} exceeds the primality bound 2**64")
    for b in _MR_BASES:
        if n == b:
            return True
        if n % b == 0:
            return False
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    bases = _MR_BASES[:4] if n < _MR_SMALL_LIMIT else _MR_BASES
    return all(_miller_rabin_round(n, a, d, r) for a in bases)


# ──────────────────────────────────────────────
# Prime ranges (segmented numpy sieve)
# ──────────────────────────────────────────────

@dataclass(frozen=True)
class PrimeRange:
    lo: int
    hi: int
    residue_filter: Optional[tuple[int, tuple[int, ...]]] = None

    def __post_init__(self):
        if self.lo < 1 or self.hi < 1 or self.lo > self.hi:
            raise InputOutOfRange(f"invalid prime range [{self.lo}, {self.hi}]")
        if self.hi > INPUT_BOUND:
            raise InputOutOfRange(f"range end {self.hi} exceeds 2**31")


def simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p:: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def prime_stream(prime_range: PrimeRange) -> Iterator[int]:
    """Yield the primes in [lo, hi] passing the residue filter, increasing."""
    lo, hi = max(prime_range.lo, 2), prime_range.hi
    base = simple_sieve(math.isqrt(hi))
    if prime_range.residue_filter:
        modulus, allowed = prime_range.residue_filter
        allowed_arr = np.array(sorted(set(r % modulus for r in allowed)), dtype=np.int64)
    else:
        modulus, allowed_arr = None, None

    low = lo
    while low <= hi:
        high = min(low + _SEGMENT, hi + 1)  # exclusive
        mask = np.ones(high - low, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, ((low + p - 1) // p) * p)
            mask[start - low:: p] = False
        values = np.flatnonzero(mask).astype(np.int64) + low
        if modulus is not None:
            values = values[np.isin(values % modulus, allowed_arr)]
        for v in values.tolist():
            yield v
        low = high


def primes_between(lo: int, hi: int, modulus: Optional[int] = None,
                   residues: tuple[int, ...] = ()) -> list[int]:
    """List form of prime_stream."""
    residue_filter = (modulus, residues) if modulus else None
    return list(prime_stream(PrimeRange(lo, hi, residue_filter)))
