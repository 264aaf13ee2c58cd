"""
Exact arithmetic in Z[sqrt(m)] and the rational surd symbol ((x + y*sqrt(m))/p).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from arith import SymbolValue, is_prime, jacobi, prime_factors, sqrt_mod
from errors import (
    AmbiguousSymbol,
    BadResidueClass,
    InputOutOfRange,
    NotSplit,
    RadicandMismatch,
    SharesFactor,
)

if TYPE_CHECKING:
    from represent import WhfTriple


def is_squarefree(m: int) -> bool:
    n = m
    for ell in prime_factors(m):
        n //= ell
        if n % ell == 0:
            return False
    return True


@dataclass(frozen=True)
class QuadInt:
    """x + y*sqrt(m) with m >= 2 squarefree."""

    x: int
    y: int
    m: int

    def __post_init__(self):
        if self.m < 2 or not is_squarefree(self.m):
            raise InputOutOfRange(f"radicand must be squarefree and >= 2, got {self.m}")

    def _check(self, other: QuadInt) -> None:
        if self.m != other.m:
            raise RadicandMismatch(f"cannot combine sqrt({self.m}) with sqrt({other.m})")

    def __add__(self, other: QuadInt) -> QuadInt:
        self._check(other)
        return QuadInt(self.x + other.x, self.y + other.y, self.m)

    def __sub__(self, other: QuadInt) -> QuadInt:
        self._check(other)
        return QuadInt(self.x - other.x, self.y - other.y, self.m)

    def __neg__(self) -> QuadInt:
        return QuadInt(-self.x, -self.y, self.m)

    def __mul__(self, other: QuadInt) -> QuadInt:
        return qmul(self, other)

    def scale(self, k: int) -> QuadInt:
        return QuadInt(k * self.x, k * self.y, self.m)

    def conjugate(self) -> QuadInt:
        return QuadInt(self.x, -self.y, self.m)

    def norm(self) -> int:
        return self.x * self.x - self.m * self.y * self.y

    def __str__(self) -> str:
        sign = "-" if self.y < 0 else "+"
        return f"{self.x} {sign} {abs(self.y)}*sqrt({self.m})"


def qmul(u: QuadInt, v: QuadInt) -> QuadInt:
    u._check(v)
    return QuadInt(u.x * v.x + u.y * v.y * u.m, u.x * v.y + u.y * v.x, u.m)


def check_identity_eq2(t: WhfTriple) -> bool:
    """2(A + B*sqrt(m))(A + C*sqrt(m)) == (A + (B + C)*sqrt(m))**2, exactly."""
    lhs = qmul(QuadInt(t.A, t.B, t.m), QuadInt(t.A, t.C, t.m)).scale(2)
    w = QuadInt(t.A, t.B + t.C, t.m)
    return lhs == qmul(w, w)


def symbol_surd(x: int, y: int, m: int, p: int) -> SymbolValue:
    """Rational symbol ((x + y*sqrt(m))/p) for a prime p with (m/p) = +1.

    Both conjugate residues x +- y*r must give the same Legendre value; when one
    of them vanishes mod p the other one decides.
    """
    if p < 3 or not is_prime(p):
        raise BadResidueClass(f"the surd symbol needs an odd prime p, got {p}")
    if jacobi(m, p) != 1:
        raise NotSplit(f"({m}/{p}) != +1, sqrt({m}) does not exist mod {p}")
    if x % p == 0 and y % p == 0:
        raise SharesFactor(f"{p} divides both {x} and {y}")
    r = sqrt_mod(m, p)
    plus = (x + y * r) % p
    minus = (x - y * r) % p
    if plus == 0:
        return jacobi(minus, p)
    if minus == 0:
        return jacobi(plus, p)
    s_plus, s_minus = jacobi(plus, p), jacobi(minus, p)
    if s_plus != s_minus:
        raise AmbiguousSymbol(
            f"({x} + {y}*sqrt({m}))/{p} depends on the root: {s_plus} vs {s_minus}"
        )
    return s_plus
