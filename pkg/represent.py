"""
Parameter systems of the reciprocity theorem.

  - two_squares: p = a^2 + b^2 (a odd, b even) by Cornacchia descent
  - whf_triple / m2_triple: a canonical (A, B, C) with A^2 = m(B^2 + C^2)
  - convert_convention: move a triple between the sign/parity conventions
  - burde_params: the composite triple (pq, b(c^2-d^2)+2acd, a(c^2-d^2)-2bcd)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from arith import is_prime, jacobi, sqrt_mod
from errors import BadResidueClass, NotConvertible, NotMutualResidue, PrecompositionFailure


class Convention(str, Enum):
    EQ1 = "EQ1"      # B even, A + B = 1 mod 4
    EQ3 = "EQ3"      # m = 2, (A, B, C) = (2, 1, 1)
    EQ4 = "EQ4"      # A, B, C > 0, B odd, C even
    EQ5 = "EQ5"      # A, B > 0, B even, C odd
    BURDE = "BURDE"  # B even, sign of A free


@dataclass(frozen=True)
class TwoSquares:
    n: int
    a: int
    b: int


@dataclass(frozen=True)
class WhfTriple:
    """(m, A, B, C) tagged with its convention; construction does not validate."""

    m: int
    A: int
    B: int
    C: int
    convention: Convention = Convention.EQ1

    def as_params(self) -> dict[str, int]:
        return {"m": self.m, "A": self.A, "B": self.B, "C": self.C}

    def __str__(self) -> str:
        return f"(m={self.m}, A={self.A}, B={self.B}, C={self.C}) [{self.convention.value}]"


# ──────────────────────────────────────────────
# Two squares
# ──────────────────────────────────────────────

def two_squares(p: int) -> TwoSquares:
    """Unique p = a^2 + b^2 with a odd > 0, b even > 0, for a prime p = 1 mod 4."""
    if p % 4 != 1 or not is_prime(p):
        raise BadResidueClass(f"{p} is not a prime = 1 mod 4")
    # Euclidean descent from the larger square root of -1
    r = p - sqrt_mod(p - 1, p)
    x, y = p, r
    limit = math.isqrt(p)
    while y > limit:
        x, y = y, x % y
    rest = p - y * y
    z = math.isqrt(rest)
    if z * z != rest:
        raise PrecompositionFailure(f"descent for {p} ended at {y}, {p} - {y}^2 is not a square")
    a, b = (y, z) if y % 2 else (z, y)
    return TwoSquares(n=p, a=a, b=b)


# ──────────────────────────────────────────────
# Triples
# ──────────────────────────────────────────────

def whf_triple(m: int) -> WhfTriple:
    """Minimal triple A = +-m, B = s, C = r from m = r^2 + s^2 (EQ1 convention)."""
    rep = two_squares(m)
    A = m if (m + rep.b) % 4 == 1 else -m
    return WhfTriple(m=m, A=A, B=rep.b, C=rep.a, convention=Convention.EQ1)


def m2_triple() -> WhfTriple:
    return WhfTriple(m=2, A=2, B=1, C=1, convention=Convention.EQ3)


def convert_convention(t: WhfTriple, target: Convention) -> WhfTriple:
    """Same m and same {|A|, |B|, |C|}, rearranged to satisfy target."""
    a, b, c = abs(t.A), abs(t.B), abs(t.C)
    if target == Convention.EQ3:
        if t.m != 2:
            raise NotConvertible(f"the EQ3 convention only exists for m = 2, got m = {t.m}")
        return WhfTriple(m=2, A=a, B=b, C=c, convention=target)
    if target == Convention.BURDE:
        raise NotConvertible("BURDE triples come from burde_params, not from conversion")
    if b % 2 == c % 2:
        raise NotConvertible(f"{t} has no even member to place (m = {t.m})")
    even, odd = (b, c) if b % 2 == 0 else (c, b)

    if target == Convention.EQ4:
        return WhfTriple(m=t.m, A=a, B=odd, C=even, convention=target)
    if target == Convention.EQ5:
        return WhfTriple(m=t.m, A=a, B=even, C=odd, convention=target)
    A = a if (a + even) % 4 == 1 else -a
    return WhfTriple(m=t.m, A=A, B=even, C=odd, convention=Convention.EQ1)


def burde_params(p_rep: TwoSquares, q_rep: TwoSquares) -> WhfTriple:
    """Composite triple for Burde's law; the theorem's m is p, the prime is q."""
    p, q = p_rep.n, q_rep.n
    if p == q or jacobi(p, q) != 1:
        raise NotMutualResidue(f"need distinct p, q with ({p}/{q}) = +1")
    a, b, c, d = p_rep.a, p_rep.b, q_rep.a, q_rep.b
    diff = c * c - d * d
    t = WhfTriple(
        m=p,
        A=p * q,
        B=b * diff + 2 * a * c * d,
        C=a * diff - 2 * b * c * d,
        convention=Convention.BURDE,
    )
    problems = triple_violations(t)
    if problems:
        raise PrecompositionFailure(f"Burde triple for ({p}, {q}) is invalid: {'; '.join(problems)}")
    return t


# ──────────────────────────────────────────────
# Invariant checks
# ──────────────────────────────────────────────

def triple_violations(t: WhfTriple) -> list[str]:
    """Every theorem or convention invariant that t violates."""
    problems = []
    if t.A * t.A != t.m * (t.B * t.B + t.C * t.C):
        problems.append("A^2 != m(B^2 + C^2)")
    for name, x, y in (("A,B", t.A, t.B), ("B,C", t.B, t.C), ("C,A", t.C, t.A)):
        if math.gcd(x, y) != 1:
            problems.append(f"gcd({name}) = {math.gcd(x, y)}")
    if t.m % 2 and abs(t.A) % 4 != 1:
        problems.append("|A| != 1 mod 4")

    conv = t.convention
    if conv == Convention.EQ1:
        if t.B % 2:
            problems.append("EQ1 needs B even")
        if (t.A + t.B) % 4 != 1:
            problems.append("EQ1 needs A + B = 1 mod 4")
    elif conv == Convention.EQ4:
        if min(t.A, t.B, t.C) <= 0:
            problems.append("EQ4 needs A, B, C > 0")
        if t.B % 2 == 0 or t.C % 2:
            problems.append("EQ4 needs B odd, C even")
    elif conv == Convention.EQ5:
        if t.A <= 0 or t.B <= 0:
            problems.append("EQ5 needs A, B > 0")
        if t.B % 2 or t.C % 2 == 0:
            problems.append("EQ5 needs B even, C odd")
    elif conv == Convention.EQ3:
        if t.m != 2 or t.B % 2 == 0 or t.C % 2 == 0:
            problems.append("EQ3 needs m = 2 and B, C odd")
    elif conv == Convention.BURDE:
        if t.B % 2:
            problems.append("Burde triple needs B even")
    return problems


def sign_biconditional(t: WhfTriple) -> bool:
    """|A| + |B| = 1 mod 4  <=>  4 | B  <=>  m = 1 mod 8, for B even."""
    first = (abs(t.A) + abs(t.B)) % 4 == 1
    second = t.B % 4 == 0
    third = t.m % 8 == 1
    return first == second == third


def dividing_edge(t: WhfTriple, p: int) -> bool:
    """True when p divides A*B*C."""
    return (t.A * t.B * t.C) % p == 0


def triple_with_convention(m: int, convention: Convention) -> WhfTriple:
    if m == 2:
        return convert_convention(m2_triple(), convention)
    base = whf_triple(m)
    return base if convention == Convention.EQ1 else convert_convention(base, convention)
