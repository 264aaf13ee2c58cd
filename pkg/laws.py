"""
Both sides of every rational quartic reciprocity formula, as LawReports.

Single-prime laws take (m, p) with m = 1 mod 4 prime and (m/p) = +1:
  EQ1, EQ4, EQ5, EQ6, SPLIT, SIGN, REL
Two-prime laws take p, q = 1 mod 4 primes with (p/q) = +1:
  EQ7 (Burde), CHAIN, EQ8 (Gosset), EQ8X, EQ9 (Froehlich), AUX

Evaluators never repair a failed identity: holds = False is returned as is.
A report always satisfies holds == (lhs == rhs); laws with more than two sides
put the common value of the remaining sides in rhs, or 0 if those disagree.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Optional, Union

from pydantic import BaseModel

from arith import (
    SymbolValue,
    inv_mod,
    is_prime,
    jacobi,
    lift_symbol,
    mod_pow,
    mult_order,
    quartic_symbol,
    sign_power,
    symbol_from_residue,
)
from errors import (
    BadResidueClass,
    DegenerateFraction,
    InputOutOfRange,
    NotMutualResidue,
    NotSplit,
    OddB,
    RootCheckFailed,
    SharesFactor,
)
from quadfield import check_identity_eq2, symbol_surd
from represent import (
    Convention,
    TwoSquares,
    WhfTriple,
    burde_params,
    m2_triple,
    sign_biconditional,
    triple_violations,
    triple_with_convention,
    two_squares,
    whf_triple,
)


class LawId(str, Enum):
    EQ1 = "EQ1"
    EQ2 = "EQ2"
    EQ3 = "EQ3"
    EQ4 = "EQ4"
    EQ5 = "EQ5"
    EQ6 = "EQ6"
    EQ7 = "EQ7"
    EQ8 = "EQ8"
    EQ8X = "EQ8X"
    EQ9 = "EQ9"
    CHAIN = "CHAIN"
    SPLIT = "SPLIT"
    SIGN = "SIGN"
    REL = "REL"
    TRIPLE = "TRIPLE"
    AUX = "AUX"


def law_id(value: Union[LawId, str]) -> LawId:
    """Parse a law id case-insensitively; unknown ids are an InputOutOfRange."""
    if isinstance(value, LawId):
        return value
    try:
        return LawId(str(value).upper())
    except ValueError:
        raise InputOutOfRange(f"unknown law id {value!r}") from None


class LawReport(BaseModel):
    law: LawId
    params: dict[str, int]
    lhs: int
    rhs: int
    holds: bool
    error: Optional[str] = None
    # exception class name, set together with error
    error_kind: Optional[str] = None

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True)


@dataclass(frozen=True)
class SplittingData:
    f: int
    g: int


def _report(law: LawId, params: dict[str, int], lhs: int, rhs: int) -> LawReport:
    return LawReport(law=law, params=params, lhs=lhs, rhs=rhs, holds=lhs == rhs)


def error_report(law: LawId, params: dict[str, int], exc: Exception) -> LawReport:
    return LawReport(
        law=law, params=params, lhs=0, rhs=0, holds=False,
        error=f"{type(exc).__name__}: {exc}", error_kind=type(exc).__name__,
    )


# ──────────────────────────────────────────────
# Precondition guards
# ──────────────────────────────────────────────

@lru_cache(maxsize=None)
def _cached_triple(m: int) -> WhfTriple:
    return whf_triple(m)


@lru_cache(maxsize=None)
def _cached_squares(p: int) -> TwoSquares:
    return two_squares(p)


def _require_odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise BadResidueClass(f"{p} is not an odd prime")


def _require_admissible(m: int, p: int) -> None:
    if m % 4 != 1 or not is_prime(m):
        raise BadResidueClass(f"m = {m} is not a prime = 1 mod 4")
    _require_odd_prime(p)
    if p == m:
        raise SharesFactor(f"p = m = {p}")
    if jacobi(m, p) != 1:
        raise NotSplit(f"({m}/{p}) != +1")


def _require_pair(p: int, q: int) -> tuple[TwoSquares, TwoSquares]:
    p_rep, q_rep = _cached_squares(p), _cached_squares(q)
    if p == q:
        raise NotMutualResidue(f"p and q must differ, both are {p}")
    if jacobi(p, q) != 1:
        raise NotMutualResidue(f"({p}/{q}) != +1")
    return p_rep, q_rep


def whf_sign_exponent(p: int, m: int) -> int:
    """(p - 1)(m - 1)/8, which is integral for odd p and m = 1 mod 4."""
    num = (p - 1) * (m - 1)
    if num % 8:
        raise BadResidueClass(f"(p-1)(m-1)/8 is not an integer for p = {p}, m = {m}")
    return num // 8


def _pair_params(p_rep: TwoSquares, q_rep: TwoSquares) -> dict[str, int]:
    return {
        "p": p_rep.n, "q": q_rep.n,
        "a": p_rep.a, "b": p_rep.b, "c": q_rep.a, "d": q_rep.b,
    }


# ──────────────────────────────────────────────
# Single-prime laws
# ──────────────────────────────────────────────

def eval_eq1(m: int, p: int) -> LawReport:
    """((A + B*sqrt(m))/p) = (p/m)_4 on the EQ1 triple of m."""
    _require_admissible(m, p)
    t = _cached_triple(m)
    lhs = symbol_surd(t.A, t.B, m, p)
    rhs = quartic_symbol(p, m)
    return _report(LawId.EQ1, {"m": m, "p": p, "A": t.A, "B": t.B, "C": t.C}, lhs, rhs)


def eval_m2_eq3(p: int) -> LawReport:
    """((2 + sqrt(2))/p) = +1 exactly when p = +-1 mod 16."""
    _require_odd_prime(p)
    if p % 8 not in (1, 7):
        raise NotSplit(f"(2/{p}) != +1")
    t = m2_triple()
    lhs = symbol_surd(t.A, t.B, t.m, p)
    rhs = 1 if p % 16 in (1, 15) else -1
    return _report(LawId.EQ3, {"m": 2, "p": p, "A": t.A, "B": t.B, "C": t.C}, lhs, rhs)


_VARIANT_CONVENTION = {
    LawId.EQ4: Convention.EQ4,
    LawId.EQ5: Convention.EQ5,
    LawId.EQ6: Convention.EQ5,
}


def eval_whf_variant(m: int, p: int, variant: LawId) -> LawReport:
    variant = law_id(variant)
    if variant not in _VARIANT_CONVENTION:
        raise InputOutOfRange(f"{variant.value} is not one of EQ4, EQ5, EQ6")
    _require_admissible(m, p)
    t = triple_with_convention(m, _VARIANT_CONVENTION[variant])
    lhs = symbol_surd(t.A, t.B, m, p)
    sign = sign_power(whf_sign_exponent(p, m))
    if variant == LawId.EQ4:
        rhs = sign * jacobi(2, p) * quartic_symbol(p, m)
    elif variant == LawId.EQ5:
        rhs = sign * quartic_symbol(p, m)
    else:
        p_star = sign_power((p - 1) // 2) * p
        rhs = quartic_symbol(p_star, m)
    return _report(variant, {"m": m, "p": p, "A": t.A, "B": t.B, "C": t.C}, lhs, rhs)


def splitting_chain(m: int, p: int) -> tuple[SplittingData, LawReport]:
    """(p/m)_4 = 1 <=> f | (m-1)/4 <=> 4 | g <=> ((A + B*sqrt(m))/p) = 1."""
    _require_admissible(m, p)
    f = mult_order(p, m)
    g = (m - 1) // f
    quartic = quartic_symbol(p, m)
    eq1 = eval_eq1(m, p)
    divides = ((m - 1) // 4) % f == 0
    four_g = g % 4 == 0
    surd_one = eq1.lhs == 1
    if divides == four_g == surd_one:
        rhs = 1 if divides else -1
    else:
        rhs = 0
    params = {"m": m, "p": p, "f": f, "g": g, "eq1_lhs": eq1.lhs}
    return SplittingData(f=f, g=g), _report(LawId.SPLIT, params, quartic, rhs)


def _sign_sides(p: int, t: WhfTriple) -> tuple[SymbolValue, SymbolValue]:
    if t.B % 2:
        raise OddB(f"B = {t.B} is odd")
    if t.m % 2 == 0 or not is_prime(t.m):
        raise BadResidueClass(f"m = {t.m} is not an odd prime")
    half = abs(t.B) // 2
    lhs = sign_power(half) if jacobi(-1, p) == -1 else 1
    rhs = sign_power(whf_sign_exponent(p, t.m))
    return lhs, rhs


def sign_lemma_check(p: int, t: WhfTriple) -> bool:
    """((-1)/p)^(B/2) == (-1)^((p-1)(m-1)/8)."""
    lhs, rhs = _sign_sides(p, t)
    return lhs == rhs


def eval_sign_lemma(m: int, p: int) -> LawReport:
    _require_odd_prime(p)
    t = _cached_triple(m)
    lhs, rhs = _sign_sides(p, t)
    return _report(LawId.SIGN, {"m": m, "p": p, "B": t.B}, lhs, rhs)


def eval_identity(t: WhfTriple) -> LawReport:
    """2(A + B*sqrt(m))(A + C*sqrt(m)) = (A + (B + C)*sqrt(m))^2 exactly; rhs = -1 when it fails."""
    rhs = 1 if check_identity_eq2(t) else -1
    return _report(LawId.EQ2, t.as_params(), 1, rhs)


def eval_triple(t: WhfTriple) -> LawReport:
    """All triple invariants plus the sign biconditional (B even triples only)."""
    ok = not triple_violations(t)
    if t.B % 2 == 0:
        ok = ok and sign_biconditional(t)
    return _report(LawId.TRIPLE, t.as_params(), 1, 1 if ok else -1)


def eval_relation(m: int, p: int) -> LawReport:
    """((A + B*sqrt(m))/p) = (2/p) * ((A + C*sqrt(m))/p) for p not dividing 2ABC."""
    _require_admissible(m, p)
    t = _cached_triple(m)
    if (2 * t.A * t.B * t.C) % p == 0:
        raise SharesFactor(f"{p} divides 2ABC = {2 * t.A * t.B * t.C}")
    lhs = symbol_surd(t.A, t.B, m, p)
    rhs = jacobi(2, p) * symbol_surd(t.A, t.C, m, p)
    return _report(LawId.REL, {"m": m, "p": p, "A": t.A, "B": t.B, "C": t.C}, lhs, rhs)


# ──────────────────────────────────────────────
# Two-prime laws (Burde, Gosset, Froehlich)
# ──────────────────────────────────────────────

def eval_burde_eq7(p: int, q: int) -> LawReport:
    """(p/q)_4 (q/p)_4 = ((ac - bd)/q)."""
    p_rep, q_rep = _require_pair(p, q)
    a, b, c, d = p_rep.a, p_rep.b, q_rep.a, q_rep.b
    lhs = quartic_symbol(p, q) * quartic_symbol(q, p)
    rhs = jacobi(a * c - b * d, q)
    return _report(LawId.EQ7, _pair_params(p_rep, q_rep), lhs, rhs)


def eval_burde_chain(p: int, q: int) -> LawReport:
    """(q/p)_4 = ((A + B*sqrt(p))/q) = (B/q)(p/q)_4 on the Burde triple."""
    p_rep, q_rep = _require_pair(p, q)
    t = burde_params(p_rep, q_rep)
    quartic = quartic_symbol(q, p)
    surd = symbol_surd(t.A, t.B, p, q)
    product = jacobi(t.B, q) * quartic_symbol(p, q)
    rhs = surd if surd == product else 0
    params = _pair_params(p_rep, q_rep) | t.as_params() | {"surd": surd, "product": product}
    return _report(LawId.CHAIN, params, quartic, rhs)


def _gosset_fractions(p_rep: TwoSquares, q_rep: TwoSquares) -> tuple[int, int]:
    q = q_rep.n
    if p_rep.b % q == 0 or q_rep.b % q == 0:
        raise DegenerateFraction(f"{q} divides b*d = {p_rep.b * q_rep.b}")
    u = p_rep.a * inv_mod(p_rep.b, q) % q
    v = q_rep.a * inv_mod(q_rep.b, q) % q
    if (u + v) % q == 0:
        raise DegenerateFraction(f"a/b + c/d = 0 mod {q}")
    return u, v


def eval_gosset_eq8(p: int, q: int) -> LawReport:
    """(q/p)_4 = ((a/b - c/d)/(a/b + c/d))^((q-1)/4) mod q."""
    p_rep, q_rep = _require_pair(p, q)
    u, v = _gosset_fractions(p_rep, q_rep)
    lhs = quartic_symbol(q, p)
    lhs_residue = lift_symbol(lhs, q)
    rhs_residue = mod_pow((u - v) * inv_mod(u + v, q), (q - 1) // 4, q)
    params = _pair_params(p_rep, q_rep) | {
        "u": u, "v": v, "lhs_residue": lhs_residue, "rhs_residue": rhs_residue,
    }
    return _report(LawId.EQ8, params, lhs, symbol_from_residue(rhs_residue, q))


def eval_gosset_chain(p: int, q: int) -> LawReport:
    """Gosset's congruence with the fractions cleared: (q/p)_4 = (p/q)_4 (d/q) ((ad + bc)/q)."""
    p_rep, q_rep = _require_pair(p, q)
    a, b, c, d = p_rep.a, p_rep.b, q_rep.a, q_rep.b
    lhs = quartic_symbol(q, p)
    rhs = quartic_symbol(p, q) * jacobi(d, q) * jacobi(a * d + b * c, q)
    return _report(LawId.EQ8X, _pair_params(p_rep, q_rep), lhs, rhs)


def eval_froehlich_eq9(p: int, q: int) -> LawReport:
    """(p/q)_4 (q/p)_4 = ((a + bj)/q) = ((c + di)/p) with i = a/b, j = c/d."""
    p_rep, q_rep = _require_pair(p, q)
    a, b, c, d = p_rep.a, p_rep.b, q_rep.a, q_rep.b
    i = a * inv_mod(b, p) % p
    j = c * inv_mod(d, q) % q
    if i * i % p != p - 1:
        raise RootCheckFailed(f"i = {i} is not a square root of -1 mod {p}")
    if j * j % q != q - 1:
        raise RootCheckFailed(f"j = {j} is not a square root of -1 mod {q}")
    s_q = jacobi((a + b * j) % q, q)
    s_p = jacobi((c + d * i) % p, p)
    s0 = quartic_symbol(p, q) * quartic_symbol(q, p)
    params = _pair_params(p_rep, q_rep) | {"i": i, "j": j, "s_q": s_q, "s_p": s_p}
    return _report(LawId.EQ9, params, s0, s_q if s_q == s_p else 0)


def eval_burde_aux(p: int, q: int) -> LawReport:
    """Side facts the Burde/Froehlich derivations lean on; rhs = -1 if any fails."""
    p_rep, q_rep = _require_pair(p, q)
    a, b, c, d = p_rep.a, p_rep.b, q_rep.a, q_rep.b
    t = burde_params(p_rep, q_rep)
    x, y = a * c - b * d, a * d + b * c
    facts = {
        "a_p": jacobi(a, p),
        "c_q": jacobi(c, q),
        "two_d_q": jacobi(2 * d, q),
        "norm_ok": int(p * q == x * x + y * y),
        "b_congruence": int((t.B - 2 * d * x) % q == 0),
        "b_symbol_ok": int(jacobi(t.B, q) == jacobi(2 * d * (a * c + b * d), q)),
        "x_symmetric": int(jacobi(x, q) == jacobi(x, p)),
        "sign_free": int(symbol_surd(-t.A, -t.B, p, q) == symbol_surd(t.A, t.B, p, q)),
    }
    ok = all(v == 1 for v in facts.values())
    return _report(LawId.AUX, _pair_params(p_rep, q_rep) | facts, 1, 1 if ok else -1)


# ──────────────────────────────────────────────
# Dispatch (used by the CLI)
# ──────────────────────────────────────────────

LAW_ARGS: dict[LawId, tuple[str, ...]] = {
    LawId.EQ1: ("m", "p"),
    LawId.EQ3: ("p",),
    LawId.EQ4: ("m", "p"),
    LawId.EQ5: ("m", "p"),
    LawId.EQ6: ("m", "p"),
    LawId.SPLIT: ("m", "p"),
    LawId.SIGN: ("m", "p"),
    LawId.REL: ("m", "p"),
    LawId.EQ7: ("p", "q"),
    LawId.CHAIN: ("p", "q"),
    LawId.EQ8: ("p", "q"),
    LawId.EQ8X: ("p", "q"),
    LawId.EQ9: ("p", "q"),
    LawId.AUX: ("p", "q"),
}

_EVALUATORS: dict[LawId, Callable[..., LawReport]] = {
    LawId.EQ1: eval_eq1,
    LawId.EQ3: eval_m2_eq3,
    LawId.EQ4: lambda m, p: eval_whf_variant(m, p, LawId.EQ4),
    LawId.EQ5: lambda m, p: eval_whf_variant(m, p, LawId.EQ5),
    LawId.EQ6: lambda m, p: eval_whf_variant(m, p, LawId.EQ6),
    LawId.SPLIT: lambda m, p: splitting_chain(m, p)[1],
    LawId.SIGN: eval_sign_lemma,
    LawId.REL: eval_relation,
    LawId.EQ7: eval_burde_eq7,
    LawId.CHAIN: eval_burde_chain,
    LawId.EQ8: eval_gosset_eq8,
    LawId.EQ8X: eval_gosset_chain,
    LawId.EQ9: eval_froehlich_eq9,
    LawId.AUX: eval_burde_aux,
}


def eval_law(law: LawId, **params: int) -> LawReport:
    """Evaluate one law by id; params must match LAW_ARGS[law]."""
    law = law_id(law)
    if law not in _EVALUATORS:
        raise InputOutOfRange(f"{law.value} cannot be evaluated from primes alone")
    args = [params[name] for name in LAW_ARGS[law]]
    return _EVALUATORS[law](*args)
