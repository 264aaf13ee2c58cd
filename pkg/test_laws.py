import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arith import jacobi, primes_between
from errors import (
    BadResidueClass,
    DegenerateFraction,
    InputOutOfRange,
    NotMutualResidue,
    NotSplit,
    OddB,
    SharesFactor,
)
from laws import (
    LawId,
    LawReport,
    SplittingData,
    error_report,
    eval_burde_aux,
    eval_burde_chain,
    eval_burde_eq7,
    eval_eq1,
    eval_froehlich_eq9,
    eval_gosset_chain,
    eval_gosset_eq8,
    eval_identity,
    eval_law,
    eval_m2_eq3,
    eval_relation,
    eval_sign_lemma,
    eval_triple,
    eval_whf_variant,
    law_id,
    sign_lemma_check,
    splitting_chain,
    whf_sign_exponent,
)
from represent import WhfTriple, whf_triple


def sides(report):
    return report.lhs, report.rhs, report.holds


# ──────────────────────────────────────────────
# Single-prime laws
# ──────────────────────────────────────────────

@pytest.mark.parametrize("m,p", [(17, 13), (13, 3), (5, 11)])
def test_eq1_examples(m, p):
    assert sides(eval_eq1(m, p)) == (1, 1, True)


def test_eq1_params_and_json():
    report = eval_eq1(13, 3)
    assert report.params == {"m": 13, "p": 3, "A": -13, "B": 2, "C": 3}
    assert json.loads(report.to_json()) == {
        "law": "EQ1",
        "params": {"m": 13, "p": 3, "A": -13, "B": 2, "C": 3},
        "lhs": 1,
        "rhs": 1,
        "holds": True,
    }


@pytest.mark.parametrize("m,p,exc", [
    (13, 7, NotSplit),
    (13, 13, SharesFactor),
    (7, 3, BadResidueClass),
    (13, 9, BadResidueClass),
])
def test_eq1_preconditions(m, p, exc):
    with pytest.raises(exc):
        eval_eq1(m, p)


@pytest.mark.parametrize("p,expected", [(17, 1), (7, -1), (31, 1), (23, -1)])
def test_m2_eq3_examples(p, expected):
    assert sides(eval_m2_eq3(p)) == (expected, expected, True)


def test_m2_eq3_needs_split_prime():
    with pytest.raises(NotSplit):
        eval_m2_eq3(5)


@pytest.mark.parametrize("variant,lhs,rhs", [
    (LawId.EQ5, -1, -1),
    (LawId.EQ6, -1, -1),
    (LawId.EQ4, 1, 1),
])
def test_whf_variant_examples(variant, lhs, rhs):
    assert sides(eval_whf_variant(13, 3, variant)) == (lhs, rhs, True)


def test_whf_variant_triples():
    assert eval_whf_variant(13, 3, LawId.EQ4).params["B"] == 3
    assert eval_whf_variant(13, 3, "EQ5").params["A"] == 13


def test_whf_variant_rejects_other_laws():
    with pytest.raises(InputOutOfRange):
        eval_whf_variant(13, 3, LawId.EQ9)
    with pytest.raises(InputOutOfRange):
        eval_whf_variant(13, 3, "foo")


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_sign_exponent_is_integral(i, j):
    p, m = 2 * i + 1, 4 * j + 1
    assert whf_sign_exponent(p, m) * 8 == (p - 1) * (m - 1)


def test_sign_exponent_rejects_m_3_mod_4():
    with pytest.raises(BadResidueClass):
        whf_sign_exponent(3, 7)


@pytest.mark.parametrize("m,p,f,g,lhs", [(13, 3, 3, 4, 1), (5, 11, 1, 4, 1), (5, 29, 2, 2, -1)])
def test_splitting_chain_examples(m, p, f, g, lhs):
    data, report = splitting_chain(m, p)
    assert data == SplittingData(f=f, g=g)
    assert sides(report) == (lhs, lhs, True)
    assert report.params["eq1_lhs"] == lhs


@pytest.mark.parametrize("p,t", [
    (3, WhfTriple(13, -13, 2, 3)),
    (13, WhfTriple(17, 17, 4, 1)),
    (5, WhfTriple(13, -13, 2, 3)),
])
def test_sign_lemma_examples(p, t):
    assert sign_lemma_check(p, t)


def test_sign_lemma_sides():
    assert sides(eval_sign_lemma(13, 3)) == (-1, -1, True)
    assert sides(eval_sign_lemma(17, 13)) == (1, 1, True)


def test_sign_lemma_needs_even_b():
    with pytest.raises(OddB):
        sign_lemma_check(3, WhfTriple(13, 13, 3, 2))


def test_identity_and_triple_reports():
    assert eval_identity(whf_triple(13)).holds
    broken = eval_identity(WhfTriple(5, -5, 2, 2))
    assert sides(broken) == (1, -1, False)
    assert eval_triple(whf_triple(17)).holds
    assert not eval_triple(WhfTriple(13, 13, 2, 3)).holds


def test_relation():
    assert sides(eval_relation(5, 11)) == (1, 1, True)
    with pytest.raises(SharesFactor):
        # C = 3
        eval_relation(13, 3)


def test_single_prime_laws_agree_over_range():
    for m in primes_between(5, 100, 4, (1,)):
        for p in primes_between(3, 500):
            if p == m or jacobi(m, p) != 1:
                continue
            eq1 = eval_eq1(m, p)
            assert eq1.holds, eq1
            for variant in (LawId.EQ4, LawId.EQ5, LawId.EQ6):
                r = eval_whf_variant(m, p, variant)
                assert r.holds, r
            data, split = splitting_chain(m, p)
            assert data.f * data.g == m - 1
            assert split.holds, split
            assert eval_sign_lemma(m, p).holds


# ──────────────────────────────────────────────
# Two-prime laws
# ──────────────────────────────────────────────

@pytest.mark.parametrize("p,q,value,abcd", [(5, 29, 1, (1, 2, 5, 2)), (13, 17, -1, (3, 2, 1, 4))])
def test_burde_eq7_examples(p, q, value, abcd):
    report = eval_burde_eq7(p, q)
    assert sides(report) == (value, value, True)
    assert report.params == {"p": p, "q": q, **dict(zip("abcd", abcd))}


def test_burde_eq7_preconditions():
    with pytest.raises(NotMutualResidue):
        eval_burde_eq7(5, 13)
    with pytest.raises(NotMutualResidue):
        eval_burde_eq7(5, 5)
    with pytest.raises(BadResidueClass):
        eval_burde_eq7(5, 7)


@pytest.mark.parametrize("p,q", [(5, 29), (13, 17)])
def test_burde_chain_examples(p, q):
    report = eval_burde_chain(p, q)
    assert sides(report) == (-1, -1, True)
    assert report.params["surd"] == -1
    assert report.params["product"] == -1
    assert report.holds == eval_burde_eq7(p, q).holds


def test_burde_chain_triple_params():
    params = eval_burde_chain(5, 29).params
    assert (params["A"], params["B"], params["C"]) == (145, 62, -19)


@pytest.mark.parametrize("p,q,u,v,residue", [(5, 29, 15, 17, 28), (13, 17, 10, 13, 16)])
def test_gosset_examples(p, q, u, v, residue):
    report = eval_gosset_eq8(p, q)
    assert sides(report) == (-1, -1, True)
    assert report.params["u"] == u
    assert report.params["v"] == v
    assert report.params["rhs_residue"] == residue
    assert report.params["lhs_residue"] == residue


def test_gosset_degenerate_fraction():
    # 101 = 1 + 10^2 and 5 divides b = 10
    with pytest.raises(DegenerateFraction):
        eval_gosset_eq8(101, 5)
    assert eval_gosset_chain(101, 5).holds


def test_gosset_chain_example():
    assert sides(eval_gosset_chain(5, 29)) == (-1, -1, True)


@pytest.mark.parametrize("p,q,value,i,j", [(5, 29, 1, 3, 17), (13, 17, -1, 8, 13)])
def test_froehlich_examples(p, q, value, i, j):
    report = eval_froehlich_eq9(p, q)
    assert sides(report) == (value, value, True)
    assert (report.params["i"], report.params["j"]) == (i, j)
    assert report.params["s_q"] == report.params["s_p"] == value


def test_burde_aux_facts():
    report = eval_burde_aux(5, 29)
    assert report.holds
    for fact in ("a_p", "c_q", "two_d_q", "norm_ok", "b_congruence", "b_symbol_ok", "x_symmetric", "sign_free"):
        assert report.params[fact] == 1


def test_pair_laws_agree_over_range():
    ps = primes_between(5, 300, 4, (1,))
    for p in ps:
        for q in ps:
            if p == q or jacobi(p, q) != 1:
                continue
            eq7 = eval_burde_eq7(p, q)
            assert eq7.holds, eq7
            assert eval_burde_chain(p, q).holds
            assert eval_gosset_chain(p, q).holds
            eq9 = eval_froehlich_eq9(p, q)
            assert eq9.holds and eq9.lhs == eq7.lhs
            assert eval_burde_aux(p, q).holds
            try:
                eq8 = eval_gosset_eq8(p, q)
            except DegenerateFraction:
                continue
            assert eq8.holds, eq8


# ──────────────────────────────────────────────
# Dispatch and reports
# ──────────────────────────────────────────────

def test_eval_law_dispatch():
    assert eval_law("EQ1", m=13, p=3) == eval_eq1(13, 3)
    assert eval_law(LawId.EQ6, m=13, p=3) == eval_whf_variant(13, 3, LawId.EQ6)
    assert eval_law(LawId.EQ9, p=5, q=29) == eval_froehlich_eq9(5, 29)
    assert eval_law(LawId.SPLIT, m=13, p=3) == splitting_chain(13, 3)[1]


def test_eval_law_rejects_laws_without_prime_arguments():
    with pytest.raises(InputOutOfRange):
        eval_law(LawId.TRIPLE, m=13)


def test_law_id_parsing():
    assert law_id("eq7") == LawId.EQ7
    assert law_id(LawId.SIGN) == LawId.SIGN
    for bad in ("foo", "", "EQ10"):
        with pytest.raises(InputOutOfRange):
            law_id(bad)
    with pytest.raises(InputOutOfRange):
        eval_law("foo", m=13, p=3)


def test_error_report():
    report = error_report(LawId.EQ1, {"m": 13, "p": 7}, NotSplit("(13/7) != +1"))
    assert not report.holds
    assert report.error == "NotSplit: (13/7) != +1"
    assert report.error_kind == "NotSplit"
    assert json.loads(report.to_json())["error"] == report.error
    assert LawReport.model_validate_json(report.to_json()) == report
