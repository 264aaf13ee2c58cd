import csv
import io
import json

import pytest

from errors import DegenerateFraction, InputOutOfRange, UnsupportedFormat
from harness import (
    CSV_COLUMNS,
    CampaignReport,
    campaign_identities,
    campaign_m2,
    campaign_pairs,
    campaign_whf,
    draw_radicands,
    is_excluded,
    parse_jsonl,
    serialize_report,
)
from laws import LawId, LawReport, error_report, eval_eq1


def legendre_by_squares(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if a in {x * x % p for x in range(1, p)} else -1


def odd_primes_upto(n):
    return [k for k in range(3, n + 1) if all(k % d for d in range(2, int(k ** 0.5) + 1))]


def admissible_whf_cases(m_max, p_max):
    ms = [m for m in odd_primes_upto(m_max) if m % 4 == 1]
    return [(m, p) for m in ms for p in odd_primes_upto(p_max) if p != m and legendre_by_squares(m, p) == 1]


def admissible_pairs(bound):
    ps = [p for p in odd_primes_upto(bound) if p % 4 == 1]
    return [(p, q) for p in ps for q in ps if p != q and legendre_by_squares(p, q) == 1]


def jsonl(report):
    return serialize_report(report, "jsonl")


# ──────────────────────────────────────────────
# whf
# ──────────────────────────────────────────────

def test_whf_counts_admissible_cases():
    report = campaign_whf(30, 30)
    assert report.cases_run == len(admissible_whf_cases(30, 30))
    assert report.cases_held == report.cases_run
    assert report.counterexamples == []
    assert report.tallies["triples"] == 4


def test_whf_no_admissible_primes():
    report = campaign_whf(5, 3)
    assert report.cases_run == 0
    assert report.reports == []


def test_whf_edge_cases_hold():
    report = campaign_whf(30, 30, ["EQ1", "EQ4"])
    assert report.edge_cases > 0
    edge = [r for r in report.reports if r.params.get("m") == 13 and r.params.get("p") == 3]
    assert {r.law for r in edge} >= {LawId.EQ1, LawId.EQ4}
    assert all(r.holds for r in edge)


def test_whf_variants_agree_case_by_case():
    report = campaign_whf(100, 400, ["EQ1", "EQ4", "EQ5", "EQ6"])
    assert report.counterexamples == []
    by_case = {}
    for r in report.reports:
        if r.law in (LawId.EQ1, LawId.EQ4, LawId.EQ5, LawId.EQ6):
            by_case.setdefault((r.params["m"], r.params["p"]), []).append(r)
    assert len(by_case) == report.cases_run
    assert all(len(rs) == 4 and all(r.holds for r in rs) for rs in by_case.values())
    for r in report.reports:
        if r.law == LawId.SPLIT:
            assert r.params["f"] * r.params["g"] == r.params["m"] - 1


def test_whf_triple_report_once_per_radicand():
    report = campaign_whf(100, 200)
    triples = [r for r in report.reports if r.law == LawId.TRIPLE]
    assert len(triples) == report.tallies["triples"]
    assert all(r.holds for r in triples)


def test_whf_canonical_order():
    report = campaign_whf(60, 120)
    keys = [(r.params["m"], r.params["p"]) for r in report.reports if r.law == LawId.EQ1]
    assert keys == sorted(keys)


def test_whf_rejects_bad_arguments():
    with pytest.raises(InputOutOfRange):
        campaign_whf(4, 30)
    with pytest.raises(InputOutOfRange):
        campaign_whf(30, 30, ["EQ9"])
    with pytest.raises(InputOutOfRange):
        campaign_whf(30, 30, ["EQ1", "FOO"])
    with pytest.raises(InputOutOfRange):
        campaign_whf(30, 30, jobs=0)


# ──────────────────────────────────────────────
# pairs / m2 / identities
# ──────────────────────────────────────────────

def test_pairs_small_bound():
    report = campaign_pairs(30)
    keys = {(r.params["p"], r.params["q"]) for r in report.reports}
    assert {(5, 29), (29, 5), (13, 17), (17, 13)} <= keys
    assert report.cases_run == len(admissible_pairs(30))
    assert report.counterexamples == []
    assert report.tallies["disagreements"] == 0


def test_pairs_bound_13_is_empty():
    assert campaign_pairs(13).cases_run == 0


def test_pairs_degenerate_gosset_is_excluded_not_failed():
    report = campaign_pairs(101)
    assert report.excluded >= 1
    degenerate = [r for r in report.reports if is_excluded(r)]
    assert any(r.params == {"p": 101, "q": 5} for r in degenerate)
    assert report.counterexamples == []
    assert report.cases_held == report.cases_run


def test_exclusion_follows_exception_class():
    params = {"p": 101, "q": 5}
    assert is_excluded(error_report(LawId.EQ8, params, DegenerateFraction("5 divides b = 10")))
    # same message text, no recorded exception class
    assert not is_excluded(LawReport(law=LawId.EQ8, params=params, lhs=0, rhs=0, holds=False,
                                     error="DegenerateFraction: 5 divides b = 10"))
    assert not is_excluded(error_report(LawId.EQ8, params, InputOutOfRange("DegenerateFraction")))
    assert not is_excluded(error_report(LawId.EQ7, params, DegenerateFraction("x")))


def test_pairs_rejects_small_bound():
    with pytest.raises(InputOutOfRange):
        campaign_pairs(12)


def test_m2_examples():
    report = campaign_m2(31)
    assert [r.params["p"] for r in report.reports] == [7, 17, 23, 31]
    assert report.counterexamples == []
    assert sorted(r.params["p"] for r in report.reports if r.lhs == -1) == [7, 23]
    assert report.tallies["lhs_minus_outside"] == 0
    assert report.tallies["lhs_minus"] == report.tallies["expected_minus"] == 2

    single = campaign_m2(7)
    assert single.cases_run == single.cases_held == 1


def test_m2_rejects_small_bound():
    with pytest.raises(InputOutOfRange):
        campaign_m2(6)


def test_identities_single_sample():
    report = campaign_identities(1, 5)
    assert report.cases_run == 1
    assert report.counterexamples == []
    laws = [r.law for r in report.reports]
    assert laws[:2] == [LawId.EQ2, LawId.TRIPLE]
    assert laws.count(LawId.REL) == 5
    assert laws.count(LawId.SIGN) == 5
    rel = [r.params["p"] for r in report.reports if r.law == LawId.REL]
    sign = [r for r in report.reports if r.law == LawId.SIGN]
    assert [r.params["p"] for r in sign] == rel
    assert all(r.holds and r.error is None for r in sign)


def test_draw_radicands_is_seeded():
    first = draw_radicands(20, 42)
    assert first == draw_radicands(20, 42)
    assert all(m % 4 == 1 and 5 <= m for m in first)
    assert draw_radicands(20, 43) != first


def test_identities_same_seed_same_report():
    a, b = campaign_identities(20, 7), campaign_identities(20, 7)
    assert jsonl(a) == jsonl(b)
    assert a.counterexamples == []


def test_jobs_do_not_change_output():
    assert jsonl(campaign_whf(60, 300, ["EQ4", "EQ5", "EQ6"], jobs=1)) == jsonl(
        campaign_whf(60, 300, ["EQ4", "EQ5", "EQ6"], jobs=2))
    assert jsonl(campaign_pairs(60, jobs=1)) == jsonl(campaign_pairs(60, jobs=2))
    assert jsonl(campaign_identities(6, 3, jobs=1)) == jsonl(campaign_identities(6, 3, jobs=3))


# ──────────────────────────────────────────────
# Serialization
# ──────────────────────────────────────────────

def test_serialize_empty_campaign():
    report = campaign_whf(5, 3)
    assert serialize_report(report, "jsonl") == b""
    rows = list(csv.reader(io.StringIO(serialize_report(report, "csv").decode())))
    assert rows == [CSV_COLUMNS]


def test_serialize_single_case():
    report = CampaignReport(campaign="whf", bounds={"m_max": 13, "p_max": 3}, reports=[eval_eq1(13, 3)])
    lines = serialize_report(report, "jsonl").decode().splitlines()
    assert len(lines) == 1
    assert '"law":"EQ1"' in lines[0]
    assert '"holds":true' in lines[0]
    assert list(json.loads(lines[0])) == ["law", "params", "lhs", "rhs", "holds"]


def test_jsonl_parses_back():
    report = campaign_whf(30, 60, ["EQ5"])
    parsed = parse_jsonl(serialize_report(report, "jsonl"))
    assert parsed == report.reports
    assert {(r.params["m"], r.params["p"]) for r in parsed if r.law == LawId.EQ1} == set(admissible_whf_cases(30, 60))


def test_csv_summary_rows():
    report = campaign_pairs(30)
    rows = list(csv.DictReader(io.StringIO(serialize_report(report, "csv").decode())))
    assert rows
    assert all(row["campaign"] == "pairs" for row in rows)
    assert sum(int(row["cases_run"]) for row in rows if row["law"] == "EQ7") == report.cases_run
    assert all(row["counterexamples"] == "0" for row in rows)


def test_text_summary():
    text = serialize_report(campaign_m2(31), "text").decode()
    assert "campaign: m2" in text
    assert "cases run: 4" in text
    assert "counterexamples: 0" in text


def test_unsupported_format():
    with pytest.raises(UnsupportedFormat):
        serialize_report(campaign_m2(7), "xml")


# ──────────────────────────────────────────────
# Acceptance-scale sweeps
# ──────────────────────────────────────────────

@pytest.mark.slow
def test_acceptance_whf_sweep():
    report = campaign_whf(1000, 10000, ["EQ1", "EQ4", "EQ5", "EQ6"], jobs=4)
    assert report.counterexamples == []
    assert report.edge_cases > 0


@pytest.mark.slow
def test_acceptance_m2_sweep():
    report = campaign_m2(100000, jobs=4)
    assert report.counterexamples == []
    assert report.tallies["lhs_minus_outside"] == 0
    assert report.tallies["lhs_minus"] == report.tallies["expected_minus"]


@pytest.mark.slow
def test_acceptance_pairs_sweep():
    report = campaign_pairs(2000, jobs=4)
    assert report.counterexamples == []
    assert report.tallies["disagreements"] == 0


@pytest.mark.slow
def test_acceptance_identities_sweep():
    report = campaign_identities(10000, 1, jobs=4)
    assert report.counterexamples == []
    sign = [r for r in report.reports if r.law == LawId.SIGN]
    assert len(sign) == 5 * 10000
    assert all(r.holds for r in sign)
