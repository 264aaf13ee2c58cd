"""
Exhaustive sweep campaigns over prime ranges.

Each campaign enumerates admissible parameter tuples (cases), evaluates every law
that applies to a case, and aggregates the LawReports into a CampaignReport.
Work can be sharded over processes (jobs > 1); shards are merged back in
canonical (m, p) / (p, q) order, so the serialized output does not depend on
scheduling.

Campaigns:
  whf         (m, p): EQ1 + requested EQ4/EQ5/EQ6 variants + SPLIT + SIGN
  pairs       (p, q): EQ7, CHAIN, EQ8, EQ8X, EQ9, AUX
  m2          p:      EQ3
  identities  m:      EQ2, TRIPLE, REL on the first admissible primes

Environment variables (.env, all optional):
  WHF_JOBS              default worker count (1)
  WHF_IDENTITY_M_BOUND  radicands drawn by the identities campaign stay below this (1000000)
"""

from __future__ import annotations

import csv
import io
import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Union

from dotenv import load_dotenv
from pydantic import BaseModel, Field

from arith import is_prime, jacobi, primes_between
from errors import DegenerateFraction, InputOutOfRange, UnsupportedFormat, WhfError
from laws import (
    LawId,
    LawReport,
    error_report,
    eval_burde_aux,
    eval_burde_chain,
    eval_burde_eq7,
    eval_eq1,
    eval_froehlich_eq9,
    eval_gosset_chain,
    eval_gosset_eq8,
    eval_identity,
    eval_m2_eq3,
    eval_relation,
    eval_sign_lemma,
    eval_triple,
    eval_whf_variant,
    law_id,
    splitting_chain,
)
from represent import dividing_edge, whf_triple

load_dotenv()

logger = logging.getLogger(__name__)

DEFAULT_JOBS = int(os.getenv("WHF_JOBS", "1"))
IDENTITY_M_BOUND = int(os.getenv("WHF_IDENTITY_M_BOUND", "1000000"))
REL_PRIMES_PER_M = 5
M2_CHUNK = 2048

WHF_VARIANTS = (LawId.EQ4, LawId.EQ5, LawId.EQ6)


class CampaignReport(BaseModel):
    campaign: str
    bounds: dict[str, int]
    cases_run: int = 0
    cases_held: int = 0
    counterexamples: list[LawReport] = Field(default_factory=list)
    edge_cases: int = 0
    excluded: int = 0
    tallies: dict[str, int] = Field(default_factory=dict)
    reports: list[LawReport] = Field(default_factory=list)
    wall_time: float = 0.0


@dataclass
class CaseResult:
    """All reports for one admissible parameter tuple."""

    key: tuple[int, ...]
    reports: list[LawReport] = field(default_factory=list)
    edge: bool = False


def _run(law: LawId, params: dict[str, int], fn: Callable[..., LawReport], *args) -> LawReport:
    """Evaluate one law; a WhfError becomes an error-marked report."""
    try:
        return fn(*args)
    except WhfError as exc:
        logger.debug(f"{law.value} {params} raised {type(exc).__name__}: {exc}")
        return error_report(law, params, exc)


def is_excluded(report: LawReport) -> bool:
    """Gosset cases with a vanishing denominator are recorded but not tallied."""
    return report.law == LawId.EQ8 and report.error_kind == DegenerateFraction.__name__


def _execute(worker: Callable[..., list[CaseResult]], tasks: list[tuple], jobs: int) -> list[CaseResult]:
    if jobs <= 1 or len(tasks) <= 1:
        shards = [worker(*task) for task in tasks]
    else:
        logger.info(f"Running {len(tasks)} shards on {jobs} workers")
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            shards = list(pool.map(worker, *zip(*tasks)))
    return [case for shard in shards for case in shard]


def _aggregate(campaign: str, bounds: dict[str, int], cases: list[CaseResult], started: float) -> CampaignReport:
    report = CampaignReport(campaign=campaign, bounds=bounds)
    for case in cases:
        report.cases_run += 1
        report.reports.extend(case.reports)
        report.edge_cases += int(case.edge)
        counted = []
        for r in case.reports:
            if is_excluded(r):
                report.excluded += 1
            else:
                counted.append(r)
        failing = [r for r in counted if not r.holds]
        if failing:
            report.counterexamples.append(failing[0])
            for r in failing:
                logger.warning(f"Counterexample {r.law.value} {r.params}: lhs={r.lhs} rhs={r.rhs} {r.error or ''}")
        else:
            report.cases_held += 1
    report.wall_time = time.time() - started
    logger.info(
        f"Campaign {campaign} done: {report.cases_run} cases, {report.cases_held} held, "
        f"{len(report.counterexamples)} counterexamples ({report.wall_time:.2f}s)"
    )
    return report


def _jobs(jobs: Optional[int]) -> int:
    jobs = DEFAULT_JOBS if jobs is None else jobs
    if jobs < 1:
        raise InputOutOfRange(f"jobs must be >= 1, got {jobs}")
    return jobs


# ──────────────────────────────────────────────
# Single-prime campaign (m, p)
# ──────────────────────────────────────────────

def _whf_shard(m: int, p_max: int, variants: tuple[LawId, ...]) -> list[CaseResult]:
    t = whf_triple(m)
    triple_report = eval_triple(t)
    cases = []
    for p in primes_between(3, p_max):
        if p == m or jacobi(m, p) != 1:
            continue
        params = {"m": m, "p": p}
        case = CaseResult(key=(m, p), edge=dividing_edge(t, p))
        if not cases:
            # once per m, with its first admissible prime
            case.reports.append(triple_report)
        case.reports.append(_run(LawId.EQ1, params, eval_eq1, m, p))
        for variant in variants:
            case.reports.append(_run(variant, params, eval_whf_variant, m, p, variant))
        case.reports.append(_run(LawId.SPLIT, params, lambda: splitting_chain(m, p)[1]))
        case.reports.append(_run(LawId.SIGN, params, eval_sign_lemma, m, p))
        cases.append(case)
    return cases


def campaign_whf(m_max: int, p_max: int, variants: Iterable[Union[LawId, str]] = (LawId.EQ1,),
                 jobs: Optional[int] = None) -> CampaignReport:
    """Every prime m = 1 mod 4 up to m_max against every odd prime p <= p_max with (m/p) = +1."""
    if m_max < 5 or p_max < 3:
        raise InputOutOfRange(f"need m_max >= 5 and p_max >= 3, got {m_max}, {p_max}")
    jobs = _jobs(jobs)
    requested = {law_id(v) for v in variants}
    unknown = requested - set(WHF_VARIANTS) - {LawId.EQ1}
    if unknown:
        raise InputOutOfRange(f"unknown variants: {sorted(v.value for v in unknown)}")
    chosen = tuple(v for v in WHF_VARIANTS if v in requested)

    started = time.time()
    ms = primes_between(5, m_max, 4, (1,))
    logger.info(f"Campaign whf: {len(ms)} radicands, p <= {p_max}, variants {[v.value for v in chosen]}")
    cases = _execute(_whf_shard, [(m, p_max, chosen) for m in ms], jobs)
    report = _aggregate("whf", {"m_max": m_max, "p_max": p_max}, cases, started)
    report.tallies["triples"] = len(ms)
    return report


# ──────────────────────────────────────────────
# Two-prime campaign (p, q)
# ──────────────────────────────────────────────

_PAIR_LAWS = (
    (LawId.EQ7, eval_burde_eq7),
    (LawId.CHAIN, eval_burde_chain),
    (LawId.EQ8, eval_gosset_eq8),
    (LawId.EQ8X, eval_gosset_chain),
    (LawId.EQ9, eval_froehlich_eq9),
    (LawId.AUX, eval_burde_aux),
)


def _pairs_shard(p: int, bound: int) -> list[CaseResult]:
    cases = []
    for q in primes_between(5, bound, 4, (1,)):
        if q == p or jacobi(p, q) != 1:
            continue
        params = {"p": p, "q": q}
        case = CaseResult(key=(p, q))
        for law, fn in _PAIR_LAWS:
            case.reports.append(_run(law, params, fn, p, q))
        cases.append(case)
    return cases


def campaign_pairs(bound: int, jobs: Optional[int] = None) -> CampaignReport:
    """All ordered pairs of distinct primes p, q = 1 mod 4 up to bound with (p/q) = +1."""
    if bound < 13:
        raise InputOutOfRange(f"bound must be >= 13, got {bound}")
    jobs = _jobs(jobs)
    started = time.time()
    ps = primes_between(5, bound, 4, (1,))
    logger.info(f"Campaign pairs: {len(ps)} primes = 1 mod 4 up to {bound}")
    cases = _execute(_pairs_shard, [(p, bound) for p in ps], jobs)
    report = _aggregate("pairs", {"bound": bound}, cases, started)

    disagreements = 0
    for case in cases:
        flags = {r.holds for r in case.reports if not is_excluded(r)}
        disagreements += int(len(flags) > 1)
    report.tallies["disagreements"] = disagreements
    return report


# ──────────────────────────────────────────────
# m = 2 campaign
# ──────────────────────────────────────────────

def _m2_shard(primes: tuple[int, ...]) -> list[CaseResult]:
    return [
        CaseResult(key=(p,), reports=[_run(LawId.EQ3, {"p": p}, eval_m2_eq3, p)])
        for p in primes
    ]


def campaign_m2(p_max: int, jobs: Optional[int] = None) -> CampaignReport:
    """Every odd prime p <= p_max with p = +-1 mod 8."""
    if p_max < 7:
        raise InputOutOfRange(f"p_max must be >= 7, got {p_max}")
    jobs = _jobs(jobs)
    started = time.time()
    ps = primes_between(7, p_max, 8, (1, 7))
    tasks = [(tuple(ps[i:i + M2_CHUNK]),) for i in range(0, len(ps), M2_CHUNK)]
    cases = _execute(_m2_shard, tasks, jobs)
    report = _aggregate("m2", {"p_max": p_max}, cases, started)

    minus = [r.params["p"] for r in report.reports if r.error is None and r.lhs == -1]
    inside = sum(1 for p in minus if p % 16 in (7, 9))
    report.tallies["lhs_minus"] = len(minus)
    report.tallies["lhs_minus_7_9_mod16"] = inside
    report.tallies["lhs_minus_outside"] = len(minus) - inside
    report.tallies["expected_minus"] = sum(1 for p in ps if p % 16 in (7, 9))
    return report


# ──────────────────────────────────────────────
# Identity campaign (seeded random radicands)
# ──────────────────────────────────────────────

def draw_radicands(sample_count: int, seed: int, bound: int = IDENTITY_M_BOUND) -> list[int]:
    """Seeded primes m = 1 mod 4 in [5, bound), drawn with random.Random (Mersenne Twister)."""
    rng = random.Random(seed)
    ms = []
    while len(ms) < sample_count:
        n = rng.randrange(5, bound, 4)
        if is_prime(n):
            ms.append(n)
    return ms


def _relation_primes(m: int, count: int) -> list[int]:
    t = whf_triple(m)
    found = []
    p = 3
    while len(found) < count:
        if is_prime(p) and p != m and jacobi(m, p) == 1 and (t.A * t.B * t.C) % p:
            found.append(p)
        p += 2
    return found


def _identity_shard(index: int, m: int) -> list[CaseResult]:
    t = whf_triple(m)
    case = CaseResult(key=(index, m))
    case.reports.append(eval_identity(t))
    case.reports.append(eval_triple(t))
    for p in _relation_primes(m, REL_PRIMES_PER_M):
        case.reports.append(_run(LawId.REL, {"m": m, "p": p}, eval_relation, m, p))
        case.reports.append(_run(LawId.SIGN, {"m": m, "p": p}, eval_sign_lemma, m, p))
    return [case]


def campaign_identities(sample_count: int, seed: int, jobs: Optional[int] = None) -> CampaignReport:
    if sample_count < 1:
        raise InputOutOfRange(f"sample_count must be >= 1, got {sample_count}")
    jobs = _jobs(jobs)
    started = time.time()
    ms = draw_radicands(sample_count, seed)
    cases = _execute(_identity_shard, list(enumerate(ms)), jobs)
    report = _aggregate("identities", {"samples": sample_count, "seed": seed}, cases, started)
    report.tallies["distinct_m"] = len(set(ms))
    return report


CAMPAIGNS = {
    "whf": campaign_whf,
    "pairs": campaign_pairs,
    "m2": campaign_m2,
    "identities": campaign_identities,
}


# ──────────────────────────────────────────────
# Serialization
# ──────────────────────────────────────────────

CSV_COLUMNS = ["campaign", "law", "params", "cases_run", "cases_held", "counterexamples"]


def _group_key(campaign: str, r: LawReport) -> str:
    params = r.params
    if "q" in params:
        return f"p={params['p']};q={params['q']}"
    if campaign == "m2":
        return f"p%16={params['p'] % 16}"
    return f"m={params.get('m', 0)}"


def _serialize_jsonl(r: CampaignReport) -> str:
    return "".join(rep.to_json() + "\n" for rep in r.reports)


def _serialize_csv(r: CampaignReport) -> str:
    groups: dict[tuple[str, str], list[int]] = {}
    for rep in r.reports:
        counts = groups.setdefault((rep.law.value, _group_key(r.campaign, rep)), [0, 0, 0])
        counts[0] += 1
        if rep.holds:
            counts[1] += 1
        elif not is_excluded(rep):
            counts[2] += 1
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for (law, key), (run, held, failed) in groups.items():
        writer.writerow([r.campaign, law, key, run, held, failed])
    return buf.getvalue()


def _format_params(params: dict[str, int]) -> str:
    return " ".join(f"{k}={v}" for k, v in params.items())


def _serialize_text(r: CampaignReport) -> str:
    lines = [
        f"campaign: {r.campaign}",
        f"bounds: {_format_params(r.bounds)}",
        f"cases run: {r.cases_run}",
        f"cases held: {r.cases_held}",
        f"counterexamples: {len(r.counterexamples)}",
        f"edge cases (p | ABC): {r.edge_cases}",
        f"excluded (degenerate): {r.excluded}",
    ]
    for name, value in r.tallies.items():
        lines.append(f"{name}: {value}")
    lines.append(f"wall time: {int(r.wall_time * 1000)} ms")
    for c in r.counterexamples:
        suffix = f" [{c.error}]" if c.error else ""
        lines.append(f"  {c.law.value} {_format_params(c.params)}: lhs={c.lhs:+d} rhs={c.rhs:+d}{suffix}")
    return "\n".join(lines) + "\n"


_SERIALIZERS = {
    "jsonl": _serialize_jsonl,
    "json": _serialize_jsonl,
    "csv": _serialize_csv,
    "text": _serialize_text,
}


def serialize_report(r: CampaignReport, fmt: str) -> bytes:
    """JSONL (one LawReport per line), CSV (summary per law and parameter group) or TEXT."""
    serializer = _SERIALIZERS.get(fmt.lower())
    if serializer is None:
        raise UnsupportedFormat(f"unsupported format {fmt!r}; use jsonl, csv or text")
    return serializer(r).encode("utf-8")


def parse_jsonl(stream: Union[bytes, str, Iterable[str]]) -> list[LawReport]:
    if isinstance(stream, bytes):
        stream = stream.decode("utf-8")
    if isinstance(stream, str):
        stream = stream.splitlines()
    return [LawReport.model_validate_json(line) for line in stream if line.strip()]
