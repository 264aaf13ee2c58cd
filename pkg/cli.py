"""
Command-line workbench for the rational quartic reciprocity laws.

Usage:
    python cli.py triple --m 13 [--convention eq1|eq4|eq5]
    python cli.py symbol --x -5 --y 2 --m 5 --p 11
    python cli.py quartic --p 5 --m 29
    python cli.py law --id eq1 --m 13 --p 3 --format json
    python cli.py law --id eq7 --p 5 --q 29
    python cli.py split --m 13 --p 3
    python cli.py campaign --name whf --m-max 1000 --p-max 10000 --variants eq4,eq5,eq6 --jobs 8
    python cli.py campaign --name pairs --bound 2000 --format csv --out pairs.csv
    python cli.py campaign --name m2 --p-max 100000
    python cli.py campaign --name identities --samples 10000 --seed 1

Exit codes:
    0  every evaluated law holds
    1  at least one counterexample (a report with holds = false)
    2  invalid arguments or failed preconditions
    3  internal assertion (AmbiguousSymbol, RootCheckFailed, PrecompositionFailure)

Environment variables (.env, optional):
    WHF_LOG_LEVEL  level of the diagnostic stream on stderr (WARNING)
    WHF_JOBS       default --jobs for campaigns (1)
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from typing import Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from arith import INPUT_BOUND, quartic_symbol
from errors import InputOutOfRange, InternalAssertion, PreconditionError
from harness import CAMPAIGNS, DEFAULT_JOBS, serialize_report
from laws import LAW_ARGS, LawReport, eval_law, law_id, splitting_chain
from quadfield import symbol_surd
from represent import Convention, triple_violations, triple_with_convention

load_dotenv()

LOG_LEVEL = os.getenv("WHF_LOG_LEVEL", "WARNING")

logger = logging.getLogger(__name__)

COMMANDS = ("triple", "symbol", "quartic", "law", "split", "campaign")
LAW_CHOICES = sorted(law.value.lower() for law in LAW_ARGS)
CONVENTION_CHOICES = ("eq1", "eq3", "eq4", "eq5")


class CliConfig(BaseModel):
    command: Literal["triple", "symbol", "quartic", "law", "split", "campaign"]
    numbers: dict[str, int] = Field(default_factory=dict)
    law: Optional[str] = None
    convention: str = "eq1"
    campaign: Optional[str] = None
    variants: list[str] = Field(default_factory=list)
    seed: Optional[int] = Field(default=None, ge=0, lt=1 << 64)
    format: Literal["text", "json", "csv"] = "text"
    jobs: int = Field(default=1, ge=1)
    out: Optional[str] = None

    @field_validator("numbers")
    @classmethod
    def within_input_bound(cls, v: dict[str, int]) -> dict[str, int]:
        for name, value in v.items():
            if abs(value) > INPUT_BOUND:
                raise ValueError(f"--{name.replace('_', '-')} {value} exceeds the 2**31 input bound")
        return v

    def need(self, *names: str) -> list[int]:
        missing = [n for n in names if n not in self.numbers]
        if missing:
            flags = ", ".join("--" + n.replace("_", "-") for n in missing)
            raise InputOutOfRange(f"{self.command} needs {flags}")
        return [self.numbers[n] for n in names]


# ──────────────────────────────────────────────
# Argument parsing
# ──────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=DEFAULT_JOBS)

    parser = argparse.ArgumentParser(prog="whf", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("triple", parents=[common], help="print the parameter triple of m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--convention", choices=CONVENTION_CHOICES, default="eq1")

    p = sub.add_parser("symbol", parents=[common], help="((x + y*sqrt(m))/p)")
    for name in ("x", "y", "m", "p"):
        p.add_argument(f"--{name}", type=int, required=True)

    p = sub.add_parser("quartic", parents=[common], help="(p/m)_4")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("law", parents=[common], help="evaluate both sides of one law")
    p.add_argument("--id", dest="law", choices=LAW_CHOICES, required=True)
    for name in ("m", "p", "q"):
        p.add_argument(f"--{name}", type=int)

    p = sub.add_parser("split", parents=[common], help="splitting data (f, g) and the chain verdict")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("campaign", parents=[common], help="run a sweep")
    p.add_argument("--name", dest="campaign", choices=sorted(CAMPAIGNS), required=True)
    p.add_argument("--m-max", type=int)
    p.add_argument("--p-max", type=int)
    p.add_argument("--bound", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--variants", default="", help="comma-separated subset of eq4,eq5,eq6")
    return parser


_NUMERIC = ("m", "p", "q", "x", "y", "m_max", "p_max", "bound", "samples")


def config_from_args(ns: argparse.Namespace) -> CliConfig:
    numbers = {k: getattr(ns, k) for k in _NUMERIC if getattr(ns, k, None) is not None}
    variants = [v.strip().upper() for v in getattr(ns, "variants", "").split(",") if v.strip()]
    return CliConfig(
        command=ns.command,
        numbers=numbers,
        law=getattr(ns, "law", None),
        convention=getattr(ns, "convention", "eq1"),
        campaign=getattr(ns, "campaign", None),
        variants=variants,
        seed=getattr(ns, "seed", None),
        format=ns.format,
        jobs=ns.jobs,
        out=ns.out,
    )


# ──────────────────────────────────────────────
# Output
# ──────────────────────────────────────────────

def _emit(payload: str, config: CliConfig) -> None:
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as f:
            f.write(payload)
    else:
        sys.stdout.write(payload)


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def format_law_report(report: LawReport, fmt: str) -> str:
    """Single-case output; json is the same line the campaign JSONL stream uses."""
    if fmt == "json":
        return report.to_json() + "\n"
    params = " ".join(f"{k}={v}" for k, v in report.params.items())
    if fmt == "csv":
        return _csv(["law", "params", "lhs", "rhs", "holds"],
                    [[report.law.value, params, report.lhs, report.rhs, str(report.holds).lower()]])
    verdict = "holds" if report.holds else "FAILS"
    return f"{report.law.value} {params}: lhs={report.lhs:+d} rhs={report.rhs:+d} {verdict}\n"


def _format_value(value: int, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"value": value}) + "\n"
    if fmt == "csv":
        return _csv(["value"], [[value]])
    return f"{value}\n"


# ──────────────────────────────────────────────
# Commands
# ──────────────────────────────────────────────

def _cmd_triple(config: CliConfig) -> int:
    (m,) = config.need("m")
    t = triple_with_convention(m, Convention(config.convention.upper()))
    row = {**t.as_params(), "convention": t.convention.value}
    if config.format == "json":
        _emit(json.dumps(row) + "\n", config)
    elif config.format == "csv":
        _emit(_csv(list(row), [list(row.values())]), config)
    else:
        problems = triple_violations(t)
        _emit(f"{t}\n" + "".join(f"  violates: {p}\n" for p in problems), config)
    return 0


def _cmd_symbol(config: CliConfig) -> int:
    x, y, m, p = config.need("x", "y", "m", "p")
    _emit(_format_value(symbol_surd(x, y, m, p), config.format), config)
    return 0


def _cmd_quartic(config: CliConfig) -> int:
    p, m = config.need("p", "m")
    _emit(_format_value(quartic_symbol(p, m), config.format), config)
    return 0


def _cmd_law(config: CliConfig) -> int:
    law = law_id(config.law)
    values = config.need(*LAW_ARGS[law])
    report = eval_law(law, **dict(zip(LAW_ARGS[law], values)))
    _emit(format_law_report(report, config.format), config)
    return 0 if report.holds else 1


def _cmd_split(config: CliConfig) -> int:
    m, p = config.need("m", "p")
    data, report = splitting_chain(m, p)
    out = format_law_report(report, config.format)
    if config.format == "text":
        out = f"f={data.f} g={data.g}\n" + out
    _emit(out, config)
    return 0 if report.holds else 1


def _cmd_campaign(config: CliConfig) -> int:
    name = config.campaign
    if name == "whf":
        m_max, p_max = config.need("m_max", "p_max")
        report = CAMPAIGNS[name](m_max, p_max, ["EQ1", *config.variants], jobs=config.jobs)
    elif name == "pairs":
        (bound,) = config.need("bound")
        report = CAMPAIGNS[name](bound, jobs=config.jobs)
    elif name == "m2":
        (p_max,) = config.need("p_max")
        report = CAMPAIGNS[name](p_max, jobs=config.jobs)
    else:
        (samples,) = config.need("samples")
        if config.seed is None:
            raise InputOutOfRange("identities needs --seed")
        report = CAMPAIGNS[name](samples, config.seed, jobs=config.jobs)
    _emit(serialize_report(report, config.format).decode("utf-8"), config)
    return 1 if report.counterexamples else 0


_DISPATCH = {
    "triple": _cmd_triple,
    "symbol": _cmd_symbol,
    "quartic": _cmd_quartic,
    "law": _cmd_law,
    "split": _cmd_split,
    "campaign": _cmd_campaign,
}


def run(argv: Optional[list[str]] = None) -> int:
    """Parse argv, dispatch, and map the outcome to an exit code."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad arguments and 0 on --help
        return 0 if exc.code in (0, None) else 2

    try:
        config = config_from_args(ns)
        return _DISPATCH[config.command](config)
    except ValidationError as exc:
        logger.error(f"Invalid arguments: {exc}")
        return 2
    except PreconditionError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        return 2
    except InternalAssertion as exc:
        logger.error(f"Internal assertion {type(exc).__name__}: {exc}")
        return 3


def main() -> None:
    logging.basicConfig(
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        level=LOG_LEVEL,
        stream=sys.stderr,
    )
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
