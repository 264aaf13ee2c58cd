"""Acceptance sweeps at full scale, with a short summary per campaign.

Usage:
    python verify.py [--jobs N]
"""

import argparse
import logging
import sys

from harness import DEFAULT_JOBS, campaign_identities, campaign_m2, campaign_pairs, campaign_whf, serialize_report

SWEEPS = [
    ("SINGLE-PRIME LAWS (m <= 1000, p <= 10000)",
     lambda jobs: campaign_whf(1000, 10000, ["EQ1", "EQ4", "EQ5", "EQ6"], jobs=jobs)),
    ("m = 2 (p <= 100000)", lambda jobs: campaign_m2(100000, jobs=jobs)),
    ("PAIR LAWS (p, q <= 2000)", lambda jobs: campaign_pairs(2000, jobs=jobs)),
    ("IDENTITIES (10000 samples, seed 1)", lambda jobs: campaign_identities(10000, 1, jobs=jobs)),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--jobs", type=int, default=DEFAULT_JOBS)
    args = parser.parse_args()
    logging.basicConfig(
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        level=logging.INFO,
    )

    failed = False
    for title, sweep in SWEEPS:
        print(f"=== {title} ===")
        report = sweep(args.jobs)
        print(serialize_report(report, "text").decode("utf-8"))
        failed = failed or bool(report.counterexamples)

    print("ALL LAWS HOLD" if not failed else "COUNTEREXAMPLES FOUND")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
