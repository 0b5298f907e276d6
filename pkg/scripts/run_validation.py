"""Run the full Monte Carlo validation and print the JSON reports.

Samples random physical states, audits every analytic bound and the
dual-path closed-form agreement, and exits nonzero if any check records a
violation.

Usage: python scripts/run_validation.py [--seed 12345] [--count 100000]
       [--a-max 5.0] [--output report.json]
"""

import argparse
import json
import sys

from gce import SampleConfig, crosscheck_closed_forms, validate_bounds


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=12345)
    parser.add_argument("--count", type=int, default=100_000)
    parser.add_argument("--a-max", type=float, default=5.0)
    parser.add_argument("--output", default=None, help="report path (default stdout)")
    args = parser.parse_args()

    cfg = SampleConfig(seed=args.seed, count=args.count, a_max=args.a_max)
    report = {
        "bounds": validate_bounds(cfg),
        "closed_forms": crosscheck_closed_forms(cfg),
    }
    text = json.dumps(report, sort_keys=True, indent=2)
    if args.output is None:
        print(text)
    else:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
        print(f"wrote {args.output}", file=sys.stderr)
    total = sum(r["total_violations"] for r in report.values())
    return 0 if total == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
