"""Relative error of the purity-only estimate vs marginal purity.

At fixed global purity, sweeps the symmetric marginal purity and writes
mu_i, en_min, en_max, en_avg, rel_err per row. The relative error falls
below 5% as soon as the global purity exceeds the marginal one.

Usage: python scripts/error_decay.py [--mu 0.5] [--start 0.105] [--stop 0.495]
       [--step 0.005] [--output error_decay.csv]
"""

import argparse
import sys

from gce import estimate


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--mu", type=float, default=0.5, help="fixed global purity")
    parser.add_argument("--start", type=float, default=0.105)
    parser.add_argument("--stop", type=float, default=0.495)
    parser.add_argument("--step", type=float, default=0.005)
    parser.add_argument("--output", default=None, help="CSV path (default stdout)")
    args = parser.parse_args()

    lines = ["mu_i,mu,en_min,en_max,en_avg,rel_err"]
    count = int((args.stop - args.start) / args.step + 1e-9) + 1
    for i in range(count):
        mu_i = args.start + i * args.step
        r = estimate(mu_i, mu_i, args.mu)
        lines.append(
            f"{mu_i:.12g},{args.mu:.12g},{r.en_min:.12g},{r.en_max:.12g},"
            f"{r.en_avg:.12g},{r.rel_err:.12g}"
        )
    text = "\n".join(lines) + "\n"
    if args.output is None:
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        print(f"wrote {args.output}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
