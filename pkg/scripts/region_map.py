"""Emit the region map of symmetric states as CSV.

Sweeps the symmetric marginal purity mu_i and the global purity mu over a
rectangular grid and writes one row per grid point with the region label
and the purity-only entanglement bounds. The coexistence band shows up as
the narrow strip between the separable and entangled regions.

Usage: python scripts/region_map.py [--step 0.02] [--output region_map.csv]
"""

import argparse
import sys

from gce.cli import SweepSpec, run_sweep


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--step", type=float, default=0.02, help="grid step in both axes")
    parser.add_argument("--output", default=None, help="CSV path (default stdout)")
    args = parser.parse_args()
    spec = SweepSpec(
        mu_i_start=args.step,
        mu_i_stop=1.0,
        mu_i_step=args.step,
        mu_start=args.step,
        mu_stop=1.0,
        mu_step=args.step,
        output=args.output,
    )
    text = run_sweep(spec)
    if spec.output is None:
        sys.stdout.write(text)
    else:
        with open(spec.output, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        print(f"wrote {spec.output}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
