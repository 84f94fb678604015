#!/usr/bin/env python3
"""Regenerate the CSV artifacts for the three canned examples.

Writes, under the output directory (default ./artifacts):

    slab_region.csv        subdifferential scan of |x| (.) [1,3] at 0
    parabolic_efficient.csv  grid efficiency report for the parabolic band
    vee_descent_trace.csv  descent trace on the flat-bottom vee from -2

and prints the self-test verdict for each example.
"""

import argparse
import pathlib
import sys

from ghcalc.examples_runner import run_examples
from ghcalc.iop import Iop, efficient_on_grid, scalarized_descent
from ghcalc.problems import abs_slab_ivf, piecewise_vee_ivf, smooth_parabolic_ivf
from ghcalc.subgrad import subdiff_scan_1d


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="artifacts")
    parser.add_argument("--grid", type=int, default=201)
    args = parser.parse_args()
    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    slab = abs_slab_ivf()
    region = subdiff_scan_1d(slab, 0.0, ((-4.0, 2.0), (-2.0, 4.0)),
                             steps=121, grid=slab.grid(args.grid))
    region.write_csv(out / "slab_region.csv")

    band = Iop(smooth_parabolic_ivf())
    report = efficient_on_grid(band, band.objective.grid(args.grid))
    report.write_csv(out / "parabolic_efficient.csv")

    vee = Iop(piecewise_vee_ivf())
    result = scalarized_descent(vee, [-2.0], grid=vee.objective.grid(args.grid))
    result.write_trace_csv(out / "vee_descent_trace.csv")
    print(f"descent on the vee ends at x = {result.x_best[0]:.4f} "
          f"(efficient={int(result.efficient)})")

    ok = True
    for name, passed, detail in run_examples(grid=args.grid):
        print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
        ok &= passed
    print(f"artifacts written to {out}/")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
