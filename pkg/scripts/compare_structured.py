"""SRER versus sampling fraction at fixed SMNR, Hankel and unstructured problems.

    python scripts/compare_structured.py --trials 100 --out fig1a.csv
"""

import argparse
import logging

from altrecon.bench import SweepConfig, aggregate, emit_csv, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--smnr", type=float, default=15.0)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default=None, help="per-trial CSV stem, suffixed _hankel / _plain")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    common = dict(xi_grid=(0.1, 0.2, 0.3, 0.4, 0.5), smnr_grid_db=(args.smnr,), trials=args.trials,
                  master_seed=args.seed, workers=args.workers)
    for structured in (True, False):
        records = run_sweep(SweepConfig(structured=structured, **common))
        if args.out:
            emit_csv(records, args.out.replace(".csv", "_hankel.csv" if structured else "_plain.csv"))
        print("Hankel problems" if structured else "unstructured problems")
        print(f"{'algo':<18} {'xi':>5} {'mean':>8} {'median':>8}")
        for row in aggregate(records):
            print(f"{row['algo']:<18} {row['xi']:>5.2f} {row['srer_db']:>8.2f} {row['median_srer_db']:>8.2f}")


if __name__ == "__main__":
    main()
