"""SRER versus SMNR for each sampling fraction, Hankel problems, ALE against ADLS.

    python scripts/compare_ale_adls.py --trials 50 --out fig1b.csv
"""

import argparse
import logging

from altrecon.bench import SweepConfig, aggregate, emit_csv, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default=None, help="per-trial CSV")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    cfg = SweepConfig(xi_grid=(0.2, 0.3, 0.4, 0.5), smnr_grid_db=(0.0, 5.0, 10.0, 15.0, 20.0, 25.0),
                      trials=args.trials, master_seed=args.seed, algos=("ale", "adls"), workers=args.workers)
    records = run_sweep(cfg)
    if args.out:
        emit_csv(records, args.out)

    rows = {(r["algo"], r["xi"], r["smnr_db"]): r["srer_db"] for r in aggregate(records)}
    print(f"{'xi':>5} {'smnr':>6} {'ale':>8} {'adls':>8}")
    for xi in cfg.xi_grid:
        for s in cfg.smnr_grid_db:
            print(f"{xi:>5.2f} {s:>6.1f} {rows[('ale', xi, s)]:>8.2f} {rows[('adls', xi, s)]:>8.2f}")


if __name__ == "__main__":
    main()
