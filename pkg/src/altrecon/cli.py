"""``bench`` command line: Monte-Carlo sweeps and per-iteration traces."""

import argparse
import csv
import dataclasses
import logging
import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .bench import (
    ALGOS,
    BENCH_SOLVER_OPTS,
    SweepConfig,
    aggregate,
    emit_csv,
    emit_summary_csv,
    make_instance,
    measurement_model,
    run_sweep,
    solve,
    write_csv,
)
from .core import SolverOptions
from .problems import srer_db

log = logging.getLogger("altrecon")

_SWEEP_KEYS = {f.name for f in dataclasses.fields(SweepConfig)} - {"solver_opts"}
_OPT_KEYS = {f.name for f in dataclasses.fields(SolverOptions)}


class ConfigError(Exception):
    pass


def _floats(text):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _names(text):
    return tuple(v.strip() for v in text.split(",") if v.strip())


def _bool(text):
    t = text.lower()
    if t in ("1", "true", "yes", "hankel"):
        return True
    if t in ("0", "false", "no", "unstructured"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def load_config(path):
    """Read a flat TOML file into ``(sweep_kwargs, solver_kwargs)``.

    Keys are :class:`SweepConfig` field names plus :class:`SolverOptions`
    field names (``mu``, ``lam``, ``k_max``, ...).
    """
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid config {path}: {exc}") from exc
    sweep, opts = {}, {}
    for key, value in raw.items():
        if key in _SWEEP_KEYS:
            sweep[key] = value
        elif key in _OPT_KEYS:
            opts[key] = value
        else:
            raise ConfigError(f"unknown config key {key!r}")
    return sweep, opts


def _add_problem_args(p):
    p.add_argument("--n1", type=int, help="rows of the target matrix (default 20)")
    p.add_argument("--n2", type=int, help="columns of the target matrix (default 20)")
    p.add_argument("--rank", type=int, dest="r", help="target rank (default 2)")
    p.add_argument("--seed", type=int, dest="master_seed", help="master seed (default 0)")
    p.add_argument("--structured", type=_bool, metavar="BOOL",
                   help="Hankel problem family (true) or unstructured low-rank (false)")
    for name in ("mu", "lam", "lam_prime", "epsilon"):
        p.add_argument(f"--{name.replace('_', '-')}", type=float, dest=name,
                       help=f"solver option {name}")
    p.add_argument("--k-max", type=int, dest="k_max", help="outer iteration cap")
    p.add_argument("--inner-max", type=int, dest="inner_max", help="ADMM sweeps per factor")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bench",
        description="Compare ALS, ALE and ADLS low-rank matrix reconstruction by Monte-Carlo simulation.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a sweep over sampling fractions and SMNR values")
    run.add_argument("--config", help="flat TOML file with SweepConfig/SolverOptions keys")
    _add_problem_args(run)
    run.add_argument("--xi", type=_floats, dest="xi_grid", help="comma-separated sampling fractions")
    run.add_argument("--smnr", type=_floats, dest="smnr_grid_db", help="comma-separated SMNR values in dB")
    run.add_argument("--trials", type=int, help="Monte-Carlo trials per grid point (default 100)")
    run.add_argument("--algos", type=_names, help=f"comma-separated subset of {','.join(ALGOS)}")
    run.add_argument("--workers", type=int, help="worker processes (default 1)")
    run.add_argument("--out", dest="output_path", help="per-trial CSV output path (default stdout)")
    run.add_argument("--summary", help="also write the aggregated table to this CSV path")

    tr = sub.add_parser("trace", help="per-iteration residual trace of one solver on one instance")
    tr.add_argument("--algo", choices=ALGOS, default="adls")
    _add_problem_args(tr)
    tr.add_argument("--xi", type=float, default=0.3, help="sampling fraction (default 0.3)")
    tr.add_argument("--smnr", type=float, default=15.0, help="SMNR in dB (default 15)")
    tr.add_argument("--out", help="trace CSV output path (default stdout)")
    return parser


def _overrides(args, keys):
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _solver_opts(base_kwargs, args):
    kwargs = dataclasses.asdict(BENCH_SOLVER_OPTS)
    kwargs.update(base_kwargs)
    kwargs.update(_overrides(args, _OPT_KEYS))
    return SolverOptions(**kwargs)


def cmd_run(args):
    sweep, opts = load_config(args.config) if args.config else ({}, {})
    sweep.update(_overrides(args, _SWEEP_KEYS))
    cfg = SweepConfig(**sweep, solver_opts=_solver_opts(opts, args))
    log.info("running %s", cfg)
    records = run_sweep(cfg)
    if cfg.output_path:
        emit_csv(records, cfg.output_path)
    else:
        write_csv(records, sys.stdout)
    rows = aggregate(records)
    if args.summary:
        emit_summary_csv(rows, args.summary)
    out = sys.stderr if not cfg.output_path else sys.stdout
    print(f"{'algo':<18}{'xi':>6}{'smnr':>7}{'srer':>9}{'median':>9}{'n':>5}", file=out)
    for row in rows:
        print(f"{row['algo']:<18}{row['xi']:>6.2f}{row['smnr_db']:>7.1f}"
              f"{row['srer_db']:>9.2f}{row['median_srer_db']:>9.2f}{row['trials']:>5d}", file=out)


def cmd_trace(args):
    sweep = SweepConfig(**_overrides(args, {"n1", "n2", "r", "master_seed", "structured"}),
                        xi_grid=(args.xi,), smnr_grid_db=(args.smnr,), trials=1,
                        algos=(args.algo,))
    opts = _solver_opts({}, args)
    m = sweep.measurements(args.xi)
    inst = make_instance(sweep.n1, sweep.n2, sweep.r, m, args.smnr, sweep.master_seed, sweep.structured)
    rows = []
    model, scale = measurement_model(inst, sweep.n1, sweep.n2)
    est = solve(args.algo, model, sweep.r, opts, trace=rows.append)
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        if rows:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
    finally:
        if args.out:
            fh.close()
    print(f"# {args.algo}: iterations={est.iterations} converged={est.converged} "
          f"srer_db={srer_db(inst.X, scale * est.X_hat):.3f}", file=sys.stderr)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "run":
            cmd_run(args)
        else:
            cmd_trace(args)
    except ConfigError as exc:
        print(f"bench: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError) as exc:
        print(f"bench: invalid configuration: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"bench: I/O error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
