"""Monte-Carlo comparison harness.

Every (sampling fraction, SMNR, trial) triple gets its own problem instance
drawn from a child seed, and all selected algorithms are run on that same
instance.  Records are sorted before output, so the CSV does not depend on
worker scheduling.
"""

import csv
import hashlib
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .adls import adls_solve
from .ale import ale_solve
from .als import als_solve
from .core import SolverOptions
from .problems import add_noise, gen_hankel_lowrank, gen_lowrank, srer_db
from .sensing import MeasurementModel, apply_operator, make_gaussian_operator
from .structures import hankel_structure, unstructured

log = logging.getLogger(__name__)

ALGOS = ("als", "als-hankel", "ale", "adls", "adls-unstructured")
CSV_COLUMNS = (
    "algo", "n1", "n2", "r", "m", "xi", "smnr_db", "trial", "seed",
    "srer_db", "iterations", "runtime_ms", "converged",
)

# Desk-scale solver defaults, tuned on master seed 12345 (a seed the tests never use).
BENCH_SOLVER_OPTS = SolverOptions(mu=30.0, lam=1.0, lam_prime=1.0, k_max=2000)


@dataclass
class TrialRecord:
    algo: str
    n1: int
    n2: int
    r: int
    m: int
    xi: float
    smnr_db: float
    trial: int
    seed: int
    srer_db: float
    iterations: int
    runtime_ms: float
    converged: bool
    # not serialized
    signal_energy: Optional[float] = field(default=None, compare=False)
    error_energy: Optional[float] = field(default=None, compare=False)
    input_digest: Optional[str] = field(default=None, compare=False)


@dataclass
class SweepConfig:
    n1: int = 20
    n2: int = 20
    r: int = 2
    xi_grid: tuple = (0.1, 0.2, 0.3, 0.4, 0.5)
    smnr_grid_db: tuple = (0.0, 5.0, 10.0, 15.0, 20.0, 25.0)
    trials: int = 100
    master_seed: int = 0
    algos: Optional[tuple] = None
    solver_opts: SolverOptions = BENCH_SOLVER_OPTS
    structured: bool = True
    output_path: Optional[str] = None
    workers: int = 1

    def __post_init__(self):
        self.xi_grid = tuple(float(x) for x in self.xi_grid)
        self.smnr_grid_db = tuple(float(s) for s in self.smnr_grid_db)
        if self.algos is None:
            self.algos = ("als", "als-hankel", "ale", "adls") if self.structured else ("als", "adls-unstructured")
        self.algos = tuple(self.algos)
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.xi_grid or not self.smnr_grid_db or not self.algos:
            raise ValueError("grids and algorithm list must be non-empty")
        for a in self.algos:
            if a not in ALGOS:
                raise ValueError(f"unknown algorithm {a!r}; choose from {ALGOS}")
        for xi in self.xi_grid:
            if not 0 < xi <= 1 or self.measurements(xi) < 1:
                raise ValueError(f"sampling fraction {xi} gives no measurements")
        if not 1 <= self.r <= min(self.n1, self.n2):
            raise ValueError(f"rank {self.r} outside [1, {min(self.n1, self.n2)}]")

    def measurements(self, xi):
        return int(round(xi * self.n1 * self.n2))


def child_seed(master_seed, xi_index, smnr_index, trial):
    """64-bit seed for one grid point and trial (numpy ``SeedSequence`` mixing)."""
    ss = np.random.SeedSequence([master_seed, xi_index, smnr_index, trial])
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass
class Instance:
    X: np.ndarray
    A: np.ndarray
    y: np.ndarray
    sigma: float

    def digest(self):
        h = hashlib.sha256()
        for arr in (self.X, self.A, self.y):
            h.update(np.ascontiguousarray(arr).tobytes())
        return h.hexdigest()


def make_instance(n1, n2, r, m, smnr_db, seed, structured=True):
    """Draw ``(X, A, y)`` from a single child seed."""
    s_x, s_a, s_e = (int(s.generate_state(1, np.uint64)[0]) for s in np.random.SeedSequence(seed).spawn(3))
    X = gen_hankel_lowrank(n1, n2, r, s_x)[0] if structured else gen_lowrank(n1, n2, r, s_x)
    A = make_gaussian_operator(m, n1, n2, s_a)
    y, sigma = add_noise(apply_operator(A, X), X, smnr_db, s_e)
    return Instance(X, A, y, sigma)


def solve(algo, model, r, opts, trace=None):
    n1, n2 = model.n1, model.n2
    if algo == "als":
        return als_solve(model, r, None, opts, trace=trace)
    if algo == "als-hankel":
        return als_solve(model, r, hankel_structure(n1, n2), opts, trace=trace)
    if algo == "ale":
        return ale_solve(model, r, hankel_structure(n1, n2), opts, trace=trace)
    if algo == "adls":
        return adls_solve(model, r, hankel_structure(n1, n2), opts, trace=trace)
    if algo == "adls-unstructured":
        return adls_solve(model, r, unstructured(n1, n2), opts, trace=trace)
    raise ValueError(f"unknown algorithm {algo!r}")


def measurement_model(inst, n1, n2):
    """Solver input for an instance and the factor mapping its estimates back.

    Isotropic noise only rescales the weighted LS cost, so ``C = I`` is used.
    The data are divided by ``||y||`` so every solver estimates ``X / ||y||``;
    ALS and ALE are scale-equivariant, and for ADLS this keeps the penalty
    ``lam`` commensurate with unit-size factors.
    """
    scale = float(np.linalg.norm(inst.y)) or 1.0
    return MeasurementModel(inst.A, inst.y / scale, n1, n2), scale


def run_point(cfg, xi_index, smnr_index, trial):
    """All algorithms on one problem instance."""
    xi = cfg.xi_grid[xi_index]
    smnr = cfg.smnr_grid_db[smnr_index]
    m = cfg.measurements(xi)
    seed = child_seed(cfg.master_seed, xi_index, smnr_index, trial)
    inst = make_instance(cfg.n1, cfg.n2, cfg.r, m, smnr, seed, cfg.structured)
    digest = inst.digest()
    signal = float(np.sum(inst.X ** 2))
    out = []
    for algo in cfg.algos:
        model, scale = measurement_model(inst, cfg.n1, cfg.n2)
        t0 = time.perf_counter()
        try:
            est = solve(algo, model, cfg.r, cfg.solver_opts)
            X_hat, its, conv = scale * est.X_hat, est.iterations, est.converged
        except (np.linalg.LinAlgError, ValueError) as exc:
            log.warning("%s failed at xi=%g smnr=%g trial=%d: %s", algo, xi, smnr, trial, exc)
            X_hat, its, conv = np.zeros_like(inst.X), 0, False
        runtime = (time.perf_counter() - t0) * 1e3
        out.append(TrialRecord(
            algo=algo, n1=cfg.n1, n2=cfg.n2, r=cfg.r, m=m, xi=xi, smnr_db=smnr,
            trial=trial, seed=seed, srer_db=srer_db(inst.X, X_hat), iterations=its,
            runtime_ms=runtime, converged=bool(conv), signal_energy=signal,
            error_energy=float(np.sum((inst.X - X_hat) ** 2)), input_digest=digest,
        ))
    return (xi_index, smnr_index, trial), out


def _run_point_args(args):
    return run_point(*args)


def run_sweep(cfg):
    """Run the whole grid; returns records ordered by (point, trial, algo)."""
    tasks = [
        (cfg, i, j, t)
        for i in range(len(cfg.xi_grid))
        for j in range(len(cfg.smnr_grid_db))
        for t in range(cfg.trials)
    ]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(_run_point_args, tasks, chunksize=4))
    else:
        results = [_run_point_args(t) for t in tasks]
    results.sort(key=lambda kv: kv[0])
    return [rec for _, recs in results for rec in recs]


def aggregate(records):
    """Per (algo, xi, smnr) summary rows.

    ``srer_db`` is the ratio of mean signal energy to mean error energy, in
    dB.  Records read back from CSV carry no energies; those are treated as
    unit signal energy with error energy ``10**(-srer/10)``.
    """
    if not records:
        raise ValueError("no records to aggregate")
    groups = {}
    for rec in records:
        groups.setdefault((rec.algo, rec.xi, rec.smnr_db), []).append(rec)
    rows = []
    for (algo, xi, smnr), recs in groups.items():
        sig = np.array([1.0 if r.signal_energy is None else r.signal_energy for r in recs])
        err = np.array([
            10 ** (-r.srer_db / 10) if r.error_energy is None else r.error_energy for r in recs
        ])
        if err.sum() == 0:
            ratio = 300.0
        else:
            ratio = min(10 * math.log10(sig.sum() / err.sum()), 300.0)
        rows.append({
            "algo": algo, "xi": xi, "smnr_db": smnr, "srer_db": ratio,
            "median_srer_db": float(np.median([r.srer_db for r in recs])),
            "trials": len(recs),
        })
    return rows


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(records, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in records:
        w.writerow([_fmt(getattr(rec, c)) for c in CSV_COLUMNS])


def emit_csv(records, path):
    """Write one row per record, columns in ``CSV_COLUMNS`` order."""
    with open(path, "w", newline="") as fh:
        write_csv(records, fh)


_PARSERS = {
    "algo": str, "n1": int, "n2": int, "r": int, "m": int, "xi": float,
    "smnr_db": float, "trial": int, "seed": int, "srer_db": float,
    "iterations": int, "runtime_ms": float, "converged": lambda s: s == "true",
}


def read_csv(path):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        return [TrialRecord(**{k: _PARSERS[k](v) for k, v in row.items()}) for row in reader]


def emit_summary_csv(rows, path):
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


__all__ = [
    "ALGOS", "CSV_COLUMNS", "BENCH_SOLVER_OPTS", "TrialRecord", "SweepConfig",
    "child_seed", "make_instance", "measurement_model", "solve", "run_point",
    "run_sweep", "aggregate", "write_csv", "emit_csv", "read_csv", "emit_summary_csv",
]
