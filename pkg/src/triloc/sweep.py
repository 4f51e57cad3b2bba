"""Deterministic parameter sweeps over (tau, reservoir) grids with CSV/JSON
serialization.

Rows are mutually independent; metric failures are recorded in the row's
``error`` column instead of aborting the sweep. The CSV schema is frozen:
columns are always present, unrequested metrics stay empty, floats carry
12 significant digits, and reruns with identical inputs are byte-identical.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .dynamics import ReservoirParams, ZenoSchedule, rho_w
from .entanglement import pi_tangle
from .errors import TrilocError
from .nonlocality import OptimizerConfig, chsh_max, svetlichny_max, upper_bound
from .states import partial_trace

METRIC_NAMES = ("svetlichny", "chsh", "pi_tangle", "survival")
CSV_HEADER = ("tau", "r", "delta", "s_svetlichny", "s_bound", "chsh_ab", "pi_tangle", "survival", "error")

# lighter profile than OptimizerConfig defaults; hundreds of sweep rows at
# full default strength would take minutes for no visible gain
SWEEP_OPTIMIZER = OptimizerConfig(starts=8, coarse_grid=4, max_iters=250, tol=1e-9, seed=42)


@dataclass(frozen=True)
class SweepRow:
    tau: float
    r: float
    delta: float
    s_svetlichny: float | None = None
    s_bound: float | None = None
    chsh_ab: float | None = None
    pi_tangle: float | None = None
    survival: float | None = None
    error: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def compute_row(
    tau: float,
    params: ReservoirParams,
    schedule: ZenoSchedule | None,
    metrics,
    cfg: OptimizerConfig,
) -> SweepRow:
    """Evaluate the requested metrics on the trajectory state at ``tau``."""
    metrics = frozenset(metrics)
    unknown = metrics - set(METRIC_NAMES)
    if unknown:
        raise ValueError(f"unknown metrics: {sorted(unknown)}")
    base = dict(tau=float(tau), r=params.coupling_ratio, delta=params.delta / params.lam if params.lam > 0 else params.delta)
    try:
        point = rho_w(tau, params, schedule)
        out = {}
        if "survival" in metrics:
            out["survival"] = point.survival
        if "svetlichny" in metrics:
            out["s_svetlichny"] = svetlichny_max(point.rho, cfg).value
            out["s_bound"] = upper_bound(point.rho)
        if "chsh" in metrics:
            out["chsh_ab"] = chsh_max(partial_trace(point.rho, (0, 1)))
        if "pi_tangle" in metrics:
            out["pi_tangle"] = pi_tangle(point.rho).pi_abc
        return SweepRow(**base, **out)
    except TrilocError as exc:
        # keep the frozen comma-separated schema parseable
        message = str(exc).replace(",", ";").replace("\n", " ")
        return SweepRow(**base, error=message)


def _row_job(args):
    return compute_row(*args)


def resolve_workers(n_jobs: int, workers: int | None = None) -> int:
    """Worker count for a sweep; TRILOC_THREADS caps it (speed only, results
    are independent of the worker layout)."""
    if workers is None:
        env = os.environ.get("TRILOC_THREADS", "").strip()
        workers = int(env) if env else (os.cpu_count() or 1)
    return max(1, min(workers, n_jobs))


def sweep(
    reservoirs,
    taus,
    schedule: ZenoSchedule | None = None,
    metrics=METRIC_NAMES,
    cfg: OptimizerConfig | None = None,
    workers: int | None = None,
) -> list[SweepRow]:
    """One row per (reservoir, tau) pair, reservoir-major, order-deterministic."""
    reservoirs = list(reservoirs)
    taus = [float(t) for t in taus]
    if not reservoirs or not taus:
        raise ValueError("reservoir and tau grids must be non-empty")
    if np.any(np.diff(taus) <= 0):
        raise ValueError("tau grid must be strictly increasing")
    cfg = cfg or SWEEP_OPTIMIZER
    jobs = [(tau, params, schedule, frozenset(metrics), cfg) for params in reservoirs for tau in taus]
    n_workers = resolve_workers(len(jobs), workers)
    if n_workers > 1 and len(jobs) >= 16:
        chunk = max(1, len(jobs) // (n_workers * 8))
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            return list(pool.map(_row_job, jobs, chunksize=chunk))
    return [_row_job(job) for job in jobs]


def format_value(v) -> str:
    """Frozen float formatting: 12 significant digits, '.' decimal point."""
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    f = float(v)
    if f == 0.0:
        f = 0.0  # normalize -0.0
    return format(f, ".12g")


def rows_to_csv(rows) -> str:
    lines = [",".join(CSV_HEADER)]
    for row in rows:
        d = row.to_dict()
        lines.append(",".join(format_value(d[col]) for col in CSV_HEADER))
    return "\n".join(lines) + "\n"


def write_csv(rows, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(rows_to_csv(rows))
    return path


def rows_to_json(rows) -> list[dict]:
    return [row.to_dict() for row in rows]
