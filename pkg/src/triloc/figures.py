"""Figure and table presets: canned sweeps written as CSV files plus a JSON
sidecar describing the curve groups.

Multi-schedule presets (fig4, fig5) write one CSV per (R, schedule) group,
since the sweep schema has no schedule column; the sidecar records each
file's coupling ratio and measurement interval.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dynamics import ReservoirParams, ZenoSchedule
from .errors import UnknownPreset
from .nonlocality import OptimizerConfig, svetlichny_max, upper_bound
from .states import ghz_class
from .sweep import SWEEP_OPTIMIZER, format_value, sweep, write_csv

TABLE1_PARAMS = (
    (1.0, np.pi / 3, np.pi / 2),
    (0.8, np.pi / 3, np.pi / 2),
    (0.998, np.pi / 3, 0.6216),
    (0.99, np.pi / 3, 0.6215),
    (1.0, np.pi / 4, np.pi / 2),
    (0.8, np.pi / 4, np.pi / 2),
)

TABLE1_HEADER = ("p", "theta", "theta3", "s_svetlichny", "s_bound")


@dataclass(frozen=True)
class FigureGroup:
    label: str
    reservoir: ReservoirParams
    schedule: ZenoSchedule | None
    taus: tuple[float, ...]


@dataclass(frozen=True)
class FigurePreset:
    name: str
    metrics: tuple[str, ...]
    groups: tuple[FigureGroup, ...]
    split_files: bool  # one CSV per group instead of a single grouped CSV


def _taus(tau_max: float, steps: int) -> tuple[float, ...]:
    return tuple(np.linspace(0.0, tau_max, steps))


def _group(r: float, taus, interval: float | None = None) -> FigureGroup:
    label = f"r{r:g}_" + ("free" if interval is None else f"T{interval:g}")
    schedule = None if interval is None else ZenoSchedule(interval=interval)
    return FigureGroup(label=label, reservoir=ReservoirParams.from_ratio(r), schedule=schedule, taus=taus)


def _preset(name: str, steps: int | None) -> FigurePreset:
    def n(default):  # uniform step override for quick runs
        return steps if steps else default

    if name == "fig1":
        taus = _taus(2.0, n(81))
        groups = tuple(_group(r, taus) for r in np.linspace(0.5, 20.0, 14))
        return FigurePreset(name, ("svetlichny", "survival"), groups, split_files=False)
    if name == "fig2":
        groups = (
            _group(20.0, _taus(2.0, n(161))),
            _group(0.1, _taus(30.0, n(151))),
        )
        return FigurePreset(name, ("svetlichny", "chsh", "survival"), groups, split_files=False)
    if name == "fig3":
        taus = _taus(2.0, n(101))
        groups = tuple(_group(r, taus) for r in np.linspace(0.5, 20.0, 27))
        return FigurePreset(name, ("pi_tangle", "survival"), groups, split_files=False)
    if name in ("fig4", "fig5"):
        strong = _taus(1.0, n(101))
        weak = _taus(30.0, n(121))
        groups = tuple(
            [_group(20.0, strong, t) for t in (None, 0.01, 0.005, 0.001)]
            + [_group(0.1, weak, t) for t in (None, 5.0, 1.0, 0.1)]
        )
        metrics = ("svetlichny", "survival") if name == "fig4" else ("pi_tangle", "survival")
        return FigurePreset(name, metrics, groups, split_files=True)
    raise UnknownPreset(f"unknown figure preset {name!r}")


PRESET_NAMES = ("fig1", "fig2", "fig3", "fig4", "fig5", "table1")


def _write_table1(outdir: Path, cfg: OptimizerConfig) -> dict:
    lines = [",".join(TABLE1_HEADER)]
    for p, theta, theta3 in TABLE1_PARAMS:
        rho = ghz_class(p, theta, theta3)
        s = svetlichny_max(rho, cfg).value
        b = upper_bound(rho)
        lines.append(",".join(format_value(v) for v in (p, theta, theta3, s, b)))
    path = outdir / "table1.csv"
    path.write_text("\n".join(lines) + "\n")
    return {"path": path.name, "rows": len(TABLE1_PARAMS)}


def run_figure(
    name: str,
    outdir,
    cfg: OptimizerConfig | None = None,
    steps: int | None = None,
    workers: int | None = None,
    version: str = "0",
) -> dict:
    """Produce a preset's CSV file(s) and JSON sidecar; returns the sidecar."""
    if name not in PRESET_NAMES:
        raise UnknownPreset(f"unknown figure preset {name!r}; choose from {PRESET_NAMES}")
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    started = time.monotonic()

    files = []
    error_count = 0
    if name == "table1":
        cfg = cfg or OptimizerConfig()
        files.append(_write_table1(outdir, cfg))
    else:
        cfg = cfg or SWEEP_OPTIMIZER
        preset = _preset(name, steps)
        if preset.split_files:
            for group in preset.groups:
                rows = sweep([group.reservoir], group.taus, group.schedule, preset.metrics, cfg, workers)
                error_count += sum(r.error is not None for r in rows)
                path = write_csv(rows, outdir / f"{name}__{group.label}.csv")
                files.append(
                    {
                        "path": path.name,
                        "r": group.reservoir.coupling_ratio,
                        "interval": group.schedule.interval if group.schedule else None,
                        "rows": len(rows),
                    }
                )
        else:
            rows = []
            for group in preset.groups:
                rows.extend(sweep([group.reservoir], group.taus, group.schedule, preset.metrics, cfg, workers))
            error_count = sum(r.error is not None for r in rows)
            path = write_csv(rows, outdir / f"{name}.csv")
            files.append(
                {
                    "path": path.name,
                    "r": [g.reservoir.coupling_ratio for g in preset.groups],
                    "interval": None,
                    "rows": len(rows),
                }
            )

    sidecar = {
        "figure": name,
        "tool_version": version,
        "seed": cfg.seed,
        "config": {
            "starts": cfg.starts,
            "coarse_grid": cfg.coarse_grid,
            "max_iters": cfg.max_iters,
            "tol": cfg.tol,
            "steps": steps,
        },
        "wall_clock_s": round(time.monotonic() - started, 3),
        "error_count": error_count,
        "files": files,
    }
    (outdir / f"{name}.json").write_text(json.dumps(sidecar, indent=2) + "\n")
    return sidecar
