"""Command-line interface.

Subcommands: compute (single-state metrics report), dynamics (free-decay
sweep), zeno (sweep under repeated measurement), figure (canned presets as
CSV + JSON sidecar) and validate (golden-value self-check).

Internal units fix lam = 1, so times are the dimensionless tau and --r/--delta
supply the ratios R = rabi/lam and delta/lam. Exit codes: 0 success,
1 validation failure, 2 bad state file or broken invariant, 3 unknown preset.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .dynamics import ReservoirParams, ZenoSchedule
from .entanglement import pi_tangle
from .errors import TrilocError, UnknownPreset
from .figures import PRESET_NAMES, TABLE1_PARAMS, run_figure
from .nonlocality import OptimizerConfig, chsh_max, svetlichny_max, upper_bound
from .states import StateFamilyParams, ghz_class, make_state, maximally_mixed, partial_trace, random_density_matrix
from .sweep import METRIC_NAMES, SWEEP_OPTIMIZER, rows_to_csv, rows_to_json, sweep

_ANGLE_RE = re.compile(r"(?P<sign>[+-]?)(?P<coef>\d+(?:\.\d+)?)?\*?pi(?:/(?P<den>\d+(?:\.\d+)?))?")


def parse_angle(text: str) -> float:
    """Radians, either plain ('0.7854') or as a rational multiple of pi
    ('pi/3', '2pi/5', '-pi')."""
    s = text.strip().lower().replace(" ", "")
    m = _ANGLE_RE.fullmatch(s)
    if m:
        value = math.pi * float(m.group("coef") or 1.0)
        if m.group("den"):
            value /= float(m.group("den"))
        return -value if m.group("sign") == "-" else value
    try:
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}") from None


def _add_state_flags(p: argparse.ArgumentParser):
    p.add_argument("--family", choices=("w", "ghz", "ground", "custom"), default="w")
    p.add_argument("--p", type=float, default=None, help="ghz mixing weight in [0, 1]")
    p.add_argument("--theta", type=parse_angle, default=None, help="ghz angle (accepts pi/3 syntax)")
    p.add_argument("--theta3", type=parse_angle, default=None, help="ghz third-qubit angle")
    p.add_argument("--file", type=Path, default=None, help="JSON state file for --family custom")


def _add_optimizer_flags(p: argparse.ArgumentParser, starts_default=None):
    p.add_argument("--starts", type=int, default=starts_default)
    p.add_argument("--coarse-grid", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=42)


def _optimizer_config(args, base: OptimizerConfig) -> OptimizerConfig:
    return OptimizerConfig(
        starts=args.starts if args.starts is not None else base.starts,
        coarse_grid=args.coarse_grid if args.coarse_grid is not None else base.coarse_grid,
        max_iters=base.max_iters,
        tol=args.tol if args.tol is not None else base.tol,
        seed=args.seed,
    )


def _add_sweep_flags(p: argparse.ArgumentParser):
    p.add_argument("--r", type=float, action="append", default=None, help="coupling ratio R; repeatable")
    p.add_argument("--delta", type=float, default=0.0, help="detuning over lam")
    p.add_argument("--tau-max", type=float, default=2.0)
    p.add_argument("--steps", type=int, default=201)
    p.add_argument("--metrics", default=",".join(METRIC_NAMES), help="comma-separated subset of " + ",".join(METRIC_NAMES))
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", type=Path, default=None, help="output directory (stdout when omitted)")
    p.add_argument("--workers", type=int, default=None, help="worker cap; TRILOC_THREADS also applies")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triloc", description=__doc__)
    parser.add_argument("--version", action="version", version=f"triloc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="metrics report for a single state")
    _add_state_flags(p)
    _add_optimizer_flags(p)
    p.add_argument("--output", type=Path, default=None, help="directory for report.json (stdout always)")

    p = sub.add_parser("dynamics", help="free-decay sweep over a tau grid")
    _add_sweep_flags(p)
    _add_optimizer_flags(p, starts_default=None)

    p = sub.add_parser("zeno", help="sweep with projective measurements at a fixed interval")
    _add_sweep_flags(p)
    _add_optimizer_flags(p)
    p.add_argument("--measure-interval", type=float, required=True, help="measurement spacing lam*T")

    p = sub.add_parser("figure", help="write a figure/table preset as CSV + JSON sidecar")
    p.add_argument("name", help="one of " + ", ".join(PRESET_NAMES))
    p.add_argument("--output", type=Path, default=Path("figures"))
    p.add_argument("--steps", type=int, default=None, help="override tau-grid density")
    p.add_argument("--workers", type=int, default=None)
    _add_optimizer_flags(p)

    p = sub.add_parser("validate", help="run the golden-value suite")
    p.add_argument("--trials", type=int, default=100, help="random states for the bound-dominance check")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--debug-wrong-bound", action="store_true", help=argparse.SUPPRESS)

    return parser


def _cmd_compute(args) -> int:
    params = StateFamilyParams(family=args.family, p=args.p, theta=args.theta, theta3=args.theta3, file=args.file)
    rho = make_state(params)
    cfg = _optimizer_config(args, OptimizerConfig())
    result = svetlichny_max(rho, cfg)
    report = {
        "tool_version": __version__,
        "state": {k: (str(v) if isinstance(v, Path) else v) for k, v in vars(params).items() if v is not None},
        "svetlichny": result.to_dict() | {"upper_bound": upper_bound(rho)},
        "chsh": {
            pair: chsh_max(partial_trace(rho, keep))
            for pair, keep in (("ab", (0, 1)), ("ac", (0, 2)), ("bc", (1, 2)))
        },
        "pi_tangle": pi_tangle(rho).to_dict(),
    }
    text = json.dumps(report, indent=2)
    print(text)
    if args.output is not None:
        args.output.mkdir(parents=True, exist_ok=True)
        (args.output / "report.json").write_text(text + "\n")
    return 0


def _cmd_sweep(args, schedule: ZenoSchedule | None) -> int:
    started = time.monotonic()
    r_values = args.r if args.r else [20.0]
    reservoirs = [ReservoirParams.from_ratio(r, delta=args.delta) for r in r_values]
    taus = np.linspace(0.0, args.tau_max, args.steps)
    metrics = tuple(m.strip() for m in args.metrics.split(",") if m.strip())
    unknown = set(metrics) - set(METRIC_NAMES)
    if unknown:
        raise TrilocError(f"unknown metrics: {sorted(unknown)}; choose from {','.join(METRIC_NAMES)}")
    cfg = _optimizer_config(args, SWEEP_OPTIMIZER)
    rows = sweep(reservoirs, taus, schedule, metrics, cfg, workers=args.workers)
    name = "zeno" if schedule else "dynamics"
    if args.format == "csv":
        payload = rows_to_csv(rows)
    else:
        payload = json.dumps(rows_to_json(rows), indent=2) + "\n"
    if args.output is None:
        sys.stdout.write(payload)
    else:
        args.output.mkdir(parents=True, exist_ok=True)
        ext = "csv" if args.format == "csv" else "json"
        (args.output / f"{name}.{ext}").write_text(payload)
        sidecar = {
            "tool_version": __version__,
            "seed": cfg.seed,
            "config": {
                "r": r_values,
                "delta": args.delta,
                "tau_max": args.tau_max,
                "steps": args.steps,
                "metrics": list(metrics),
                "starts": cfg.starts,
                "interval": schedule.interval if schedule else None,
            },
            "wall_clock_s": round(time.monotonic() - started, 3),
            "error_count": sum(r.error is not None for r in rows),
            "rows": len(rows),
        }
        (args.output / f"{name}.meta.json").write_text(json.dumps(sidecar, indent=2) + "\n")
    return 0


# Frozen golden values. Rows 1, 2, 5, 6 are the closed-form tight cases
# (2*sqrt(6), 4*sqrt(2) and their 0.8-depolarized multiples); rows 3 and 4
# are the verified maxima, which coincide with the singular-value bound.
_GOLDEN_TABLE1 = (4.898979485566, 3.919183588453, 4.000647198303, 3.968437585731, 5.656854249492, 4.525483399593)


def _cmd_validate(args) -> int:
    checks = []

    def check(name, value, expected, tol):
        checks.append(
            {
                "name": name,
                "passed": bool(abs(value - expected) <= tol),
                "value": value,
                "expected": expected,
                "tolerance": tol,
            }
        )

    cfg = OptimizerConfig(seed=args.seed)
    matricization = "last" if args.debug_wrong_bound else "first"
    for i, (p, theta, theta3) in enumerate(TABLE1_PARAMS):
        rho = ghz_class(p, theta, theta3)
        check(f"table1_s_row{i + 1}", svetlichny_max(rho, cfg).value, _GOLDEN_TABLE1[i], 5e-3)
        check(f"table1_bound_row{i + 1}", upper_bound(rho, matricization=matricization), _GOLDEN_TABLE1[i], 1e-3)

    w_params = StateFamilyParams(family="w")
    check("w_svetlichny", svetlichny_max(make_state(w_params), cfg).value, 4.35, 1e-2)
    check("mixed_state_zero", svetlichny_max(maximally_mixed(), cfg).value, 0.0, 1e-9)
    check("ground_pi_zero", pi_tangle(make_state(StateFamilyParams(family="ground"))).pi_abc, 0.0, 1e-10)
    check("ghz_pi_one", pi_tangle(ghz_class(1.0, math.pi / 4, math.pi / 2)).pi_abc, 1.0, 1e-9)

    rng = np.random.default_rng(args.seed)
    fast = SWEEP_OPTIMIZER
    violations = 0
    for _ in range(args.trials):
        rho = random_density_matrix(rng)
        if svetlichny_max(rho, fast).value > upper_bound(rho) + 1e-6:
            violations += 1
    checks.append(
        {
            "name": "bound_dominance",
            "passed": violations == 0,
            "value": violations,
            "expected": 0,
            "tolerance": 0,
        }
    )

    passed = all(c["passed"] for c in checks)
    print(json.dumps({"passed": passed, "tool_version": __version__, "checks": checks}, indent=2))
    return 0 if passed else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "compute":
            return _cmd_compute(args)
        if args.command == "dynamics":
            return _cmd_sweep(args, None)
        if args.command == "zeno":
            return _cmd_sweep(args, ZenoSchedule(interval=args.measure_interval))
        if args.command == "figure":
            cfg = None
            if args.starts is not None or args.coarse_grid is not None or args.tol is not None or args.seed != 42:
                base = OptimizerConfig() if args.name == "table1" else SWEEP_OPTIMIZER
                cfg = _optimizer_config(args, base)
            run_figure(args.name, args.output, cfg=cfg, steps=args.steps, workers=args.workers, version=__version__)
            return 0
        if args.command == "validate":
            return _cmd_validate(args)
        raise AssertionError(f"unhandled command {args.command}")
    except UnknownPreset as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except TrilocError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
