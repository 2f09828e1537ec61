"""Command-line front door: trials, grids, bifurcation data, and serving.

Exit codes are a stable contract: 0 success, 2 input error, 3 numerical
failure, 4 environment failure. Every command is deterministic given
identical inputs and seeds, producing byte-identical output files.
"""

import argparse
import os
import re
import socket
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from math import pi
from pathlib import Path
from typing import Optional, Sequence, Tuple

import numpy as np

from .analysis.bifurcation import (pitchfork_diagram, write_diagram_csv,
                                   write_diagram_summary)
from .core.params import ExponentialAttention, OpinionParams
from .errors import NumericalBlowupError, ScenarioError
from .sim.export import (write_metrics_json, write_opinion_csv,
                         write_trajectory_csv)
from .sim.runner import run_trial
from .sim.scenario import (HumanSpec, Pose, RobotSpec, Scenario,
                           ScriptedPolicy, load_scenario, with_overrides)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_ENV = 4

# grid shorthand: first letter = robot bias, second = human prompt
ROBOT_BIAS = {"L": 0.5, "U": 0.0, "R": -0.5}
HUMAN_PROMPT = {"L": "bear_left", "U": "straight", "R": "bear_right"}
GRID_CELLS = tuple(r + h for r in "LUR" for h in "LUR")

_PI_TOKEN = re.compile(
    r"^\s*(\d+(?:\.\d+)?)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d+)?))?\s*$")


@dataclass(frozen=True)
class SweepSpec:
    """One parameter sweep over a base scenario."""

    base_scenario: Scenario
    parameter: str  # one of: beta, b, R, u_hi, gamma
    values: Tuple[float, ...]
    seeds: int
    output: Path

    def __post_init__(self):
        if self.parameter not in ("beta", "b", "R", "u_hi", "gamma"):
            raise ScenarioError([f"unknown sweep parameter: "
                                 f"{self.parameter!r}"])
        if len(self.values) == 0:
            raise ScenarioError(["sweep values must be non-empty"])
        if self.seeds < 1:
            raise ScenarioError(["sweep needs at least one seed per value"])


def parse_beta(token: str) -> float:
    """Accept plain floats and pi fractions like 'pi/6' or '0.5pi'."""
    try:
        return float(token)
    except ValueError:
        pass
    m = _PI_TOKEN.match(token)
    if m is None:
        raise ScenarioError([f"cannot parse angle: {token!r}"])
    num = float(m.group(1)) if m.group(1) else 1.0
    den = float(m.group(2)) if m.group(2) else 1.0
    return num * pi / den


def beta_label(value: float) -> str:
    """Short file-name label for an angle value."""
    for den in (2, 3, 4, 6, 8, 12):
        if abs(value - pi / den) < 1e-12:
            return f"pi{den}"
    return f"{value:.4f}".replace(".", "p")


def _apply_common_overrides(scenario: Scenario,
                            args: argparse.Namespace) -> Scenario:
    beta = parse_beta(args.beta) if args.beta is not None else None
    return with_overrides(scenario, seed=args.seed, beta=beta, dt=args.dt,
                          attention=args.attention)


def default_grid_scenario() -> Scenario:
    """Head-on corridor pass used by the grid experiments."""
    params = OpinionParams(d=0.5, alpha=0.1, gamma=3.0, b=0.0, beta=pi / 4,
                           k=1.0,
                           attention=ExponentialAttention(tau_u=1.0, m=1.0,
                                                          c=1.0, R=11.0))
    return Scenario(
        robot=RobotSpec(start=Pose(0.0, 0.0, pi / 2), goal=(0.0, 6.1),
                        speed=0.7, params=params),
        humans=[HumanSpec(start=Pose(0.0, 6.1, -pi / 2), goal=(0.0, -1.0),
                          speed=1.09, policy=ScriptedPolicy())],
        max_time=30.0, dt=0.01, seed=0, name="grid-base")


def cell_scenario(base: Scenario, cell: str) -> Scenario:
    """Apply a grid cell's robot bias and human prompt to the base."""
    if len(cell) != 2 or cell[0] not in ROBOT_BIAS \
            or cell[1] not in HUMAN_PROMPT:
        raise ScenarioError([f"unknown grid cell: {cell!r}"])
    if not base.humans or not isinstance(base.humans[0].policy,
                                         ScriptedPolicy):
        raise ScenarioError(["grid base scenario needs a scripted first "
                             "human"])
    robot = replace(base.robot,
                    params=replace(base.robot.params, b=ROBOT_BIAS[cell[0]]))
    human = replace(base.humans[0],
                    policy=replace(base.humans[0].policy,
                                   prompt=HUMAN_PROMPT[cell[1]]))
    humans = [human] + list(base.humans[1:])
    return replace(base, robot=robot, humans=humans, name=base.name or "grid")


# -- simulate ----------------------------------------------------------------

def cmd_simulate(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    scenario = _apply_common_overrides(scenario, args)
    result = run_trial(scenario)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_trajectory_csv(result, out / "trajectory.csv")
    write_opinion_csv(result, out / "opinion.csv")
    write_metrics_json(result, out / "metrics.json")
    m = result.metrics
    sides = ",".join("left" if p else "right" for p in m.passed_left)
    print(f"outcome={result.outcome} path_length={m.path_length:.3f} "
          f"min_separation={m.min_separation:.3f} passed={sides or 'n/a'}")
    return EXIT_OK


# -- grid --------------------------------------------------------------------

def _grid_task(task) -> Tuple[Tuple[int, int, int], dict]:
    """Worker body: run one (beta, cell, seed) trial and write its CSV."""
    key, scenario, traj_path = task
    result = run_trial(scenario)
    write_trajectory_csv(result, traj_path)
    m = result.metrics
    return key, {"outcome": result.outcome,
                 "path_length": m.path_length,
                 "max_curvature": m.max_curvature,
                 "min_separation": m.min_separation,
                 "passed_left": m.passed_left[0]}


def _worker_count() -> int:
    cap = os.environ.get("OPINION_NAV_THREADS")
    if cap is None:
        return os.cpu_count() or 1
    try:
        return max(1, int(cap))
    except ValueError:
        raise ScenarioError([f"OPINION_NAV_THREADS must be an integer, "
                             f"got {cap!r}"])


def cmd_grid(args: argparse.Namespace) -> int:
    if args.scenario is not None:
        base = load_scenario(args.scenario)
    else:
        base = default_grid_scenario()
    base = with_overrides(base, dt=args.dt, attention=args.attention)
    betas = tuple(parse_beta(tok) for tok in args.betas.split(","))
    cells = tuple(args.cells.split(",")) if args.cells else GRID_CELLS
    spec = SweepSpec(base_scenario=base, parameter="beta", values=betas,
                     seeds=args.seeds, output=Path(args.out))
    seed0 = args.seed if args.seed is not None else base.seed
    seeds = tuple(seed0 + i for i in range(spec.seeds))

    trials_dir = spec.output / "trials"
    trials_dir.mkdir(parents=True, exist_ok=True)
    tasks = []
    for bi, beta in enumerate(spec.values):
        label = beta_label(beta)
        for ci, cell in enumerate(cells):
            scn = cell_scenario(spec.base_scenario, cell)
            for seed in seeds:
                variant = with_overrides(scn, seed=seed, beta=beta)
                path = trials_dir / f"{label}_{cell}_s{seed}.csv"
                tasks.append(((bi, ci, seed), variant, str(path)))

    rows = {}
    workers = _worker_count()
    if workers == 1:
        for task in tasks:
            key, row = _grid_task(task)
            rows[key] = row
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for key, row in pool.map(_grid_task, tasks):
                rows[key] = row

    # aggregate per (beta, cell); percent increase is vs the smallest beta
    ref_beta = min(range(len(spec.values)), key=lambda i: spec.values[i])
    mean_pl = {}
    agg_rows = []
    for bi, beta in enumerate(spec.values):
        for ci, cell in enumerate(cells):
            cell_rows = [rows[(bi, ci, s)] for s in seeds]
            n = float(len(cell_rows))
            pl = sum(r["path_length"] for r in cell_rows) / n
            mean_pl[(bi, ci)] = pl
            agg_rows.append({
                "beta": beta, "cell": cell, "trials": len(cell_rows),
                "mean_path_length": pl,
                "mean_max_curvature":
                    sum(r["max_curvature"] for r in cell_rows) / n,
                "mean_min_separation":
                    sum(r["min_separation"] for r in cell_rows) / n,
                "left_pass_fraction":
                    sum(1.0 for r in cell_rows if r["passed_left"]) / n,
                "_bi": bi, "_ci": ci,
            })
    with open(spec.output / "aggregate.csv", "w") as fh:
        fh.write("beta,cell,trials,mean_path_length,mean_max_curvature,"
                 "mean_min_separation,left_pass_fraction,"
                 "path_length_pct_increase\n")
        for row in agg_rows:
            bi, ci = row.pop("_bi"), row.pop("_ci")
            if bi == ref_beta:
                pct = ""
            else:
                ref = mean_pl[(ref_beta, ci)]
                pct = repr(100.0 * (row["mean_path_length"] / ref - 1.0))
            fh.write(",".join([repr(row["beta"]), row["cell"],
                               str(row["trials"]),
                               repr(row["mean_path_length"]),
                               repr(row["mean_max_curvature"]),
                               repr(row["mean_min_separation"]),
                               repr(row["left_pass_fraction"]), pct]) + "\n")
    print(f"grid complete: {len(tasks)} trials, "
          f"{len(agg_rows)} aggregate rows -> {spec.output}")
    return EXIT_OK


# -- bifurcation -------------------------------------------------------------

def cmd_bifurcation(args: argparse.Namespace) -> int:
    if args.samples < 50:
        raise ScenarioError(["need at least 50 samples"])
    if not args.u_max > args.u_min:
        raise ScenarioError(["u-max must exceed u-min"])
    if args.d <= 0.0 or args.alpha <= 0.0:
        raise ScenarioError(["d and alpha must be positive"])
    u_values = np.linspace(args.u_min, args.u_max, args.samples)
    diagram = pitchfork_diagram(args.d, args.alpha, u_values, c=args.c)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_diagram_csv(diagram, out / "diagram.csv")
    write_diagram_summary(diagram, out / "summary.json")
    star = "none" if diagram.u_star is None else f"{diagram.u_star:.6g}"
    print(f"bifurcation: {len(diagram.branches)} branches, "
          f"u_star={star} -> {out}")
    return EXIT_OK


# -- serve -------------------------------------------------------------------

def cmd_serve(args: argparse.Namespace) -> int:
    from .service.app import create_app
    from .service.session import validate_live_scenario

    extra = None
    default_name = None
    if args.scenario is not None:
        scn = load_scenario(args.scenario)
        violations = validate_live_scenario(scn)
        if violations:
            raise ScenarioError(violations)
        default_name = scn.name or Path(args.scenario).stem
        extra = {default_name: scn}
    app = create_app(extra_scenarios=extra, log_dir=args.log_dir,
                     default_scenario=default_name)

    # surface bind failures as exit 4 before uvicorn takes over the process
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((args.host, args.port))
    except OSError as exc:
        print(f"cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return EXIT_ENV
    finally:
        probe.close()

    import uvicorn
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opinion-nav",
        description="Opinion-dynamics navigation: trials, sweeps, "
                    "bifurcation data, and the realtime service.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario_required):
        p.add_argument("--scenario", required=scenario_required,
                       help="scenario JSON file")
        p.add_argument("--seed", type=int, default=None,
                       help="override the scenario seed")
        p.add_argument("--dt", type=float, default=None,
                       help="override the integration step (s)")
        p.add_argument("--attention", choices=("hill", "ode"), default=None,
                       help="switch the attention law variant")

    p = sub.add_parser("simulate", help="run one trial and export its data")
    common(p, scenario_required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--beta", default=None,
                   help="override beta (accepts e.g. 'pi/4' or 0.7854)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("grid", help="run the bias-x-prompt trial grid")
    common(p, scenario_required=False)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--betas", default="pi/6,pi/4",
                   help="comma-separated beta values (default pi/6,pi/4)")
    p.add_argument("--seeds", type=int, default=5,
                   help="trials per cell (default 5)")
    p.add_argument("--cells", default=None,
                   help="comma-separated subset like UU,LR (default all 9)")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("bifurcation", help="export a pitchfork diagram")
    p.add_argument("--d", type=float, default=0.1, help="damping (default "
                   "0.1)")
    p.add_argument("--alpha", type=float, default=0.1,
                   help="self-reinforcement gain (default 0.1)")
    p.add_argument("--c", type=float, default=0.0,
                   help="constant unfolding input (default 0)")
    p.add_argument("--u-min", type=float, default=0.0)
    p.add_argument("--u-max", type=float, default=3.0)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_bifurcation)

    p = sub.add_parser("serve", help="run the realtime session server")
    p.add_argument("--scenario", default=None,
                   help="extra scenario file to register and use as default")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8787)
    p.add_argument("--log-dir", default="session-logs",
                   help="where session JSONL logs are flushed "
                        "(default ./session-logs)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalBlowupError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"environment failure: {exc}", file=sys.stderr)
        return EXIT_ENV


if __name__ == "__main__":
    sys.exit(main())
