"""Command-line front end.

Commands: ``plan``, ``compare``, ``vstar`` and ``dump-costtogo``.  Exit
codes: 0 success, 2 configuration or parse error, 3 no feasible path.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from . import astar, bundled, dp, experiment
from .grid import GridSpec
from .heuristics import CruiseData, HeuristicKind
from .io import read_road_csv, read_vehicle_config
from .model import ConfigError, RoadProfileError
from .problem import Problem

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NO_PATH = 3

KMH = 1.0 / 3.6
_SPEED_FIELDS = ("v_min", "v_max", "dv", "v_init", "v_goal")


@dataclass(frozen=True)
class RunConfig:
    road: Optional[Path]
    vehicle: Optional[Path]
    s_start: Optional[float]
    s_goal: Optional[float]
    ds: float
    v_min: float
    v_max: float
    dv: float
    v_init: float
    v_goal: float
    method: str
    heuristic: HeuristicKind
    out_dir: Path

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        speeds = {}
        for name in _SPEED_FIELDS:
            si = getattr(args, name)
            kmh = getattr(args, name + "_kmh")
            if si is not None and kmh is not None:
                raise ConfigError(f"--{name.replace('_', '-')} and its _kmh variant are exclusive")
            if kmh is not None:
                speeds[name] = kmh * KMH
            elif si is not None:
                speeds[name] = si
            else:
                speeds[name] = bundled.DEFAULT_GRID[name]
        for name in ("road", "vehicle"):
            path = getattr(args, name)
            if path is not None and not Path(path).is_file():
                raise ConfigError(f"{name} file not found: {path}")
        return cls(
            road=None if args.road is None else Path(args.road),
            vehicle=None if args.vehicle is None else Path(args.vehicle),
            s_start=args.s_start, s_goal=args.s_goal, ds=args.ds,
            method=getattr(args, "method", "astar"),
            heuristic=HeuristicKind(getattr(args, "heuristic", "pro")),
            out_dir=Path(args.out_dir), **speeds)

    def load(self) -> Problem:
        road = bundled.road() if self.road is None else read_road_csv(self.road)
        params = bundled.vehicle() if self.vehicle is None else read_vehicle_config(self.vehicle)
        spec = GridSpec(
            s_start=road.s_min if self.s_start is None else self.s_start,
            s_goal=road.s_max if self.s_goal is None else self.s_goal,
            ds=self.ds, v_min=self.v_min, v_max=self.v_max, dv=self.dv,
            v_init=self.v_init, v_goal=self.v_goal)
        return Problem(spec, params, road)


def _fmt(x: float) -> str:
    return repr(float(x))


def write_trajectory(result: astar.PlanResult, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("s_m,v_mps,t_s,energy_J\n")
        for pt in result.trajectory:
            fh.write(",".join(_fmt(x) for x in (pt.s, pt.v, pt.t, pt.energy)) + "\n")


def cmd_plan(cfg: RunConfig) -> int:
    problem = cfg.load()
    if cfg.method == "dp":
        result = dp.extract_trajectory(dp.solve(problem), problem)
    else:
        result = astar.plan(problem, cfg.heuristic)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    summary = {
        "method": cfg.method,
        "heuristic": cfg.heuristic.value if cfg.method == "astar" else None,
        "found": result.found,
        "total_energy_J": result.total_energy if result.found else None,
        "travel_time_s": result.trajectory[-1].t if result.found else None,
        "nodes_expanded": result.nodes_expanded,
        "nodes_generated": result.nodes_generated,
        "reopen_count": result.reopen_count,
    }
    with open(cfg.out_dir / "summary.json", "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    if not result.found:
        print("no feasible path to the goal", file=sys.stderr)
        return EXIT_NO_PATH
    write_trajectory(result, cfg.out_dir / "trajectory.csv")
    print(f"total energy {result.total_energy / 1e3:.3f} kJ, "
          f"travel time {result.trajectory[-1].t:.2f} s, "
          f"{result.nodes_expanded} nodes expanded")
    return EXIT_OK


def cmd_compare(cfg: RunConfig, include_zero: bool = False) -> int:
    problem = cfg.load()
    kinds = [HeuristicKind.SOA, HeuristicKind.PROPOSED]
    if include_zero:
        kinds.insert(0, HeuristicKind.ZERO)
    try:
        report = experiment.compare(problem, kinds)
    except experiment.NoPathError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NO_PATH
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    text = report.to_text()
    (cfg.out_dir / "report.txt").write_text(text, encoding="utf-8")
    (cfg.out_dir / "report.json").write_text(report.to_json(), encoding="utf-8")
    with open(cfg.out_dir / "explored.csv", "w", encoding="utf-8", newline="") as fh:
        report.write_explored(fh)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_vstar(vehicle: Optional[Path], v_min: float, v_max: float) -> int:
    params = bundled.vehicle() if vehicle is None else read_vehicle_config(vehicle)
    cd = CruiseData.build(params, bundled.road(), v_min, v_max)
    raw = (params.P_tot / params.drag_factor) ** (1.0 / 3.0)
    if params.P_tot == 0:
        print("warning: zero auxiliary/operational power, virtual force is pure drag; "
              f"optimum clamps to v_min={v_min} m/s")
    elif raw != cd.v_star:
        print(f"note: unconstrained optimum {raw:.3f} m/s clamped to [{v_min}, {v_max}]")
    print(f"v* = {cd.v_star:.3f} m/s ({cd.v_star * 3.6:.2f} km/h)")
    print(f"F_v_min = {cd.F_v_min:.3f} N")
    return EXIT_OK


def cmd_dump_costtogo(cfg: RunConfig, output: Optional[Path]) -> int:
    problem = cfg.load()
    table = dp.solve(problem)
    target = output if output is not None else cfg.out_dir / "costtogo.csv"
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="") as fh:
        dp.write_cost_to_go(table, problem, fh)
    start = problem.spec.start
    if math.isinf(table.cost_to_go(start)):
        print("no feasible path from the start node", file=sys.stderr)
        return EXIT_NO_PATH
    return EXIT_OK


def _add_grid_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--road", help="road profile CSV (s_m,elevation_m); bundled hill if omitted")
    p.add_argument("--vehicle", help="vehicle JSON config; bundled EV if omitted")
    p.add_argument("--s-start", type=float, help="start distance [m] (default: road start)")
    p.add_argument("--s-goal", type=float, help="goal distance [m] (default: road end)")
    p.add_argument("--ds", type=float, default=bundled.DEFAULT_GRID["ds"], help="distance step [m]")
    for name in _SPEED_FIELDS:
        flag = name.replace("_", "-")
        p.add_argument(f"--{flag}", type=float, dest=name,
                       help=f"{name} [m/s] (default {bundled.DEFAULT_GRID[name]})")
        p.add_argument(f"--{flag}-kmh", type=float, dest=name + "_kmh", help=f"{name} [km/h]")
    p.add_argument("--out-dir", default="out", help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ecoplan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="plan an energy-optimal velocity trajectory")
    _add_grid_args(p)
    p.add_argument("--method", choices=["dp", "astar"], default="astar")
    p.add_argument("--heuristic", choices=[k.value for k in HeuristicKind], default="pro")

    p = sub.add_parser("compare", help="DP vs A* heuristic comparison report")
    _add_grid_args(p)
    p.add_argument("--include-zero", action="store_true", help="also run A* with h = 0")

    p = sub.add_parser("vstar", help="print the optimal cruising velocity")
    p.add_argument("--vehicle", help="vehicle JSON config; bundled EV if omitted")
    p.add_argument("--v-min", type=float, default=bundled.DEFAULT_GRID["v_min"])
    p.add_argument("--v-max", type=float, default=bundled.DEFAULT_GRID["v_max"])

    p = sub.add_parser("dump-costtogo", help="write the DP cost-to-go table as CSV")
    _add_grid_args(p)
    p.add_argument("--output", help="CSV path (default OUT_DIR/costtogo.csv)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "vstar":
            if args.vehicle is not None and not Path(args.vehicle).is_file():
                raise ConfigError(f"vehicle file not found: {args.vehicle}")
            return cmd_vstar(None if args.vehicle is None else Path(args.vehicle),
                             args.v_min, args.v_max)
        cfg = RunConfig.from_args(args)
        if args.command == "plan":
            return cmd_plan(cfg)
        if args.command == "compare":
            return cmd_compare(cfg, include_zero=args.include_zero)
        return cmd_dump_costtogo(cfg, None if args.output is None else Path(args.output))
    except (ConfigError, RoadProfileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
