"""Command-line front end.

Exit codes: 0 success, 1 infeasible scenario, 2 bad input or I/O failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import reporting
from .endurance import evaluate, verify_link_budget
from .errors import EREPError, InfeasibleScenarioError
from .planner import TrajectoryPlan, plan
from .power import derive_power_model, power_curve
from .scenarios import Region, SweepConfig, load_scenario, radio_from_json, uav_from_json
from .sweep import format_table4, run_sweep, table4

log = logging.getLogger("erep")


def _write(text: str, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _read_json(path):
    with open(path) as fh:
        return json.load(fh)


def cmd_power_curve(args):
    data = _read_json(args.params) if args.params else {}
    uav = uav_from_json(data.get("uav", data) if isinstance(data, dict) else data)
    speeds, powers = power_curve(derive_power_model(uav), args.step)
    _write(reporting.power_curve_csv(speeds, powers), args.out)


def cmd_plan(args):
    scenario = load_scenario(args.scenario)
    result, region = plan(scenario, args.resolution, return_region=True)
    _write(json.dumps(result.to_json(), indent=2) + "\n", args.out)
    if args.dump_region:
        pts = region.points
        lines = ["x,y,z"] + [f"{x:.4f},{y:.4f},{z:.4f}" for x, y, z in pts]
        Path(args.dump_region).write_text("\n".join(lines) + "\n")


def cmd_verify(args):
    scenario = load_scenario(args.scenario)
    if args.plan:
        p = TrajectoryPlan.from_json(_read_json(args.plan))
    else:
        p = plan(scenario, args.resolution)
    report = evaluate(p, scenario, derive_power_model(scenario.uav), args.sample_step)
    margin = verify_link_budget(p, scenario, args.sample_step)
    body = report.to_json()
    body["worst_point"] = [float(v) for v in margin.worst_point]
    body["worst_fap"] = margin.worst_fap
    _write(json.dumps(body, indent=2) + "\n", args.out)


def cmd_sweep(args):
    counts = tuple(int(c) for c in args.counts.split(",") if c.strip())
    config = SweepConfig(counts, args.runs, Region(), args.seed)
    radio = uav = None
    if args.config:
        data = _read_json(args.config)
        radio = radio_from_json(data.get("radio"))
        uav = uav_from_json(data.get("uav"))
    records = run_sweep(config, radio, uav, args.resolution, workers=args.workers)
    _write(reporting.emit(reporting.summarize(records), args.format, summary=True), args.out)
    if args.records:
        reporting.emit(records, args.format, args.records)


def cmd_table4(args):
    _write(format_table4(table4(resolution=args.resolution)) + "\n", args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="erep", description="Energy-aware relay positioning for a flying relay UAV.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log planner details to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("power-curve", help="propulsion power vs. speed as CSV (speed_mps,power_w)")
    p.add_argument("--params", help="UAV parameter JSON (bare object or scenario with a 'uav' key); "
                                    "default: reference UAV")
    p.add_argument("--step", type=float, default=0.1, help="speed step in m/s (default: 0.1)")
    p.add_argument("--out", help="output CSV (default: stdout)")
    p.set_defaults(func=cmd_power_curve)

    p = sub.add_parser("plan", help="plan the relay trajectory for a scenario")
    p.add_argument("--scenario", required=True, help="scenario JSON")
    p.add_argument("--resolution", type=float, default=0.5, help="voxel size in m (default: 0.5)")
    p.add_argument("--out", help="plan JSON (default: stdout)")
    p.add_argument("--dump-region", metavar="CSV", help="also write the voxel region as x,y,z CSV")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("verify", help="endurance report and link-budget margin as JSON")
    p.add_argument("--scenario", required=True, help="scenario JSON")
    p.add_argument("--plan", help="plan JSON from 'erep plan' (default: plan the scenario now)")
    p.add_argument("--resolution", type=float, default=0.5, help="voxel size in m when planning (default: 0.5)")
    p.add_argument("--sample-step", type=float, default=0.1, help="link check spacing in m (default: 0.1)")
    p.add_argument("--out", help="report JSON (default: stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="random-scenario sweep; writes per-count percentile summary")
    p.add_argument("--counts", default="2,5,10,20", help="comma-separated FAP counts (default: 2,5,10,20)")
    p.add_argument("--runs", type=int, default=160, help="scenarios per FAP count (default: 160)")
    p.add_argument("--seed", type=int, default=0, help="master seed (default: 0)")
    p.add_argument("--resolution", type=float, default=0.5, help="voxel size in m (default: 0.5)")
    p.add_argument("--config", help="JSON with optional 'radio' and 'uav' objects")
    p.add_argument("--workers", type=int, default=1, help="worker processes (default: 1)")
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="output format (default: csv)")
    p.add_argument("--out", default="-", help="summary file (default: stdout)")
    p.add_argument("--records", help="also write per-scenario records here")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("table4", help="gains for the six fixed close/apart scenarios next to published values")
    p.add_argument("--resolution", type=float, default=0.5, help="voxel size in m (default: 0.5)")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_table4)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        args.func(args)
    except InfeasibleScenarioError as exc:
        print(f"erep: infeasible: {exc}", file=sys.stderr)
        return 1
    except (EREPError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"erep: error: {exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
