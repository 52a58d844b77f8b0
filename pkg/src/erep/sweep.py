"""Scenario sweeps and the fixed-scenario gain table."""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from typing import NamedTuple

from .endurance import EnduranceReport, evaluate
from .errors import InfeasibleDemandError, InfeasibleScenarioError, NoIntersectionError, PowerLimitError
from .link import RadioConfig
from .planner import EscalationWarning, Scenario, TrajectoryPlan, plan
from .power import UavPhysicalParams, derive_power_model
from .reporting import ScenarioRecord
from .scenarios import TABLE4, SweepConfig, random_scenario, table4_scenarios

STATUS = {
    InfeasibleDemandError: "infeasible-demand",
    NoIntersectionError: "no-intersection",
    PowerLimitError: "power-limit",
}


class Outcome(NamedTuple):
    scenario: Scenario
    plan: TrajectoryPlan | None
    report: EnduranceReport | None
    status: str


def evaluate_scenario(scenario: Scenario, resolution: float = 0.5, sample_step: float = 0.1) -> Outcome:
    """Plan and score one scenario; infeasible scenarios come back with a status instead of raising."""
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", EscalationWarning)
            p = plan(scenario, resolution)
    except InfeasibleScenarioError as exc:
        return Outcome(scenario, None, None, STATUS.get(type(exc), "infeasible"))
    report = evaluate(p, scenario, derive_power_model(scenario.uav), sample_step)
    return Outcome(scenario, p, report, "ok")


def _run_one(args):
    config, n, run, radio, uav, resolution, sample_step = args
    scenario = random_scenario(n, config.region, config.seed_for(n, run), radio, uav, config.total_offered)
    out = evaluate_scenario(scenario, resolution, sample_step)
    if out.status == "ok":
        rec = ScenarioRecord(n, run, out.report.gain, out.plan.tx_power, out.report.cycle_length)
    else:
        rec = ScenarioRecord(n, run, math.nan, math.nan, math.nan, out.status)
    return rec, out


def run_sweep(config: SweepConfig = SweepConfig(), radio: RadioConfig | None = None,
              uav: UavPhysicalParams | None = None, resolution: float = 0.5,
              sample_step: float = 0.1, workers: int = 1, keep_outcomes: bool = False):
    """Evaluate ``runs_per_count`` random scenarios for every FAP count.

    Returns the records ordered by ``(fap_count, run)``; with
    ``keep_outcomes=True`` also the matching list of :class:`Outcome`.
    """
    radio = radio or RadioConfig()
    uav = uav or UavPhysicalParams()
    jobs = [(config, n, run, radio, uav, resolution, sample_step)
            for n in config.fap_counts for run in range(config.runs_per_count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=8))
    else:
        results = [_run_one(job) for job in jobs]
    results.sort(key=lambda pair: (pair[0].fap_count, pair[0].run))
    records = [r for r, _ in results]
    if not keep_outcomes:
        return records
    return records, [o for _, o in results]


class Table4Row(NamedTuple):
    label: str
    fap_count: int
    published_gain: float
    outcome: Outcome

    @property
    def gain(self) -> float:
        return self.outcome.report.gain if self.outcome.report else math.nan


def table4(radio: RadioConfig | None = None, uav: UavPhysicalParams | None = None,
           resolution: float = 0.5, sample_step: float = 0.1):
    rows = []
    for (label, coords, published), scenario in zip(TABLE4, table4_scenarios(radio, uav)):
        rows.append(Table4Row(label, len(coords), published, evaluate_scenario(scenario, resolution, sample_step)))
    return rows


def format_table4(rows) -> str:
    lines = [f"{'scenario':<15} {'FAPs':>4} {'Pt dBm':>7} {'cycle m':>8} {'gain %':>7} {'published %':>12}"]
    for row in rows:
        o = row.outcome
        if o.status == "ok":
            lines.append(f"{row.label:<15} {row.fap_count:>4} {o.plan.tx_power:>7.0f} "
                         f"{o.report.cycle_length:>8.2f} {o.report.gain:>7.2f} {row.published_gain:>12.0f}")
        else:
            lines.append(f"{row.label:<15} {row.fap_count:>4} {o.status:>24} {row.published_gain:>12.0f}")
    return "\n".join(lines)
