"""Cycle energy accounting and the endurance gain over hovering at the centroid."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidParameterError
from .link import path_loss_db
from .power import PowerModel, hover_power, propulsion_power

HOVER_SECONDS = 1.0  # dwell per cycle vertex, stands in for the direction change


@dataclass(frozen=True)
class EnduranceReport:
    cycle_length: float             # m
    cycle_time: float               # s
    cycle_energy: float             # J
    avg_power: float                # W
    hover_power: float              # W
    gain: float                     # %
    hover_seconds_per_cycle: float  # s
    min_snr_margin: float = math.nan  # dB, filled in by evaluate()

    def to_json(self) -> dict:
        return asdict(self)


class LinkMargin(NamedTuple):
    min_snr_margin: float
    worst_point: np.ndarray   # (3,)
    worst_fap: int


def gain_percent(hover: float, avg: float) -> float:
    return 100.0 * (hover / avg - 1.0)


def cycle_stats(plan, model: PowerModel, hover_seconds: float = HOVER_SECONDS) -> EnduranceReport:
    cyc = plan.cycle
    legs = np.linalg.norm(np.diff(cyc, axis=0), axis=1)
    length = float(legs.sum())
    hovers = (len(cyc) - 1) * hover_seconds
    p_hover = hover_power(model)

    travel = length / plan.cruise_speed if length > 0 else 0.0
    energy = travel * propulsion_power(model, plan.cruise_speed) + hovers * p_hover
    cycle_time = travel + hovers
    avg = energy / cycle_time if cycle_time > 0 else p_hover
    return EnduranceReport(
        cycle_length=length,
        cycle_time=cycle_time,
        cycle_energy=energy,
        avg_power=avg,
        hover_power=p_hover,
        gain=gain_percent(p_hover, avg),
        hover_seconds_per_cycle=hovers,
    )


def endurance_gain(plan, model: PowerModel) -> float:
    """Percent flight-time increase over hovering at Pc.

    Battery capacity cancels in the ratio of endurances, so only the average
    powers matter.
    """
    return cycle_stats(plan, model).gain


def sample_cycle(plan, sample_step: float) -> np.ndarray:
    """3-D points along the cycle, no more than ``sample_step`` apart."""
    if not sample_step > 0:
        raise InvalidParameterError("sample_step must be > 0")
    cyc = plan.cycle
    chunks = [cyc[:1]]
    for a, b in zip(cyc[:-1], cyc[1:]):
        n = int(math.ceil(np.linalg.norm(b - a) / sample_step))
        if n == 0:
            continue
        t = np.arange(1, n + 1)[:, None] / n
        chunks.append(a + t * (b - a))
    xy = np.concatenate(chunks)
    return np.column_stack([xy, np.full(len(xy), plan.altitude)])


def verify_link_budget(plan, scenario, sample_step: float = 0.1) -> LinkMargin:
    """Smallest ``snr - target_snr`` over sampled cycle points and served FAPs."""
    samples = sample_cycle(plan, sample_step)
    radio = scenario.radio
    worst = LinkMargin(math.inf, samples[0], -1)
    for target in plan.per_fap_targets:
        fap = np.asarray(scenario.faps[target.fap].position)
        d = np.maximum(np.linalg.norm(samples - fap, axis=1), 1e-12)
        pl = 20.0 * np.log10(d) + path_loss_db(radio.carrier_frequency, 1.0)
        margin = plan.tx_power - pl - radio.noise_power - target.target_snr
        j = int(np.argmin(margin))
        if margin[j] < worst.min_snr_margin:
            worst = LinkMargin(float(margin[j]), samples[j], target.fap)
    return worst


def grid_tolerance_db(plan) -> float:
    """Path-loss change across one voxel diagonal at the tightest planned range."""
    r = min(t.range for t in plan.per_fap_targets)
    diag = plan.resolution * math.sqrt(3.0)
    return 20.0 * math.log10((r + diag) / r)


def evaluate(plan, scenario, model: PowerModel, sample_step: float = 0.1) -> EnduranceReport:
    """Endurance report with the link-budget margin filled in."""
    report = cycle_stats(plan, model)
    margin = verify_link_budget(plan, scenario, sample_step)
    return EnduranceReport(**{**asdict(report), "min_snr_margin": margin.min_snr_margin})

