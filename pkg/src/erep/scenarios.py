"""Evaluation inputs: seeded random scenarios, the fixed reference scenarios,
and the scenario JSON format."""
from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .errors import InvalidParameterError, SeparationError
from .link import DEFAULT_MCS_TABLE, McsTable, RadioConfig
from .planner import Fap, Scenario
from .power import UavPhysicalParams

# 65% of the 780 Mbit/s top rate, rounded to 500 Mbit/s as in the reference setup
TOTAL_OFFERED_LOAD = 500e6
MIN_SEPARATION = 1.0
MAX_REDRAWS = 10_000


@dataclass(frozen=True)
class Region:
    x: tuple = (0.0, 50.0)
    y: tuple = (0.0, 50.0)
    z: tuple = (0.0, 20.0)

    def __post_init__(self):
        for name in ("x", "y", "z"):
            lo, hi = getattr(self, name)
            if not hi > lo:
                raise InvalidParameterError(f"region {name}-extent must be positive, got {(lo, hi)}")
        if self.z[0] < 0:
            raise InvalidParameterError("region must lie at z >= 0")

    @property
    def low(self):
        return np.array([self.x[0], self.y[0], self.z[0]])

    @property
    def high(self):
        return np.array([self.x[1], self.y[1], self.z[1]])


@dataclass(frozen=True)
class SweepConfig:
    fap_counts: tuple = (2, 5, 10, 20)
    runs_per_count: int = 160
    region: Region = Region()
    master_seed: int = 0
    total_offered: float = TOTAL_OFFERED_LOAD

    def __post_init__(self):
        if self.runs_per_count < 1:
            raise InvalidParameterError("runs_per_count must be >= 1")
        if any(n < 2 for n in self.fap_counts):
            raise InvalidParameterError("every FAP count must be >= 2")

    def seed_for(self, n_faps: int, run: int):
        # a SeedSequence over the triple keeps every scenario independent of evaluation order
        return [int(self.master_seed), int(n_faps), int(run)]


def equal_demands(n_faps: int, total_offered: float = TOTAL_OFFERED_LOAD):
    return [total_offered / n_faps] * n_faps


def random_scenario(n_faps: int, region: Region = Region(), seed=0,
                    radio: RadioConfig | None = None, uav: UavPhysicalParams | None = None,
                    total_offered: float = TOTAL_OFFERED_LOAD) -> Scenario:
    """FAPs drawn uniformly in ``region``, at least 1 m apart, sharing the offered load equally."""
    if n_faps < 2:
        raise InvalidParameterError("n_faps must be >= 2")
    rng = np.random.default_rng(seed)
    lo, hi = region.low, region.high
    placed = []
    attempts = 0
    while len(placed) < n_faps:
        if attempts >= MAX_REDRAWS:
            raise SeparationError(
                f"could not place {n_faps} FAPs {MIN_SEPARATION} m apart after {MAX_REDRAWS} draws")
        attempts += 1
        p = rng.uniform(lo, hi)
        if all(np.linalg.norm(p - q) >= MIN_SEPARATION for q in placed):
            placed.append(p)
    demands = equal_demands(n_faps, total_offered)
    return Scenario(tuple(Fap(tuple(p), d) for p, d in zip(placed, demands)),
                    radio or RadioConfig(), uav or UavPhysicalParams())


TABLE4 = (
    ("2 FAPs close", [(0, 0, 10), (1, 0, 10)], 26.0),
    ("2 FAPs apart", [(0, 0, 10), (58, 0, 10)], 7.0),
    ("5 FAPs close", [(19, 40, 12), (1, 0, 10), (7, 17, 17), (9, 16, 7), (10, 36, 13)], 19.0),
    ("5 FAPs apart", [(30, 32, 2), (3, 45, 0), (43, 4, 6), (23, 3, 7), (2, 16, 15)], 4.0),
    ("10 FAPs close", [(20, 25, 18), (9, 20, 17), (20, 13, 5), (24, 35, 13), (20, 40, 7),
                       (35, 42, 12), (41, 30, 15), (40, 25, 1), (14, 43, 17), (29, 19, 13)], 20.0),
    ("10 FAPs apart", [(41, 48, 14), (44, 3, 15), (16, 4, 3), (11, 9, 2), (40, 36, 5),
                       (24, 35, 15), (29, 40, 8), (46, 32, 14), (3, 11, 16), (25, 27, 6)], 5.0),
)


def table4_scenarios(radio: RadioConfig | None = None, uav: UavPhysicalParams | None = None):
    """The six fixed close/apart scenarios with equal demand split."""
    out = []
    for _, coords, _ in TABLE4:
        demands = equal_demands(len(coords))
        out.append(Scenario(tuple(Fap(c, d) for c, d in zip(coords, demands)),
                            radio or RadioConfig(), uav or UavPhysicalParams()))
    return out


# JSON schema ----------------------------------------------------------------

UAV_KEYS = {
    "weight_n": "weight",
    "rotor_radius_m": "rotor_radius",
    "blade_angular_velocity_rad_s": "blade_angular_velocity",
    "induced_power_correction": "induced_power_correction",
    "profile_drag_coefficient": "profile_drag_coefficient",
    "fuselage_drag_ratio": "fuselage_drag_ratio",
    "rotor_solidity": "rotor_solidity",
    "air_density_kg_m3": "air_density",
    "max_speed_mps": "max_speed",
    "max_power_w": "max_power",
    "induced_exponent": "induced_exponent",
}


def uav_from_json(data: dict | None) -> UavPhysicalParams:
    data = data or {}
    unknown = set(data) - set(UAV_KEYS)
    if unknown:
        raise InvalidParameterError(f"unknown uav keys: {sorted(unknown)}")
    try:
        kwargs = {UAV_KEYS[k]: float(v) for k, v in data.items()}
    except (TypeError, ValueError) as exc:
        raise InvalidParameterError(f"uav parameters must be numbers: {exc}") from exc
    return UavPhysicalParams(**kwargs).validate()


def uav_to_json(uav: UavPhysicalParams) -> dict:
    inverse = {v: k for k, v in UAV_KEYS.items()}
    return {inverse[f.name]: getattr(uav, f.name) for f in fields(uav)}


def radio_from_json(data: dict | None) -> RadioConfig:
    data = dict(data or {})
    table = data.pop("mcs_table", None)
    mapping = {"freq_mhz": ("carrier_frequency", 1e6), "n0_dbm": ("noise_power", 1.0),
               "pt0_dbm": ("tx_power_initial", 1.0), "pt_step_db": ("tx_power_step", 1.0),
               "pt_max_dbm": ("tx_power_max", 1.0)}
    unknown = set(data) - set(mapping)
    if unknown:
        raise InvalidParameterError(f"unknown radio keys: {sorted(unknown)}")
    try:
        kwargs = {mapping[k][0]: float(v) * mapping[k][1] for k, v in data.items()}
    except (TypeError, ValueError) as exc:
        raise InvalidParameterError(f"radio parameters must be numbers: {exc}") from exc
    kwargs["mcs_table"] = McsTable.from_json(table) if table is not None else DEFAULT_MCS_TABLE
    return RadioConfig(**kwargs)


def radio_to_json(radio: RadioConfig) -> dict:
    return {"freq_mhz": radio.carrier_frequency / 1e6, "n0_dbm": radio.noise_power,
            "pt0_dbm": radio.tx_power_initial, "pt_step_db": radio.tx_power_step,
            "pt_max_dbm": radio.tx_power_max, "mcs_table": radio.mcs_table.to_json()}


def scenario_from_json(data: dict) -> Scenario:
    try:
        faps = tuple(Fap((f["x"], f["y"], f["z"]), float(f["demand_mbps"]) * 1e6) for f in data["faps"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidParameterError(f"malformed FAP list: {exc}") from exc
    return Scenario(faps, radio_from_json(data.get("radio")), uav_from_json(data.get("uav")))


def scenario_to_json(scenario: Scenario) -> dict:
    return {
        "faps": [{"x": f.position[0], "y": f.position[1], "z": f.position[2], "demand_mbps": f.demand / 1e6}
                 for f in scenario.faps],
        "radio": radio_to_json(scenario.radio),
        "uav": uav_to_json(scenario.uav),
    }


def load_scenario(path) -> Scenario:
    with open(path) as fh:
        return scenario_from_json(json.load(fh))


def save_scenario(scenario: Scenario, path):
    Path(path).write_text(json.dumps(scenario_to_json(scenario), indent=2) + "\n")
