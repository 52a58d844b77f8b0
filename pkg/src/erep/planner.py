"""Energy-aware relay positioning: from FAP positions to a cyclic trajectory.

The planner raises a common transmit power until the FAP range spheres
overlap, picks the widest horizontal slice of the overlap, and flies a
five-waypoint cycle ``[Pc, P1, P2, Pc, P3, P4, Pc]`` through its centroid
at the power-minimising speed.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import geometry
from .errors import InvalidParameterError, NoIntersectionError, PowerLimitError
from .link import RadioConfig, max_range, target_mcs
from .power import UavPhysicalParams, derive_power_model, optimal_speed

# transmit power used by the reference evaluation; escalating past it is legal but noteworthy
REFERENCE_TX_POWER = 20.0  # dBm
TIE_TOL = 1e-9


class EscalationWarning(UserWarning):
    """Transmit power had to exceed the reference operating point."""


@dataclass(frozen=True)
class Fap:
    position: tuple   # (x, y, z) m
    demand: float     # bit/s

    def __post_init__(self):
        pos = tuple(float(v) for v in self.position)
        if len(pos) != 3 or not all(math.isfinite(v) for v in pos):
            raise InvalidParameterError(f"FAP position must be three finite numbers, got {self.position!r}")
        if pos[2] < 0:
            raise InvalidParameterError(f"FAP altitude must be >= 0, got {pos[2]}")
        if not (math.isfinite(self.demand) and self.demand >= 0):
            raise InvalidParameterError(f"FAP demand must be >= 0, got {self.demand!r}")
        object.__setattr__(self, "position", pos)


@dataclass(frozen=True)
class Scenario:
    faps: tuple
    radio: RadioConfig = field(default_factory=RadioConfig)
    uav: UavPhysicalParams = field(default_factory=UavPhysicalParams)

    def __post_init__(self):
        faps = tuple(self.faps)
        object.__setattr__(self, "faps", faps)
        if len(faps) < 2:
            raise InvalidParameterError("a scenario needs at least two FAPs")
        if len({f.position for f in faps}) != len(faps):
            raise InvalidParameterError("FAP positions must be distinct")
        if len(self.active_indices) < 2:
            raise InvalidParameterError("at least two FAPs must offer traffic")

    @property
    def active_indices(self):
        """FAPs with non-zero demand; only these shape the relay region."""
        return [i for i, f in enumerate(self.faps) if f.demand > 0]

    @property
    def positions(self) -> np.ndarray:
        return np.array([f.position for f in self.faps])


class FapTarget(NamedTuple):
    fap: int
    mcs_index: int
    target_snr: float   # dB
    range: float        # m


class Candidate(NamedTuple):
    variant: int
    waypoints: np.ndarray   # (4, 2), already in flight order P1..P4
    length: float


@dataclass(frozen=True, eq=False)
class TrajectoryPlan:
    tx_power: float
    altitude: float
    centroid: np.ndarray
    waypoints: np.ndarray
    cruise_speed: float
    per_fap_targets: tuple
    selected_variant: int
    resolution: float
    candidate_lengths: tuple = ()

    @property
    def cycle(self) -> np.ndarray:
        """Closed waypoint sequence Pc, P1, P2, Pc, P3, P4, Pc as a (7, 2) array."""
        pc = self.centroid
        p1, p2, p3, p4 = self.waypoints
        return np.array([pc, p1, p2, pc, p3, p4, pc])

    @property
    def cycle_length(self) -> float:
        return cycle_length(self.cycle)

    def cycle_3d(self) -> np.ndarray:
        cyc = self.cycle
        return np.column_stack([cyc, np.full(len(cyc), self.altitude)])

    def to_json(self) -> dict:
        return {
            "tx_power_dbm": self.tx_power,
            "altitude_m": self.altitude,
            "pc": [float(v) for v in self.centroid],
            "waypoints": [[float(v) for v in w] for w in self.waypoints],
            "cycle": [[float(v) for v in w] for w in self.cycle],
            "cruise_speed_mps": self.cruise_speed,
            "variant": self.selected_variant,
            "resolution_m": self.resolution,
            "per_fap": [{"fap": t.fap, "mcs": t.mcs_index, "snr_db": t.target_snr, "range_m": t.range}
                        for t in self.per_fap_targets],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TrajectoryPlan":
        try:
            targets = tuple(FapTarget(int(t.get("fap", i)), int(t["mcs"]), float(t["snr_db"]), float(t["range_m"]))
                            for i, t in enumerate(data["per_fap"]))
            waypoints = np.array(data["waypoints"], dtype=float)
            if waypoints.shape != (4, 2):
                raise ValueError(f"waypoints must be 4 (x, y) pairs, got shape {waypoints.shape}")
            return cls(
                tx_power=float(data["tx_power_dbm"]),
                altitude=float(data["altitude_m"]),
                centroid=np.array(data["pc"], dtype=float),
                waypoints=waypoints,
                cruise_speed=float(data["cruise_speed_mps"]),
                per_fap_targets=targets,
                selected_variant=int(data["variant"]),
                resolution=float(data.get("resolution_m", 0.5)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidParameterError(f"malformed plan JSON: {exc}") from exc


def cycle_length(cycle) -> float:
    c = np.asarray(cycle, dtype=float)
    return float(np.linalg.norm(np.diff(c, axis=0), axis=1).sum())


def order_waypoints(points, pc) -> np.ndarray:
    """P1 is the point with max y (then max x); the rest follow clockwise around ``pc``."""
    p = np.asarray(points, dtype=float)
    first = max(range(len(p)), key=lambda i: (p[i, 1], p[i, 0], -i))
    angles = np.arctan2(p[:, 1] - pc[1], p[:, 0] - pc[0])
    rest = [i for i in range(len(p)) if i != first]
    # clockwise = decreasing angle, measured from P1
    rest.sort(key=lambda i: ((angles[first] - angles[i]) % (2 * math.pi), i))
    return p[[first] + rest]


def candidate_trajectories(slice_points, pc) -> list:
    """The three candidate waypoint sets (variants 1, 2, 3) and their cycle lengths."""
    pc = np.asarray(pc, dtype=float)
    raw = [
        geometry.extreme_points(slice_points, geometry.X_AT_Y_EXTREMES),
        geometry.extreme_points(slice_points, geometry.Y_AT_X_EXTREMES),
        geometry.extreme_points(slice_points, geometry.THROUGH_CENTROID, center=pc),
    ]
    out = []
    for variant, pts in enumerate(raw, start=1):
        wp = order_waypoints(pts, pc)
        length = cycle_length([pc, wp[0], wp[1], pc, wp[2], wp[3], pc])
        out.append(Candidate(variant, wp, length))
    return out


def select_trajectory(candidates) -> Candidate:
    """Longest candidate; near-equal lengths resolve to the lowest variant."""
    best = candidates[0]
    for cand in candidates[1:]:
        if cand.length > best.length + TIE_TOL:
            best = cand
    return best


def _avoid_faps(point, toward, altitude, fap_positions, step):
    p3 = np.array([point[0], point[1], altitude])
    if not np.any(np.all(np.abs(fap_positions - p3) < 1e-9, axis=1)):
        return point
    direction = np.asarray(toward, dtype=float) - point
    norm = np.linalg.norm(direction)
    if norm == 0:
        return point
    return point + direction / norm * min(step, norm)


def escalate_tx_power(scenario: Scenario, targets, resolution):
    """Lowest transmit power on the step grid whose range spheres share a lattice point.

    Returns ``(tx_power, ranges, region)``.
    """
    radio = scenario.radio
    active = scenario.active_indices
    centers = scenario.positions[active]
    snrs = np.array([t.min_snr for t in targets])
    k = 0
    while True:
        pt = radio.tx_power_initial + k * radio.tx_power_step
        if pt > radio.tx_power_max + 1e-9:
            raise NoIntersectionError(
                f"FAP ranges do not intersect at the maximum transmit power {radio.tx_power_max:g} dBm")
        ranges = np.array([max_range(pt, radio.carrier_frequency, radio.noise_power, s) for s in snrs])
        region = geometry.intersect_spheres(centers, ranges, resolution)
        if not region.empty:
            if pt > REFERENCE_TX_POWER:
                warnings.warn(f"transmit power escalated to {pt:g} dBm, above the "
                              f"{REFERENCE_TX_POWER:g} dBm reference operating point", EscalationWarning, stacklevel=3)
            return pt, ranges, region
        k += 1


def plan(scenario: Scenario, resolution: float = 0.5, return_region: bool = False):
    """Plan the relay trajectory for ``scenario``.

    With ``return_region=True`` the voxel region is returned alongside the plan.
    """
    active = scenario.active_indices
    table = scenario.radio.mcs_table
    targets = [target_mcs(scenario.faps[i].demand, len(active), table) for i in active]

    model = derive_power_model(scenario.uav)
    cruise, cruise_power = optimal_speed(model)
    if cruise_power > model.max_power:
        raise PowerLimitError(f"cruise power {cruise_power:.1f} W exceeds the {model.max_power:g} W limit")

    tx_power, ranges, region = escalate_tx_power(scenario, targets, resolution)
    best = geometry.best_altitude_slice(region)
    pc = geometry.slice_centroid(best.points)
    candidates = candidate_trajectories(best.points, pc)
    chosen = select_trajectory(candidates)

    fap_pos = scenario.positions[active]
    if np.any(np.all(np.abs(fap_pos - [pc[0], pc[1], best.z]) < 1e-9, axis=1)):
        # centroid on top of a FAP: shift to the nearest free slice point
        d = np.linalg.norm(best.points - pc, axis=1)
        for j in np.argsort(d, kind="stable"):
            cand = best.points[j]
            if not np.any(np.all(np.abs(fap_pos - [cand[0], cand[1], best.z]) < 1e-9, axis=1)):
                pc = cand.copy()
                break
    waypoints = np.array([_avoid_faps(w, pc, best.z, fap_pos, resolution) for w in chosen.waypoints])

    per_fap = tuple(FapTarget(i, t.index, t.min_snr, float(r)) for i, t, r in zip(active, targets, ranges))
    result = TrajectoryPlan(
        tx_power=float(tx_power),
        altitude=float(best.z),
        centroid=pc,
        waypoints=waypoints,
        cruise_speed=float(cruise),
        per_fap_targets=per_fap,
        selected_variant=chosen.variant,
        resolution=float(resolution),
        candidate_lengths=tuple(c.length for c in candidates),
    )
    return (result, region) if return_region else result
