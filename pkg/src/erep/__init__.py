"""Energy-aware relay positioning (EREP) for a rotary-wing flying relay UAV."""

from .endurance import EnduranceReport, cycle_stats, endurance_gain, evaluate, verify_link_budget
from .errors import (DomainError, EmptyRegionError, EREPError, InfeasibleDemandError, InvalidParameterError,
                     NoIntersectionError, PowerLimitError, SeparationError)
from .geometry import best_altitude_slice, extreme_points, intersect_spheres, slice_centroid
from .link import DEFAULT_MCS_TABLE, McsRow, McsTable, RadioConfig, max_range, path_loss_db, snr_db, target_mcs
from .planner import Fap, Scenario, TrajectoryPlan, candidate_trajectories, plan, select_trajectory
from .power import (PowerModel, UavPhysicalParams, derive_power_model, hover_power, optimal_speed,
                    power_curve, propulsion_power)
from .scenarios import SweepConfig, load_scenario, random_scenario, save_scenario, table4_scenarios

__version__ = "0.1.0"
