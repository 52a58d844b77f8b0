"""Rotary-wing propulsion power model.

The flight power at horizontal speed ``V`` is the sum of a blade-profile,
an induced and a parasite term (Zeng, Xu & Zhang, 2019)::

    P(V) = Pb (1 + 3 V^2 / Utip^2)
         + Pind (sqrt(1 + V^4 / (4 v0^4)) - V^2 / (2 v0^2)) ** e
         + 1/2 d0 rho s A V^3

with ``e = 1/2`` in the original model. ``e`` is exposed as
``induced_exponent`` so the 3/2 variant can be evaluated as well.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, InvalidParameterError

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class UavPhysicalParams:
    """Raw airframe/rotor constants. Defaults reproduce the evaluation UAV."""

    weight: float = 20.0                     # N
    rotor_radius: float = 0.4                # m
    blade_angular_velocity: float = 300.0    # rad/s
    induced_power_correction: float = 0.1
    profile_drag_coefficient: float = 0.012
    fuselage_drag_ratio: float = 0.6
    rotor_solidity: float = 0.05
    air_density: float = 1.225               # kg/m^3
    max_speed: float = 30.0                  # m/s
    max_power: float = 500.0                 # W
    induced_exponent: float = 0.5

    def validate(self):
        positive = ("weight", "rotor_radius", "blade_angular_velocity",
                    "air_density", "max_speed", "max_power", "induced_exponent")
        for name in positive:
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidParameterError(f"{name} must be > 0, got {value!r}")
        for name in ("induced_power_correction", "profile_drag_coefficient",
                     "fuselage_drag_ratio", "rotor_solidity"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise InvalidParameterError(f"{name} must be >= 0, got {value!r}")
        return self


@dataclass(frozen=True)
class PowerModel:
    blade_profile_hover: float      # Pb, W
    induced_hover: float            # Pind, W
    tip_speed: float                # Utip, m/s
    induced_velocity_hover: float   # v0, m/s
    rotor_disc_area: float          # A, m^2
    parasite_coefficient: float     # 1/2 d0 rho s A, W s^3/m^3
    max_speed: float
    max_power: float
    induced_exponent: float = 0.5

    def __post_init__(self):
        for name in ("blade_profile_hover", "induced_hover", "tip_speed",
                     "induced_velocity_hover", "rotor_disc_area", "max_speed",
                     "max_power", "induced_exponent"):
            value = getattr(self, name)
            if not value > 0:
                raise InvalidParameterError(f"{name} must be > 0, got {value!r}")
        if self.parasite_coefficient < 0:
            raise InvalidParameterError("parasite_coefficient must be >= 0")


class OptimalSpeed(NamedTuple):
    speed: float
    power: float


def derive_power_model(params: UavPhysicalParams) -> PowerModel:
    params.validate()
    R = params.rotor_radius
    omega = params.blade_angular_velocity
    rho = params.air_density
    s = params.rotor_solidity
    W = params.weight

    area = math.pi * R ** 2
    blade = params.profile_drag_coefficient / 8.0 * rho * s * area * omega ** 3 * R ** 3
    if blade <= 0:
        raise InvalidParameterError("blade profile power is zero; check delta and s")
    return PowerModel(
        blade_profile_hover=blade,
        induced_hover=(1.0 + params.induced_power_correction) * W ** 1.5 / math.sqrt(2.0 * rho * area),
        tip_speed=omega * R,
        induced_velocity_hover=math.sqrt(W / (2.0 * rho * area)),
        rotor_disc_area=area,
        parasite_coefficient=0.5 * params.fuselage_drag_ratio * rho * s * area,
        max_speed=params.max_speed,
        max_power=params.max_power,
        induced_exponent=params.induced_exponent,
    )


def power_terms(model: PowerModel, speed):
    """Blade-profile, induced and parasite power at ``speed`` (scalar or array)."""
    v = np.asarray(speed, dtype=float)
    v0 = model.induced_velocity_hover
    blade = model.blade_profile_hover * (1.0 + 3.0 * v ** 2 / model.tip_speed ** 2)
    # sqrt(1 + x^2) - x == 1 / (sqrt(1 + x^2) + x); the right form avoids
    # cancellation at high speed
    x = v ** 2 / (2.0 * v0 ** 2)
    induced = model.induced_hover * (1.0 / (np.sqrt(1.0 + x ** 2) + x)) ** model.induced_exponent
    parasite = model.parasite_coefficient * v ** 3
    return blade, induced, parasite


def _check_speed(model, speed):
    v = np.asarray(speed, dtype=float)
    if np.any(~np.isfinite(v)) or np.any(v < 0) or np.any(v > model.max_speed):
        raise DomainError(f"speed must lie in [0, {model.max_speed}] m/s, got {speed!r}")
    return v


def propulsion_power(model: PowerModel, speed):
    """Propulsion power in watts. Accepts a scalar or an array of speeds."""
    v = _check_speed(model, speed)
    total = sum(power_terms(model, v))
    return float(total) if total.ndim == 0 else total


def hover_power(model: PowerModel) -> float:
    return model.blade_profile_hover + model.induced_hover


def power_curve(model: PowerModel, step: float = 0.1):
    """Sampled ``(speeds, powers)`` over ``[0, max_speed]``; the cap is always included."""
    if step <= 0:
        raise InvalidParameterError("step must be > 0")
    n = int(math.floor(model.max_speed / step + 1e-9))
    speeds = np.arange(n + 1) * step
    if model.max_speed - speeds[-1] > 1e-9:
        speeds = np.append(speeds, model.max_speed)
    speeds[-1] = min(speeds[-1], model.max_speed)
    return speeds, propulsion_power(model, speeds)


def _golden_section(f, a, b, tol):
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def optimal_speed(model: PowerModel, scan_step: float = 0.5, tol: float = 1e-4) -> OptimalSpeed:
    """Speed in ``[0, max_speed]`` that minimises propulsion power.

    A coarse scan brackets the minimum, golden-section search refines it.
    When the minimum sits on the speed cap the cap itself is returned.
    """
    vmax = model.max_speed
    grid = np.linspace(0.0, vmax, max(2, int(math.ceil(vmax / scan_step)) + 1))
    powers = propulsion_power(model, grid)
    i = int(np.argmin(powers))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]

    def f(v):
        return float(sum(power_terms(model, v)))

    best = _golden_section(f, lo, hi, tol)
    candidates = [(f(best), best), (f(lo), lo), (f(hi), hi)]
    power, speed = min(candidates)
    return OptimalSpeed(float(speed), float(power))
