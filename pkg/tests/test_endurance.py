import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from erep.endurance import (cycle_stats, endurance_gain, evaluate, gain_percent, grid_tolerance_db, sample_cycle,
                            verify_link_budget)
from erep.errors import InvalidParameterError
from erep.link import max_range, snr_db
from erep.planner import Fap, FapTarget, Scenario, TrajectoryPlan, plan
from erep.power import hover_power, optimal_speed, propulsion_power

from conftest import zeng_power


def straight_plan(arm, speed, altitude=10.0, targets=()):
    """Plan whose cycle is Pc -> (0, arm) -> (0, arm) -> Pc -> (0, -arm) -> (0, -arm) -> Pc: length 4 * arm."""
    wp = np.array([[0, arm], [0, arm], [0, -arm], [0, -arm]], float)
    return TrajectoryPlan(0.0, altitude, np.zeros(2), wp, speed, tuple(targets), 1, 0.5)


def hand_gain(length, speed, p_move, p_hover, hovers=6):
    t = length / speed
    avg = (t * p_move + hovers * p_hover) / (t + hovers)
    return 100 * (p_hover / avg - 1)


def test_zero_length_cycle(model):
    r = cycle_stats(straight_plan(0.0, 10.0), model)
    assert r.cycle_length == 0.0
    assert r.avg_power == hover_power(model)
    assert r.gain == 0.0
    assert r.hover_seconds_per_cycle == 6.0


def test_published_arithmetic_with_printed_variant(model_printed):
    # 60 m and 6 m cycles at 10.2 m/s, 96.6 W travelling, 168.49 W hovering
    r60 = cycle_stats(straight_plan(15.0, 10.2), model_printed)
    r6 = cycle_stats(straight_plan(1.5, 10.2), model_printed)
    assert r60.avg_power == pytest.approx(132.9, abs=0.15)
    assert r60.gain == pytest.approx(26.8, abs=0.1)
    assert r6.avg_power == pytest.approx(162.1, abs=0.15)
    assert r6.gain == pytest.approx(4.0, abs=0.1)


@pytest.mark.parametrize("length", [6.0, 18.0, 60.0, 250.0])
def test_default_model_matches_hand_arithmetic(model, length):
    v = optimal_speed(model).speed
    r = cycle_stats(straight_plan(length / 4, v), model)
    want = hand_gain(length, v, zeng_power(v), zeng_power(0.0))
    assert r.gain == pytest.approx(want, abs=1e-9)
    assert r.cycle_time == pytest.approx(length / v + 6)
    assert r.avg_power == pytest.approx(r.cycle_energy / r.cycle_time)


def test_gain_arithmetic():
    assert gain_percent(100.0, 90.0) == pytest.approx(11.11, abs=0.01)
    assert gain_percent(100.0, 100.0) == 0.0


def test_ceilings(model, model_printed):
    v = optimal_speed(model).speed
    ceiling = gain_percent(hover_power(model), propulsion_power(model, v))
    assert ceiling == pytest.approx(33.75, abs=0.01)
    printed = gain_percent(hover_power(model_printed), propulsion_power(model_printed, 10.2))
    assert printed == pytest.approx(74.4, abs=0.1)
    huge = cycle_stats(straight_plan(1e7, v), model)
    assert huge.gain < ceiling


@settings(max_examples=100, deadline=None)
@given(st.floats(0.1, 500), st.floats(0.1, 500))
def test_gain_monotone_in_length(a, b):
    from erep.power import UavPhysicalParams, derive_power_model
    m = derive_power_model(UavPhysicalParams())
    v = optimal_speed(m).speed
    lo, hi = sorted((a, b))
    assert endurance_gain(straight_plan(lo, v), m) <= endurance_gain(straight_plan(hi, v), m) + 1e-12


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 500))
def test_avg_power_bracketed(arm):
    from erep.power import UavPhysicalParams, derive_power_model
    m = derive_power_model(UavPhysicalParams())
    v = optimal_speed(m).speed
    r = cycle_stats(straight_plan(arm, v), m)
    assert propulsion_power(m, v) - 1e-9 <= r.avg_power <= hover_power(m) + 1e-9
    assert r.gain >= 0


def test_sample_cycle_spacing():
    p = straight_plan(1.0, 10.0)
    s = sample_cycle(p, 0.1)
    gaps = np.linalg.norm(np.diff(s, axis=0), axis=1)
    assert gaps.max() <= 0.1 + 1e-12
    assert np.all(s[:, 2] == 10.0)
    with pytest.raises(InvalidParameterError):
        sample_cycle(p, 0.0)


def test_hover_only_plan_checks_pc_only():
    s = Scenario((Fap((0, 0, 10), 1e6), Fap((4, 0, 10), 1e6)))
    t = (FapTarget(0, 0, 11.0, 30.0), FapTarget(1, 0, 11.0, 30.0))
    p = TrajectoryPlan(5.0, 10.0, np.array([1.0, 0.0]), np.tile([1.0, 0.0], (4, 1)), 10.0, t, 1, 0.5)
    m = verify_link_budget(p, s)
    assert np.allclose(m.worst_point, (1, 0, 10))
    want = snr_db(5.0, 5180e6, 3.0, -85.0) - 11.0
    assert m.min_snr_margin == pytest.approx(want, abs=1e-9)
    assert m.worst_fap == 1


def test_symmetric_worst_point_is_farthest_vertex():
    s = Scenario((Fap((0, 0, 10), 250e6), Fap((1, 0, 10), 250e6)))
    p = plan(s)
    m = verify_link_budget(p, s, 0.1)
    cyc = p.cycle_3d()
    far = max(np.linalg.norm(cyc[:, None] - s.positions[None], axis=2).max(axis=1))
    d_worst = np.linalg.norm(s.positions - m.worst_point, axis=1).max()
    assert d_worst == pytest.approx(far, abs=1e-9)


def test_margin_brute_force_fine_sampling():
    s = Scenario((Fap((0, 0, 10), 100e6), Fap((6, 2, 11), 100e6), Fap((3, 5, 9), 100e6)))
    p = plan(s)
    coarse = verify_link_budget(p, s, 0.1).min_snr_margin
    # oracle: 0.05 m sampling with an explicit per-point loop
    worst = math.inf
    cyc = p.cycle
    for a, b in zip(cyc[:-1], cyc[1:]):
        n = max(1, int(math.ceil(np.linalg.norm(b - a) / 0.05)))
        for i in range(n + 1):
            q = np.append(a + (b - a) * i / n, p.altitude)
            for t in p.per_fap_targets:
                d = np.linalg.norm(q - s.faps[t.fap].position)
                worst = min(worst, snr_db(p.tx_power, 5180e6, d, -85.0) - t.target_snr)
    assert worst >= -grid_tolerance_db(p)
    assert coarse >= -grid_tolerance_db(p)
    assert coarse == pytest.approx(worst, abs=0.05)


def test_evaluate_fills_margin(model):
    s = Scenario((Fap((0, 0, 10), 250e6), Fap((1, 0, 10), 250e6)))
    p = plan(s)
    r = evaluate(p, s, model)
    assert math.isfinite(r.min_snr_margin)
    assert r.gain == endurance_gain(p, model)
    assert set(r.to_json()) >= {"gain", "avg_power", "min_snr_margin"}


def test_grid_tolerance():
    t = (FapTarget(0, 0, 11.0, 10.0), FapTarget(1, 0, 11.0, 20.0))
    p = straight_plan(1.0, 10.0, targets=t)
    assert grid_tolerance_db(p) == pytest.approx(20 * math.log10((10 + 0.5 * math.sqrt(3)) / 10))
