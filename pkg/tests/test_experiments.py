import math
from dataclasses import replace

import numpy as np
import pytest

from tuavsim.channel import (EnvironmentProfile, RadioConfig, evaluate_link, fspl_db,
                             p_los_sigmoid)
from tuavsim.experiments import (DistanceRange, SweepError, SweepSpec, run_angle_sweep,
                                 run_distance_sweep)
from tuavsim.errors import DomainError
from tuavsim.geometry import AnchorSite, GroundPoint, Point3, elevation_angle_deg
from tuavsim.placement import GridOptimized

SITE = AnchorSite(GroundPoint(0, 0), 100, 20)
ENV = EnvironmentProfile()
RADIO = RadioConfig()


def test_distance_range_values():
    assert len(DistanceRange().values()) == 96
    vals = DistanceRange(0.5, 1.0, 0.1).values()
    assert len(vals) == 6 and vals[-1] == pytest.approx(1.0)
    with pytest.raises(DomainError):
        DistanceRange(0, 10, 1)
    with pytest.raises(DomainError):
        DistanceRange(10, 5, 1)


def test_sweep_cardinality_and_order():
    recs = run_distance_sweep(SweepSpec(SITE))
    assert len(recs) == 288
    keys = [(r.angle_deg, r.distance_m) for r in recs]
    assert keys == [(a, d) for a in (20.0, 30.0, 60.0) for d in DistanceRange().values()]
    for r in recs:
        assert r.p_los + r.p_nlos == pytest.approx(1.0, abs=1e-15)
        assert 0 <= r.coverage_prob <= 1


def test_sweep_rows_match_standalone_links():
    for r in run_distance_sweep(SweepSpec(SITE, angles_deg=(30,), distances=DistanceRange(50, 500, 50))):
        m = evaluate_link(ENV, RADIO, r.uav_position, GroundPoint(r.distance_m, 0))
        assert (r.p_los, r.p_nlos, r.path_loss_db, r.coverage_prob) == \
            (m.p_los, m.p_nlos, m.path_loss_db, m.coverage_prob)
        assert r.uav_position.z == pytest.approx(100 * math.sin(math.radians(30)))


def test_sweep_is_deterministic():
    spec = SweepSpec(SITE)
    assert run_distance_sweep(spec) == run_distance_sweep(spec)


def test_path_loss_increases_beyond_uav_offset():
    recs = run_distance_sweep(SweepSpec(SITE))
    for angle in (20.0, 30.0, 60.0):
        offset = 100 * math.cos(math.radians(angle))
        rows = [r for r in recs if r.angle_deg == angle and r.distance_m > offset]
        pl = np.array([r.path_loss_db for r in rows])
        assert np.all(np.diff(pl) > 0)
        # direct recomputation of the mean path loss for each row
        for r in rows:
            uav = r.uav_position
            horiz = r.distance_m - uav.x
            theta = math.degrees(math.atan2(uav.z, horiz))
            d = math.hypot(horiz, uav.z)
            p = 1 / (1 + ENV.a * math.exp(-ENV.b * (theta - ENV.a)))
            expected = 20 * math.log10(4 * math.pi * RADIO.f_c_hz * d / 299792458.0) \
                + p * ENV.mu_los_db + (1 - p) * ENV.mu_nlos_db
            assert r.path_loss_db == pytest.approx(expected, abs=1e-9)


def test_fixed_azimuth_policy():
    recs = run_distance_sweep(SweepSpec(SITE, angles_deg=(60,), distances=DistanceRange(100, 100, 1),
                                        azimuth_policy=180.0))
    assert recs[0].uav_position.x == pytest.approx(-50.0)


def test_grid_optimized_sweep_not_worse_than_fixed():
    dist = DistanceRange(200, 600, 200)
    radio = RadioConfig(p_min_dbm=-70)
    fixed = run_distance_sweep(SweepSpec(SITE, (30,), dist, radio=radio))
    opt = run_distance_sweep(SweepSpec(SITE, (30,), dist, radio=radio, placement=GridOptimized(10)))
    for f, o in zip(fixed, opt):
        assert o.coverage_prob >= f.coverage_prob - 1e-12


def test_sweep_error_identifies_point():
    # every valid geometry succeeds, so corrupt the policy after validation
    spec = SweepSpec(SITE, (20,), DistanceRange(50, 60, 10), placement=GridOptimized(5.0))
    object.__setattr__(spec.placement, "resolution", -1.0)
    with pytest.raises(SweepError) as info:
        run_distance_sweep(spec)
    assert (info.value.angle_deg, info.value.distance_m) == (20.0, 50.0)


def test_spec_validation():
    with pytest.raises(DomainError):
        SweepSpec(SITE, angles_deg=())
    with pytest.raises(DomainError):
        SweepSpec(SITE, angles_deg=(0,))
    with pytest.raises(DomainError):
        SweepSpec(SITE, azimuth_policy="sideways")


def test_angle_sweep():
    user = GroundPoint(400, 0)
    recs = run_angle_sweep(SITE, user, [90], ENV, RADIO)
    assert len(recs) == 1
    assert recs[0].uav_position == Point3(0.0, 0.0, 100.0)
    expected_theta = math.degrees(math.atan2(100, 400))
    assert recs[0].p_los == pytest.approx(p_los_sigmoid(ENV, expected_theta), abs=1e-12)

    angles = list(np.linspace(5, 90, 40))
    recs = run_angle_sweep(SITE, user, angles, ENV, RADIO)
    assert len(recs) == len(angles)
    thetas = [elevation_angle_deg(user, r.uav_position) for r in recs]
    order = np.argsort(thetas)
    p = np.array([r.p_los for r in recs])[order]
    assert np.all(np.diff(p) >= 0)
    with pytest.raises(DomainError):
        run_angle_sweep(SITE, user, [0], ENV, RADIO)
