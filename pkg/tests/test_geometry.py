import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tuavsim.errors import CoincidentPointError, ConstraintViolationError, DomainError
from tuavsim.geometry import (AnchorSite, GroundPoint, Point3, distance_3d, elevation_angle_deg,
                              region_contains, tether_tip)

coord = st.floats(-1e4, 1e4, allow_nan=False)
alt = st.floats(0, 1e4, allow_nan=False)

SITE = AnchorSite(GroundPoint(0, 0), t_max=100, theta_min_deg=20)


def test_distance_examples():
    assert distance_3d(Point3(3, 4, 12), GroundPoint(0, 0)) == 13.0
    assert distance_3d(Point3(0, 0, 57.5), GroundPoint(0, 0)) == 57.5
    assert distance_3d(Point3(100, 0, 0), GroundPoint(0, 0)) == 100.0


@given(coord, coord, alt, coord, coord)
def test_distance_dominates_components(x, y, z, ux, uy):
    d = distance_3d(Point3(x, y, z), GroundPoint(ux, uy))
    assert d >= z * (1 - 1e-15)
    assert d >= math.hypot(x - ux, y - uy) * (1 - 1e-15)


def test_elevation_examples():
    assert elevation_angle_deg(GroundPoint(0, 0), Point3(1, 0, 1)) == pytest.approx(45.0, abs=1e-12)
    assert elevation_angle_deg(GroundPoint(0, 0), Point3(0, 0, 50)) == 90.0
    # mpmath: degrees(atan(1e-4 / 100))
    assert elevation_angle_deg(GroundPoint(0, 0), Point3(100, 0, 0.0001)) == pytest.approx(
        5.729577951306322e-05, abs=1e-9)


def test_elevation_coincident_raises():
    with pytest.raises(CoincidentPointError):
        elevation_angle_deg(GroundPoint(3, 4), Point3(3, 4, 0))


@given(st.floats(0.1, 1e4), st.floats(0.1, 1e4), st.floats(0, 1e4), st.floats(0, 1e4))
def test_elevation_monotone(h1, h2, z1, z2):
    obs = GroundPoint(0, 0)
    lo, hi = sorted((h1, h2))
    assert elevation_angle_deg(obs, Point3(lo, 0, z1)) >= elevation_angle_deg(obs, Point3(hi, 0, z1))
    zl, zh = sorted((z1, z2))
    assert elevation_angle_deg(obs, Point3(h1, 0, zl)) <= elevation_angle_deg(obs, Point3(h1, 0, zh))


def test_region_examples():
    assert region_contains(SITE, Point3(0, 0, 100))
    assert not region_contains(SITE, Point3(0, 0, 101))
    th = math.radians(20)
    assert region_contains(SITE, Point3(100 * math.cos(th), 0, 100 * math.sin(th)))
    # just outside each face
    assert not region_contains(SITE, Point3(100 * math.cos(th), 0, 100 * math.sin(th) - 1e-6))
    assert not region_contains(SITE, Point3(101 * math.cos(th + 0.1), 0, 101 * math.sin(th + 0.1)))


def test_region_includes_anchor():
    assert region_contains(SITE, Point3(0, 0, 0))


def test_tether_tip_examples():
    p = tether_tip(SITE, 100, 0, 90)
    assert (p.x, p.y, p.z) == (0.0, 0.0, 100.0)
    p = tether_tip(SITE, 0, 123, 45)
    assert (p.x, p.y, p.z) == (0.0, 0.0, 0.0)
    p = tether_tip(SITE, 100, 0, 30)
    assert p.x == pytest.approx(86.60254037844386, abs=1e-6)
    assert p.y == pytest.approx(0.0, abs=1e-6)
    assert p.z == pytest.approx(50.0, abs=1e-6)


def test_tether_tip_offset_anchor():
    site = AnchorSite(GroundPoint(-40, 25), 80, 30)
    p = tether_tip(site, 80, 90, 30)
    assert p.x == pytest.approx(-40, abs=1e-9)
    assert p.y == pytest.approx(25 + 80 * math.cos(math.radians(30)))


@pytest.mark.parametrize("length, elevation", [(101, 45), (-1, 45), (50, 19.9), (50, 90.1)])
def test_tether_tip_out_of_range(length, elevation):
    with pytest.raises(ConstraintViolationError):
        tether_tip(SITE, length, 0, elevation)


@given(st.floats(0, 100), st.floats(-720, 720), st.floats(20, 90))
def test_tether_tip_in_region(length, az, el):
    assert region_contains(SITE, tether_tip(SITE, length, az, el))


@pytest.mark.parametrize("kwargs", [
    dict(t_max=0, theta_min_deg=20), dict(t_max=10, theta_min_deg=0),
    dict(t_max=10, theta_min_deg=95), dict(t_max=float("nan"), theta_min_deg=20),
])
def test_anchor_validation(kwargs):
    with pytest.raises(DomainError):
        AnchorSite(GroundPoint(0, 0), **kwargs)


def test_point_validation():
    with pytest.raises(DomainError):
        Point3(0, 0, -1)
    with pytest.raises(DomainError):
        GroundPoint(float("inf"), 0)


def test_region_matches_inequalities_random():
    rng = np.random.default_rng(7)
    site = AnchorSite(GroundPoint(12, -30), 150, 30)
    for _ in range(2000):
        x, y = rng.uniform(-150, 150, 2) + (12, -30)
        z = rng.uniform(0, 150)
        r = math.sqrt((x - 12) ** 2 + (y + 30) ** 2 + z**2)
        expected = r <= 150 and z >= r * math.sin(math.radians(30))
        assert region_contains(site, Point3(x, y, z)) == expected
