"""Geometry of the tethered hovering region.

Angles cross every public boundary in degrees. The hovering region of an
anchor is the closed spherical sector of radius ``t_max`` above the ground
plane whose elevation, seen from the anchor, is at least ``theta_min_deg``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CoincidentPointError, ConstraintViolationError, DomainError

# Slack on both region faces so that points built exactly on the boundary
# (full tether, minimum angle) survive rounding.
BOUNDARY_TOL_M = 1e-9


def _check_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}", field=name)


@dataclass(frozen=True)
class GroundPoint:
    """A point on the ground plane (user device or tether anchor), meters."""

    x: float
    y: float

    def __post_init__(self):
        _check_finite("x", self.x)
        _check_finite("y", self.y)

    def translated(self, dx: float, dy: float) -> GroundPoint:
        return GroundPoint(self.x + dx, self.y + dy)


@dataclass(frozen=True)
class Point3:
    """UAV position in meters; ``z`` is altitude above ground."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        _check_finite("x", self.x)
        _check_finite("y", self.y)
        _check_finite("z", self.z)
        if self.z < 0:
            raise DomainError(f"z must be >= 0, got {self.z!r}", field="z")

    def ground(self) -> GroundPoint:
        return GroundPoint(self.x, self.y)

    def translated(self, dx: float, dy: float) -> Point3:
        return Point3(self.x + dx, self.y + dy, self.z)


@dataclass(frozen=True)
class AnchorSite:
    """Ground terminal of the tether.

    ``t_max`` is the maximum tether length and ``theta_min_deg`` the minimum
    elevation of the tether above the ground plane, measured at the anchor.
    """

    position: GroundPoint
    t_max: float
    theta_min_deg: float

    def __post_init__(self):
        _check_finite("t_max", self.t_max)
        _check_finite("theta_min_deg", self.theta_min_deg)
        if self.t_max <= 0:
            raise DomainError(f"t_max must be > 0, got {self.t_max!r}", field="t_max")
        if not 0 < self.theta_min_deg <= 90:
            raise DomainError(
                f"theta_min_deg must be in (0, 90], got {self.theta_min_deg!r}",
                field="theta_min_deg",
            )


def horizontal_distance(a: GroundPoint | Point3, b: GroundPoint | Point3) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def distance_3d(uav: Point3, user: GroundPoint) -> float:
    """Straight-line distance from a UAV to a ground user."""
    return math.hypot(uav.x - user.x, uav.y - user.y, uav.z)


def elevation_angle_deg(observer: GroundPoint, target: Point3) -> float:
    """Elevation of ``target`` above the horizon seen from ``observer``, in [0, 90]."""
    horiz = horizontal_distance(observer, target)
    if horiz == 0.0:
        if target.z == 0.0:
            raise CoincidentPointError(
                f"elevation undefined: target {target} coincides with observer {observer}"
            )
        return 90.0
    return math.degrees(math.atan2(target.z, horiz))


def region_contains(site: AnchorSite, p: Point3) -> bool:
    """True iff ``p`` lies in the closed hovering region of ``site``.

    Both faces carry a slack of ``BOUNDARY_TOL_M``; the anchor point itself
    (a fully reeled-in tether) is inside.
    """
    r = math.hypot(p.x - site.position.x, p.y - site.position.y, p.z)
    if r > site.t_max + BOUNDARY_TOL_M:
        return False
    return p.z >= r * math.sin(math.radians(site.theta_min_deg)) - BOUNDARY_TOL_M


def tether_tip(site: AnchorSite, length: float, azimuth_deg: float, elevation_deg: float) -> Point3:
    """Position of the UAV for a straight tether of given length and direction.

    Azimuth is measured counter-clockwise from the +x axis.
    """
    if not 0 <= length <= site.t_max:
        raise ConstraintViolationError(
            f"tether length {length!r} outside [0, {site.t_max}]", field="length"
        )
    if not site.theta_min_deg <= elevation_deg <= 90:
        raise ConstraintViolationError(
            f"tether elevation {elevation_deg!r} outside [{site.theta_min_deg}, 90]",
            field="elevation_deg",
        )
    el = math.radians(elevation_deg)
    az = math.radians(azimuth_deg)
    # cos(pi/2) is not exactly zero in floating point
    horiz = 0.0 if elevation_deg == 90 else length * math.cos(el)
    return Point3(
        site.position.x + horiz * math.cos(az),
        site.position.y + horiz * math.sin(az),
        length * math.sin(el),
    )
