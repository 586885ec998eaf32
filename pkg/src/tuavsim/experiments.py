"""Deterministic distance and angle sweeps of the channel metrics.

Each tether angle of a distance sweep is its own scenario: the site's
minimum tether angle is replaced by the swept angle. The user walks out
along the +x axis from the anchor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence, Union

from .channel import EnvironmentProfile, LinkMetrics, RadioConfig, evaluate_link
from .errors import DomainError, TuavError
from .geometry import AnchorSite, GroundPoint, Point3
from .placement import (FixedAngleMaxTether, GridOptimized, PlacementPolicy,
                        optimize_placement, place_fixed_angle)

TOWARD_USER = "toward_user"
AzimuthPolicy = Union[str, float]

DEFAULT_ANGLES_DEG = (20.0, 30.0, 60.0)


@dataclass(frozen=True)
class DistanceRange:
    """Inclusive arithmetic range of user distances, meters."""

    start: float = 50.0
    stop: float = 1000.0
    step: float = 10.0

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.start, self.stop, self.step)):
            raise DomainError("distance range must be finite", field="distances")
        if self.start <= 0:
            raise DomainError("start must be > 0", field="start")
        if self.step <= 0:
            raise DomainError("step must be > 0", field="step")
        if self.stop < self.start:
            raise DomainError("stop must be >= start", field="stop")

    def values(self) -> tuple[float, ...]:
        # integer indexing avoids accumulated drift from repeated addition
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return tuple(self.start + i * self.step for i in range(n))


@dataclass(frozen=True)
class SweepSpec:
    site: AnchorSite
    angles_deg: tuple[float, ...] = DEFAULT_ANGLES_DEG
    distances: DistanceRange = field(default_factory=DistanceRange)
    env: EnvironmentProfile = field(default_factory=EnvironmentProfile)
    radio: RadioConfig = field(default_factory=RadioConfig)
    placement: PlacementPolicy = field(default_factory=FixedAngleMaxTether)
    azimuth_policy: AzimuthPolicy = TOWARD_USER

    def __post_init__(self):
        object.__setattr__(self, "angles_deg", tuple(float(a) for a in self.angles_deg))
        if not self.angles_deg:
            raise DomainError("at least one angle is required", field="angles_deg")
        for a in self.angles_deg:
            if not 0 < a <= 90:
                raise DomainError(f"angle {a} outside (0, 90]", field="angles_deg")
        if self.azimuth_policy != TOWARD_USER and not isinstance(self.azimuth_policy, (int, float)):
            raise DomainError(f"azimuth policy must be {TOWARD_USER!r} or a number of degrees",
                              field="azimuth_policy")


@dataclass(frozen=True)
class SweepRecord:
    angle_deg: float
    distance_m: float
    p_los: float
    p_nlos: float
    path_loss_db: float
    coverage_prob: float
    uav_position: Point3

    @classmethod
    def from_link(cls, angle_deg: float, distance_m: float, m: LinkMetrics,
                  uav: Point3) -> SweepRecord:
        return cls(angle_deg, distance_m, m.p_los, m.p_nlos, m.path_loss_db,
                   m.coverage_prob, uav)


class SweepError(TuavError):
    """A sweep point failed; carries the offending angle and distance."""

    def __init__(self, angle_deg: float, distance_m: float, cause: Exception):
        super().__init__(f"sweep failed at angle={angle_deg} deg, distance={distance_m} m: {cause}")
        self.angle_deg = angle_deg
        self.distance_m = distance_m
        self.cause = cause


def _uav_for(spec: SweepSpec, site: AnchorSite, angle: float, user: GroundPoint) -> Point3:
    if isinstance(spec.placement, GridOptimized):
        return optimize_placement(site, [user], spec.env, spec.radio,
                                  spec.placement.resolution).position
    if spec.azimuth_policy == TOWARD_USER:
        azimuth = math.degrees(math.atan2(user.y - site.position.y, user.x - site.position.x))
    else:
        azimuth = float(spec.azimuth_policy)
    return place_fixed_angle(site, angle, azimuth)


def run_distance_sweep(spec: SweepSpec) -> list[SweepRecord]:
    """Channel metrics versus anchor-to-user distance, one curve per tether angle.

    Rows are ordered angle-major, distance-minor.
    """
    records = []
    anchor = spec.site.position
    for angle in spec.angles_deg:
        site = replace(spec.site, theta_min_deg=angle)
        for d in spec.distances.values():
            user = GroundPoint(anchor.x + d, anchor.y)
            try:
                uav = _uav_for(spec, site, angle, user)
                m = evaluate_link(spec.env, spec.radio, uav, user)
            except TuavError as exc:
                raise SweepError(angle, d, exc) from exc
            records.append(SweepRecord.from_link(angle, d, m, uav))
    return records


def run_angle_sweep(site: AnchorSite, user: GroundPoint, angles_deg: Sequence[float],
                    env: EnvironmentProfile, radio: RadioConfig) -> list[SweepRecord]:
    """Channel metrics for a fixed user while the tether angle varies at full length.

    ``distance_m`` in each record is the anchor-to-user ground distance; the
    tether points toward the user.
    """
    ground = math.hypot(user.x - site.position.x, user.y - site.position.y)
    azimuth = math.degrees(math.atan2(user.y - site.position.y, user.x - site.position.x))
    records = []
    for angle in angles_deg:
        if not 0 < angle <= 90:
            raise DomainError(f"angle {angle} outside (0, 90]", field="angles_deg")
        scenario = replace(site, theta_min_deg=angle)
        try:
            uav = place_fixed_angle(scenario, angle, azimuth)
            m = evaluate_link(env, radio, uav, user)
        except TuavError as exc:
            raise SweepError(angle, ground, exc) from exc
        records.append(SweepRecord.from_link(angle, ground, m, uav))
    return records
