"""UAV placement inside the hovering region.

Positions are searched in tether coordinates (length, azimuth, elevation),
where the hovering region is a plain box: length in [0, t_max], elevation in
[theta_min, 90], azimuth periodic. The objective is the mean coverage
probability over the user set.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from .channel import (EnvironmentProfile, LinkMetrics, RadioConfig, coverage_probability,
                      evaluate_link)
from .errors import ConstraintViolationError, DomainError
from .geometry import AnchorSite, GroundPoint, Point3, region_contains, tether_tip

DEFAULT_RESOLUTION_M = 5.0
IMPROVEMENT_TOL = 1e-9
MIN_STEP = 1e-7  # meters for length, degrees for angles
N_STARTS = 8


def _check_resolution(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be > 0, got {value!r}", field=name)


@dataclass(frozen=True)
class UserSet:
    users: tuple[GroundPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "users", tuple(self.users))
        if not self.users:
            raise DomainError("user set must not be empty", field="users")

    def __iter__(self) -> Iterator[GroundPoint]:
        return iter(self.users)

    def __len__(self) -> int:
        return len(self.users)

    def translated(self, dx: float, dy: float) -> UserSet:
        return UserSet(tuple(u.translated(dx, dy) for u in self.users))


@dataclass(frozen=True)
class FixedAngleMaxTether:
    """Full tether extension at the site's tether angle."""

    azimuth_deg: float = 0.0


@dataclass(frozen=True)
class GridOptimized:
    resolution: float = DEFAULT_RESOLUTION_M

    def __post_init__(self):
        _check_resolution("resolution", self.resolution)


PlacementPolicy = Union[FixedAngleMaxTether, GridOptimized]


@dataclass(frozen=True)
class PlacementResult:
    position: Point3
    objective: float
    per_user: tuple[LinkMetrics, ...]


def _as_userset(users) -> UserSet:
    return users if isinstance(users, UserSet) else UserSet(tuple(users))


def _result(site: AnchorSite, users: UserSet, env: EnvironmentProfile, radio: RadioConfig,
            position: Point3) -> PlacementResult:
    per_user = tuple(evaluate_link(env, radio, position, u) for u in users)
    objective = math.fsum(m.coverage_prob for m in per_user) / len(per_user)
    return PlacementResult(position, objective, per_user)


def place_fixed_angle(site: AnchorSite, elevation_deg: float, azimuth_deg: float) -> Point3:
    """UAV position at full tether length and the given tether angle."""
    if elevation_deg < site.theta_min_deg:
        raise ConstraintViolationError(
            f"elevation {elevation_deg} below the site's minimum tether angle "
            f"{site.theta_min_deg}", field="elevation_deg")
    return tether_tip(site, site.t_max, azimuth_deg, elevation_deg)


class _Objective:
    """Mean coverage over a user set, evaluated on arrays of tether coordinates.

    Degenerate links (UAV on the ground exactly at a user) score ``-inf``.
    """

    def __init__(self, site: AnchorSite, users: UserSet, env: EnvironmentProfile,
                 radio: RadioConfig):
        self.site = site
        self.env = env
        self.radio = radio
        # user offsets relative to the anchor: only relative geometry matters
        self.ux = np.array([u.x - site.position.x for u in users])
        self.uy = np.array([u.y - site.position.y for u in users])

    @staticmethod
    def offsets(length, azimuth_deg, elevation_deg):
        length = np.asarray(length, dtype=float)
        el = np.asarray(elevation_deg, dtype=float)
        az = np.radians(azimuth_deg)
        horiz = np.where(el == 90.0, 0.0, length * np.cos(np.radians(el)))
        return horiz * np.cos(az), horiz * np.sin(az), length * np.sin(np.radians(el))

    def __call__(self, length, azimuth_deg, elevation_deg) -> np.ndarray:
        px, py, pz = self.offsets(length, azimuth_deg, elevation_deg)
        total = np.zeros(np.shape(px))
        bad = np.zeros(np.shape(px), dtype=bool)
        for ux, uy in zip(self.ux, self.uy):
            horiz = np.hypot(px - ux, py - uy)
            degenerate = (horiz == 0.0) & (pz == 0.0)
            bad |= degenerate
            horiz_s = np.where(degenerate, 1.0, horiz)
            theta = np.degrees(np.arctan2(pz, horiz_s))
            dist = np.sqrt(horiz_s**2 + pz**2)
            total = total + coverage_probability(self.env, self.radio, theta, dist)
        out = total / len(self.ux)
        return np.where(bad, -np.inf, out)


def _axes(site: AnchorSite, resolution: float):
    """Tether-coordinate grid axes with roughly ``resolution`` meters spacing at full length."""
    t = site.t_max
    lengths = np.linspace(0.0, t, max(2, math.ceil(t / resolution) + 1))
    span = math.radians(90.0 - site.theta_min_deg)
    if span == 0.0:
        elevations = np.array([90.0])
    else:
        elevations = np.linspace(site.theta_min_deg, 90.0, max(2, math.ceil(t * span / resolution) + 1))
    ring = 2.0 * math.pi * t * math.cos(math.radians(site.theta_min_deg))
    n_az = max(4, math.ceil(ring / resolution))
    azimuths = np.arange(n_az) * (360.0 / n_az)
    return lengths, azimuths, elevations


def _mesh(lengths, azimuths, elevations):
    """Flattened grid without the duplicates at zero length and at the zenith."""
    L, A, E = np.meshgrid(lengths, azimuths, elevations, indexing="ij")
    keep = ((L > 0) | ((A == azimuths[0]) & (E == elevations[0]))) & ((E < 90.0) | (A == azimuths[0]))
    return L[keep], A[keep], E[keep]


def _canonical(length: float, az: float, el: float) -> tuple[float, float, float]:
    length, az, el = float(length), float(az) % 360.0, float(el)
    if length == 0.0 or el == 90.0:
        az = 0.0
    return length, az, el


def _tie_key(obj: float, length: float, az: float, el: float):
    """Sort key: best objective, then lower altitude, lower azimuth, shorter tether."""
    z = length * math.sin(math.radians(el))
    return (-obj, z, az, length)


def _argbest(obj, L, A, E) -> int:
    best = np.max(obj)
    if not np.isfinite(best):
        raise DomainError("no grid point yields a defined link to every user")
    idx = np.flatnonzero(obj == best)
    z = L[idx] * np.sin(np.radians(E[idx]))
    order = np.lexsort((L[idx], A[idx], z))
    return int(idx[order[0]])


def _refine(f: _Objective, site: AnchorSite, start, steps):
    """Coordinate descent on (length, azimuth, elevation) with shrinking steps."""
    x = list(start)
    cur = float(f(*x))
    steps = list(steps)
    lo = (0.0, -math.inf, site.theta_min_deg)
    hi = (site.t_max, math.inf, 90.0)
    for _ in range(100_000):
        if max(steps) < MIN_STEP:
            break
        before = cur
        for i in range(3):
            cands = []
            for sign in (1.0, -1.0):
                y = list(x)
                y[i] = min(hi[i], max(lo[i], x[i] + sign * steps[i]))
                if y[i] != x[i]:
                    cands.append(y)
            if not cands:
                continue
            vals = f(*np.array(cands).T)
            j = int(np.argmax(vals))
            if vals[j] > cur:
                x, cur = cands[j], float(vals[j])
        if cur - before < IMPROVEMENT_TOL:
            steps = [s / 2.0 for s in steps]
    return cur, _canonical(x[0], x[1], x[2])


def _pick(site: AnchorSite, users: UserSet, env: EnvironmentProfile, radio: RadioConfig,
          length: float, az: float, el: float) -> PlacementResult:
    position = tether_tip(site, length, az, el)
    assert region_contains(site, position)
    return _result(site, users, env, radio, position)


def optimize_placement(site: AnchorSite, users, env: EnvironmentProfile, radio: RadioConfig,
                       resolution: float = DEFAULT_RESOLUTION_M) -> PlacementResult:
    """Maximize mean coverage over ``users`` inside the hovering region.

    A deterministic tether-coordinate grid seeds coordinate descent from the
    best few grid points; the best refined point wins, with ties going to
    lower altitude, then lower azimuth, then shorter tether.
    """
    _check_resolution("resolution", resolution)
    users = _as_userset(users)
    f = _Objective(site, users, env, radio)
    lengths, azimuths, elevations = _axes(site, resolution)
    L, A, E = _mesh(lengths, azimuths, elevations)
    obj = f(L, A, E)

    order = np.lexsort((L, A, L * np.sin(np.radians(E)), -obj))
    starts = [int(i) for i in order[:N_STARTS] if np.isfinite(obj[i])]
    if not starts:
        raise DomainError("no grid point yields a defined link to every user")
    steps = (
        lengths[1] - lengths[0],
        azimuths[1] - azimuths[0],
        elevations[1] - elevations[0] if len(elevations) > 1 else 0.0,
    )
    best = None
    for i in starts:
        val, x = _refine(f, site, (L[i], A[i], E[i]), steps)
        cand = (_tie_key(val, *x), x)
        if best is None or cand[0] < best[0]:
            best = cand
    return _pick(site, users, env, radio, *best[1])


def brute_force_placement(site: AnchorSite, users, env: EnvironmentProfile, radio: RadioConfig,
                          fine_resolution: float) -> PlacementResult:
    """Exhaustive search over a fine tether-coordinate grid; a test oracle."""
    _check_resolution("fine_resolution", fine_resolution)
    users = _as_userset(users)
    f = _Objective(site, users, env, radio)
    lengths, azimuths, elevations = _axes(site, fine_resolution)
    best_key, best_x = None, None
    # one tether length at a time keeps memory bounded
    for length in lengths:
        L, A, E = _mesh(np.array([length]), azimuths, elevations)
        obj = f(L, A, E)
        if not np.any(np.isfinite(obj)):
            continue
        i = _argbest(obj, L, A, E)
        x = _canonical(float(L[i]), float(A[i]), float(E[i]))
        key = _tie_key(float(obj[i]), *x)
        if best_key is None or key < best_key:
            best_key, best_x = key, x
    if best_x is None:
        raise DomainError("no grid point yields a defined link to every user")
    return _pick(site, users, env, radio, *best_x)


def place(site: AnchorSite, users, env: EnvironmentProfile, radio: RadioConfig,
          policy: PlacementPolicy) -> PlacementResult:
    """Position the UAV per ``policy`` and evaluate every user link."""
    users = _as_userset(users)
    if isinstance(policy, GridOptimized):
        return optimize_placement(site, users, env, radio, policy.resolution)
    position = place_fixed_angle(site, site.theta_min_deg, policy.azimuth_deg)
    return _result(site, users, env, radio, position)
