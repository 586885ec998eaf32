"""Scenario configuration: YAML in, validated dataclasses out.

Layout (every section optional except ``site.t_max``)::

    site:
      position: {x: 0.0, y: 0.0}
      t_max: 100.0
      theta_min_deg: 20.0
    environment:
      a: 10.6
      b: 0.18
      mu_los_db: 1.0
      mu_nlos_db: 20.0
      sigma_los_db: 8.0
      sigma_nlos_db: 8.0
      powerlaw: {a2: 0.5, b2: 1.0}      # optional; replaces the sigmoid LoS model
    radio:
      f_c_hz: 2.0e+9
      p_t_dbm: 40.0
      g_db: 3.0
      p_min_dbm: -90.0
      noise_dbm: -174.0
      bandwidth_hz: 5.0e+6
    sweep:
      angles_deg: [20.0, 30.0, 60.0]
      distances: {start: 50.0, stop: 1000.0, step: 10.0}
      placement: {policy: fixed_angle_max_tether}   # or {policy: grid_optimized, resolution: 5.0}
      azimuth: toward_user                          # or degrees
    users:
      - {x: 500.0, y: 0.0}
    place:
      policy: grid_optimized
      resolution: 5.0

Unknown keys are rejected. ``f_c_hz``, ``p_min_dbm`` and the two shadowing
spreads have no published value; leaving them out logs a warning.
"""
from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from .channel import EnvironmentProfile, PowerLawLosParams, RadioConfig
from .errors import ConfigError, DomainError
from .experiments import DEFAULT_ANGLES_DEG, TOWARD_USER, AzimuthPolicy, DistanceRange, SweepSpec
from .geometry import AnchorSite, GroundPoint
from .placement import FixedAngleMaxTether, GridOptimized, PlacementPolicy, UserSet

log = logging.getLogger(__name__)

CALIBRATION_DEFAULTS = {
    "radio.f_c_hz": "carrier frequency",
    "radio.p_min_dbm": "receiver sensitivity",
    "environment.sigma_los_db": "LoS shadowing spread",
    "environment.sigma_nlos_db": "NLoS shadowing spread",
}


@dataclass(frozen=True)
class ScenarioConfig:
    site: AnchorSite
    env: EnvironmentProfile = field(default_factory=EnvironmentProfile)
    radio: RadioConfig = field(default_factory=RadioConfig)
    angles_deg: tuple[float, ...] = DEFAULT_ANGLES_DEG
    distances: DistanceRange = field(default_factory=DistanceRange)
    sweep_placement: PlacementPolicy = field(default_factory=FixedAngleMaxTether)
    azimuth_policy: AzimuthPolicy = TOWARD_USER
    users: tuple[GroundPoint, ...] = ()
    place_policy: PlacementPolicy = field(default_factory=GridOptimized)

    def sweep_spec(self) -> SweepSpec:
        return SweepSpec(self.site, self.angles_deg, self.distances, self.env, self.radio,
                         self.sweep_placement, self.azimuth_policy)

    def user_set(self) -> UserSet:
        if not self.users:
            raise ConfigError("users: at least one user device is required")
        return UserSet(self.users)


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {value!r}")
    return float(value)


def _mapping(value: Any, path: str, allowed: set[str], required: tuple[str, ...] = ()) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"{path}: expected a mapping, got {type(value).__name__}")
    unknown = sorted(set(value) - allowed, key=str)
    if unknown:
        raise ConfigError(f"{path}.{unknown[0]}: unknown key (allowed: {', '.join(sorted(allowed))})")
    for key in required:
        if key not in value:
            raise ConfigError(f"{path}.{key}: required field is missing")
    return value


def _build(cls, path: str, **kwargs):
    try:
        return cls(**kwargs)
    except DomainError as exc:
        where = f"{path}.{exc.field}" if exc.field else path
        raise ConfigError(f"{where}: {exc}") from exc


def _numbers(raw: dict, path: str, names) -> dict:
    return {k: _number(raw[k], f"{path}.{k}") for k in names if k in raw}


def _point(raw: Any, path: str) -> GroundPoint:
    raw = _mapping(raw, path, {"x", "y"}, ("x", "y"))
    return _build(GroundPoint, path, **_numbers(raw, path, ("x", "y")))


def _site(raw: Any) -> AnchorSite:
    raw = _mapping(raw, "site", {"position", "t_max", "theta_min_deg"}, ("t_max",))
    position = _point(raw.get("position", {"x": 0.0, "y": 0.0}), "site.position")
    kw = _numbers(raw, "site", ("t_max", "theta_min_deg"))
    kw.setdefault("theta_min_deg", DEFAULT_ANGLES_DEG[0])
    return _build(AnchorSite, "site", position=position, **kw)


def _env(raw: Any) -> EnvironmentProfile:
    names = [f.name for f in dataclasses.fields(EnvironmentProfile) if f.name != "powerlaw"]
    raw = _mapping(raw, "environment", set(names) | {"powerlaw"})
    kw = _numbers(raw, "environment", names)
    if raw.get("powerlaw") is not None:
        pl = _mapping(raw["powerlaw"], "environment.powerlaw", {"a2", "b2"}, ("a2", "b2"))
        kw["powerlaw"] = _build(PowerLawLosParams, "environment.powerlaw",
                                **_numbers(pl, "environment.powerlaw", ("a2", "b2")))
    return _build(EnvironmentProfile, "environment", **kw)


def _radio(raw: Any) -> RadioConfig:
    names = [f.name for f in dataclasses.fields(RadioConfig)]
    raw = _mapping(raw, "radio", set(names))
    return _build(RadioConfig, "radio", **_numbers(raw, "radio", names))


def _policy(raw: Any, path: str, allow_azimuth: bool) -> PlacementPolicy:
    if isinstance(raw, str):
        raw = {"policy": raw}
    allowed = {"policy", "resolution"} | ({"azimuth_deg"} if allow_azimuth else set())
    raw = _mapping(raw, path, allowed, ("policy",))
    name = raw["policy"]
    if name == "fixed_angle_max_tether":
        if "resolution" in raw:
            raise ConfigError(f"{path}.resolution: only valid with policy grid_optimized")
        return FixedAngleMaxTether(**_numbers(raw, path, ("azimuth_deg",)))
    if name == "grid_optimized":
        if "azimuth_deg" in raw:
            raise ConfigError(f"{path}.azimuth_deg: only valid with policy fixed_angle_max_tether")
        return _build(GridOptimized, path, **_numbers(raw, path, ("resolution",)))
    raise ConfigError(f"{path}.policy: expected fixed_angle_max_tether or grid_optimized, "
                      f"got {name!r}")


def _sweep(raw: Any) -> dict:
    raw = _mapping(raw, "sweep", {"angles_deg", "distances", "placement", "azimuth"})
    out = {}
    if "angles_deg" in raw:
        angles = raw["angles_deg"]
        if not isinstance(angles, list) or not angles:
            raise ConfigError("sweep.angles_deg: expected a non-empty list of degrees")
        out["angles_deg"] = tuple(_number(a, f"sweep.angles_deg[{i}]") for i, a in enumerate(angles))
    if "distances" in raw:
        d = _mapping(raw["distances"], "sweep.distances", {"start", "stop", "step"})
        out["distances"] = _build(DistanceRange, "sweep.distances",
                                  **_numbers(d, "sweep.distances", ("start", "stop", "step")))
    if "placement" in raw:
        out["sweep_placement"] = _policy(raw["placement"], "sweep.placement", allow_azimuth=False)
    if "azimuth" in raw:
        az = raw["azimuth"]
        out["azimuth_policy"] = az if az == TOWARD_USER else _number(az, "sweep.azimuth")
    return out


def config_from_dict(raw: Any, warn: bool = True) -> ScenarioConfig:
    """Validate a parsed document and build the scenario."""
    if raw is None:
        raw = {}
    raw = _mapping(raw, "config", {"site", "environment", "radio", "sweep", "users", "place"},
                   ("site",))
    if warn:
        for dotted, what in CALIBRATION_DEFAULTS.items():
            section, key = dotted.split(".")
            if key not in (raw.get(section) or {}):
                log.warning("%s not set; using calibration default for %s", dotted, what)
    site = _site(raw["site"])
    kw: dict[str, Any] = {
        "env": _env(raw.get("environment") or {}),
        "radio": _radio(raw.get("radio") or {}),
    }
    kw.update(_sweep(raw.get("sweep") or {}))
    users = raw.get("users") or []
    if not isinstance(users, list):
        raise ConfigError("users: expected a list of {x, y} mappings")
    kw["users"] = tuple(_point(u, f"users[{i}]") for i, u in enumerate(users))
    if "place" in raw:
        kw["place_policy"] = _policy(raw["place"], "place", allow_azimuth=True)
    cfg = _build(ScenarioConfig, "config", site=site, **kw)
    try:
        cfg.sweep_spec()
    except DomainError as exc:
        raise ConfigError(f"sweep.{exc.field or 'spec'}: {exc}") from exc
    return cfg


def load_config(path: str | Path) -> ScenarioConfig:
    """Read and validate a scenario file.

    Raises ``FileNotFoundError`` when the file is missing and ``ConfigError``
    for syntax or validation problems.
    """
    path = Path(path)
    text = path.read_text()
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"{path}:{mark.line + 1}:{mark.column + 1}" if mark else str(path)
        problem = getattr(exc, "problem", None) or str(exc)
        raise ConfigError(f"{where}: parse error: {problem}") from exc
    return config_from_dict(raw)


def _policy_dict(policy: PlacementPolicy, with_azimuth: bool) -> dict:
    if isinstance(policy, GridOptimized):
        return {"policy": "grid_optimized", "resolution": policy.resolution}
    out = {"policy": "fixed_angle_max_tether"}
    if with_azimuth:
        out["azimuth_deg"] = policy.azimuth_deg
    return out


def config_to_dict(cfg: ScenarioConfig) -> dict:
    """Fully resolved document; ``config_from_dict`` inverts it."""
    env = dataclasses.asdict(cfg.env)
    if env["powerlaw"] is None:
        del env["powerlaw"]
    return {
        "site": {
            "position": {"x": cfg.site.position.x, "y": cfg.site.position.y},
            "t_max": cfg.site.t_max,
            "theta_min_deg": cfg.site.theta_min_deg,
        },
        "environment": env,
        "radio": dataclasses.asdict(cfg.radio),
        "sweep": {
            "angles_deg": list(cfg.angles_deg),
            "distances": dataclasses.asdict(cfg.distances),
            "placement": _policy_dict(cfg.sweep_placement, with_azimuth=False),
            "azimuth": cfg.azimuth_policy,
        },
        "users": [{"x": u.x, "y": u.y} for u in cfg.users],
        "place": _policy_dict(cfg.place_policy, with_azimuth=True),
    }


def dump_config(cfg: ScenarioConfig) -> str:
    return yaml.safe_dump(config_to_dict(cfg), sort_keys=False)
