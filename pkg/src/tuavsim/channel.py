"""Air-to-ground channel: LoS/NLoS probability, mean path loss, coverage.

The scalar model functions also accept numpy arrays and broadcast; scalar
inputs give Python floats back.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

from .errors import DomainError
from .geometry import GroundPoint, Point3, distance_3d, elevation_angle_deg

SPEED_OF_LIGHT = 299_792_458.0  # m/s


def _positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be finite and > 0, got {value!r}", field=name)


def _finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}", field=name)


def _scalar_or_array(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


@dataclass(frozen=True)
class PowerLawLosParams:
    """Coefficients of the power-law LoS model ``a2 * angle_rad ** b2``."""

    a2: float
    b2: float

    def __post_init__(self):
        _positive("a2", self.a2)
        _positive("b2", self.b2)


@dataclass(frozen=True)
class EnvironmentProfile:
    """Propagation environment.

    ``a`` and ``b`` shape the elevation-angle sigmoid (angles in degrees),
    ``mu_*_db`` are the excess path losses of the LoS and NLoS states and
    ``sigma_*_db`` their log-normal shadowing spreads. Defaults are the urban
    profile; the shadowing spreads are a calibration choice.

    When ``powerlaw`` is set, LoS probability comes from the power-law model
    instead of the sigmoid.
    """

    a: float = 10.6
    b: float = 0.18
    mu_los_db: float = 1.0
    mu_nlos_db: float = 20.0
    sigma_los_db: float = 8.0
    sigma_nlos_db: float = 8.0
    powerlaw: PowerLawLosParams | None = None

    def __post_init__(self):
        _positive("a", self.a)
        _positive("b", self.b)
        _finite("mu_los_db", self.mu_los_db)
        _finite("mu_nlos_db", self.mu_nlos_db)
        if self.mu_los_db < 0:
            raise DomainError("mu_los_db must be >= 0", field="mu_los_db")
        if self.mu_nlos_db < self.mu_los_db:
            raise DomainError("mu_nlos_db must be >= mu_los_db", field="mu_nlos_db")
        _positive("sigma_los_db", self.sigma_los_db)
        _positive("sigma_nlos_db", self.sigma_nlos_db)


@dataclass(frozen=True)
class RadioConfig:
    """Link budget parameters.

    Carrier frequency and receiver sensitivity defaults are calibration
    choices. ``noise_dbm`` and ``bandwidth_hz`` are carried for completeness;
    the threshold-form coverage does not use them.
    """

    f_c_hz: float = 2e9
    p_t_dbm: float = 40.0  # 10 W
    g_db: float = 3.0
    p_min_dbm: float = -90.0
    noise_dbm: float = -174.0
    bandwidth_hz: float = 5e6

    def __post_init__(self):
        _positive("f_c_hz", self.f_c_hz)
        _positive("bandwidth_hz", self.bandwidth_hz)
        for name in ("p_t_dbm", "g_db", "p_min_dbm", "noise_dbm"):
            _finite(name, getattr(self, name))


@dataclass(frozen=True)
class LinkMetrics:
    theta_deg: float
    distance_m: float
    p_los: float
    p_nlos: float
    path_loss_db: float
    coverage_prob: float


def watts_to_dbm(p_w: float) -> float:
    return 10.0 * math.log10(p_w * 1e3)


def _check_angle(theta_deg) -> np.ndarray:
    theta = np.asarray(theta_deg, dtype=float)
    if not np.all((theta >= 0.0) & (theta <= 90.0)):
        raise DomainError(f"elevation angle must lie in [0, 90] degrees, got {theta_deg!r}",
                          field="theta_deg")
    return theta


def p_los_sigmoid(env: EnvironmentProfile, theta_deg):
    """LoS probability ``1 / (1 + a exp(-b (theta - a)))`` with theta in degrees."""
    theta = _check_angle(theta_deg)
    return _scalar_or_array(1.0 / (1.0 + env.a * np.exp(-env.b * (theta - env.a))))


def p_nlos(p_los):
    p = np.asarray(p_los, dtype=float)
    if not np.all((p >= 0.0) & (p <= 1.0)):
        raise DomainError(f"probability must lie in [0, 1], got {p_los!r}", field="p_los")
    return _scalar_or_array(1.0 - p)


def p_los_powerlaw_angle(params: PowerLawLosParams, theta_deg):
    theta = _check_angle(theta_deg)
    return _scalar_or_array(np.clip(params.a2 * np.radians(theta) ** params.b2, 0.0, 1.0))


def p_los_powerlaw(params: PowerLawLosParams, uav: Point3, user: GroundPoint) -> float:
    """Power-law LoS probability of the UAV-user link, clamped to [0, 1]."""
    return p_los_powerlaw_angle(params, elevation_angle_deg(user, uav))


def los_probability(env: EnvironmentProfile, theta_deg):
    """LoS probability under whichever model ``env`` selects."""
    if env.powerlaw is not None:
        return p_los_powerlaw_angle(env.powerlaw, theta_deg)
    return p_los_sigmoid(env, theta_deg)


def fspl_db(f_c_hz, distance_m):
    """Free-space path loss ``20 log10(4 pi f d / c)`` in dB."""
    f = np.asarray(f_c_hz, dtype=float)
    d = np.asarray(distance_m, dtype=float)
    if not np.all(f > 0):
        raise DomainError(f"carrier frequency must be > 0, got {f_c_hz!r}", field="f_c_hz")
    if not np.all(d > 0):
        raise DomainError(f"distance must be > 0, got {distance_m!r}", field="distance_m")
    return _scalar_or_array(20.0 * np.log10(4.0 * np.pi * f * d / SPEED_OF_LIGHT))


def mean_path_loss_db(env: EnvironmentProfile, radio: RadioConfig, theta_deg, distance_m):
    """Free-space loss plus the LoS/NLoS-weighted excess loss, in dB."""
    pl = los_probability(env, theta_deg)
    return _scalar_or_array(
        fspl_db(radio.f_c_hz, distance_m)
        + pl * env.mu_los_db
        + (1.0 - np.asarray(pl)) * env.mu_nlos_db
    )


def q_function(x):
    """Gaussian tail probability P(N(0, 1) > x)."""
    return _scalar_or_array(0.5 * erfc(np.asarray(x, dtype=float) / math.sqrt(2.0)))


def coverage_probability(env: EnvironmentProfile, radio: RadioConfig, theta_deg, distance_m):
    """Probability that received power clears ``p_min_dbm`` under shadowing.

    Each propagation state contributes its own excess loss on top of the
    free-space loss; the shadowing spreads enter as standard deviations.
    """
    pl = np.asarray(los_probability(env, theta_deg))
    margin = radio.p_min_dbm + fspl_db(radio.f_c_hz, distance_m) - radio.p_t_dbm - radio.g_db
    cov = (pl * q_function((margin + env.mu_los_db) / env.sigma_los_db)
           + (1.0 - pl) * q_function((margin + env.mu_nlos_db) / env.sigma_nlos_db))
    return _scalar_or_array(cov)


def link_metrics(env: EnvironmentProfile, radio: RadioConfig, theta_deg: float,
                 distance_m: float) -> LinkMetrics:
    p = los_probability(env, theta_deg)
    return LinkMetrics(
        theta_deg=theta_deg,
        distance_m=distance_m,
        p_los=p,
        p_nlos=p_nlos(p),
        path_loss_db=mean_path_loss_db(env, radio, theta_deg, distance_m),
        coverage_prob=coverage_probability(env, radio, theta_deg, distance_m),
    )


def evaluate_link(env: EnvironmentProfile, radio: RadioConfig, uav: Point3,
                  user: GroundPoint) -> LinkMetrics:
    """All channel quantities of one UAV-user link, from one angle and distance."""
    return link_metrics(env, radio, elevation_angle_deg(user, uav), distance_3d(uav, user))
