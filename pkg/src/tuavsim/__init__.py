"""Coverage simulation and placement for tethered-UAV aerial base stations."""
from .channel import (EnvironmentProfile, LinkMetrics, PowerLawLosParams, RadioConfig,
                      coverage_probability, evaluate_link, fspl_db, los_probability,
                      mean_path_loss_db, p_los_powerlaw, p_los_sigmoid, p_nlos, q_function)
from .errors import (CoincidentPointError, ConfigError, ConstraintViolationError, DomainError,
                     TuavError)
from .experiments import (DistanceRange, SweepRecord, SweepSpec, run_angle_sweep,
                          run_distance_sweep)
from .geometry import (AnchorSite, GroundPoint, Point3, distance_3d, elevation_angle_deg,
                       region_contains, tether_tip)
from .placement import (FixedAngleMaxTether, GridOptimized, PlacementResult, UserSet,
                        brute_force_placement, optimize_placement, place, place_fixed_angle)

__version__ = "0.1.0"
