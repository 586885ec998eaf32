"""Exception hierarchy shared by every tuavsim module."""


class TuavError(Exception):
    """Base class for all errors raised by tuavsim."""


class DomainError(TuavError, ValueError):
    """An input lies outside the domain of a model function.

    ``field`` names the offending parameter when it is known, so that the
    configuration loader can report a full field path.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class CoincidentPointError(DomainError):
    """Elevation angle requested between two coincident ground-level points."""


class ConstraintViolationError(DomainError):
    """A tether length or angle lies outside the admissible hovering region."""


class ConfigError(TuavError):
    """Invalid or unreadable scenario configuration."""
