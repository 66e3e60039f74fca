"""Exception types shared across the package."""


class DomainError(ValueError):
    """Evaluation requested outside the region where a formula converges."""

    def __init__(self, message, abscissa=None):
        super().__init__(message)
        self.abscissa = abscissa


class PoleError(DomainError):
    """Evaluation requested at (or too close to) a pole.

    ``location`` is the pole; ``polar_data`` optionally carries the residues.
    """

    def __init__(self, message, location=None, polar_data=None):
        super().__init__(message)
        self.location = location
        self.polar_data = polar_data


class ConfigError(ValueError):
    """Invalid user-facing configuration (CLI flags, character specs)."""
