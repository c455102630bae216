"""Exception hierarchy shared by all modules."""


class GeometryError(Exception):
    """Base class for every error raised by this package."""


class InputError(GeometryError, ValueError):
    """Non-finite or malformed input."""


class DomainError(GeometryError, ValueError):
    """Point lies outside the chart, the tube, or the admissible t-range."""


class SingularProfileError(DomainError):
    """Evaluation requested inside the guard band of a removable or genuine singularity."""


class InadmissibleProfileError(DomainError):
    """The positivity conditions u > 0 and u + 2tv > 0 fail."""


class OracleError(GeometryError, ValueError):
    """A finite-difference stencil does not fit inside the valid domain."""


class ConfigError(GeometryError, ValueError):
    """Rejected run configuration."""
