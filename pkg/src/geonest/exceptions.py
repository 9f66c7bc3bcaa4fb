"""Exception hierarchy shared by every geonest module."""


class GeonestError(Exception):
    """Base class for all library errors."""


class UsageError(GeonestError, ValueError):
    """Raised when a function is called with arguments violating its contract."""


class ConfigError(UsageError):
    """Raised for invalid or unreadable run configuration."""


class DegenerateInputError(UsageError):
    """Raised when a vector is too short to be projected onto the sphere."""


class ModelMisconfigurationError(GeonestError, RuntimeError):
    """Raised when a model cannot be sampled, e.g. zero likelihood everywhere."""


class KernelError(GeonestError, RuntimeError):
    """Raised when the sampling kernel reaches a state that should be impossible."""
