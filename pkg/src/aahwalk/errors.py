"""Exception types shared across the package."""


class AahwalkError(Exception):
    """Base class for package errors."""


class ConfigError(AahwalkError):
    """Invalid experiment configuration (bad field, unknown key, ...)."""


class ResourceLimitError(AahwalkError):
    """Requested dense object exceeds the configured size guard."""


class LoweringRequiredError(AahwalkError):
    """A composite gate was passed where only primitive gates are accepted."""


class NonInvertibleChannelError(AahwalkError):
    """Readout confusion matrix is singular (p01 + p10 >= 1)."""
