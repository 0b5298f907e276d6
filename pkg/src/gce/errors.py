"""Exception types shared across the package."""


class GceError(ValueError):
    """Base class for every domain error raised by this package."""


class MalformedInputError(GceError):
    """Input is structurally invalid: wrong shape, bad JSON, or outside its domain."""


class UnphysicalStateError(GceError):
    """A matrix or standard form fails the requirements for a physical state."""


class OutOfRegionError(GceError):
    """Parameters lie outside the region where the requested quantity is defined."""


class InactiveBranchError(OutOfRegionError):
    """A closed-form branch was requested outside the regime where it applies."""


class ConfigurationError(GceError):
    """Sampler or environment configuration is invalid."""
