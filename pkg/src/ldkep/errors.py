"""Exception hierarchy shared by every module in the package."""


class LdkepError(Exception):
    """Base class for all package errors."""


class SizeLimitError(LdkepError):
    """A size parameter exceeds a configured cap."""


class DomainError(LdkepError, ValueError):
    """An argument lies outside the domain of an operation."""


class StructureError(LdkepError, ValueError):
    """Inconsistent lengths or shapes among related arguments."""


class PoolError(LdkepError, KeyError):
    """An operation id cannot be resolved in the given pools."""

    def __str__(self):
        return Exception.__str__(self)


class ConfigurationError(LdkepError, ValueError):
    """An unsupported or invalid platform / protocol configuration."""


class ProtocolError(LdkepError, ValueError):
    """A protocol message does not match the public parameters."""
