"""Exception types shared across the package."""


class NelsonlabError(Exception):
    """Base class for all package errors."""


class InputError(NelsonlabError, ValueError):
    """An argument fails its documented preconditions."""


class DomainError(InputError):
    """A parameter lies outside its mathematically admissible range."""


class EmptyMaskError(InputError):
    """No grid node carries enough density to define the requested field."""


class UnsupportedConfigError(NelsonlabError):
    """The requested combination of mode/state is outside the supported contract."""


class NumericalBreakdownError(NelsonlabError, RuntimeError):
    """A linear solve or simulation step produced non-finite results."""


class InstabilityError(NumericalBreakdownError):
    """A density evolution went measurably negative; reduce the time step."""
