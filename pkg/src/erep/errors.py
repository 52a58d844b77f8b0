"""Exception hierarchy shared by the planning modules."""


class EREPError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameterError(EREPError, ValueError):
    pass


class DomainError(EREPError, ValueError):
    """An argument lies outside the domain of a model function."""


class InfeasibleScenarioError(EREPError):
    """The scenario cannot be served; the CLI maps these to exit code 1."""


class InfeasibleDemandError(InfeasibleScenarioError):
    pass


class NoIntersectionError(InfeasibleScenarioError):
    pass


class PowerLimitError(InfeasibleScenarioError):
    pass


class EmptyRegionError(EREPError, ValueError):
    pass


class SeparationError(EREPError):
    """Random placement could not honour the minimum FAP separation."""
