"""Exception types raised across the decision engine."""


class BcrAdaptError(Exception):
    """Base class for every error raised by this package."""


class EmptyAdaptationSpace(BcrAdaptError):
    """Enumerating the adaptation space produced no options."""


class RoleSetMismatch(BcrAdaptError):
    """Two configurations do not cover the same abstract roles."""


class MissingAttribute(BcrAdaptError):
    """A goal's quality attribute is absent from a utility mapping."""


class MissingCostEntry(BcrAdaptError):
    """The cost model has no entry for a (provider, role) pair."""


class DuplicateAttribute(BcrAdaptError):
    """A cost attribute id is already registered."""


class ZeroScaledCost(BcrAdaptError):
    """Value-for-cost is undefined when the scaled cost is zero."""


class UnratedTier(BcrAdaptError):
    """A risk metric table has no row for a provider's SLA tier."""


class EmptyRatings(BcrAdaptError):
    """A risk combinator received no ratings."""


class OutOfAxis(BcrAdaptError):
    """A likelihood or consequence rating falls outside the matrix axes."""


class MissingRiskLevel(BcrAdaptError):
    """No externally supplied risk level is available for an option."""


class NoViableOption(BcrAdaptError):
    """Every adaptation option was ruled out before selection."""


class InsufficientOptions(BcrAdaptError):
    """Crossover detection needs at least two options."""


class SinkWriteError(BcrAdaptError):
    """Writing a report to its sink failed."""


class UnboundRole(BcrAdaptError):
    """The workflow references a role the configuration does not bind."""


class TooManyPaths(BcrAdaptError):
    """Exact enumeration would exceed the path or branch budget."""


class UnknownConfiguration(BcrAdaptError):
    """A table-driven scenario has no row for the requested configuration."""


class RunCapExceeded(BcrAdaptError):
    """The adaptive estimator hit the run cap before reaching its target
    half-width. The partial result computed so far is attached."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ParseError(BcrAdaptError):
    """A scenario document is not syntactically valid JSON."""

    def __init__(self, message, path="/"):
        super().__init__(f"{path}: {message}")
        self.path = path


class ValidationError(BcrAdaptError):
    """A scenario document violates the schema; `path` points at the field."""

    def __init__(self, message, path="/"):
        super().__init__(f"{path}: {message}")
        self.path = path
