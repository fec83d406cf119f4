"""Exception taxonomy.

Every error raised by the library derives from :class:`NegdepError`.  The CLI
maps the three broad families onto process exit codes:

* :class:`InputError`   -- malformed input (bad JSON, schema violations) -> 1
* :class:`DomainError`  -- well-formed input that violates a mathematical
  precondition (mass not one, level out of range, ...) -> 2
* :class:`TooLarge`     -- an enumeration would exceed the caller's budget -> 3

:class:`IoError` (failure to read or write files) is treated as an input-level
problem by the CLI.
"""

__all__ = [
    "NegdepError",
    "DomainError",
    "InputError",
    "TooLarge",
    "IoError",
    "NonPositiveMass",
    "MassNotOne",
    "SpaceMismatch",
    "DimensionMismatch",
    "NotAPartition",
    "InvalidDistribution",
    "NotRepresentable",
    "SignViolation",
    "ArityMismatch",
    "NotPcm",
    "TooFewNonDegenerate",
    "OverlappingIndexSets",
    "NotMonotone",
    "UncoveredSupport",
    "NotCounterMonotonicPair",
    "Unsupported",
    "LevelOutOfRange",
    "ParameterOutOfRange",
    "IncompatibleAgents",
    "AllocationMismatch",
    "NotPcmType1",
    "NoMassAtEssInf",
    "NotComonotonic",
    "ParseError",
    "SchemaError",
]


class NegdepError(Exception):
    """Base class for all library errors."""


class DomainError(NegdepError):
    """A mathematical precondition was violated by otherwise readable input."""


class InputError(NegdepError):
    """Input could not be read or did not match the published format."""


class TooLarge(NegdepError):
    """An exact enumeration would exceed the configured budget."""


class IoError(NegdepError):
    """A file could not be read or written."""


# --- space construction ----------------------------------------------------

class NonPositiveMass(DomainError):
    """A probability mass was zero or negative."""


class MassNotOne(DomainError):
    """Probability masses do not sum to one."""


class SpaceMismatch(DomainError):
    """Objects defined on different probability spaces were combined."""


class DimensionMismatch(DomainError):
    """A point or vector had the wrong number of coordinates."""


class NotAPartition(DomainError):
    """Events fail to partition the sample space."""


class InvalidDistribution(DomainError):
    """A discrete distribution's support/mass description is inconsistent."""


# --- construction and decomposition ----------------------------------------

class NotRepresentable(DomainError):
    """Requested marginals cannot be realised on the given space as-is."""


class SignViolation(DomainError):
    """A scaling variable changes sign where a fixed sign is required."""


class ArityMismatch(DomainError):
    """Component counts of paired structures disagree."""


class NotPcm(DomainError):
    """The vector is not pairwise counter-monotonic."""


class TooFewNonDegenerate(DomainError):
    """Fewer than three non-degenerate components where three are required."""


class OverlappingIndexSets(DomainError):
    """Index sets overlap where disjointness (or comonotonicity) is required."""


class NotMonotone(DomainError):
    """A tabulated map is not increasing."""


class UncoveredSupport(DomainError):
    """A tabulated map is undefined at a realised input point."""


class NotCounterMonotonicPair(DomainError):
    """The pair is not counter-monotonic."""


# --- distribution classes ---------------------------------------------------

class Unsupported(DomainError):
    """The marginal class does not support the requested structure."""


# --- risk functionals and sharing -------------------------------------------

class LevelOutOfRange(DomainError):
    """A quantile level lies outside the open interval (0, 1)."""


class ParameterOutOfRange(DomainError):
    """A numeric parameter violates its stated range."""


class IncompatibleAgents(DomainError):
    """Agents' levels sum to one or more, so no optimum exists."""


class AllocationMismatch(DomainError):
    """An allocation's components do not sum to the stated total."""


class NotPcmType1(DomainError):
    """The allocation is not pairwise counter-monotonic of exceedance type."""


class NoMassAtEssInf(DomainError):
    """The aggregate carries no mass at its essential infimum."""


class NotComonotonic(DomainError):
    """The vector is not comonotonic."""


# --- input handling ----------------------------------------------------------

class ParseError(InputError):
    """Input text could not be parsed."""


class SchemaError(InputError):
    """A scenario file does not match its schema."""
