"""Exception taxonomy shared by all modules."""


class C4LabError(Exception):
    """Base class for all library errors."""


class DomainError(C4LabError, ValueError):
    """Input violates a documented precondition (bad vertex id, empty graph, ...)."""


class UnsupportedParameterError(C4LabError, ValueError):
    """Parameter outside the supported desk-scale range (non-prime q, scale caps)."""


class ParameterError(C4LabError, ValueError):
    """Parameter is structurally too demanding for the given input (e.g. r too large)."""


class OracleLimitError(C4LabError):
    """Instance exceeds the exhaustive-oracle size limit."""


class NotBiregularError(C4LabError, ValueError):
    """Bipartite input fails the declared almost-biregularity factor."""


class GenerationFailure(C4LabError):
    """Randomized generator exhausted its retry budget (parameters too dense)."""


class ExtractionFailure(C4LabError):
    """Las Vegas routine exhausted its retry budget.

    `best` carries the best verified-but-below-target attempt, when one exists.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class KernelFailure(C4LabError):
    """Kernel extraction exhausted its retry budget; `best` holds diagnostics."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class StaleCertificateError(C4LabError):
    """Certificate digest does not match the graph it is being verified against."""
