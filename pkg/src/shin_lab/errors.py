"""Exception hierarchy for shin-lab.

Every failure mode that callers are expected to handle gets its own class;
anything else is a plain ValueError/RuntimeError from the offending layer.
"""


class ShinLabError(Exception):
    """Base class for all library-specific errors."""


class DomainError(ShinLabError, ValueError):
    """Argument outside the mathematical domain of the operation."""


class TieUnresolvedError(ShinLabError):
    """A guarded ceiling/floor could not separate the value from an integer.

    Raised only after precision escalation hit its cap with an integer still
    inside the error interval.  Never silently rounded.
    """


class UndecidableComparisonError(ShinLabError):
    """A certified comparison could not be decided at the current precision.

    This is the escalation-request signal: callers retry at higher precision
    or give up and report.
    """


class PrecisionEscalationError(ShinLabError):
    """Escalation cap reached before the requested error bound was met."""


class BranchCutError(DomainError):
    """Evaluation requested on the branch cut; use a boundary-value routine."""


class BranchPointError(BranchCutError):
    """Evaluation requested at a branch point, where no finite value exists."""


class StructuralAnomalyError(ShinLabError):
    """The interval-length series violated its documented structure.

    Raised when a scan observes a length outside {8, 9} or an eight-slot of
    the running schedule holding a nine; either event would falsify the
    series bookkeeping rather than merely extend it.
    """


class CapExceededError(DomainError):
    """A configured size cap (e.g. exact-evaluation index cap) was exceeded."""
