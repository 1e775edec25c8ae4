"""Exception hierarchy shared by the whole package.

All errors raised on purpose derive from :class:`QsoError`, so callers (and
the command line front end) can tell user mistakes apart from genuine bugs.
Budget overruns get their own class because they map to a distinct exit
code: an exponential enumeration that would not finish is reported loudly
instead of hanging.
"""


class QsoError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(QsoError):
    """Syntax or well-formedness error in a formula or structure text.

    ``start`` and ``end`` are byte offsets into the offending input.
    """

    def __init__(self, message: str, start: int | None = None, end: int | None = None):
        super().__init__(message)
        self.start = start
        self.end = end

    def __str__(self) -> str:
        base = super().__str__()
        if self.start is not None:
            return f"{base} (at offset {self.start})"
        return base


class EvalError(QsoError):
    """Raised when a formula cannot be evaluated on the given structure:
    unbound variables or symbols, signature mismatches, or a max/min
    quantifier over an empty domain."""


class FragmentError(QsoError):
    """Raised when an operation's input falls outside the syntactic fragment
    the operation is defined for."""


class BudgetExceededError(QsoError):
    """Raised when an enumeration or rewriting step would exceed the
    configured size budget."""
