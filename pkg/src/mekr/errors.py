"""Exception types shared by every module.

The CLI maps these onto exit codes: UsageError and ResourceError exit 2,
PropertyViolation exits 1.
"""


class MekrError(Exception):
    pass


class UsageError(MekrError, ValueError):
    """Arguments outside an operation's domain."""


class ResourceError(MekrError):
    """Instance too large for the exhaustive path that was requested."""


class PropertyViolation(MekrError):
    """A checked identity or inequality failed.

    This never happens for a correct implementation of a true statement, so it
    either means a bug or a counterexample; `witness` holds the data needed to
    reproduce it.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def __reduce__(self):
        return type(self), (str(self), self.witness)
