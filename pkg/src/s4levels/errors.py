"""Exception hierarchy shared by all modules.

Input errors mean the caller handed us bad data; internal errors mean a
consistency guarantee was violated and should be surfaced loudly, never
swallowed.
"""


class S4Error(Exception):
    """Base class for all package errors."""


class InputError(S4Error):
    """Invalid user input (CLI exit code 2)."""


class InternalError(S4Error):
    """Violated internal consistency guarantee (CLI exit code 3)."""


# -- numberfield ------------------------------------------------------------

class NotSquareFree(InputError):
    def __init__(self, value: int):
        self.value = value
        super().__init__(f"{value} is not square-free")


class DegenerateField(InputError):
    pass


class NoPatternMatch(InternalError):
    pass


class NonIntegralStructure(InternalError):
    pass


# -- finring ----------------------------------------------------------------

class ChainTooShort(InternalError):
    pass


# -- factor2 ----------------------------------------------------------------

class NoMaximalIdeal(InternalError):
    pass


class InconsistentFactorization(InternalError):
    pass


# -- level ------------------------------------------------------------------

class UnsupportedEF(InputError):
    pass


class AlphaTooSmall(InternalError):
    pass


class NoSubcase(InternalError):
    pass


class AmbiguousSubcase(InternalError):
    pass


# -- oracle -----------------------------------------------------------------

class CapExceeded(InternalError):
    pass


# -- cli --------------------------------------------------------------------

class VerificationFailure(InternalError):
    """Theorem value and brute-force value disagree (CLI exit code 3)."""
