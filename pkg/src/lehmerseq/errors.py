"""Exception hierarchy shared by every module.

The CLI maps these onto its exit codes: input problems (``DomainError``,
``ParseError``) exit 2, resource caps exit 3, and mathematical failures
(``ConsistencyError``, ``DecompositionError``, ``OrderTooLowError``) exit 1.
"""


class LehmerSeqError(Exception):
    pass


class DomainError(LehmerSeqError, ValueError):
    """Input outside the documented domain of an operation."""


class ParseError(DomainError):
    pass


class ResourceError(LehmerSeqError, RuntimeError):
    """A configured work, degree or precision cap was exceeded."""


class ConsistencyError(LehmerSeqError, ArithmeticError):
    """An identity that must hold exactly failed.  Never expected."""


class DecompositionError(LehmerSeqError, ArithmeticError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class OrderTooLowError(LehmerSeqError, ArithmeticError):
    pass
