"""Exception types shared by all zetashift modules.

Three failure categories map onto the CLI exit codes: bad inputs
(DomainError -> exit 2), and numerical or resource failures
(NumericalError / ResourceError -> exit 3).
"""


class DomainError(ValueError):
    """An argument is outside the documented domain or violates a precondition."""


class NumericalError(ArithmeticError):
    """A computation failed to converge or produced an inconsistent result."""


class ResourceError(RuntimeError):
    """A requested computation exceeds a documented size or cost limit."""
