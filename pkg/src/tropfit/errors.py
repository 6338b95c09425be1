"""Exception hierarchy shared by the library and the CLI."""


class TropicalError(Exception):
    """Base class for all errors raised by tropfit."""


class TagMismatchError(TropicalError, TypeError):
    """Operands belong to different semifields."""


class DomainError(TropicalError, ValueError):
    """A value lies outside the domain of an operation (zero inverse, bad sample, ...)."""


class DimensionError(TropicalError, ValueError):
    """Vector or matrix shapes do not conform."""


class UnboundedError(DomainError):
    """A polynomial has no minimum: its infimum is the semifield zero and is not attained."""


class GuardError(TropicalError):
    """A brute-force computation was refused because the instance is too large."""
