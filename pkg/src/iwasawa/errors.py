"""Exception hierarchy shared by every layer of the package."""


class IwasawaError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(IwasawaError, ValueError):
    """Operands live in incompatible rings (different p or precision)."""


class DomainError(IwasawaError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class NotAUnit(IwasawaError, ArithmeticError):
    """Inversion was requested for an element of positive valuation."""


class InconsistentInput(IwasawaError, ValueError):
    """Input data cannot come from any actual extension of number fields."""


class PrecisionExhausted(IwasawaError, ArithmeticError):
    """A quantity stayed invisible even at the maximum working precision."""


class ParseError(IwasawaError, ValueError):
    """A fixture document does not match the schema.

    ``path`` is a JSONPath-like pointer to the offending node.
    """

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


class ValidationError(IwasawaError, ValueError):
    """A well-formed record violates a semantic invariant."""
