"""Shared exception types.

The CLI maps these onto exit codes: parse problems are domain errors (1),
violated call preconditions on user-typed arguments are usage errors (2).
"""


class PreconditionError(ValueError):
    """An operation was called outside its stated domain."""


class DegreeOrderError(PreconditionError):
    """A pair of degrees was not componentwise ordered as required."""


class AmbientMismatchError(PreconditionError):
    """Operands live over different fields, parameter counts, or dimensions."""


class HomogeneityError(ValueError):
    """A presentation or map has a coefficient its degrees cannot carry."""


class UnknownNameError(KeyError):
    """No built-in example is registered under the requested name."""


class NotLocallyEpicError(PreconditionError):
    """The map does not become surjective after inverting the variables."""


class DecompositionError(RuntimeError):
    """Internal inconsistency while decomposing (negative multiplicity)."""


class ParseError(ValueError):
    """A file or literal failed validation; message carries the location."""
