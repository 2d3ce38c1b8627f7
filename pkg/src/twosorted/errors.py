"""Exception hierarchy.

Input errors (bad text, bad JSON, sort mismatches) derive from
:class:`InputError`; failures that only show up when a well-formed
expression is evaluated or decided derive from :class:`SemanticError`.
The CLI maps the two families to different exit statuses.
"""


class TwoSortedError(Exception):
    """Base class for all errors raised by this package."""


class InputError(TwoSortedError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        super().__init__(message if pos is None else f"{message} at offset {pos}")


class SortError(InputError):
    """A number-sort expression was used where a function-sort one was needed, or vice versa."""


class ArityError(InputError):
    pass


class SyntaxConditionError(InputError):
    """A syntactic precondition (e.g. a variable occurrence restriction) failed."""


class SemanticError(TwoSortedError):
    pass


class UnboundVariableError(SemanticError):
    pass


class UnsupportedConstantError(SemanticError):
    pass


class UndecidableFormulaError(SemanticError):
    """The formula is outside the quantifier-free / bounded fragment."""


class NoWitnessError(SemanticError):
    pass


class SchemaError(SemanticError):
    """A schema side condition failed; ``condition`` names it."""

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        super().__init__(condition if not detail else f"{condition}: {detail}")


class LanguageError(SemanticError):
    pass


class ValueTooLarge(SemanticError):
    """A value would exceed the evaluator's size limit."""


class InvariantViolation(TwoSortedError):
    """An internal consistency check failed; always a bug."""
