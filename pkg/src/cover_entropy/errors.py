"""Exception hierarchy.

Each class carries the category string printed by the CLI
(``error: <category>: <detail>``) and the exit code it maps to.
"""


class CoverEntropyError(Exception):
    category = "error"
    exit_code = 1


class StructuralError(CoverEntropyError):
    """Malformed objects: unknown atom ids, overlapping cells, missing labels."""

    category = "structural"
    exit_code = 3


class ValidationError(CoverEntropyError):
    category = "validation"
    exit_code = 3


class PreconditionError(ValidationError):
    """Inputs are well formed but violate an operation's precondition."""

    category = "precondition"


class NotAcceptableError(PreconditionError):
    """A partition cell is contained in no cover set."""

    def __init__(self, cell_id: str):
        super().__init__(f"cell {cell_id!r} is contained in no cover set")
        self.cell_id = cell_id


class RefusalError(ValidationError):
    """Request refused to avoid combinatorial blowup or an impossible design."""

    category = "refused"


class DomainError(CoverEntropyError, ValueError):
    category = "domain"
    exit_code = 3


class ParameterError(CoverEntropyError, ValueError):
    category = "parameter"
    exit_code = 2


class DataError(CoverEntropyError):
    category = "data"
    exit_code = 3


class FormatError(CoverEntropyError):
    """Corrupt or truncated coded stream."""

    category = "format"
    exit_code = 3


class InternalInvariantError(CoverEntropyError):
    category = "internal"
    exit_code = 1
