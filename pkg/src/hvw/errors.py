"""Exception hierarchy shared across the workbench.

Everything raised on purpose derives from :class:`WorkbenchError`, so callers
(and the CLI) can distinguish modeling errors from genuine bugs. Input-shaped
problems (bad labels, malformed files, preconditions) derive from
:class:`InputError` and map to exit code 2 on the command line.
"""

from __future__ import annotations

from fractions import Fraction


class WorkbenchError(Exception):
    """Base class for all deliberate errors raised by this package."""


class InputError(WorkbenchError):
    """A caller-supplied model, event, file, or argument is unusable."""


class ModelFormatError(InputError):
    """A model file or weight table is structurally malformed."""


class UnknownLabelError(InputError):
    """A site, measurement, outcome, or hidden-state label is not declared."""


class NegativeWeightError(InputError):
    """A probability weight is negative."""

    def __init__(self, key: object, value: Fraction) -> None:
        super().__init__(f"negative weight {value} at {key}")
        self.key = key
        self.value = value


class WeightSumError(InputError):
    """The weight table does not sum to 1. Names the exact deficit."""

    def __init__(self, total: Fraction) -> None:
        deficit = 1 - total
        if deficit > 0:
            detail = f"short by {deficit}"
        else:
            detail = f"over by {-deficit}"
        super().__init__(f"weights sum to {total}, not 1 ({detail})")
        self.total = total
        self.deficit = deficit


class SignatureMismatchError(InputError):
    """Two models do not share the same site signature."""


class NullConditioningError(WorkbenchError):
    """A conditional probability was requested on a probability-zero event."""


class SizeGuardError(WorkbenchError):
    """An enumeration would exceed the configured size guard."""

    def __init__(self, what: str, size: int, guard: int) -> None:
        super().__init__(f"{what} would enumerate {size} items, over the guard of {guard}")
        self.size = size
        self.guard = guard
