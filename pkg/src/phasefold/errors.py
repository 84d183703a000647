"""Exception types raised across the phasefold package."""


class PhasefoldError(Exception):
    """Base class for all phasefold errors."""


class InvalidPeriodError(PhasefoldError, ValueError):
    """Period length is not strictly positive."""


class PeriodOutOfRangeError(PhasefoldError, ValueError):
    """Period length falls outside the valid [lower bound, extent] range."""


class MissingAttributeError(PhasefoldError, KeyError):
    """An aggregation references an attribute column the series does not have."""


class TooManyRowsError(PhasefoldError, ValueError):
    """A detail matrix would exceed the configured row cap.

    Pick a larger period length or a coarser view.
    """


class EmptyDatasetError(PhasefoldError, ValueError):
    """A load or derivation produced zero events."""


class EmptyLadderError(PhasefoldError, ValueError):
    """The requested sampling range admits no period lengths."""


class DatasetNotFoundError(PhasefoldError, KeyError):
    """Catalog lookup for an unknown dataset id."""


class SchemaError(PhasefoldError, ValueError):
    """An input file does not match the expected column schema."""


class RowParseError(SchemaError):
    """A specific row of an input file could not be parsed."""

    def __init__(self, message: str, row: int):
        super().__init__(message)
        self.row = row
