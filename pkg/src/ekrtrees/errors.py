"""Exception types shared across the package."""


class EkrError(Exception):
    """Base class for all errors raised by ekrtrees."""


class CapacityError(EkrError, ValueError):
    """A graph would exceed the fixed vertex capacity."""


class PreconditionError(EkrError, ValueError):
    """An operation was called on inputs outside its domain."""


class ResourceLimitError(EkrError):
    """A configured resource cap was hit; no partial answer is returned."""

    code = "RESOURCE_LIMIT"


class EnumCapError(ResourceLimitError):
    code = "ENUM_CAP"


class SearchBudgetError(ResourceLimitError):
    code = "SEARCH_BUDGET"
