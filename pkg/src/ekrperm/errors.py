"""Exception types shared across the package."""


class DegreeRangeError(ValueError):
    """Requested degree is outside the range an operation supports."""


class UnsupportedConstructionError(ValueError):
    """No construction is available for the requested parameters."""


class FamilyValidationError(ValueError):
    """A supplied family violates the property it was claimed to have."""
