"""Exception types shared across the package."""


class FormatError(ValueError):
    """A file or byte stream does not match its declared format."""


class LengthError(FormatError):
    """A payload is shorter than its header claims."""


class DegenerateInputError(ValueError):
    """Input that cannot be normalized, e.g. an all-zero image."""
