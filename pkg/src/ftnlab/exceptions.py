"""Exception types shared across the library."""


class ParameterError(ValueError):
    """An argument violates its documented constraint; message names the field."""


class ShapeError(ValueError):
    """Array dimensions do not match the operation's contract."""


class FramingError(ValueError):
    """A bit vector or sample stream is inconsistent with the frame layout."""


class ConfigError(ValueError):
    """A configuration file is unreadable, malformed, or violates a constraint."""


class ExportError(OSError):
    """Result export/import failed; message carries the path."""
