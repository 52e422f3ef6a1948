"""Exception types shared across the toolkit."""


class WirecalError(Exception):
    """Base class for all toolkit errors."""


class ParseError(WirecalError):
    """A log or capture file is malformed.

    Carries the offending path and 1-based line number when known.
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = f"{path}: "
        if line is not None:
            prefix += f"line {line}: "
        super().__init__(prefix + message)


class AlignmentError(WirecalError):
    """Pulse count does not match inference record count for a trial."""


class ConfigError(WirecalError):
    """Invalid configuration or missing required parameter."""


class StoreConflictError(WirecalError):
    """A session key already exists with different content."""


class QuantizationWarning(UserWarning):
    """Timestamps are not on the declared sample grid."""
