"""Exceptions raised by linsdel."""


class LinsdelError(Exception):
    """Base class of every error raised by the package."""


class FieldError(LinsdelError, ValueError):
    """Invalid field parameters or an operation the field cannot perform."""


class ParameterError(LinsdelError, ValueError):
    """Construction parameters violate a required relation."""


class DecodingFailure(LinsdelError):
    """No consistent codeword could be found for a received word."""

    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason


class SearchExhausted(LinsdelError):
    """A randomized search ran out of its retry budget."""


class ConfigError(LinsdelError, ValueError):
    """An experiment configuration is invalid."""


class FormatError(LinsdelError, ValueError):
    """A file does not follow the expected format."""
