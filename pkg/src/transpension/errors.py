from __future__ import annotations


class TranspensionError(Exception):
    pass


class LimitExceeded(TranspensionError):
    """A window or search grew past the configured caps."""


class WindowEscape(TranspensionError):
    """A construction needed an object outside the materialized window."""


class MissingPullbacks(TranspensionError):
    pass


class NotQuantifiable(TranspensionError):
    pass


class UnknownEntry(TranspensionError):
    pass


class BadParams(TranspensionError):
    pass


class UnsupportedCell(TranspensionError):
    pass


class ConfigError(TranspensionError):
    def __init__(self, message, location=None):
        super().__init__(message if location is None else f"{location}: {message}")
        self.location = location


class InvalidStructure(TranspensionError):
    """Raised by loaders and constructors when laws fail."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
