"""Executable presheaf semantics of multipliers and the transpension type."""
from __future__ import annotations

from .errors import (BadParams, ConfigError, InvalidStructure, LimitExceeded, MissingPullbacks,
                     NotQuantifiable, TranspensionError, UnknownEntry, UnsupportedCell, WindowEscape)

__version__ = "0.1.0"

__all__ = ["BadParams", "ConfigError", "InvalidStructure", "LimitExceeded", "MissingPullbacks",
           "NotQuantifiable", "TranspensionError", "UnknownEntry", "UnsupportedCell", "WindowEscape",
           "__version__"]
