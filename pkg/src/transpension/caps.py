"""Enumeration caps, overridable through the TRANSPENSION_CAPS variable.

The variable holds either a JSON object or ``key=value`` pairs separated by
commas, e.g. ``objects=128,morphisms=8192``.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields, replace

from .errors import ConfigError, LimitExceeded


@dataclass(frozen=True)
class Caps:
    objects: int = 64
    morphisms: int = 4096
    composition: int = 2_000_000
    solutions: int = 200_000
    search_nodes: int = 5_000_000
    cells: int = 20_000
    # slices and categories of elements built on top of a window
    derived_objects: int = 8192
    derived_morphisms: int = 262144

    def check(self, what, value):
        limit = getattr(self, what)
        if value > limit:
            raise LimitExceeded(f"{what}: {value} exceeds cap {limit}")


def parse_caps(text):
    if not text or not text.strip():
        return {}
    text = text.strip()
    if text.startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad JSON: {exc}", "TRANSPENSION_CAPS") from None
    else:
        raw = {}
        for part in text.split(","):
            if "=" not in part:
                raise ConfigError(f"expected key=value, got {part!r}", "TRANSPENSION_CAPS")
            key, value = part.split("=", 1)
            raw[key.strip()] = value.strip()
    known = {f.name for f in fields(Caps)}
    out = {}
    for key, value in raw.items():
        if key not in known:
            raise ConfigError(f"unknown cap {key!r}", "TRANSPENSION_CAPS")
        try:
            out[key] = int(value)
        except (TypeError, ValueError):
            raise ConfigError(f"cap {key} must be an integer", "TRANSPENSION_CAPS") from None
        if out[key] <= 0:
            raise ConfigError(f"cap {key} must be positive", "TRANSPENSION_CAPS")
    return out


_current = None


def get_caps():
    global _current
    if _current is None:
        _current = replace(Caps(), **parse_caps(os.environ.get("TRANSPENSION_CAPS", "")))
    return _current


def set_caps(caps):
    global _current
    _current = caps


def reset_caps():
    global _current
    _current = None
