"""Feature-name -> function registry; each function maps a context to one value."""

from __future__ import annotations

from collections.abc import Callable

from .catalog import feature

REGISTRY: dict[str, Callable] = {}


def register(*refs):
    """Register ``fn(ctx)`` as the extractor of the listed features (name or ``fN``)."""

    def deco(fn):
        for ref in refs:
            REGISTRY[feature(ref).name] = fn
        return fn

    return deco
