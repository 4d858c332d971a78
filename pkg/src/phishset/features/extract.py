"""Full 87-value extraction in canonical order."""

from __future__ import annotations

import logging

from ..snapshot import PageSnapshot
from ..urls import RawUrl
from . import content, external, lexical  # noqa: F401  (registers the feature functions)
from .catalog import FEATURES
from .context import ExtractionResources, FeatureContext
from .registry import REGISTRY

log = logging.getLogger(__name__)

assert len(REGISTRY) == len(FEATURES), sorted(set(f.name for f in FEATURES) - set(REGISTRY))


def compute(ctx: FeatureContext, info) -> float:
    """Value of one feature; content features read 0 when the page has no DOM."""
    if info.group == "IC" and ctx.dom is None:
        return 0
    return REGISTRY[info.name](ctx)


def extract_context(ctx: FeatureContext) -> list[float]:
    if ctx.snapshot is not None and ctx.dom is None:
        log.warning("no usable page for %s (status %s); content features zeroed", ctx.url, ctx.snapshot.http_status)
    return [compute(ctx, info) for info in FEATURES]


def extract_vector(url: str | RawUrl, resources: ExtractionResources | None = None,
                   snapshot: PageSnapshot | None = None) -> list[float]:
    return extract_context(FeatureContext(url, resources, snapshot))
