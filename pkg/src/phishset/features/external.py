"""External-service features f81-f87.

Any service failure yields the sentinel for the fields that depend on it and
never stops the rest of the extraction.
"""

from __future__ import annotations

import math
from datetime import date

from ..errors import NetworkForbidden, ServiceTimeout
from ..services import ExternalServiceClients
from ..urls import UrlParts
from .catalog import SENTINEL
from .context import ExtractionResources, FeatureContext
from .registry import REGISTRY, register

_FAILURES = (ServiceTimeout, NetworkForbidden, OSError)
PAGE_RANK_MAX = 10.0


def _call(ctx: FeatureContext, name: str, arg: str):
    service = getattr(ctx.resources.clients, name)
    return ctx.network(("service", name), lambda: service(arg))


def _lookup_domain(parts: UrlParts) -> str:
    return parts.host if parts.is_ip else parts.registered_domain


def _whois(ctx):
    return _call(ctx, "whois", _lookup_domain(ctx.parts))


@register("f81")
def whois_registered_domain(ctx):
    try:
        return int(_whois(ctx) is not None)
    except _FAILURES:
        return SENTINEL


def renewal_years(expires: date, query_date: date) -> int:
    return max(0, math.ceil((expires - query_date).days / 365))


@register("f82")
def domain_registration_length(ctx):
    try:
        record = _whois(ctx)
    except _FAILURES:
        return SENTINEL
    if record is None or record.expires is None:
        return SENTINEL
    return renewal_years(record.expires, ctx.resources.query_date)


@register("f83")
def domain_age(ctx):
    try:
        record = _whois(ctx)
    except _FAILURES:
        return SENTINEL
    if record is None or record.created is None:
        return SENTINEL
    return max(0, (ctx.resources.query_date - record.created).days)


@register("f84")
def web_traffic(ctx):
    try:
        rank = _call(ctx, "traffic_rank", _lookup_domain(ctx.parts))
    except _FAILURES:
        return SENTINEL
    return 0 if rank is None else int(rank)


@register("f85")
def dns_record(ctx):
    try:
        return int(bool(_call(ctx, "dns", ctx.parts.host)))
    except _FAILURES:
        return SENTINEL


@register("f86")
def google_index(ctx):
    try:
        return int(bool(_call(ctx, "search_index", ctx.parts.full_text)))
    except _FAILURES:
        return SENTINEL


@register("f87")
def page_rank(ctx):
    try:
        value = _call(ctx, "page_rank", _lookup_domain(ctx.parts))
    except _FAILURES:
        return SENTINEL
    if value is None:
        return 0
    return min(PAGE_RANK_MAX, max(0.0, float(value)))


def _slice(parts, clients, query_date, keys):
    from .catalog import feature

    resources = ExtractionResources(clients=clients, query_date=query_date or date.today())
    ctx = FeatureContext.from_parts(parts, resources)
    return {k: REGISTRY[feature(k).name](ctx) for k in keys}


def whois_features(parts: UrlParts, clients: ExternalServiceClients, query_date: date) -> dict[str, int]:
    return _slice(parts, clients, query_date, ["f81", "f82", "f83"])


def reachability_and_reputation(parts: UrlParts, clients: ExternalServiceClients) -> dict[str, float]:
    return _slice(parts, clients, None, ["f84", "f85", "f86", "f87"])
