"""Run configuration: INI file with [services], [limits] and [paths]
sections, overridden by ``PHISHSET_<SECTION>_<KEY>`` environment variables
and finally by command-line flags.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field, fields
from datetime import date
from pathlib import Path

from .errors import ServiceTimeout

ENV_PREFIX = "PHISHSET_"
SECTIONS = {
    "services": ("whois_server", "rank_list", "search_index_url", "page_rank_api_key", "user_agent"),
    "limits": ("service_timeout_ms", "fetch_timeout_ms", "rate_per_second", "probe_cap", "workers", "max_redirects"),
    "paths": ("snapshots", "page_fixtures", "external_fixtures", "redirect_fixtures", "link_fixtures", "output_dir"),
}


@dataclass
class RunConfig:
    offline: bool = False
    seed: int = 0
    # services
    whois_server: str = "whois.iana.org"
    rank_list: str | None = None
    search_index_url: str | None = None
    page_rank_api_key: str | None = None
    user_agent: str | None = None
    # limits
    service_timeout_ms: int = 10_000
    fetch_timeout_ms: int = 10_000
    rate_per_second: float = 1.0
    probe_cap: int = 30
    workers: int = 1
    max_redirects: int = 10
    # paths
    snapshots: str | None = None
    page_fixtures: str | None = None
    external_fixtures: str | None = None
    redirect_fixtures: str | None = None
    link_fixtures: str | None = None
    output_dir: str = "."
    query_date: date | None = None
    extras: dict = field(default_factory=dict)

    @classmethod
    def load(cls, path=None, env=None, **overrides) -> "RunConfig":
        env = os.environ if env is None else env
        values: dict = {}
        if path:
            parser = configparser.ConfigParser()
            if not parser.read(path, encoding="utf-8"):
                raise FileNotFoundError(f"config file {path} not found")
            for section, keys in SECTIONS.items():
                if parser.has_section(section):
                    for key in keys:
                        if parser.has_option(section, key):
                            values[key] = parser.get(section, key)
        for section, keys in SECTIONS.items():
            for key in keys:
                name = f"{ENV_PREFIX}{section.upper()}_{key.upper()}"
                if name in env:
                    values[key] = env[name]
        if f"{ENV_PREFIX}OFFLINE" in env:
            values["offline"] = env[f"{ENV_PREFIX}OFFLINE"].lower() in ("1", "true", "yes")
        values.update({k: v for k, v in overrides.items() if v is not None})
        types = {f.name: f.type for f in fields(cls)}
        config = cls()
        for key, value in values.items():
            setattr(config, key, _coerce(value, types.get(key, "str")))
        return config

    def service_timeout(self) -> float:
        return self.service_timeout_ms / 1000


def _coerce(value, annotation):
    if not isinstance(value, str):
        return value
    annotation = str(annotation)
    if annotation.startswith("bool"):
        return value.lower() in ("1", "true", "yes", "on")
    if annotation.startswith("int"):
        return int(value)
    if annotation.startswith("float"):
        return float(value)
    if annotation.startswith("date"):
        return date.fromisoformat(value)
    return value


def _unavailable(name):
    def call(*_):
        raise ServiceTimeout(f"{name} is not configured")

    return call


def build_resources(config: RunConfig):
    """Extraction resources for a run: fixtures when offline, live clients otherwise."""
    from .features.context import ExtractionResources
    from .net import (FixtureLinkProber, FixtureRedirectProber, LiveLinkProber, LiveRedirectProber,
                      RateLimiter)
    from .services import (ExternalServiceClients, HttpJson, LiveDns, LiveWhois, RankList,
                           open_page_rank)

    timeout = config.service_timeout()
    limiter = RateLimiter(config.rate_per_second)
    if config.offline or config.external_fixtures:
        clients = (ExternalServiceClients.from_fixture(config.external_fixtures) if config.external_fixtures
                   else ExternalServiceClients.unavailable())
    else:
        clients = ExternalServiceClients(
            whois=LiveWhois(timeout, limiter, config.whois_server),
            dns=LiveDns(timeout),
            traffic_rank=RankList(config.rank_list) if config.rank_list else _unavailable("traffic rank"),
            search_index=(HttpJson(config.search_index_url, timeout=timeout, limiter=limiter, cast=bool)
                          if config.search_index_url else _unavailable("search index")),
            page_rank=(open_page_rank(config.page_rank_api_key, timeout, limiter)
                       if config.page_rank_api_key else _unavailable("page rank")),
        )
    if config.offline or config.redirect_fixtures:
        redirects = (FixtureRedirectProber.from_file(config.redirect_fixtures) if config.redirect_fixtures
                     else FixtureRedirectProber())
    else:
        redirects = LiveRedirectProber(timeout, config.max_redirects, limiter)
    if config.offline or config.link_fixtures:
        links = FixtureLinkProber.from_file(config.link_fixtures) if config.link_fixtures else FixtureLinkProber()
    else:
        links = LiveLinkProber(timeout, limiter)
    resources = ExtractionResources(redirect_prober=redirects, link_prober=links, clients=clients,
                                    probe_cap=config.probe_cap)
    if config.query_date:
        resources.query_date = config.query_date
    return resources


def build_fetcher(config: RunConfig):
    from .net import RateLimiter
    from .snapshot import FetchPolicy, FixtureFetcher, LiveFetcher

    if config.offline or config.page_fixtures:
        return FixtureFetcher.from_file(config.page_fixtures) if config.page_fixtures else FixtureFetcher({})
    policy = FetchPolicy(timeout=config.fetch_timeout_ms / 1000,
                         **({"user_agent": config.user_agent} if config.user_agent else {}))
    return LiveFetcher(policy, RateLimiter(config.rate_per_second))


def output_path(config: RunConfig, name: str) -> Path:
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out / name
