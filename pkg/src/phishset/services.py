"""External-service clients (WHOIS, DNS, traffic rank, search index, page rank).

Each service is a callable.  Fixture clients replay a JSON file of the form::

    {"example.com": {"whois": {"created": "2015-03-01", "expires": "2021-03-01"},
                     "dns": true, "rank": 1500, "indexed": true, "pagerank": 6}}

A field set to ``"timeout"`` (or a domain absent from the file) emulates an
unavailable service.  Live clients honour a timeout and a shared rate limiter
and refuse to run under :func:`phishset.net.offline_guard`.
"""

from __future__ import annotations

import concurrent.futures
import csv
import json
import re
import socket
import time
from dataclasses import dataclass
from datetime import date

from .errors import ServiceTimeout
from .net import UNLIMITED, RateLimiter, require_online


@dataclass(frozen=True)
class WhoisRecord:
    created: date | None
    expires: date | None


def _as_date(value) -> date | None:
    if value in (None, ""):
        return None
    if isinstance(value, date):
        return value
    m = re.search(r"(\d{4})-(\d{2})-(\d{2})", str(value))
    if not m:
        raise ValueError(f"unrecognised date {value!r}")
    return date(int(m[1]), int(m[2]), int(m[3]))


class FixtureServices:
    """All five services backed by one fixture mapping.

    Records are keyed by URL, host or registered domain and hold ``whois``
    (``{"created", "expires"}`` or null), ``dns``, ``rank``, ``indexed`` and
    ``pagerank``; a missing field or the string ``"timeout"`` raises
    :class:`ServiceTimeout`.
    """

    def __init__(self, records: dict, latency: float = 0.0):
        self.records = {k.lower(): v for k, v in records.items()}
        self.latency = latency

    @classmethod
    def from_file(cls, path, latency: float = 0.0):
        with open(path, encoding="utf-8") as fh:
            return cls(json.load(fh), latency)

    def _candidates(self, key: str):
        from .urls import parse_url

        yield key.lower()
        try:
            parts = parse_url(key)
        except ValueError:
            return
        yield parts.host
        yield parts.registered_domain

    def _field(self, key: str, name: str):
        if self.latency:
            time.sleep(self.latency)
        entry = next((self.records[k] for k in self._candidates(key) if k in self.records), None)
        if entry is None or name not in entry or entry[name] == "timeout":
            raise ServiceTimeout(f"{name} unavailable for {key}")
        return entry[name]

    def whois(self, domain: str) -> WhoisRecord | None:
        rec = self._field(domain, "whois")
        if rec is None:
            return None
        return WhoisRecord(_as_date(rec.get("created")), _as_date(rec.get("expires")))

    def dns(self, host: str) -> bool:
        return bool(self._field(host, "dns"))

    def traffic_rank(self, domain: str) -> int | None:
        rank = self._field(domain, "rank")
        return None if rank is None else int(rank)

    def search_index(self, url: str) -> bool:
        return bool(self._field(url, "indexed"))

    def page_rank(self, domain: str) -> float | None:
        value = self._field(domain, "pagerank")
        return None if value is None else float(value)


# -- live clients -------------------------------------------------------------

_WHOIS_NO_MATCH = re.compile(r"no match|not found|no data found|no entries found|status:\s*free", re.I)
_CREATED = re.compile(r"^\s*(?:creation date|created(?: on)?|registered(?: on)?|registration time)\s*:\s*(.+)$", re.I | re.M)
_EXPIRES = re.compile(
    r"^\s*(?:registry expiry date|registrar registration expiration date|expiration date|expiry date|"
    r"expires(?: on)?|paid-till)\s*:\s*(.+)$", re.I | re.M)
_REFER = re.compile(r"^\s*(?:refer|whois):\s*(\S+)", re.I | re.M)


def _first_date(pattern, text):
    for m in pattern.finditer(text):
        try:
            return _as_date(m.group(1))
        except ValueError:
            continue
    return None


class LiveWhois:
    """Plain port-43 WHOIS with IANA referral."""

    def __init__(self, timeout: float = 10.0, limiter: RateLimiter = UNLIMITED, root: str = "whois.iana.org"):
        self.timeout = timeout
        self.limiter = limiter
        self.root = root

    def _query(self, server: str, query: str) -> str:
        self.limiter.acquire(server)
        try:
            with socket.create_connection((server, 43), timeout=self.timeout) as sock:
                sock.sendall((query + "\r\n").encode("idna"))
                chunks = []
                while True:
                    data = sock.recv(4096)
                    if not data:
                        break
                    chunks.append(data)
        except OSError as exc:
            raise ServiceTimeout(f"whois {server}: {exc}") from exc
        return b"".join(chunks).decode("utf-8", errors="replace")

    def __call__(self, domain: str) -> WhoisRecord | None:
        require_online("WHOIS")
        tld = domain.rsplit(".", 1)[-1]
        refer = _REFER.search(self._query(self.root, tld))
        text = self._query(refer.group(1), domain) if refer else self._query(self.root, domain)
        if _WHOIS_NO_MATCH.search(text) and not _CREATED.search(text):
            return None
        return WhoisRecord(_first_date(_CREATED, text), _first_date(_EXPIRES, text))


class LiveDns:
    def __init__(self, timeout: float = 5.0):
        self.timeout = timeout
        self._pool = concurrent.futures.ThreadPoolExecutor(max_workers=4)

    def __call__(self, host: str) -> bool:
        require_online("DNS")
        future = self._pool.submit(socket.getaddrinfo, host, None)
        try:
            return bool(future.result(timeout=self.timeout))
        except socket.gaierror:
            return False
        except concurrent.futures.TimeoutError as exc:
            raise ServiceTimeout(f"dns {host}") from exc


class RankList:
    """Traffic rank from a ``rank,domain`` CSV top list; absent domains are unranked."""

    def __init__(self, path):
        with open(path, newline="", encoding="utf-8") as fh:
            self.ranks = {row[1].strip().lower(): int(row[0]) for row in csv.reader(fh) if len(row) >= 2 and row[0].isdigit()}

    def __call__(self, domain: str) -> int | None:
        return self.ranks.get(domain.lower())


class HttpJson:
    """Generic JSON endpoint: ``url_template`` gets ``{query}``; ``path`` walks the reply."""

    def __init__(self, url_template: str, path: tuple = (), headers: dict | None = None,
                 timeout: float = 10.0, limiter: RateLimiter = UNLIMITED, cast=None):
        self.url_template = url_template
        self.path = tuple(path)
        self.headers = headers or {}
        self.timeout = timeout
        self.limiter = limiter
        self.cast = cast

    def __call__(self, query: str):
        import requests

        require_online(self.url_template)
        self.limiter.acquire(self.url_template)
        try:
            resp = requests.get(self.url_template.format(query=query), headers=self.headers, timeout=self.timeout)
            resp.raise_for_status()
            value = resp.json()
            for key in self.path:
                value = value[key]
        except (requests.RequestException, ValueError, KeyError, IndexError, TypeError) as exc:
            raise ServiceTimeout(f"{self.url_template}: {exc}") from exc
        if value is None:
            return None
        return self.cast(value) if self.cast else value


def open_page_rank(api_key: str, timeout: float = 10.0, limiter: RateLimiter = UNLIMITED) -> HttpJson:
    return HttpJson(
        "https://openpagerank.com/api/v1.0/getPageRank?domains%5B0%5D={query}",
        path=("response", 0, "page_rank_decimal"),
        headers={"API-OPR": api_key},
        timeout=timeout,
        limiter=limiter,
        cast=float,
    )


@dataclass
class ExternalServiceClients:
    whois: object
    dns: object
    traffic_rank: object
    search_index: object
    page_rank: object

    @classmethod
    def from_fixture(cls, source, latency: float = 0.0) -> "ExternalServiceClients":
        fx = source if isinstance(source, FixtureServices) else (
            FixtureServices(source, latency) if isinstance(source, dict) else FixtureServices.from_file(source, latency))
        return cls(fx.whois, fx.dns, fx.traffic_rank, fx.search_index, fx.page_rank)

    @classmethod
    def unavailable(cls) -> "ExternalServiceClients":
        """Every call fails; all external features end up as the sentinel."""
        return cls.from_fixture({})
