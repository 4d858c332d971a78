"""Network plumbing: offline guard, rate limiting, redirect and link probers.

Every prober comes in a live flavour (``requests``) and a fixture flavour that
replays a recorded JSON file, optionally sleeping to emulate latency.
"""

from __future__ import annotations

import json
import socket
import threading
import time
from contextlib import contextmanager
from dataclasses import dataclass
from urllib.parse import urljoin

from .errors import NetworkForbidden, ProbeTimeout
from .urls import registered_domain_of

DEFAULT_USER_AGENT = "Mozilla/5.0 (compatible; phishset/0.1; +dataset-research)"

_offline = [False]


def is_offline() -> bool:
    return _offline[0]


def _forbidden(*args, **kwargs):
    raise NetworkForbidden("network access attempted in offline mode")


@contextmanager
def offline_guard():
    """Refuse every socket connection and name lookup inside the block."""
    saved = (socket.socket.connect, socket.socket.connect_ex, socket.create_connection, socket.getaddrinfo)
    socket.socket.connect = _forbidden
    socket.socket.connect_ex = _forbidden
    socket.create_connection = _forbidden
    socket.getaddrinfo = _forbidden
    _offline[0] = True
    try:
        yield
    finally:
        socket.socket.connect, socket.socket.connect_ex, socket.create_connection, socket.getaddrinfo = saved
        _offline[0] = False


def require_online(what: str):
    if is_offline():
        raise NetworkForbidden(f"{what} needs the network but running offline")


class TokenBucket:
    def __init__(self, rate: float, burst: int = 1, clock=time.monotonic, sleep=time.sleep):
        self.rate = float(rate)
        self.burst = burst
        self._tokens = float(burst)
        self._clock = clock
        self._sleep = sleep
        self._last = clock()
        self._lock = threading.Lock()

    def acquire(self):
        if self.rate <= 0:
            return
        with self._lock:
            now = self._clock()
            self._tokens = min(self.burst, self._tokens + (now - self._last) * self.rate)
            self._last = now
            if self._tokens >= 1:
                self._tokens -= 1
                return
            wait = (1 - self._tokens) / self.rate
            self._tokens = 0.0
            self._last = now + wait
        self._sleep(wait)


class RateLimiter:
    """One token bucket per endpoint key, shared by all workers."""

    def __init__(self, rate: float = 0.0, burst: int = 1):
        self.rate = rate
        self.burst = burst
        self._buckets: dict[str, TokenBucket] = {}
        self._lock = threading.Lock()

    def acquire(self, key: str):
        if self.rate <= 0:
            return
        with self._lock:
            bucket = self._buckets.setdefault(key, TokenBucket(self.rate, self.burst))
        bucket.acquire()


UNLIMITED = RateLimiter(0)


# -- redirects ---------------------------------------------------------------

@dataclass(frozen=True)
class Hop:
    target: str
    same_domain: bool


def _load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


class FixtureRedirectProber:
    """Replays ``{url: [{"target": ..., "same_domain": bool}, ...] | null}``.

    A missing URL means no redirect; ``null`` means the URL did not answer.
    """

    def __init__(self, chains: dict | None = None, latency: float = 0.0):
        self.chains = dict(chains or {})
        self.latency = latency

    @classmethod
    def from_file(cls, path, latency: float = 0.0):
        return cls(_load_json(path), latency)

    def chain(self, url: str) -> list[Hop]:
        if self.latency:
            time.sleep(self.latency)
        if url not in self.chains:
            return []
        hops = self.chains[url]
        if hops is None:
            raise ProbeTimeout(url)
        return [Hop(h["target"], bool(h["same_domain"])) for h in hops]


class LiveRedirectProber:
    def __init__(self, timeout: float = 5.0, max_hops: int = 10, limiter: RateLimiter = UNLIMITED,
                 user_agent: str = DEFAULT_USER_AGENT):
        self.timeout = timeout
        self.max_hops = max_hops
        self.limiter = limiter
        self.user_agent = user_agent

    def chain(self, url: str) -> list[Hop]:
        import requests

        require_online("redirect probing")
        source_domain = registered_domain_of(url)
        hops, current = [], url
        with requests.Session() as session:
            for _ in range(self.max_hops):
                self.limiter.acquire(registered_domain_of(current) or current)
                try:
                    resp = session.get(current, allow_redirects=False, timeout=self.timeout,
                                       headers={"User-Agent": self.user_agent}, stream=True)
                    resp.close()
                except requests.RequestException as exc:
                    if hops:
                        break
                    raise ProbeTimeout(f"{url}: {exc}") from exc
                location = resp.headers.get("Location")
                if not resp.is_redirect or not location:
                    break
                current = urljoin(current, location)
                hops.append(Hop(current, registered_domain_of(current) == source_domain))
        return hops


# -- link status ---------------------------------------------------------------

@dataclass(frozen=True)
class LinkStatus:
    ok: bool
    redirect_to: str | None = None


class FixtureLinkProber:
    """Replays ``{href: {"status": "ok"|"error", "redirect_to": url|null}}``.

    Unknown links count as reachable without redirect (``default_ok``).
    """

    def __init__(self, statuses: dict | None = None, latency: float = 0.0, default_ok: bool = True):
        self.statuses = dict(statuses or {})
        self.latency = latency
        self.default_ok = default_ok

    @classmethod
    def from_file(cls, path, latency: float = 0.0):
        return cls(_load_json(path), latency)

    def probe(self, url: str, href: str | None = None) -> LinkStatus:
        if self.latency:
            time.sleep(self.latency)
        entry = self.statuses.get(url)
        if entry is None and href is not None:
            entry = self.statuses.get(href)
        if entry is None:
            return LinkStatus(self.default_ok)
        return LinkStatus(entry.get("status", "ok") == "ok", entry.get("redirect_to"))


class LiveLinkProber:
    def __init__(self, timeout: float = 5.0, limiter: RateLimiter = UNLIMITED,
                 user_agent: str = DEFAULT_USER_AGENT):
        self.timeout = timeout
        self.limiter = limiter
        self.user_agent = user_agent

    def probe(self, url: str, href: str | None = None) -> LinkStatus:
        import requests

        require_online("link probing")
        self.limiter.acquire(registered_domain_of(url) or url)
        try:
            resp = requests.head(url, allow_redirects=False, timeout=self.timeout,
                                 headers={"User-Agent": self.user_agent})
            if resp.status_code == 405:
                resp = requests.get(url, allow_redirects=False, timeout=self.timeout,
                                    headers={"User-Agent": self.user_agent}, stream=True)
                resp.close()
        except requests.RequestException:
            return LinkStatus(False)
        if resp.is_redirect and resp.headers.get("Location"):
            return LinkStatus(True, urljoin(url, resp.headers["Location"]))
        return LinkStatus(resp.status_code < 400)
