"""Page snapshots: fetch, archive as JSON lines, re-parse into a DOM.

Archiving raw HTML (rather than parsed objects) keeps the archive readable by
any future parser, so content features can be re-extracted after a phishing
page has gone offline.
"""

from __future__ import annotations

import base64
import json
import logging
import warnings
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from bs4 import BeautifulSoup, MarkupResemblesLocatorWarning

from .errors import CorruptArchiveLine, EmptySnapshot
from .net import DEFAULT_USER_AGENT, require_online

log = logging.getLogger(__name__)

ARCHIVE_FIELDS = ("url", "source", "fetched_at", "http_status", "final_url", "html_base64")
NETWORK_FAILURE = 0


def utcnow() -> datetime:
    return datetime.now(timezone.utc)


def format_timestamp(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).replace(tzinfo=None).isoformat() + "Z"


def parse_timestamp(text: str) -> datetime:
    if not text.endswith("Z"):
        raise ValueError(f"timestamp {text!r} is not UTC ('Z' suffix)")
    return datetime.fromisoformat(text[:-1]).replace(tzinfo=timezone.utc)


@dataclass(frozen=True)
class PageSnapshot:
    url: str
    source: str
    fetched_at: datetime
    http_status: int
    final_url: str
    html: bytes = b""

    @property
    def failed(self) -> bool:
        return self.http_status == NETWORK_FAILURE or self.http_status >= 400

    def to_json(self) -> str:
        record = {
            "url": self.url,
            "source": self.source,
            "fetched_at": format_timestamp(self.fetched_at),
            "http_status": self.http_status,
            "final_url": self.final_url,
            "html_base64": base64.b64encode(self.html).decode("ascii"),
        }
        return json.dumps(record, ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> "PageSnapshot":
        record = json.loads(line)
        if not isinstance(record, dict) or set(record) != set(ARCHIVE_FIELDS):
            raise ValueError(f"expected fields {ARCHIVE_FIELDS}")
        return cls(
            url=str(record["url"]),
            source=str(record["source"]),
            fetched_at=parse_timestamp(record["fetched_at"]),
            http_status=int(record["http_status"]),
            final_url=str(record["final_url"]),
            html=base64.b64decode(record["html_base64"], validate=True),
        )


@dataclass(frozen=True)
class FetchPolicy:
    timeout: float = 10.0
    user_agent: str = DEFAULT_USER_AGENT
    max_bytes: int = 5_000_000


class LiveFetcher:
    """Fetch pages over HTTP, following redirects."""

    def __init__(self, policy: FetchPolicy = FetchPolicy(), limiter=None):
        self.policy = policy
        self.limiter = limiter

    def __call__(self, url: str, source: str = "unknown") -> PageSnapshot:
        import requests

        require_online("page fetching")
        if self.limiter is not None:
            from .urls import registered_domain_of

            self.limiter.acquire(registered_domain_of(url) or url)
        fetched_at = utcnow()
        try:
            with requests.get(url, timeout=self.policy.timeout, stream=True, allow_redirects=True,
                              headers={"User-Agent": self.policy.user_agent}) as resp:
                body = b""
                if resp.status_code < 400:
                    chunks, size = [], 0
                    for chunk in resp.iter_content(65536):
                        chunks.append(chunk)
                        size += len(chunk)
                        if size >= self.policy.max_bytes:
                            break
                    body = b"".join(chunks)[: self.policy.max_bytes]
                return PageSnapshot(url, source, fetched_at, resp.status_code, resp.url, body)
        except requests.RequestException as exc:
            log.warning("fetch failed for %s: %s", url, exc)
            return PageSnapshot(url, source, fetched_at, NETWORK_FAILURE, url, b"")


class FixtureFetcher:
    """Serve snapshots from ``{url: {"status": int, "html": str, "final_url": str}}``.

    Unknown URLs yield a network-failure snapshot; ``fetched_at`` is pinned so
    that replays are deterministic.
    """

    def __init__(self, pages: dict, fetched_at: datetime | None = None):
        self.pages = dict(pages)
        self.fetched_at = fetched_at or datetime(2020, 3, 1, tzinfo=timezone.utc)

    @classmethod
    def from_file(cls, path, fetched_at=None):
        with open(path, encoding="utf-8") as fh:
            return cls(json.load(fh), fetched_at)

    def __call__(self, url: str, source: str = "unknown") -> PageSnapshot:
        page = self.pages.get(url)
        if page is None:
            return PageSnapshot(url, source, self.fetched_at, NETWORK_FAILURE, url, b"")
        status = int(page.get("status", 200))
        html = page.get("html", "").encode("utf-8") if status < 400 else b""
        return PageSnapshot(url, source, self.fetched_at, status, page.get("final_url", url), html)


def fetch_snapshot(url: str, policy: FetchPolicy = FetchPolicy(), source: str = "unknown") -> PageSnapshot:
    return LiveFetcher(policy)(url, source)


def archive_write(store_path, snapshots, append: bool = False) -> int:
    path = Path(store_path)
    n = 0
    with open(path, "a" if append else "w", encoding="utf-8", newline="\n") as fh:
        for snap in snapshots:
            fh.write(snap.to_json() + "\n")
            n += 1
    return n


def archive_read(store_path) -> tuple[list[PageSnapshot], list[CorruptArchiveLine]]:
    """Load every readable line; malformed lines are reported, not fatal."""
    snapshots, errors = [], []
    path = Path(store_path)
    if not path.exists():
        return snapshots, errors
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                snapshots.append(PageSnapshot.from_json(line))
            except (ValueError, KeyError, TypeError) as exc:
                err = CorruptArchiveLine(lineno, str(exc))
                log.warning("archive %s: %s", path, err)
                errors.append(err)
    return snapshots, errors


class SnapshotStore:
    """URL-keyed archive backed by a JSON-lines file; later lines win."""

    def __init__(self, path=None, fetcher=None):
        self.path = Path(path) if path else None
        self.fetcher = fetcher
        self._snapshots: dict[str, PageSnapshot] = {}
        self.errors: list[CorruptArchiveLine] = []
        if self.path is not None:
            snaps, self.errors = archive_read(self.path)
            for snap in snaps:
                self._snapshots[snap.url] = snap

    def __contains__(self, url):
        return url in self._snapshots

    def __len__(self):
        return len(self._snapshots)

    def get(self, url: str) -> PageSnapshot | None:
        return self._snapshots.get(url)

    def add(self, snap: PageSnapshot):
        self._snapshots[snap.url] = snap
        if self.path is not None:
            archive_write(self.path, [snap], append=True)

    def get_or_fetch(self, url: str, source: str = "unknown") -> PageSnapshot | None:
        snap = self._snapshots.get(url)
        if snap is None and self.fetcher is not None:
            snap = self.fetcher(url, source)
            self.add(snap)
        return snap


# -- DOM ---------------------------------------------------------------------

MEDIA_TAGS = ("img", "audio", "video", "source")
# (tag, attribute) pairs making up the hyperlink inventory
HYPERLINK_ATTRS = (
    ("a", "href"),
    ("link", "href"),
    ("script", "src"),
    ("img", "src"),
    ("audio", "src"),
    ("video", "src"),
    ("source", "src"),
    ("iframe", "src"),
)


@dataclass
class DomDocument:
    soup: BeautifulSoup
    html_text: str
    _cache: dict = field(default_factory=dict, repr=False)

    def _all(self, name):
        if name not in self._cache:
            self._cache[name] = self.soup.find_all(name)
        return self._cache[name]

    @property
    def anchors(self):
        return self._all("a")

    @property
    def forms(self):
        return self._all("form")

    @property
    def link_elements(self):
        return self._all("link")

    @property
    def scripts(self):
        return self._all("script")

    @property
    def iframes(self):
        return self._all("iframe")

    @property
    def media(self):
        return [tag for tag in self.soup.find_all(MEDIA_TAGS) if tag.has_attr("src")]

    @property
    def title(self) -> str | None:
        tag = self.soup.find("title")
        return None if tag is None else tag.get_text()

    @property
    def text(self) -> str:
        if "text" not in self._cache:
            self._cache["text"] = self.soup.get_text(" ")
        return self._cache["text"]

    def hyperlinks(self) -> list[tuple[str, str]]:
        """``(tag name, reference)`` for every href/src in document order."""
        if "links" not in self._cache:
            wanted = dict(HYPERLINK_ATTRS)
            out = []
            for tag in self.soup.find_all(list(wanted)):
                value = tag.get(wanted[tag.name])
                if value is not None:
                    out.append((tag.name, value if isinstance(value, str) else " ".join(value)))
            self._cache["links"] = out
        return self._cache["links"]


# archived pages are sometimes a bare word or URL; that is still the page body
warnings.filterwarnings("ignore", category=MarkupResemblesLocatorWarning, module="bs4")


def parse_html(html: bytes | str) -> DomDocument:
    if isinstance(html, bytes):
        soup = BeautifulSoup(html, "html.parser")
        text = soup.decode() if not html else html.decode(soup.original_encoding or "utf-8", errors="replace")
    else:
        soup = BeautifulSoup(html, "html.parser")
        text = html
    return DomDocument(soup, text)


def parse_dom(snapshot: PageSnapshot) -> DomDocument:
    if not snapshot.html:
        raise EmptySnapshot(snapshot.url)
    return parse_html(snapshot.html)
