"""Per-URL extraction context shared by the feature functions.

The context memoises everything derived from the URL and the page (parsed
parts, word tokens, DOM, hyperlink inventory) as well as network answers, so
that a full vector costs one probe per resource.  :meth:`FeatureContext.fresh`
keeps the parsed artefacts but forgets network answers; the profiler uses it to
time each feature in isolation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from datetime import date
from functools import cached_property
from urllib.parse import urljoin

from ..errors import EmptySnapshot, ProbeTimeout
from ..net import FixtureLinkProber, FixtureRedirectProber, LinkStatus
from ..reference import ReferenceData, default_reference_data
from ..services import ExternalServiceClients
from ..snapshot import DomDocument, PageSnapshot, parse_dom
from ..urls import RawUrl, UrlParts, parse_url
from .randomness import BigramModel, default_model

_WORD_SPLIT = re.compile(r"[^A-Za-z0-9]+")
_SCHEME = re.compile(r"^[a-zA-Z][a-zA-Z0-9+.-]*:")

# empty-action strings; the single-colon javascript forms are the ones met in real pages
NULL_LINKS = frozenset({
    "", "#", "#nothing", "#doesnotexist", "#null", "#void", "#whatever", "#content",
    "javascript::void(0)", "javascript::void(0);", "javascript::;", "javascript",
    "javascript:void(0)", "javascript:void(0);", "javascript:;", "about:blank",
})


def words(text: str) -> list[str]:
    return [w for w in _WORD_SPLIT.split(text) if w]


@dataclass
class ExtractionResources:
    """Everything a feature function may consult besides the URL and its page."""

    refdata: ReferenceData = field(default_factory=default_reference_data)
    randomness: BigramModel | None = field(default_factory=default_model)
    redirect_prober: object = field(default_factory=FixtureRedirectProber)
    link_prober: object = field(default_factory=FixtureLinkProber)
    clients: ExternalServiceClients = field(default_factory=ExternalServiceClients.unavailable)
    query_date: date = field(default_factory=date.today)
    probe_cap: int | None = 30
    resolver: object = None  # host -> textual IP, used by the blacklist lookup


@dataclass(frozen=True)
class Link:
    tag: str
    href: str
    absolute: str | None
    kind: str  # "internal", "external" or "null"


def classify_reference(href: str, page: UrlParts, base: str, refdata: ReferenceData) -> tuple[str, str | None]:
    """Return ``(kind, absolute_url)`` for one href/src value.

    Relative references and same registered domain are internal; empty,
    ``#``-only and empty-action strings (plus any ``javascript:`` pseudo-URL)
    are null; ``data:`` is internal; other hostless schemes (``mailto:``,
    ``tel:``) leave the page and count as external.
    """
    value = href.strip()
    lowered = value.lower()
    if lowered in NULL_LINKS or lowered.startswith("javascript:"):
        return "null", None
    if lowered.startswith("data:"):
        return "internal", None
    scheme = _SCHEME.match(lowered)
    if scheme and not lowered.startswith(("http://", "https://")):
        return "external", None
    absolute = urljoin(base, value)
    if not (lowered.startswith("//") or scheme):
        return "internal", absolute
    try:
        target = parse_url(absolute, refdata)
    except ValueError:
        return "null", None
    return ("internal" if target.registered_domain == page.registered_domain else "external"), absolute


class FeatureContext:
    def __init__(self, url: str | RawUrl, resources: ExtractionResources | None = None,
                 snapshot: PageSnapshot | None = None):
        self.url = url.text if isinstance(url, RawUrl) else url
        self.resources = resources or ExtractionResources()
        self.snapshot = snapshot
        self._network: dict = {}

    @classmethod
    def from_parts(cls, parts: UrlParts, resources: ExtractionResources | None = None, dom=None):
        ctx = cls(parts.full_text, resources)
        ctx.__dict__["parts"] = parts
        if dom is not None:
            ctx.__dict__["dom"] = dom
        return ctx

    def fresh(self) -> "FeatureContext":
        """Copy sharing parsed artefacts but with no memoised network answers."""
        clone = FeatureContext(self.url, self.resources, self.snapshot)
        for key in ("parts", "dom", "words_url", "words_host", "words_path", "inventory"):
            if key in self.__dict__:
                clone.__dict__[key] = self.__dict__[key]
        return clone

    def warm(self) -> "FeatureContext":
        """Compute every offline artefact now (parsing, tokens, inventory)."""
        _ = self.parts, self.dom, self.words_url, self.words_host, self.words_path
        if self.dom is not None:
            _ = self.inventory
        return self

    # -- URL ------------------------------------------------------------------

    @cached_property
    def parts(self) -> UrlParts:
        return parse_url(self.url, self.resources.refdata)

    @cached_property
    def words_url(self) -> list[str]:
        text = self.parts.full_text
        return words(text.split("://", 1)[1] if "://" in text else text)

    @cached_property
    def words_host(self) -> list[str]:
        return words(self.parts.host)

    @cached_property
    def words_path(self) -> list[str]:
        return words(self.parts.path)

    # -- page -----------------------------------------------------------------

    @cached_property
    def dom(self) -> DomDocument | None:
        if self.snapshot is None or self.snapshot.failed:
            return None
        try:
            return parse_dom(self.snapshot)
        except EmptySnapshot:
            return None

    @property
    def base_url(self) -> str:
        if self.snapshot is not None and self.snapshot.final_url:
            return self.snapshot.final_url
        return self.parts.full_text

    @cached_property
    def inventory(self) -> list[Link]:
        out = []
        for tag, href in self.dom.hyperlinks():
            kind, absolute = classify_reference(href, self.parts, self.base_url, self.resources.refdata)
            out.append(Link(tag, href, absolute, kind))
        return out

    # -- memoised network answers -----------------------------------------------

    def network(self, key, compute):
        """Memoise ``compute()``; exceptions are memoised and re-raised too."""
        if key not in self._network:
            try:
                self._network[key] = (True, compute())
            except Exception as exc:  # replayed to every feature needing it
                self._network[key] = (False, exc)
        ok, value = self._network[key]
        if not ok:
            raise value
        return value

    def _probe_one(self, link: Link) -> LinkStatus:
        try:
            return self.resources.link_prober.probe(link.absolute, link.href)
        except ProbeTimeout:
            return LinkStatus(False)

    def probed(self, kind: str):
        """Probe results for the first ``probe_cap`` links of the given kind."""
        def compute():
            links = [l for l in self.inventory if l.kind == kind and l.absolute]
            if self.resources.probe_cap is not None:
                links = links[: self.resources.probe_cap]
            return [self._probe_one(l) for l in links]

        return self.network(("links", kind), compute)


def with_resources(resources: ExtractionResources, **changes) -> ExtractionResources:
    return replace(resources, **changes)
