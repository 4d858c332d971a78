"""URL normalization and decomposition into structural parts."""

from __future__ import annotations

import ipaddress
import re
from dataclasses import dataclass, field
from enum import Enum

from .errors import MalformedUrl, UnsupportedScheme
from .reference import ReferenceData, default_reference_data

_SCHEME_PREFIX = re.compile(r"^([a-zA-Z][a-zA-Z0-9+.-]*):")
_HEX_OR_DEC = re.compile(r"^(0x[0-9a-f]+|[0-9]+)$")


class UrlSource(str, Enum):
    SEED_LIST = "seed-list"
    CRAWL = "crawl"
    PHISH_FEED = "phish-feed"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class RawUrl:
    text: str
    source: str = UrlSource.UNKNOWN.value
    label: str | None = None

    def __post_init__(self):
        text = self.text.strip()
        if not text:
            raise MalformedUrl("empty URL")
        object.__setattr__(self, "text", text)


def normalize_url(text: str) -> str:
    """Trim, add ``http://`` to bare hosts, lowercase scheme and host.

    Userinfo, path, query and fragment are kept byte-exact.
    """
    text = text.strip()
    if not text:
        raise MalformedUrl("empty URL")
    if "://" not in text:
        m = _SCHEME_PREFIX.match(text)
        # "host:8080/x" is a port, "mailto:x" is a hostless scheme
        if m and not text[m.end() : m.end() + 1].isdigit():
            raise UnsupportedScheme(f"no host component in {text!r}")
        text = "http://" + text
    scheme, rest = text.split("://", 1)
    if not _SCHEME_PREFIX.match(scheme + ":"):
        raise MalformedUrl(f"bad scheme in {text!r}")
    authority, tail = _split_authority(rest)
    userinfo, at, hostport = authority.rpartition("@")
    return f"{scheme.lower()}://{userinfo}{at}{hostport.lower()}{tail}"


@dataclass(frozen=True)
class UrlParts:
    scheme: str
    host: str
    subdomain_labels: tuple[str, ...]
    registered_domain: str
    tld: str
    port: int | None
    path: str
    query: str | None
    full_text: str
    userinfo: str | None = None
    fragment: str | None = None
    is_ip: bool = field(default=False, compare=False)

    @property
    def domain_label(self) -> str:
        """Registered domain without its public suffix (``example`` for ``example.co.uk``)."""
        if self.is_ip or not self.tld or self.tld == self.registered_domain:
            return self.registered_domain
        return self.registered_domain[: -len(self.tld) - 1]

    def unsplit(self) -> str:
        out = f"{self.scheme}://"
        if self.userinfo is not None:
            out += self.userinfo + "@"
        out += self.host
        if self.port is not None:
            out += f":{self.port}"
        out += self.path
        if self.query is not None:
            out += "?" + self.query
        if self.fragment is not None:
            out += "#" + self.fragment
        return out


def looks_like_ip(host: str) -> bool:
    """Dotted-quad, dotless decimal, hexadecimal (dotted or not), or IPv6 literal."""
    host = host.lower().strip("[]")
    if ":" in host:
        try:
            ipaddress.IPv6Address(host)
            return True
        except ValueError:
            return False
    labels = host.split(".")
    if not 1 <= len(labels) <= 4:
        return False
    return all(_HEX_OR_DEC.match(label) for label in labels)


def _split_authority(rest: str) -> tuple[str, str]:
    end = len(rest)
    for sep in "/?#":
        pos = rest.find(sep)
        if pos != -1:
            end = min(end, pos)
    return rest[:end], rest[end:]


def parse_url(raw: RawUrl | str, refdata: ReferenceData | None = None) -> UrlParts:
    refdata = refdata or default_reference_data()
    text = normalize_url(raw.text if isinstance(raw, RawUrl) else raw)
    scheme, rest = text.split("://", 1)
    authority, tail = _split_authority(rest)
    userinfo, at, hostport = authority.rpartition("@")

    port = None
    if hostport.startswith("["):
        close = hostport.find("]")
        if close == -1:
            raise MalformedUrl(f"unterminated IPv6 literal in {text!r}")
        host, port_text = hostport[: close + 1], hostport[close + 1 :]
        if port_text and not port_text.startswith(":"):
            raise MalformedUrl(f"junk after IPv6 literal in {text!r}")
        port_text = port_text[1:]
    else:
        host, _, port_text = hostport.partition(":")
    if port_text:
        if not port_text.isdigit() or not 1 <= int(port_text) <= 65535:
            raise MalformedUrl(f"bad port {port_text!r} in {text!r}")
        port = int(port_text)
    elif ":" in hostport.lstrip("[").split("]")[-1]:
        raise MalformedUrl(f"empty port in {text!r}")
    if not host:
        raise UnsupportedScheme(f"no host component in {text!r}")
    if any(c.isspace() or c in "\\<>\"" for c in host):
        raise MalformedUrl(f"invalid character in host of {text!r}")

    path, qmark, remainder = tail.partition("?") if "?" in tail.split("#", 1)[0] else (tail, "", "")
    query = None
    if qmark:
        query, hashmark, frag = remainder.partition("#")
        fragment = frag if hashmark else None
    else:
        path, hashmark, frag = path.partition("#")
        fragment = frag if hashmark else None

    if looks_like_ip(host):
        subdomains, registered, tld, is_ip = (), host, "", True
    else:
        subs, registered, tld = refdata.public_suffix_rules.split(host)
        subdomains, is_ip = tuple(subs), False
    return UrlParts(
        scheme=scheme,
        host=host,
        subdomain_labels=subdomains,
        registered_domain=registered,
        tld=tld,
        port=port,
        path=path,
        query=query,
        full_text=text,
        userinfo=userinfo if at else None,
        fragment=fragment,
        is_ip=is_ip,
    )


def registered_domain_of(url: str, refdata: ReferenceData | None = None) -> str | None:
    """Registered domain of an absolute URL, or None when it has no host."""
    try:
        return parse_url(url, refdata).registered_domain
    except (MalformedUrl, UnsupportedScheme):
        return None
