"""Reference lists used by the list-backed URL features, plus public-suffix matching.

Every list lives in a plain text file (one entry per line, ``#`` comments).
The public-suffix rules use the standard suffix-list syntax (``//`` comments,
``*.`` wildcards and ``!`` exceptions).  The defaults are bundled with the
package so extraction stays reproducible; any directory holding the same seven
files can replace them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from importlib import resources
from pathlib import Path

from .errors import EmptyList, MissingListFile

log = logging.getLogger(__name__)

LIST_FILES = {
    "shorteners": "shorteners.txt",
    "brand_names": "brand_names.txt",
    "suspicious_tlds": "suspicious_tlds.txt",
    "phish_hint_words": "phish_hints.txt",
    "blacklisted_hosts_and_ips": "blacklist.txt",
    "public_suffix_rules": "public_suffix_list.dat",
    "malicious_path_extensions": "malicious_path_extensions.txt",
}


def _to_ascii(label: str) -> str | None:
    try:
        return label.encode("idna").decode("ascii")
    except UnicodeError:
        return None


@dataclass(frozen=True)
class PublicSuffixRules:
    """Longest-match public-suffix lookup over normal, wildcard and exception rules."""

    rules: frozenset[str]
    wildcards: frozenset[str] = frozenset()
    exceptions: frozenset[str] = frozenset()

    @classmethod
    def from_lines(cls, lines) -> "PublicSuffixRules":
        rules, wildcards, exceptions = set(), set(), set()
        for raw in lines:
            line = raw.strip().split()[0] if raw.strip() else ""
            if not line or line.startswith("//"):
                continue
            line = line.lower()
            forms = {line}
            ascii_form = ".".join(
                part if part in ("*",) or part.startswith("!") else (_to_ascii(part) or part)
                for part in line.split(".")
            )
            forms.add(ascii_form)
            for rule in forms:
                if rule.startswith("!"):
                    exceptions.add(rule[1:])
                elif rule.startswith("*."):
                    wildcards.add(rule[2:])
                else:
                    rules.add(rule)
        return cls(frozenset(rules), frozenset(wildcards), frozenset(exceptions))

    def __len__(self):
        return len(self.rules) + len(self.wildcards) + len(self.exceptions)

    def public_suffix(self, host: str) -> str:
        labels = host.lower().strip(".").split(".")
        for i in range(len(labels)):
            if ".".join(labels[i:]) in self.exceptions:
                return ".".join(labels[i + 1 :])
        for i in range(len(labels)):
            if ".".join(labels[i:]) in self.rules:
                return ".".join(labels[i:])
            if i + 1 < len(labels) and ".".join(labels[i + 1 :]) in self.wildcards:
                return ".".join(labels[i:])
        return labels[-1]

    def split(self, host: str) -> tuple[list[str], str, str]:
        """Return ``(subdomain_labels, registered_domain, suffix)`` for a hostname."""
        host = host.lower().strip(".")
        suffix = self.public_suffix(host)
        labels = host.split(".")
        n_suffix = suffix.count(".") + 1
        if len(labels) <= n_suffix:
            return [], host, suffix
        registered = ".".join(labels[-n_suffix - 1 :])
        return labels[: -n_suffix - 1], registered, suffix

    @cached_property
    def top_level_domains(self) -> frozenset[str]:
        # single-label rules in ASCII form: the delegated TLDs
        return frozenset(r for r in self.rules if "." not in r and r.isascii())


@dataclass(frozen=True)
class ReferenceData:
    shorteners: frozenset[str]
    brand_names: frozenset[str]
    suspicious_tlds: frozenset[str]
    phish_hint_words: frozenset[str]
    blacklisted_hosts_and_ips: frozenset[str]
    public_suffix_rules: PublicSuffixRules
    malicious_path_extensions: frozenset[str]
    source: str = field(default="", compare=False)

    def counts(self) -> dict[str, int]:
        return {name: len(getattr(self, name)) for name in LIST_FILES}

    @property
    def known_tlds(self) -> frozenset[str]:
        return self.public_suffix_rules.top_level_domains


def read_list(path: Path) -> list[str]:
    """Read one entry per line, lowercased, comments and blanks dropped, order kept."""
    seen: dict[str, None] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            entry = line.split("#", 1)[0].strip().lower()
            if entry:
                seen.setdefault(entry, None)
    return list(seen)


def load_reference_data(directory) -> ReferenceData:
    directory = Path(directory)
    values = {}
    for name, filename in LIST_FILES.items():
        path = directory / filename
        if not path.is_file():
            raise MissingListFile(f"{name}: {path} not found")
        if name == "public_suffix_rules":
            with open(path, encoding="utf-8") as fh:
                rules = PublicSuffixRules.from_lines(fh)
            if not len(rules):
                raise EmptyList(f"{path} holds no suffix rules")
            values[name] = rules
            continue
        entries = read_list(path)
        if not entries:
            raise EmptyList(f"{path} is empty")
        values[name] = frozenset(entries)
    data = ReferenceData(**values, source=str(directory))
    log.info("loaded reference data from %s: %s", directory, data.counts())
    return data


def bundled_data_dir() -> Path:
    return Path(str(resources.files("phishset") / "data"))


@lru_cache(maxsize=1)
def default_reference_data() -> ReferenceData:
    return load_reference_data(bundled_data_dir())
