"""Dataset construction: seed ingestion, crawling, preprocessing, extraction,
balancing, shuffling, dating and CSV I/O.
"""

from __future__ import annotations

import csv
import io
import logging
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

import numpy as np

from .errors import EmptySource, SchemaMismatch, SingleClassDataset, UnreachableSeed
from .features import FEATURE_NAMES, ExtractionResources, FeatureContext, extract_context
from .snapshot import SnapshotStore
from .urls import RawUrl, normalize_url, parse_url, registered_domain_of

log = logging.getLogger(__name__)

LABELS = ("legitimate", "phishing")
DEFAULT_MAX_PER_DOMAIN = 12


@dataclass(frozen=True)
class FeatureVector:
    url: str
    values: tuple
    label: str

    def __post_init__(self):
        if len(self.values) != len(FEATURE_NAMES):
            raise SchemaMismatch(f"{self.url}: expected {len(FEATURE_NAMES)} values, got {len(self.values)}")
        if self.label not in LABELS:
            raise SchemaMismatch(f"{self.url}: unknown label {self.label!r}")


@dataclass
class Dataset:
    rows: list[FeatureVector] = field(default_factory=list)
    created_at: date = field(default_factory=date.today)
    source_counts: dict[str, int] = field(default_factory=dict)
    feature_order: tuple[str, ...] = FEATURE_NAMES
    seed: int | None = None

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return (self.rows == other.rows and self.created_at == other.created_at
                and self.source_counts == other.source_counts
                and tuple(self.feature_order) == tuple(other.feature_order) and self.seed == other.seed)

    @property
    def urls(self) -> list[str]:
        return [r.url for r in self.rows]

    def class_counts(self) -> dict[str, int]:
        counts = Counter(r.label for r in self.rows)
        return {label: counts.get(label, 0) for label in LABELS}

    def X(self) -> np.ndarray:
        return np.array([r.values for r in self.rows], dtype=float).reshape(len(self.rows), len(FEATURE_NAMES))

    def y(self) -> np.ndarray:
        """Phishing is the positive class (1)."""
        return np.array([int(r.label == "phishing") for r in self.rows], dtype=int)


@dataclass(frozen=True)
class SeedFile:
    path: str | Path
    label: str
    source: str = "unknown"


@dataclass
class FailureReport:
    failed_fetches: list[str] = field(default_factory=list)
    failed_features: dict[str, list[str]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failed_fetches and not self.failed_features


# -- acquisition ---------------------------------------------------------------------

def ingest_urls(seed_files) -> list[RawUrl]:
    """One URL per line; blank lines and ``#`` comments are skipped.

    An unreadable file raises ``OSError`` naming the file; an empty one logs
    :class:`EmptySource` and is skipped.
    """
    out = []
    for seed in seed_files:
        seed = seed if isinstance(seed, SeedFile) else SeedFile(**seed)
        try:
            text = Path(seed.path).read_text(encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot read seed file {seed.path}: {exc}") from exc
        lines = [l.strip() for l in text.splitlines()]
        urls = [l for l in lines if l and not l.startswith("#")]
        if not urls:
            log.warning("%s", EmptySource(str(seed.path)))
            continue
        out.extend(RawUrl(u, seed.source, seed.label) for u in urls)
    return out


def crawl_seed(domain: str, limit: int = DEFAULT_MAX_PER_DOMAIN, fetcher=None, label=None,
               source: str = "crawl") -> list[RawUrl]:
    """Breadth-first discovery of same-registered-domain pages from the root."""
    from .features.context import classify_reference
    from .snapshot import parse_dom

    root = normalize_url(domain if "://" in domain else f"http://{domain}/")
    root_parts = parse_url(root)
    seen, found, queue = {root}, [], deque([root])
    while queue and len(found) < limit:
        url = queue.popleft()
        snap = fetcher(url, source)
        if snap.failed:
            if url == root:
                log.warning("%s", UnreachableSeed(domain))
                return []
            continue
        found.append(RawUrl(url, source, label))
        if not snap.html:
            continue
        for _, href in parse_dom(snap).hyperlinks():
            kind, absolute = classify_reference(href, root_parts, snap.final_url or url, _refdata())
            if kind != "internal" or absolute is None:
                continue
            absolute = absolute.split("#", 1)[0]
            if absolute not in seen:
                seen.add(absolute)
                queue.append(absolute)
    return found


def _refdata():
    from .reference import default_reference_data

    return default_reference_data()


def preprocess(urls, max_per_domain: int | None = DEFAULT_MAX_PER_DOMAIN, liveness_checker=None) -> list[RawUrl]:
    """Deduplicate after normalization, drop dead URLs, cap URLs per registered domain."""
    out, seen, per_domain = [], set(), Counter()
    for raw in urls:
        try:
            text = normalize_url(raw.text)
        except ValueError:
            log.warning("dropping unparsable URL %r", raw.text)
            continue
        if text in seen:
            continue
        seen.add(text)
        if liveness_checker is not None and not liveness_checker(text):
            continue
        domain = registered_domain_of(text)
        if max_per_domain is not None and per_domain[domain] >= max_per_domain:
            continue
        per_domain[domain] += 1
        out.append(RawUrl(text, raw.source, raw.label))
    return out


# -- extraction ------------------------------------------------------------------------

def build_dataset(urls, snapshot_store: SnapshotStore | None = None,
                  resources: ExtractionResources | None = None,
                  created_at: date | None = None, workers: int = 1,
                  drop_dead: bool = False) -> tuple[Dataset, FailureReport]:
    """Extract all 87 features for every URL, keyed by URL, in input order."""
    resources = resources or ExtractionResources()
    report = FailureReport()
    urls = list(urls)

    def one(raw: RawUrl):
        snap = snapshot_store.get_or_fetch(raw.text, raw.source) if snapshot_store is not None else None
        ctx = FeatureContext(raw.text, resources, snap)
        return raw, snap, extract_context(ctx)

    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(one, urls))
    else:
        results = [one(raw) for raw in urls]

    rows, sources = [], Counter()
    for raw, snap, values in results:
        if snap is None or snap.failed:
            report.failed_fetches.append(raw.text)
            if drop_dead:
                continue
        bad = [FEATURE_NAMES[i] for i, v in enumerate(values) if v == -1]
        if bad:
            report.failed_features[raw.text] = bad
        rows.append(FeatureVector(raw.text, tuple(values), raw.label))
        sources[raw.source] += 1
    dataset = Dataset(rows, created_at or date.today(), dict(sorted(sources.items())))
    return dataset, report


def balance_and_shuffle(dataset: Dataset, seed: int, balance: bool = True, shuffle: bool = True) -> Dataset:
    """Truncate the majority class by seeded subsampling, then shuffle."""
    counts = dataset.class_counts()
    if min(counts.values()) == 0:
        raise SingleClassDataset(counts)
    rng = random.Random(seed)
    rows = list(dataset.rows)
    if balance:
        target = min(counts.values())
        kept = []
        for label in LABELS:
            members = [i for i, r in enumerate(rows) if r.label == label]
            kept.extend(sorted(rng.sample(members, target)) if len(members) > target else members)
        rows = [rows[i] for i in sorted(kept)]
    if shuffle:
        rng.shuffle(rows)
    return Dataset(rows, dataset.created_at, dict(dataset.source_counts), dataset.feature_order, seed)


# -- CSV ---------------------------------------------------------------------------------

def _format(value) -> str:
    if isinstance(value, (int, np.integer)) or (isinstance(value, float) and value.is_integer()):
        return str(int(value))
    return repr(float(value))


def _parse(text: str):
    try:
        return int(text)
    except ValueError:
        return float(text)


def write_dataset(dataset: Dataset, path) -> None:
    buf = io.StringIO()
    buf.write(f"# created_at={dataset.created_at.isoformat()}\n")
    if dataset.seed is not None:
        buf.write(f"# seed={dataset.seed}\n")
    if dataset.source_counts:
        buf.write("# source_counts=" + ";".join(f"{k}:{v}" for k, v in dataset.source_counts.items()) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["url", *dataset.feature_order, "status"])
    for row in dataset.rows:
        writer.writerow([row.url, *map(_format, row.values), row.label])
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def read_dataset(path) -> Dataset:
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines(keepends=True)
    meta = {}
    while lines and lines[0].startswith("#"):
        key, _, value = lines.pop(0)[1:].strip().partition("=")
        meta[key.strip()] = value.strip()
    reader = csv.reader(lines)
    header = next(reader, None)
    if header is None:
        raise SchemaMismatch(f"{path}: missing header")
    if len(header) != len(FEATURE_NAMES) + 2 or header[0] != "url" or header[-1] != "status":
        raise SchemaMismatch(f"{path}: expected url, {len(FEATURE_NAMES)} features, status; got {len(header)} columns")
    names = tuple(header[1:-1])
    if set(names) != set(FEATURE_NAMES):
        raise SchemaMismatch(f"{path}: unknown feature names {sorted(set(names) - set(FEATURE_NAMES))}")
    order = [names.index(n) for n in FEATURE_NAMES]
    rows, seen = [], set()
    for lineno, rec in enumerate(reader, start=2):
        if not rec:
            continue
        if len(rec) != len(header):
            raise SchemaMismatch(f"{path}: row {lineno} has {len(rec)} columns")
        if rec[0] in seen:
            log.warning("duplicate url %s in %s", rec[0], path)
        seen.add(rec[0])
        values = [_parse(v) for v in rec[1:-1]]
        rows.append(FeatureVector(rec[0], tuple(values[i] for i in order), rec[-1]))
    sources = {}
    if meta.get("source_counts"):
        for item in meta["source_counts"].split(";"):
            k, _, v = item.rpartition(":")
            sources[k] = int(v)
    created = date.fromisoformat(meta["created_at"]) if "created_at" in meta else date.today()
    seed = int(meta["seed"]) if "seed" in meta else None
    return Dataset(rows, created, sources, FEATURE_NAMES, seed)
