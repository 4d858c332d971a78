"""Feature-extraction timing.

Every feature is timed in isolation: the page is parsed and tokenised once
(outside the timer) and each feature then runs on a context that shares those
artefacts but has no memoised network answers, so it pays for its own probes
and service calls.  Class timings run the member features back to back the
same way.  One untimed warm-up pass precedes the measurements.
"""

from __future__ import annotations

import csv
import statistics
import time
from dataclasses import dataclass, field, replace

from .features.catalog import FEATURES, PROFILE_CLASSES
from .features.context import ExtractionResources, FeatureContext
from .features.extract import compute


@dataclass
class FeatureTiming:
    name: str
    profile_class: str
    mean_ms: float
    stddev_ms: float


@dataclass
class TimingReport:
    features: list[FeatureTiming]  # descending mean
    classes: dict[str, float]  # batch mean per class
    class_feature_sums: dict[str, float]
    samples: int
    excluded: list[tuple[str, str]] = field(default_factory=list)

    def feature(self, name: str) -> FeatureTiming:
        return next(t for t in self.features if t.name == name)

    def ranking_within(self, profile_class: str) -> list[str]:
        return [t.name for t in self.features if t.profile_class == profile_class]


# -- latency injection ----------------------------------------------------------------

@dataclass(frozen=True)
class LatencySpec:
    external_ms: float = 0.0
    probe_ms: float = 0.0
    redirect_ms: float = 0.0

    @classmethod
    def parse(cls, text: str) -> "LatencySpec":
        """``"external=400,probe=80,redirect=0"`` (milliseconds)."""
        values = {}
        for item in filter(None, (p.strip() for p in text.split(","))):
            key, _, value = item.partition("=")
            if key.strip() not in ("external", "probe", "redirect"):
                raise ValueError(f"unknown latency key {key!r}")
            values[f"{key.strip()}_ms"] = float(value)
        return cls(**values)


def _delayed(fn, seconds):
    def wrapper(*args, **kwargs):
        time.sleep(seconds)
        return fn(*args, **kwargs)

    return wrapper


class _DelayedLinkProber:
    def __init__(self, inner, seconds):
        self.inner, self.seconds = inner, seconds

    def probe(self, url, href=None):
        time.sleep(self.seconds)
        return self.inner.probe(url, href)


class _DelayedRedirectProber:
    def __init__(self, inner, seconds):
        self.inner, self.seconds = inner, seconds

    def chain(self, url):
        time.sleep(self.seconds)
        return self.inner.chain(url)


def inject_latency(resources: ExtractionResources, spec: LatencySpec) -> ExtractionResources:
    """Copy of ``resources`` whose network-facing parts sleep before answering."""
    changes = {}
    if spec.external_ms:
        c = resources.clients
        s = spec.external_ms / 1000
        changes["clients"] = replace(c, whois=_delayed(c.whois, s), dns=_delayed(c.dns, s),
                                     traffic_rank=_delayed(c.traffic_rank, s),
                                     search_index=_delayed(c.search_index, s), page_rank=_delayed(c.page_rank, s))
    if spec.probe_ms:
        changes["link_prober"] = _DelayedLinkProber(resources.link_prober, spec.probe_ms / 1000)
    if spec.redirect_ms:
        changes["redirect_prober"] = _DelayedRedirectProber(resources.redirect_prober, spec.redirect_ms / 1000)
    return replace(resources, **changes)


# -- profiling --------------------------------------------------------------------------

def _time_feature(ctx: FeatureContext, info) -> float:
    fresh = ctx.fresh()
    start = time.perf_counter()
    compute(fresh, info)
    return (time.perf_counter() - start) * 1000


def _time_class(ctx: FeatureContext, members) -> float:
    start = time.perf_counter()
    for info in members:
        compute(ctx.fresh(), info)
    return (time.perf_counter() - start) * 1000


def profile_extraction(urls, resources: ExtractionResources | None = None, snapshots=None,
                       repetitions: int = 1, warmup: bool = True, features=None) -> TimingReport:
    """Mean per-feature and per-class extraction time over ``urls x repetitions``.

    ``snapshots`` maps URL to :class:`PageSnapshot` (or is a store with
    ``get``).  URLs that fail to parse are excluded and reported.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    resources = resources or ExtractionResources()
    selected = [f for f in FEATURES if features is None or f.name in set(features) or f.key in set(features)]
    members = {c: [f for f in selected if f.profile_class == c] for c in PROFILE_CLASSES}
    members = {c: m for c, m in members.items() if m}
    per_feature = {f.name: [] for f in selected}
    per_class = {c: [] for c in members}
    excluded = []
    contexts = []
    for url in urls:
        snap = snapshots.get(url) if snapshots is not None else None
        try:
            contexts.append(FeatureContext(url, resources, snap).warm())
        except ValueError as exc:
            excluded.append((str(url), str(exc)))
    if warmup:
        for ctx in contexts:
            for info in selected:
                compute(ctx.fresh(), info)
    for _ in range(repetitions):
        for ctx in contexts:
            for info in selected:
                per_feature[info.name].append(_time_feature(ctx, info))
            for cls, infos in members.items():
                per_class[cls].append(_time_class(ctx, infos))
    if not contexts:
        raise ValueError("no URL could be profiled")
    timings = [
        FeatureTiming(f.name, f.profile_class, statistics.fmean(per_feature[f.name]),
                      statistics.pstdev(per_feature[f.name]))
        for f in selected
    ]
    timings.sort(key=lambda t: -t.mean_ms)
    by_name = {t.name: t.mean_ms for t in timings}
    return TimingReport(
        features=timings,
        classes={c: statistics.fmean(v) for c, v in per_class.items()},
        class_feature_sums={c: sum(by_name[f.name] for f in infos) for c, infos in members.items()},
        samples=len(contexts) * repetitions,
        excluded=excluded,
    )


def write_timing_report(report: TimingReport, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["feature", "class", "mean_ms", "stddev_ms"])
        for t in report.features:
            writer.writerow([t.name, t.profile_class, f"{t.mean_ms:.4f}", f"{t.stddev_ms:.4f}"])
        writer.writerow([])
        writer.writerow(["class", "mean_ms", "feature_sum_ms"])
        for cls, mean in report.classes.items():
            writer.writerow([cls, f"{mean:.4f}", f"{report.class_feature_sums[cls]:.4f}"])
