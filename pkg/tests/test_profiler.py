import csv

import pytest

from profiling import fixture_resources, kit_corpus, page_with_links
from phishset.features.catalog import FEATURES
from phishset.profiler import LatencySpec, inject_latency, profile_extraction, write_timing_report

IU_KEYS = [f.key for f in FEATURES if f.profile_class.startswith("IU")]
E_KEYS = [f.key for f in FEATURES if f.profile_class == "E"]
NAME = {f.key: f.name for f in FEATURES}


def test_latency_spec_parse():
    assert LatencySpec.parse("external=400, probe=80") == LatencySpec(400, 80, 0)
    with pytest.raises(ValueError):
        LatencySpec.parse("disk=3")


def test_zero_repetitions_rejected():
    with pytest.raises(ValueError):
        profile_extraction(["http://example.com/"], repetitions=0)


def test_unparseable_urls_reported():
    report = profile_extraction(["http://example.com/", "not a url"], features=["f1"], warmup=False)
    assert report.samples == 1
    assert [u for u, _ in report.excluded] == ["not a url"]


def test_injected_latency_orders_classes():
    pages = kit_corpus(1)
    res = inject_latency(fixture_resources(), LatencySpec(external_ms=20, probe_ms=4))
    report = profile_extraction(list(pages), res, pages, warmup=False)
    assert all(report.classes["E"] > report.classes[c] for c in ("IU1", "IU2"))
    for key in E_KEYS:
        assert report.feature(NAME[key]).mean_ms >= 20
    ic1 = report.ranking_within("IC1")
    assert set(ic1[:2]) == {NAME["f63"], NAME["f65"]}
    # descending order throughout
    means = [t.mean_ms for t in report.features]
    assert means == sorted(means, reverse=True)


def test_class_mean_close_to_feature_sum():
    pages = kit_corpus(1)
    # delays long enough that scheduler jitter is a small share of each sample
    res = inject_latency(fixture_resources(), LatencySpec(external_ms=40, probe_ms=10))
    report = profile_extraction(list(pages), res, pages, repetitions=3,
                                features=E_KEYS + ["f62", "f63", "f64", "f65"])
    for cls in ("E", "IC1"):
        assert report.classes[cls] == pytest.approx(report.class_feature_sums[cls], rel=0.10)


def test_link_features_scale_linearly():
    res = inject_latency(fixture_resources(), LatencySpec(probe_ms=5))
    res.probe_cap = None
    means = {}
    for n in (5, 50):
        url = f"http://phish.example.net/n{n}/"
        pages = {url: page_with_links(url, n, n)}
        report = profile_extraction([url], res, pages, warmup=False, features=["f62", "f63", "f64", "f65"])
        means[n] = {k: report.feature(NAME[k]).mean_ms for k in ("f62", "f63", "f64", "f65")}
    for key in ("f62", "f63", "f64", "f65"):
        assert 8 <= means[50][key] / means[5][key] <= 12, (key, means)


def test_lexical_budget():
    urls = [f"http://host{i}.example.com/path/{i}/index.php?q={i}&r=x" for i in range(100)]
    report = profile_extraction(urls, fixture_resources(), features=IU_KEYS)
    assert report.samples == 100
    for t in report.features:
        assert t.mean_ms < 5, t


def test_report_csv(tmp_path):
    report = profile_extraction(["http://example.com/a"], fixture_resources(), features=["f1", "f2"])
    path = tmp_path / "t.csv"
    write_timing_report(report, path)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["feature", "class", "mean_ms", "stddev_ms"]
    assert {r[0] for r in rows[1:3]} == {NAME["f1"], NAME["f2"]}
    assert rows[3] == []
    assert rows[4] == ["class", "mean_ms", "feature_sum_ms"]
    cls = next(f.profile_class for f in FEATURES if f.key == "f1")
    assert rows[5][0] == cls and len(rows) == 6
