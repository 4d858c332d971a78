"""Offline extraction must reproduce every hand-computed golden vector exactly."""

import pytest

from golden_cases import CASES, RANDOMNESS_LABELS, expected_vector
from oracles import BigramOracle, wordlist
from phishset.features import FEATURE_NAMES, extract_vector
from phishset.net import offline_guard


@pytest.fixture(scope="module")
def extracted(request):
    from conftest import golden_pages, golden_resources
    from phishset.snapshot import FixtureFetcher

    fetch = FixtureFetcher(golden_pages())
    resources = golden_resources()
    with offline_guard():
        return {url: extract_vector(url, resources, fetch(url)) for url, _ in CASES}


def test_corpus_size():
    assert len(CASES) >= 20
    assert len({url for url, _ in CASES}) == len(CASES)


@pytest.mark.parametrize("url,values", CASES, ids=[u for u, _ in CASES])
def test_golden_vector(extracted, url, values):
    got = list(extracted[url])
    want = expected_vector(values)
    mismatches = [(FEATURE_NAMES[i], f"f{i + 1}", g, w) for i, (g, w) in enumerate(zip(got, want)) if g != w]
    assert not mismatches, mismatches


def test_randomness_flags_agree_with_oracle():
    oracle = BigramOracle(wordlist())
    for label, flag in RANDOMNESS_LABELS.items():
        assert oracle.is_random(label) == bool(flag), label
