import string
from itertools import groupby

import pytest
from hypothesis import given, settings, strategies as st

from oracles import BigramOracle, wordlist
from phishset.errors import ModelNotLoaded
from phishset.features.catalog import SENTINEL
from phishset.features.lexical import (char_term_statistics, count_redirections, nlp_word_features,
                                       randomness_score, reference_lookups, structural_flags)
from phishset.features.randomness import MIN_LENGTH, default_model
from phishset.net import FixtureRedirectProber
from phishset.reference import default_reference_data
from phishset.urls import parse_url


def digits_oracle(text):
    n = 0
    for ch in text:
        if ch in string.digits:
            n += 1
    return n


def tokens_oracle(text):
    out, cur = [], ""
    for ch in text:
        if ch.isascii() and ch.isalnum():
            cur += ch
        elif cur:
            out.append(cur)
            cur = ""
    return out + ([cur] if cur else [])


def test_char_counts_minimal():
    s = char_term_statistics(parse_url("http://example.com"))
    assert (s["f1"], s["f4"], s["f14"], s["f16"], s["f23"]) == (18, 1, 2, 1, 1)


def test_char_counts_query():
    s = char_term_statistics(parse_url("https://www.a.com/p?q=1&r=2"))
    assert (s["f7"], s["f8"], s["f10"], s["f21"]) == (1, 1, 2, 1)


def test_digit_ratios_against_counting_oracle():
    text = "http://a1b2.com"
    s = char_term_statistics(parse_url(text))
    assert s["f26"] == digits_oracle(text) / len(text) == pytest.approx(0.1333, abs=1e-4)
    assert s["f27"] == digits_oracle("a1b2.com") / 8 == 0.25


def test_space_counts_encoded_and_literal():
    s = char_term_statistics(parse_url("http://a.com/x%20y z"))
    assert s["f20"] == 2


def test_structural_examples():
    assert structural_flags(parse_url("http://125.98.3.114/index.html"))["f3"] == 1
    s = structural_flags(parse_url("http://w3.example.com"))
    assert (s["f32"], s["f33"]) == (1, 1)
    s = structural_flags(parse_url("http://secure-paypal.com/page.com.html"))
    assert (s["f34"], s["f30"]) == (1, 1)


def test_tld_scan_oracle():
    # path labels after a dot, scanned independently against the single-label suffix rules
    tlds = {r for r in default_reference_data().public_suffix_rules.rules if "." not in r}
    for url, expected in [("http://a.com/page.com.html", 1), ("http://a.com/index.html", 0),
                          ("http://a.com/x.info/y", 1), ("http://a.com/com/x", 0)]:
        path = parse_url(url).path
        labels = [l for seg in path.split("/") for l in seg.split(".")[1:]]
        assert int(any(l in tlds for l in labels)) == expected
        assert structural_flags(parse_url(url))["f30"] == expected


@pytest.mark.parametrize("host,flag", [("w.a.com", 1), ("ww12.a.com", 1), ("www.a.com", 0), ("w3x.a.com", 0)])
def test_abnormal_subdomain_pattern(host, flag):
    assert structural_flags(parse_url("http://" + host))["f32"] == flag


def test_word_features_against_tokenizer_oracle():
    text = "http://abc.def.com/ghij"
    s = nlp_word_features(parse_url(text))
    toks = tokens_oracle(text.split("://", 1)[1])
    assert s["f40"] == len(toks) == 4
    assert (s["f42"], s["f45"], s["f48"]) == (3, 4, 3.25)
    assert (s["f43"], s["f46"], s["f44"], s["f47"]) == (3, 3, 4, 4)


def test_longest_run_oracle():
    text = "http://aabbbc.com"
    assert nlp_word_features(parse_url(text))["f41"] == max(len(list(g)) for _, g in groupby(text)) == 3


def test_empty_path_word_stats_are_zero():
    s = nlp_word_features(parse_url("http://example.com"))
    assert s["f44"] == s["f47"] == s["f50"] == 0


def test_randomness_examples():
    model = default_model()
    assert randomness_score(parse_url("http://google.com"), model)["f35"] == 0
    assert randomness_score(parse_url("http://xqzvkjqp.com"), model)["f35"] == 1
    assert randomness_score(parse_url("http://a.com"), model)["f35"] == 0


def test_randomness_needs_model():
    with pytest.raises(ModelNotLoaded):
        randomness_score(parse_url("http://google.com"), None)


def test_bigram_model_matches_oracle():
    model, oracle = default_model(), BigramOracle(wordlist())
    assert model.threshold == pytest.approx(oracle.threshold, abs=1e-12)
    for w in ["google", "paypal", "xqzvkjqp", "qwrtzp", "microsoft", "zzzzzz", "bank-of-x", "a1b2c3"]:
        assert model.score(w) == pytest.approx(oracle.score(w), abs=1e-12)
        assert model.is_random(w) == oracle.is_random(w)


def test_calibration_flags_at_most_five_percent():
    model = default_model()
    words = [w for w in wordlist() if len(w) >= MIN_LENGTH]
    flagged = sum(model.is_random(w) for w in words)
    assert flagged / len(words) <= 0.05


def test_reference_lookup_examples():
    ref = default_reference_data()
    assert reference_lookups(parse_url("http://bit.ly/xyz"), ref)["f36"] == 1
    assert reference_lookups(parse_url("http://example.com/run.exe"), ref)["f37"] == 1
    s = reference_lookups(parse_url("http://paypal.evil.com/"), ref)
    assert (s["f53"], s["f52"]) == (1, 0)


def test_blacklist_via_resolver():
    ref = default_reference_data()
    listed_ip = next(e for e in ref.blacklisted_hosts_and_ips if e[0].isdigit())
    s = reference_lookups(parse_url("http://innocent-looking.com/"), ref, resolver=lambda host: listed_ip)
    assert s["f56"] == 1
    s = reference_lookups(parse_url("http://innocent-looking.com/"), ref, resolver=lambda host: "10.9.8.7")
    assert s["f56"] == 0


def test_redirect_chain_counts():
    prober = FixtureRedirectProber({
        "http://a.com/": [{"target": "http://a.com/b", "same_domain": True},
                          {"target": "http://c.org/", "same_domain": False}],
        "http://dead.com/": None,
    })
    assert count_redirections("http://a.com/", prober) == {"f38": 2, "f39": 1}
    assert count_redirections("http://plain.com/", prober) == {"f38": 0, "f39": 0}
    assert count_redirections("http://dead.com/", prober) == {"f38": SENTINEL, "f39": SENTINEL}


# -- properties -------------------------------------------------------------------

BINARY = ["f3", "f25", "f28", "f29", "f30", "f31", "f32", "f34", "f35", "f36", "f37", "f52", "f53", "f54", "f55",
          "f56"]

url_text = st.builds(
    lambda scheme, sub, dom, tld, path, q: f"{scheme}://{sub}{dom}.{tld}{path}{q}",
    st.sampled_from(["http", "https"]),
    st.sampled_from(["", "www.", "w3.", "login.", "paypal.secure.", "xn--80ak6aa92e."]),
    st.from_regex(r"[a-z0-9]([a-z0-9-]{0,14}[a-z0-9])?", fullmatch=True),
    st.sampled_from(["com", "tk", "co.uk", "info", "org"]),
    st.from_regex(r"(/[A-Za-z0-9._~%@$*,;-]{0,10}){0,3}", fullmatch=True),
    st.sampled_from(["", "?a=1", "?x=%20&y=2|3"]),
)


def _lexical(text):
    from phishset.features import ExtractionResources, FeatureContext
    from phishset.features.extract import compute
    from phishset.features.catalog import FEATURES

    ctx = FeatureContext(text, ExtractionResources())
    return {f.key: compute(ctx, f) for f in FEATURES if f.group == "IU"}


@settings(max_examples=150, deadline=None)
@given(url_text)
def test_lexical_slice_invariants(text):
    s = _lexical(text)
    assert len(s) == 56
    assert s["f1"] >= s["f2"]
    for k in BINARY:
        assert s[k] in (0, 1), k
    assert 0 <= s["f26"] <= 1 and 0 <= s["f27"] <= 1
    for k, v in s.items():
        if k not in ("f26", "f27", "f48", "f49", "f50", "f38", "f39"):
            assert isinstance(v, int) and v >= 0, k
    for lo, mean, hi, n in (("f42", "f48", "f45", s["f40"]), ("f43", "f49", "f46", 1), ("f44", "f50", "f47", 1)):
        if s[hi] > 0 or n > 0:
            assert s[lo] <= s[mean] <= s[hi]


@settings(max_examples=50, deadline=None)
@given(url_text)
def test_lexical_slice_is_pure(text):
    assert _lexical(text) == _lexical(text)
