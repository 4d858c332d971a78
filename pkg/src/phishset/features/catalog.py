"""Canonical order, names and classes of the 87 features.

Classes: ``IU1``/``IU2`` structural/statistical URL features (``IU1*`` marks the
list-backed structural ones), ``IC1``/``IC2`` hyperlink/abnormal-content
features, ``E`` external-service features.  The coarse groups used for
projections are ``IU`` (f1-f56), ``IC`` (f57-f80) and ``E`` (f81-f87).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import UnknownClass


@dataclass(frozen=True)
class FeatureInfo:
    index: int
    name: str
    subclass: str
    kind: str  # "int", "flag", "ratio" or "float"

    @property
    def key(self) -> str:
        return f"f{self.index}"

    @property
    def group(self) -> str:
        return self.subclass[:2] if self.subclass != "E" else "E"

    @property
    def profile_class(self) -> str:
        return self.subclass.rstrip("*")


_CHARS = [
    ("dot", "."), ("hyphen", "-"), ("at", "@"), ("qm", "?"), ("and", "&"),
    ("or", "|"), ("eq", "="), ("underscore", "_"), ("tilde", "~"), ("percent", "%"),
    ("slash", "/"), ("star", "*"), ("colon", ":"), ("comma", ","), ("semicolon", ";"),
    ("dollar", "$"), ("space", "%20"),
]
SPECIAL_CHARACTERS = {f"nb_{n}": c for n, c in _CHARS}

_TABLE = [
    ("length_url", "IU2", "int"),
    ("length_hostname", "IU2", "int"),
    ("ip", "IU1", "flag"),
    *[(f"nb_{n}", "IU2", "int") for n, _ in _CHARS],
    ("nb_www", "IU2", "int"),
    ("nb_com", "IU2", "int"),
    ("nb_http", "IU2", "int"),
    ("nb_dslash", "IU2", "int"),
    ("https_token", "IU1", "flag"),
    ("ratio_digits_url", "IU2", "ratio"),
    ("ratio_digits_host", "IU2", "ratio"),
    ("punycode", "IU1", "flag"),
    ("port", "IU1", "flag"),
    ("tld_in_path", "IU1", "flag"),
    ("tld_in_subdomain", "IU1", "flag"),
    ("abnormal_subdomain", "IU1", "flag"),
    ("nb_subdomains", "IU2", "int"),
    ("prefix_suffix", "IU1", "flag"),
    ("random_domain", "IU1", "flag"),
    ("shortening_service", "IU1*", "flag"),
    ("path_extension", "IU1*", "flag"),
    ("nb_redirection", "IU2", "int"),
    ("nb_external_redirection", "IU2", "int"),
    ("nb_words_url", "IU2", "int"),
    ("char_repeat", "IU2", "int"),
    ("shortest_word_url", "IU2", "int"),
    ("shortest_word_host", "IU2", "int"),
    ("shortest_word_path", "IU2", "int"),
    ("longest_word_url", "IU2", "int"),
    ("longest_word_host", "IU2", "int"),
    ("longest_word_path", "IU2", "int"),
    ("avg_word_url", "IU2", "float"),
    ("avg_word_host", "IU2", "float"),
    ("avg_word_path", "IU2", "float"),
    ("phish_hints", "IU2", "int"),
    ("brand_in_domain", "IU1*", "flag"),
    ("brand_in_subdomain", "IU1*", "flag"),
    ("brand_in_path", "IU1*", "flag"),
    ("suspicious_tld", "IU1*", "flag"),
    ("statistical_report", "IU1*", "flag"),
    ("nb_hyperlinks", "IC1", "int"),
    ("ratio_int_hyperlinks", "IC1", "ratio"),
    ("ratio_ext_hyperlinks", "IC1", "ratio"),
    ("ratio_null_hyperlinks", "IC1", "ratio"),
    ("nb_ext_css", "IC1", "int"),
    ("nb_int_redirection", "IC1", "int"),
    ("nb_ext_redirection", "IC1", "int"),
    ("ratio_int_errors", "IC1", "ratio"),
    ("ratio_ext_errors", "IC1", "ratio"),
    ("login_form", "IC2", "flag"),
    ("external_favicon", "IC1", "flag"),
    ("links_in_tags", "IC1", "ratio"),
    ("submit_email", "IC2", "flag"),
    ("ratio_int_media", "IC1", "ratio"),
    ("ratio_ext_media", "IC1", "ratio"),
    ("sfh", "IC2", "flag"),
    ("iframe", "IC2", "flag"),
    ("popup_window", "IC2", "flag"),
    ("unsafe_anchors", "IC2", "int"),
    ("onmouseover", "IC2", "flag"),
    ("right_click", "IC2", "flag"),
    ("empty_title", "IC2", "flag"),
    ("domain_in_title", "IC2", "flag"),
    ("domain_with_copyright", "IC2", "flag"),
    ("whois_registered_domain", "E", "flag"),
    ("domain_registration_length", "E", "int"),
    ("domain_age", "E", "int"),
    ("web_traffic", "E", "int"),
    ("dns_record", "E", "flag"),
    ("google_index", "E", "flag"),
    ("page_rank", "E", "float"),
]

FEATURES: tuple[FeatureInfo, ...] = tuple(
    FeatureInfo(i, name, subclass, kind) for i, (name, subclass, kind) in enumerate(_TABLE, start=1)
)
assert len(FEATURES) == 87

FEATURE_NAMES: tuple[str, ...] = tuple(f.name for f in FEATURES)
BY_NAME = {f.name: f for f in FEATURES}
BY_KEY = {f.key: f for f in FEATURES}

GROUPS = {
    "IU": tuple(f.name for f in FEATURES if f.group == "IU"),
    "IC": tuple(f.name for f in FEATURES if f.group == "IC"),
    "E": tuple(f.name for f in FEATURES if f.group == "E"),
}
PROFILE_CLASSES = ("IU1", "IU2", "IC1", "IC2", "E")

# value written for an unavailable external or network measurement
SENTINEL = -1


def feature(ref: str | int) -> FeatureInfo:
    """Look up a feature by name, ``"f12"`` key or 1-based index."""
    if isinstance(ref, int):
        return FEATURES[ref - 1]
    if ref in BY_NAME:
        return BY_NAME[ref]
    return BY_KEY[ref]


def names_for(keys) -> list[str]:
    return [feature(k).name for k in keys]


def group_names(classes) -> list[str]:
    """Names of the features belonging to the given coarse classes, canonical order."""
    wanted = set()
    for cls in classes:
        if cls not in GROUPS:
            raise UnknownClass(cls)
        wanted.update(GROUPS[cls])
    return [name for name in FEATURE_NAMES if name in wanted]
