"""URL-based features f1-f56 (classes IU1, IU2 and the list-backed IU1*)."""

from __future__ import annotations

import re
from itertools import groupby

from ..errors import ModelNotLoaded, ProbeTimeout
from ..reference import ReferenceData
from ..urls import RawUrl, UrlParts
from .catalog import SENTINEL, SPECIAL_CHARACTERS
from .context import ExtractionResources, FeatureContext
from .randomness import BigramModel
from .registry import REGISTRY, register

_ABNORMAL_SUBDOMAIN = re.compile(r"w[w]?[0-9]*")


# -- character and term statistics ---------------------------------------------

register("f1")(lambda ctx: len(ctx.parts.full_text))
register("f2")(lambda ctx: len(ctx.parts.host))


def _char_counter(chars: str):
    if chars == "%20":
        return lambda ctx: ctx.parts.full_text.count("%20") + ctx.parts.full_text.count(" ")
    return lambda ctx: ctx.parts.full_text.count(chars)


for _name, _chars in SPECIAL_CHARACTERS.items():
    register(_name)(_char_counter(_chars))

for _key, _term in (("f21", "www"), ("f22", ".com"), ("f23", "http"), ("f24", "//")):
    register(_key)(_char_counter(_term))


def _digit_ratio(text: str) -> float:
    return sum(c.isdigit() for c in text) / len(text) if text else 0.0


register("f26")(lambda ctx: _digit_ratio(ctx.parts.full_text))
register("f27")(lambda ctx: _digit_ratio(ctx.parts.host))


# -- structural flags -------------------------------------------------------------

register("f3")(lambda ctx: int(ctx.parts.is_ip))
register("f25")(lambda ctx: int(ctx.parts.scheme == "https"))
register("f28")(lambda ctx: int(any(label.startswith("xn--") for label in ctx.parts.host.split("."))))
register("f29")(lambda ctx: int(ctx.parts.port is not None))


def _path_labels(path: str) -> list[str]:
    # labels that follow a dot inside a path segment: "page.com.html" -> ["com", "html"]
    out = []
    for segment in path.split("/"):
        out.extend(label.lower() for label in segment.split(".")[1:])
    return out


@register("f30")
def tld_in_path(ctx):
    tlds = ctx.resources.refdata.known_tlds
    return int(any(label in tlds for label in _path_labels(ctx.parts.path)))


@register("f31")
def tld_in_subdomain(ctx):
    tlds = ctx.resources.refdata.known_tlds
    return int(any(label in tlds for label in ctx.parts.subdomain_labels))


register("f32")(lambda ctx: int(any(_ABNORMAL_SUBDOMAIN.fullmatch(l) for l in ctx.parts.subdomain_labels)))
register("f33")(lambda ctx: len(ctx.parts.subdomain_labels))
register("f34")(lambda ctx: int("-" in ctx.parts.registered_domain))


@register("f35")
def random_domain(ctx):
    model = ctx.resources.randomness
    if model is None:
        raise ModelNotLoaded("no bigram model configured")
    if ctx.parts.is_ip:
        return 0
    return int(model.is_random(ctx.parts.domain_label))


# -- word statistics ------------------------------------------------------------------

def _shortest(tokens):
    return min(map(len, tokens)) if tokens else 0


def _longest(tokens):
    return max(map(len, tokens)) if tokens else 0


def _mean(tokens):
    return sum(map(len, tokens)) / len(tokens) if tokens else 0


register("f40")(lambda ctx: len(ctx.words_url))
register("f41")(lambda ctx: max((len(list(g)) for _, g in groupby(ctx.parts.full_text)), default=0))
register("f42")(lambda ctx: _shortest(ctx.words_url))
register("f43")(lambda ctx: _shortest(ctx.words_host))
register("f44")(lambda ctx: _shortest(ctx.words_path))
register("f45")(lambda ctx: _longest(ctx.words_url))
register("f46")(lambda ctx: _longest(ctx.words_host))
register("f47")(lambda ctx: _longest(ctx.words_path))
register("f48")(lambda ctx: _mean(ctx.words_url))
register("f49")(lambda ctx: _mean(ctx.words_host))
register("f50")(lambda ctx: _mean(ctx.words_path))


# -- reference-list lookups -------------------------------------------------------------

register("f36")(lambda ctx: int(ctx.parts.host in ctx.resources.refdata.shorteners))


@register("f37")
def path_extension(ctx):
    last = ctx.parts.path.rsplit("/", 1)[-1]
    if "." not in last:
        return 0
    return int(last.rsplit(".", 1)[1].lower() in ctx.resources.refdata.malicious_path_extensions)


@register("f51")
def phish_hints(ctx):
    hints = ctx.resources.refdata.phish_hint_words
    return sum(hint in token.lower() for token in ctx.words_url for hint in hints)


register("f52")(lambda ctx: int(ctx.parts.domain_label in ctx.resources.refdata.brand_names))
register("f53")(lambda ctx: int(any(l in ctx.resources.refdata.brand_names for l in ctx.parts.subdomain_labels)))
register("f54")(lambda ctx: int(any(t.lower() in ctx.resources.refdata.brand_names for t in ctx.words_path)))


@register("f55")
def suspicious_tld(ctx):
    tld = ctx.parts.tld
    if not tld:
        return 0
    listed = ctx.resources.refdata.suspicious_tlds
    return int(tld in listed or tld.rsplit(".", 1)[-1] in listed)


@register("f56")
def statistical_report(ctx):
    listed = ctx.resources.refdata.blacklisted_hosts_and_ips
    host = ctx.parts.host
    if host in listed or ctx.parts.registered_domain in listed:
        return 1
    resolver = ctx.resources.resolver
    if resolver is None or ctx.parts.is_ip:
        return 0
    try:
        address = ctx.network(("resolve", host), lambda: resolver(host))
    except Exception:
        return 0
    return int(address in listed)


# -- redirections (network assisted) ---------------------------------------------------------

def _redirects(ctx):
    return ctx.network("redirects", lambda: ctx.resources.redirect_prober.chain(ctx.parts.full_text))


@register("f38")
def nb_redirection(ctx):
    try:
        return len(_redirects(ctx))
    except ProbeTimeout:
        return SENTINEL


@register("f39")
def nb_external_redirection(ctx):
    try:
        return sum(not hop.same_domain for hop in _redirects(ctx))
    except ProbeTimeout:
        return SENTINEL


# -- grouped operations ----------------------------------------------------------------------

def _slice(ctx, keys) -> dict[str, float]:
    from .catalog import feature

    return {feature(k).key: REGISTRY[feature(k).name](ctx) for k in keys}


CHAR_TERM_KEYS = ["f1", "f2", *[f"f{i}" for i in range(4, 25)], "f26", "f27"]
STRUCTURAL_KEYS = ["f3", "f25", "f28", "f29", "f30", "f31", "f32", "f33", "f34"]
NLP_KEYS = [f"f{i}" for i in range(40, 51)]
LOOKUP_KEYS = ["f36", "f37", "f51", "f52", "f53", "f54", "f55", "f56"]


def char_term_statistics(parts: UrlParts) -> dict[str, float]:
    return _slice(FeatureContext.from_parts(parts), CHAR_TERM_KEYS)


def structural_flags(parts: UrlParts, refdata: ReferenceData | None = None) -> dict[str, float]:
    resources = ExtractionResources(refdata=refdata) if refdata else None
    return _slice(FeatureContext.from_parts(parts, resources), STRUCTURAL_KEYS)


def nlp_word_features(parts: UrlParts) -> dict[str, float]:
    return _slice(FeatureContext.from_parts(parts), NLP_KEYS)


def randomness_score(parts: UrlParts, model: BigramModel | None) -> dict[str, int]:
    resources = ExtractionResources(randomness=model)
    return _slice(FeatureContext.from_parts(parts, resources), ["f35"])


def reference_lookups(parts: UrlParts, refdata: ReferenceData, resolver=None) -> dict[str, float]:
    resources = ExtractionResources(refdata=refdata, resolver=resolver)
    return _slice(FeatureContext.from_parts(parts, resources), LOOKUP_KEYS)


def count_redirections(url: RawUrl | str, prober) -> dict[str, int]:
    resources = ExtractionResources(redirect_prober=prober)
    return _slice(FeatureContext(url, resources), ["f38", "f39"])
