"""Content-based features f57-f80 computed from the archived page.

Every function here assumes the page parsed into a DOM; the extractor zeroes
the whole content slice when it did not.
"""

from __future__ import annotations

import re

from ..snapshot import DomDocument
from ..urls import UrlParts
from .context import ExtractionResources, FeatureContext, classify_reference, with_resources
from .registry import REGISTRY, register

# empty form actions counted by the login-form feature, verbatim
EMPTY_ACTIONS = frozenset({
    "", "#", "#nothing", "#doesnotexist", "#null", "#void", "#whatever", "#content",
    "javascript::void(0)", "javascript::void(0);", "javascript::;", "javascript",
})
UNSAFE_ANCHOR_PREFIXES = ("#", "javascript", "mailto")
COPYRIGHT_MARKS = ("©", "&copy;", "(c)")
COPYRIGHT_WINDOW = 100

_RIGHT_CLICK = re.compile(r"event\.button\s*==\s*2")
_HIDDEN_STYLE = re.compile(r"display\s*:\s*none|visibility\s*:\s*hidden", re.I)
_WINDOW_OPEN = re.compile(r"window\.open\s*\(|\bopen\s*\(\s*['\"]", re.I)
_TEXT_INPUT = re.compile(r"<input|createElement\(\s*['\"]input|prompt\s*\(", re.I)


def _ratio(part: int, whole: int) -> float:
    return part / whole if whole else 0.0


def _kinds(ctx: FeatureContext, tags=None) -> list[str]:
    return [l.kind for l in ctx.inventory if tags is None or l.tag in tags]


def _rel(tag) -> list[str]:
    rel = tag.get("rel") or []
    return [r.lower() for r in (rel.split() if isinstance(rel, str) else rel)]


def _kind_of(ctx: FeatureContext, href: str) -> str:
    return classify_reference(href, ctx.parts, ctx.base_url, ctx.resources.refdata)[0]


# -- hyperlink features (IC1) ------------------------------------------------------

register("f57")(lambda ctx: len(ctx.inventory))
register("f58")(lambda ctx: _ratio(_kinds(ctx).count("internal"), len(ctx.inventory)))
register("f59")(lambda ctx: _ratio(_kinds(ctx).count("external"), len(ctx.inventory)))
register("f60")(lambda ctx: _ratio(_kinds(ctx).count("null"), len(ctx.inventory)))


@register("f61")
def nb_ext_css(ctx):
    return sum(
        1 for tag in ctx.dom.link_elements
        if "stylesheet" in _rel(tag) and tag.get("href") is not None and _kind_of(ctx, tag["href"]) == "external"
    )


register("f62")(lambda ctx: sum(s.redirect_to is not None for s in ctx.probed("internal")))
register("f63")(lambda ctx: sum(s.redirect_to is not None for s in ctx.probed("external")))


@register("f64")
def ratio_int_errors(ctx):
    statuses = ctx.probed("internal")
    return _ratio(sum(not s.ok for s in statuses), len(statuses))


@register("f65")
def ratio_ext_errors(ctx):
    statuses = ctx.probed("external")
    return _ratio(sum(not s.ok for s in statuses), len(statuses))


@register("f67")
def external_favicon(ctx):
    for tag in ctx.dom.link_elements:
        if "icon" in _rel(tag) and tag.get("href") is not None and _kind_of(ctx, tag["href"]) == "external":
            return 1
    return 0


register("f68")(lambda ctx: _ratio(_kinds(ctx, {"link"}).count("internal"), len(_kinds(ctx, {"link"}))))

_MEDIA = {"img", "audio", "video", "source"}
register("f70")(lambda ctx: _ratio(_kinds(ctx, _MEDIA).count("internal"), len(_kinds(ctx, _MEDIA))))
register("f71")(lambda ctx: _ratio(_kinds(ctx, _MEDIA).count("external"), len(_kinds(ctx, _MEDIA))))


# -- abnormal content (IC2) -----------------------------------------------------------

def _actions(dom: DomDocument):
    # forms without an action attribute post back to the page itself and are skipped
    return [(form, form["action"].strip()) for form in dom.forms if form.get("action") is not None]


@register("f66")
def login_form(ctx):
    for form, action in _actions(ctx.dom):
        if form.find("input", attrs={"type": re.compile("^password$", re.I)}) is None:
            continue
        if action.lower() in EMPTY_ACTIONS or _kind_of(ctx, action) == "external":
            return 1
    return 0


register("f69")(lambda ctx: int(any("mailto:" in a.lower() or "mail(" in a.lower() for _, a in _actions(ctx.dom))))
register("f72")(lambda ctx: int(any(a == "" or a.lower() == "about:blank" for _, a in _actions(ctx.dom))))


def _zero(value) -> bool:
    if value is None:
        return False
    text = str(value).strip().lower().removesuffix("px")
    try:
        return float(text) == 0
    except ValueError:
        return False


@register("f73")
def iframe(ctx):
    for tag in ctx.dom.iframes:
        if any(_zero(tag.get(a)) for a in ("width", "height", "border", "frameborder")):
            return 1
        if _HIDDEN_STYLE.search(tag.get("style") or ""):
            return 1
    return 0


@register("f74")
def popup_window(ctx):
    for script in ctx.dom.scripts:
        text = script.string or script.get_text() or ""
        if _WINDOW_OPEN.search(text) and _TEXT_INPUT.search(text):
            return 1
    return 0


@register("f75")
def unsafe_anchors(ctx):
    return sum(
        1 for a in ctx.dom.anchors
        if a.get("href") is not None and a["href"].strip().lower().startswith(UNSAFE_ANCHOR_PREFIXES)
    )


register("f76")(lambda ctx: int(ctx.dom.soup.find(attrs={"onmouseover": True}) is not None))
register("f77")(lambda ctx: int(_RIGHT_CLICK.search(ctx.dom.html_text) is not None))
register("f78")(lambda ctx: int(not (ctx.dom.title or "").strip()))


@register("f79")
def domain_in_title(ctx):
    label = ctx.parts.domain_label.lower()
    title = (ctx.dom.title or "").lower()
    return int(bool(label) and label in title)


def copyright_window(text: str) -> str | None:
    lowered = text.lower()
    hits = [i + len(m) for m in COPYRIGHT_MARKS if (i := lowered.find(m)) >= 0]
    if not hits:
        return None
    start = min(hits)
    return lowered[start:start + COPYRIGHT_WINDOW]


@register("f80")
def domain_with_copyright(ctx):
    label = ctx.parts.domain_label.lower()
    window = copyright_window(ctx.dom.text)
    return int(bool(label) and window is not None and label in window)


# -- grouped operations -----------------------------------------------------------------

HYPERLINK_KEYS = [f"f{i}" for i in range(57, 66)] + ["f67", "f68", "f70", "f71"]
ABNORMAL_KEYS = ["f66", "f69"] + [f"f{i}" for i in range(72, 81)]


def _slice(ctx, keys):
    from .catalog import feature

    return {k: REGISTRY[feature(k).name](ctx) for k in keys}


def hyperlink_features(dom: DomDocument, parts: UrlParts, prober=None,
                       resources: ExtractionResources | None = None) -> dict[str, float]:
    resources = resources or ExtractionResources()
    if prober is not None:
        resources = with_resources(resources, link_prober=prober)
    return _slice(FeatureContext.from_parts(parts, resources, dom), HYPERLINK_KEYS)


def abnormal_content_features(dom: DomDocument, parts: UrlParts) -> dict[str, float]:
    return _slice(FeatureContext.from_parts(parts, dom=dom), ABNORMAL_KEYS)
