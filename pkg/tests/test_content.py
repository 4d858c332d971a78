import pytest
from hypothesis import given, settings, strategies as st

from phishset.errors import ProbeTimeout
from phishset.features.content import abnormal_content_features, copyright_window, hyperlink_features
from phishset.net import FixtureLinkProber, LinkStatus
from phishset.snapshot import parse_html
from phishset.urls import parse_url

PAGE = parse_url("http://www.example.com/index.html")

TEN_REFS = """<html><head>
<link rel="stylesheet" href="/a.css"><script src="js/app.js"></script>
</head><body>
<a href="/1">1</a><a href="http://example.com/2">2</a><a href="https://cdn.example.com/3">3</a>
<img src="/4.png">
<a href="http://other.com/">o</a><img src="https://img.other.net/x.png"><iframe src="//ads.third.org/f"></iframe>
<a href="#">null</a>
</body></html>"""


def test_inventory_ratios():
    s = hyperlink_features(parse_html(TEN_REFS), PAGE, FixtureLinkProber())
    assert s["f57"] == 10
    assert (s["f58"], s["f59"], s["f60"]) == (0.6, 0.3, 0.1)


def test_internal_error_ratio():
    html = "<a href='/a'>a</a><a href='/b'>b</a><a href='/c'>c</a><a href='/d'>d</a>"
    prober = FixtureLinkProber({"http://www.example.com/c": {"status": "error"}})
    assert hyperlink_features(parse_html(html), PAGE, prober)["f64"] == 0.25


def test_probe_timeout_counts_as_error():
    class Flaky:
        def probe(self, url, href=None):
            if url.endswith("/slow"):
                raise ProbeTimeout(url)
            return LinkStatus(True)

    html = "<a href='http://x.org/slow'>a</a><a href='http://x.org/ok'>b</a>"
    assert hyperlink_features(parse_html(html), PAGE, Flaky())["f65"] == 0.5


def test_probe_cap_limits_denominator():
    from phishset.features import ExtractionResources

    html = "".join(f"<a href='/p{i}'>x</a>" for i in range(40))
    prober = FixtureLinkProber({f"http://www.example.com/p{i}": {"status": "error"} for i in range(0, 40, 2)})
    s = hyperlink_features(parse_html(html), PAGE, prober, ExtractionResources(probe_cap=30))
    assert s["f64"] == 15 / 30


def test_external_favicon():
    s = hyperlink_features(parse_html('<link rel="icon" href="http://other.com/f.ico">'), PAGE)
    assert s["f67"] == 1
    s = hyperlink_features(parse_html('<link rel="icon" href="/f.ico">'), PAGE)
    assert s["f67"] == 0


def test_external_css_count():
    html = ('<link rel="stylesheet" href="http://cdn.x.com/a.css"><link rel="stylesheet" href="/b.css">'
            '<link rel="preload" href="http://cdn.x.com/c.css">')
    assert hyperlink_features(parse_html(html), PAGE)["f61"] == 1


def test_redirect_counts():
    html = "<a href='/r'>r</a><a href='http://o.com/r'>r</a><a href='http://o.com/s'>s</a>"
    prober = FixtureLinkProber({
        "http://www.example.com/r": {"status": "ok", "redirect_to": "http://www.example.com/z"},
        "http://o.com/r": {"status": "ok", "redirect_to": "http://o.com/z"},
        "http://o.com/s": {"status": "ok", "redirect_to": "http://o.com/y"},
    })
    s = hyperlink_features(parse_html(html), PAGE, prober)
    assert (s["f62"], s["f63"]) == (1, 2)


def test_empty_page_ratios_are_zero():
    s = hyperlink_features(parse_html("<html><body><p>hi</p></body></html>"), PAGE)
    assert all(s[k] == 0 for k in s)


def test_mailto_action():
    assert abnormal_content_features(parse_html('<form action="mailto:x@y.z"></form>'), PAGE)["f69"] == 1


def test_empty_title():
    assert abnormal_content_features(parse_html("<title></title>"), PAGE)["f78"] == 1
    assert abnormal_content_features(parse_html("<p>no title</p>"), PAGE)["f78"] == 1


def test_domain_in_title():
    page = parse_url("http://example.com/")
    s = abnormal_content_features(parse_html("<title>Example | Login</title>"), page)
    assert s["f79"] == 1


@pytest.mark.parametrize("action,flag", [("", 1), ("#", 1), ("javascript::void(0)", 1), ("http://evil.org/p", 1),
                                         ("/login", 0), ("http://www.example.com/login", 0)])
def test_login_form_action(action, flag):
    html = f'<form action="{action}"><input type="password"></form>'
    assert abnormal_content_features(parse_html(html), PAGE)["f66"] == flag


def test_form_without_password_is_not_login():
    html = '<form action="http://evil.org/p"><input type="text"></form>'
    assert abnormal_content_features(parse_html(html), PAGE)["f66"] == 0


@pytest.mark.parametrize("attrs,flag", [('width="0"', 1), ('frameborder="0"', 1), ('style="visibility:hidden"', 1),
                                        ('width="300" height="200"', 0)])
def test_invisible_iframe(attrs, flag):
    assert abnormal_content_features(parse_html(f'<iframe src="/x" {attrs}></iframe>'), PAGE)["f73"] == flag


def test_popup_needs_window_and_input():
    s = abnormal_content_features(parse_html("<script>window.open('x'); prompt('pin')</script>"), PAGE)
    assert s["f74"] == 1
    s = abnormal_content_features(parse_html("<script>window.open('x')</script>"), PAGE)
    assert s["f74"] == 0


def test_unsafe_anchors_and_events():
    html = ('<a href="#a">1</a><a href="javascript:x()">2</a><a href="mailto:a@b">3</a><a href="/ok">4</a>'
            '<div onmouseover="x()"></div><script>if (event.button == 2) {}</script>')
    s = abnormal_content_features(parse_html(html), PAGE)
    assert (s["f75"], s["f76"], s["f77"]) == (3, 1, 1)


def test_copyright_window():
    text = "x" * 10 + "© " + "y" * 120 + " example"
    assert copyright_window(text) is not None and "example" not in copyright_window(text)
    s = abnormal_content_features(parse_html("<p>(c) 2020 Example Ltd</p>"), PAGE)
    assert s["f80"] == 1


# -- properties -------------------------------------------------------------------

hrefs = st.sampled_from(["", "#", "#x", "/a", "b.html", "http://www.example.com/c", "http://other.org/d",
                         "javascript:void(0)", "mailto:a@b.c", "data:image/png;base64,AA", "//cdn.x.net/e",
                         "about:blank", "https://sub.example.com/f"])
tags = st.sampled_from(["a", "img", "link", "script", "iframe", "video"])


@st.composite
def pages(draw):
    items = draw(st.lists(st.tuples(tags, hrefs), max_size=25))
    attr = {"a": "href", "link": "href"}
    body = "".join(f'<{t} {attr.get(t, "src")}="{h}"></{t}>' for t, h in items)
    forms = draw(st.lists(st.sampled_from(['<form action="">', '<form action="mailto:x@y">',
                                           '<form action="/p"><input type="password">']), max_size=3))
    return "<html><body>" + body + "".join(f + "</form>" for f in forms) + "</body></html>"


@settings(max_examples=100, deadline=None)
@given(pages())
def test_content_slice_invariants(html):
    dom = parse_html(html)
    prober = FixtureLinkProber({"http://other.org/d": {"status": "error"}})
    h = hyperlink_features(dom, PAGE, prober)
    a = abnormal_content_features(dom, PAGE)
    if h["f57"] > 0:
        assert abs(h["f58"] + h["f59"] + h["f60"] - 1) <= 1e-9
    else:
        assert h["f58"] == h["f59"] == h["f60"] == 0
    assert 0 <= h["f64"] <= 1 and 0 <= h["f65"] <= 1
    assert a["f75"] <= h["f57"]
    for k in ("f66", "f69", "f72", "f73", "f74", "f76", "f77", "f78", "f79", "f80"):
        assert a[k] in (0, 1)
    assert hyperlink_features(parse_html(html), PAGE, prober) == h
