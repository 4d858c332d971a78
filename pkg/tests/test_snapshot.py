import base64
import json
from datetime import datetime, timezone

import pytest
from hypothesis import given, strategies as st

from phishset.errors import EmptySnapshot, NetworkForbidden
from phishset.net import offline_guard
from phishset.snapshot import (ARCHIVE_FIELDS, NETWORK_FAILURE, FetchPolicy, FixtureFetcher, LiveFetcher,
                               PageSnapshot, SnapshotStore, archive_read, archive_write, parse_dom, parse_html)

T0 = datetime(2020, 3, 1, 12, 0, tzinfo=timezone.utc)


def snap(url, html=b"<html></html>", status=200):
    return PageSnapshot(url, "seed-list", T0, status, url, html)


def test_archive_round_trip(tmp_path):
    snaps = [snap("http://a.com/"), snap("http://b.com/", "héllo \x00 bytes".encode()), snap("http://c.com/", b"", 0)]
    path = tmp_path / "a.jsonl"
    assert archive_write(path, snaps) == 3
    back, errors = archive_read(path)
    assert back == snaps and errors == []
    for line in path.read_text(encoding="utf-8").splitlines():
        record = json.loads(line)
        assert tuple(record) == ARCHIVE_FIELDS
        assert record["fetched_at"].endswith("Z")


def test_corrupt_line_is_reported_and_rest_loaded(tmp_path):
    path = tmp_path / "a.jsonl"
    archive_write(path, [snap(f"http://s{i}.com/") for i in range(9)])
    lines = path.read_text(encoding="utf-8").splitlines()
    lines.insert(4, '{"url": "broken"')
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    back, errors = archive_read(path)
    assert len(back) == 9 and len(errors) == 1
    assert errors[0].line_number == 5


def test_empty_archive(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("", encoding="utf-8")
    assert archive_read(path) == ([], [])
    assert archive_read(tmp_path / "absent.jsonl") == ([], [])


def test_store_later_lines_win_and_fetch_once(tmp_path):
    path = tmp_path / "s.jsonl"
    calls = []

    def fetcher(url, source="unknown"):
        calls.append(url)
        return snap(url, b"<p>fresh</p>")

    store = SnapshotStore(path, fetcher)
    first = store.get_or_fetch("http://x.com/")
    assert store.get_or_fetch("http://x.com/") is first and calls == ["http://x.com/"]
    store.add(snap("http://x.com/", b"<p>newer</p>"))
    assert SnapshotStore(path).get("http://x.com/").html == b"<p>newer</p>"


def test_parse_dom_title_and_empty():
    assert parse_dom(snap("http://a.com/", b"<html><title>T</title></html>")).title == "T"
    with pytest.raises(EmptySnapshot):
        parse_dom(snap("http://a.com/", b""))


def test_tolerant_parse_of_unclosed_tags():
    html = b"<html><body><div><a href='/1'>one<a href='/2'>two<p><a href=/3>three</div><form><input"
    dom = parse_dom(snap("http://a.com/", html))
    assert [a.get("href") for a in dom.anchors] == ["/1", "/2", "/3"]


def test_failed_snapshot_has_empty_html():
    fx = FixtureFetcher({"http://gone.com/": {"status": 404, "html": "<p>not found</p>"}})
    s = fx("http://gone.com/")
    assert s.failed and s.html == b""
    s = fx("http://never-seen.com/")
    assert s.http_status == NETWORK_FAILURE and s.html == b"" and s.fetched_at is not None


def test_live_fetch_page(http_server):
    s = LiveFetcher()(http_server + "/page")
    assert s.http_status == 200 and b"Local" in s.html and not s.failed


def test_live_fetch_follows_three_hops(http_server):
    s = LiveFetcher()(http_server + "/hop1")
    assert s.final_url == http_server + "/page" and s.http_status == 200


def test_live_fetch_truncates(http_server):
    s = LiveFetcher(FetchPolicy(max_bytes=1000))(http_server + "/big")
    assert len(s.html) == 1000


def test_live_fetch_dead_host():
    s = LiveFetcher(FetchPolicy(timeout=1.0))("http://127.0.0.1:9/")
    assert s.http_status == NETWORK_FAILURE and s.html == b"" and s.failed


def test_live_fetch_timeout(http_server):
    s = LiveFetcher(FetchPolicy(timeout=0.2))(http_server + "/slow")
    assert s.failed


def test_live_fetch_refused_offline(http_server):
    with offline_guard(), pytest.raises(NetworkForbidden):
        LiveFetcher()(http_server + "/page")


@given(st.binary(max_size=300), st.text(max_size=30))
def test_archive_line_round_trip_property(html, source):
    s = PageSnapshot("http://p.com/", source, T0, 200, "http://p.com/", html)
    back = PageSnapshot.from_json(s.to_json())
    assert back == s
    assert base64.b64decode(json.loads(s.to_json())["html_base64"]) == html


@given(st.text(max_size=400))
def test_parse_is_deterministic(text):
    a, b = parse_html(text), parse_html(text)
    assert [x.get("href") for x in a.anchors] == [x.get("href") for x in b.anchors]
    assert len(a.forms) == len(b.forms) and a.title == b.title
