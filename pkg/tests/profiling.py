"""Pages and resources for the profiler tests: phishing-kit style pages whose
external references outnumber the internal ones."""

from datetime import datetime, timezone

from conftest import golden_resources
from phishset.snapshot import PageSnapshot

FETCHED = datetime(2020, 3, 1, tzinfo=timezone.utc)


def page_with_links(url: str, internal: int, external: int) -> PageSnapshot:
    base = url.rstrip("/")
    body = "".join(f"<a href='{base}/in{i}'>i</a>" for i in range(internal))
    body += "".join(f"<a href='http://cdn{i}.elsewhere.net/x'>e</a>" for i in range(external))
    html = f"<html><head><title>Sign in</title></head><body>{body}</body></html>"
    return PageSnapshot(url, "fixture", FETCHED, 200, url, html.encode())


def kit_corpus(n_pages: int = 2, internal: int = 4, external: int = 8) -> dict:
    urls = [f"http://phish.example.net/kit{i}/" for i in range(n_pages)]
    return {u: page_with_links(u, internal, external) for u in urls}


def fixture_resources():
    return golden_resources()
