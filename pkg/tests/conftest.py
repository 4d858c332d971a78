from datetime import date
from pathlib import Path

import pytest

from phishset.features import ExtractionResources
from phishset.net import FixtureLinkProber, FixtureRedirectProber
from phishset.services import ExternalServiceClients
from phishset.snapshot import FixtureFetcher

GOLDEN = Path(__file__).parent / "golden"


def golden_pages() -> dict:
    from golden_cases import PAGES

    pages = {}
    for url, (name, status) in PAGES.items():
        html = (GOLDEN / "pages" / name).read_text(encoding="utf-8") if name else ""
        pages[url] = {"status": status, "html": html}
    return pages


def golden_resources(**changes) -> ExtractionResources:
    from golden_cases import QUERY_DATE

    res = ExtractionResources(
        redirect_prober=FixtureRedirectProber.from_file(GOLDEN / "redirects.json"),
        link_prober=FixtureLinkProber.from_file(GOLDEN / "links.json"),
        clients=ExternalServiceClients.from_fixture(GOLDEN / "external.json"),
        query_date=date.fromisoformat(QUERY_DATE),
        probe_cap=30,
    )
    for key, value in changes.items():
        setattr(res, key, value)
    return res


@pytest.fixture
def resources():
    return golden_resources()


@pytest.fixture
def fetcher():
    return FixtureFetcher(golden_pages())


# -- local HTTP server for the live clients ----------------------------------------

import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

PAGE_HTML = b"<html><head><title>Local</title></head><body><a href='/a'>a</a></body></html>"
REDIRECTS = {"/hop1": "/hop2", "/hop2": "/hop3", "/hop3": "/page", "/moved": "/page",
             "/away": "http://other.invalid/x"}


class _Handler(BaseHTTPRequestHandler):
    def _answer(self, body=True):
        path = self.path.split("?", 1)[0]
        if path in REDIRECTS:
            self.send_response(302)
            self.send_header("Location", REDIRECTS[path])
            self.end_headers()
        elif path in ("/page", "/a", "/big"):
            payload = PAGE_HTML if path != "/big" else b"x" * 50_000
            self.send_response(200)
            self.send_header("Content-Type", "text/html")
            self.send_header("Content-Length", str(len(payload)))
            self.end_headers()
            if body:
                self.wfile.write(payload)
        elif path == "/slow":
            time.sleep(1.0)
            self.send_response(200)
            self.end_headers()
        else:
            self.send_response(404)
            self.send_header("Content-Length", "0")
            self.end_headers()

    def do_GET(self):
        self._answer()

    def do_HEAD(self):
        self._answer(body=False)

    def log_message(self, *args):
        pass


@pytest.fixture(scope="session")
def http_server():
    server = ThreadingHTTPServer(("127.0.0.1", 0), _Handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}"
    server.shutdown()
