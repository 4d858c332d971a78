"""On-disk fixture files and URL lists for driving the command line offline."""

import json

from conftest import GOLDEN, golden_pages
from golden_cases import QUERY_DATE
from phishset.cli import main


def offline_fixture_args(tmp_path) -> list[str]:
    pages = tmp_path / "pages.json"
    pages.write_text(json.dumps(golden_pages()))
    return ["--offline", "--page-fixtures", str(pages), "--external-fixtures", str(GOLDEN / "external.json"),
            "--redirect-fixtures", str(GOLDEN / "redirects.json"), "--link-fixtures", str(GOLDEN / "links.json"),
            "--query-date", QUERY_DATE]


def url_files(tmp_path):
    legit = tmp_path / "legit.txt"
    legit.write_text("\n".join(["https://www.example.com/", "https://shop.example.org/"]
                               + [f"http://www.bigsite.com/page{i}" for i in range(20)]) + "\n")
    phish = tmp_path / "phish.txt"
    phish.write_text("\n".join(["http://secure-paypal.com/page.com.html", "http://phish.example.net/login",
                                "http://dead.example.com/gone"]
                               + [f"http://kit{i}.example.net/login.php" for i in range(14)]) + "\n")
    return legit, phish


def build_twice(tmp_path, fixture_args):
    legit, phish = url_files(tmp_path)
    outs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        code = main(["build-dataset", "--legit", str(legit), "--phish", str(phish), "--out", str(out),
                     "--balance", "--shuffle", "--seed", "7", "--created-at", "2020-03-01", *fixture_args])
        assert code == 0
        outs.append(out)
    return outs


