"""
Extracting the 87 features offline
==================================

A URL, its archived page and three recorded service answers are enough to
compute the full feature vector without touching the network.
"""

from datetime import date

from phishset.features import ExtractionResources, FeatureContext, FEATURES, extract_context
from phishset.net import FixtureLinkProber, FixtureRedirectProber, offline_guard
from phishset.services import ExternalServiceClients
from phishset.snapshot import FixtureFetcher

url = "http://secure-login.paypa1-account.com/signin/index.php?session=8f3a"

# a cloned login page: most references point away from the page's domain
html = """<html><head><title>PayPal: Log in</title>
<link rel="icon" href="https://www.paypalobjects.com/favicon.ico">
<link rel="stylesheet" href="https://www.paypalobjects.com/css/main.css"></head>
<body><form action="verify.php" method="post">
<input name="email"><input name="password" type="password"></form>
<a href="https://www.paypal.com/help">Help</a><a href="https://www.paypal.com/privacy">Privacy</a>
<a href="#">Forgot?</a><a href="javascript:void(0)">Sign up</a>
<img src="https://www.paypalobjects.com/logo.png"></body></html>"""

fetch = FixtureFetcher({url: {"status": 200, "html": html}})

# service answers as they were recorded on the query date; missing keys time out
services = {
    "paypa1-account.com": {
        "whois": {"created": "2020-02-20", "expires": "2021-02-20"},
        "dns": True, "rank": "timeout", "indexed": False, "pagerank": 0,
    }
}
links = {"https://www.paypal.com/privacy": {"status": "ok", "redirect_to": "https://www.paypal.com/us/privacy"}}

resources = ExtractionResources(
    redirect_prober=FixtureRedirectProber(),
    link_prober=FixtureLinkProber(links),
    clients=ExternalServiceClients.from_fixture(services),
    query_date=date(2020, 3, 1),
)

# nothing below may open a socket
with offline_guard():
    vector = extract_context(FeatureContext(url, resources, fetch(url)))

for info, value in zip(FEATURES, vector):
    if value:
        print(f"{info.key:>4} {info.name:32s} {value}")

# -1 marks a measurement that could not be made (the rank lookup timed out)
print("unavailable:", [f.name for f, v in zip(FEATURES, vector) if v == -1])
