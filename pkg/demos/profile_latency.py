"""
Where extraction time goes
==========================

Lexical features are pure string work.  Link and service features wait on
the network, so their cost follows latency and link counts.  Injecting fixed
delays into fixture clients makes that ordering visible on any machine.
"""

from datetime import datetime, timezone

from phishset.features import ExtractionResources
from phishset.profiler import LatencySpec, inject_latency, profile_extraction
from phishset.services import ExternalServiceClients
from phishset.snapshot import PageSnapshot

url = "http://account-verify.example.net/login/"
internal = "".join(f"<a href='/p{i}'>p</a>" for i in range(3))
external = "".join(f"<a href='http://cdn{i}.other.org/r'>r</a>" for i in range(6))
page = PageSnapshot(url, "demo", datetime(2020, 3, 1, tzinfo=timezone.utc), 200, url,
                    f"<html><body>{internal}{external}</body></html>".encode())

services = {"example.net": {"whois": {"created": "2019-01-01"}, "dns": True, "rank": 90000,
                            "indexed": True, "pagerank": 2}}
resources = ExtractionResources(clients=ExternalServiceClients.from_fixture(services))
slow = inject_latency(resources, LatencySpec(external_ms=50, probe_ms=10))

report = profile_extraction([url], slow, {url: page}, repetitions=2)
for cls, mean in report.classes.items():
    print(f"{cls:4s} {mean:8.2f} ms  (sum of its features {report.class_feature_sums[cls]:.2f})")
print("slowest:", [(t.name, round(t.mean_ms, 1)) for t in report.features[:5]])
