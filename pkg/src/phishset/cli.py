"""``phishset`` command line."""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import logging
import sys
import time
from datetime import date
from pathlib import Path

from . import experiments
from .config import RunConfig, build_fetcher, build_resources, output_path
from .dataset import (SeedFile, balance_and_shuffle, build_dataset, crawl_seed, ingest_urls, preprocess,
                      read_dataset, write_dataset)
from .errors import PhishsetError
from .features import FEATURES, FeatureContext, extract_context
from .features.catalog import PROFILE_CLASSES
from .features.extract import compute
from .ml import ClassifierSpec, FeatureMatrix, combine, cross_validate, load_model, permute_columns, project_classes
from .ml import save_model, train
from .net import offline_guard
from .snapshot import SnapshotStore

log = logging.getLogger("phishset")

EXIT_LEGITIMATE, EXIT_PHISHING, EXIT_ERROR = 0, 1, 2


def _common(parser: argparse.ArgumentParser):
    g = parser.add_argument_group("run configuration")
    g.add_argument("--config", help="INI file with [services], [limits], [paths]")
    g.add_argument("--offline", action="store_true", default=None, help="forbid all network access")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--snapshots", help="snapshot archive (JSON lines)")
    g.add_argument("--page-fixtures", help="JSON map url -> {status, html, final_url}")
    g.add_argument("--external-fixtures", help="JSON map domain -> service answers")
    g.add_argument("--redirect-fixtures", help="JSON map url -> redirect chain")
    g.add_argument("--link-fixtures", help="JSON map href -> link status")
    g.add_argument("--service-timeout-ms", type=int)
    g.add_argument("--probe-cap", type=int)
    g.add_argument("--workers", type=int)
    g.add_argument("--query-date", type=date.fromisoformat, help="reference date for WHOIS ages (YYYY-MM-DD)")
    g.add_argument("--out-dir", dest="output_dir")
    g.add_argument("-v", "--verbose", action="store_true")


def _config(args) -> RunConfig:
    keys = ("offline", "seed", "snapshots", "page_fixtures", "external_fixtures", "redirect_fixtures",
            "link_fixtures", "service_timeout_ms", "probe_cap", "workers", "query_date", "output_dir")
    return RunConfig.load(args.config, **{k: getattr(args, k, None) for k in keys})


def _matrix(path, classes=None) -> FeatureMatrix:
    fm = FeatureMatrix.from_dataset(read_dataset(path))
    return project_classes(fm, classes.split(",")) if classes else fm


def _store(config: RunConfig) -> SnapshotStore:
    return SnapshotStore(config.snapshots, build_fetcher(config))


# -- commands ---------------------------------------------------------------------------

def cmd_build_dataset(args, config):
    seeds = [SeedFile(p, "legitimate", Path(p).stem) for p in args.legit or []]
    seeds += [SeedFile(p, "phishing", Path(p).stem) for p in args.phish or []]
    urls = ingest_urls(seeds)
    if args.crawl_seeds:
        fetcher = build_fetcher(config)
        with open(args.crawl_seeds, encoding="utf-8") as fh:
            for row in csv.reader(fh):
                if row and not row[0].startswith("#"):
                    label = row[1].strip() if len(row) > 1 else "legitimate"
                    urls += crawl_seed(row[0].strip(), args.max_per_domain, fetcher, label)
    urls = preprocess(urls, args.max_per_domain)
    dataset, report = build_dataset(urls, _store(config), build_resources(config),
                                    created_at=args.created_at, workers=config.workers, drop_dead=args.drop_dead)
    if args.balance or args.shuffle:
        dataset = balance_and_shuffle(dataset, config.seed, balance=args.balance, shuffle=args.shuffle)
    else:
        dataset.seed = config.seed
    write_dataset(dataset, args.out)
    print(f"wrote {len(dataset)} rows to {args.out} {dataset.class_counts()}")
    if report.failed_fetches:
        print(f"{len(report.failed_fetches)} URLs had no usable page (content features zeroed)", file=sys.stderr)
    return 0


def cmd_extract(args, config):
    resources = build_resources(config)
    store = _store(config)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["url", *[f.name for f in FEATURES]])
    for url in args.urls:
        snap = store.get_or_fetch(url)
        w.writerow([url, *extract_context(FeatureContext(url, resources, snap))])
    return 0


def cmd_rank(args, config):
    from .selection import rank_features, write_ranking

    ranking = rank_features(_matrix(args.dataset, args.classes), args.filter, bins=args.bins,
                            m_samples=args.m_samples, seed=config.seed)
    out = args.out or output_path(config, f"ranking_{args.filter}.csv")
    write_ranking(ranking, out)
    for i, (name, score) in enumerate(ranking.items[: args.show], start=1):
        print(f"{i:3d} {name:30s} {score:.6f}")
    return 0


def cmd_select(args, config):
    from .selection import best_first_wrapper, boruta, decremental_selection, rank_features

    fm = _matrix(args.dataset, args.classes)
    spec = ClassifierSpec(args.classifier, seed=config.seed)
    if args.method == "decremental":
        result = decremental_selection(fm, rank_features(fm, args.filter, seed=config.seed), spec, args.folds,
                                       config.seed)
        selected = result.selected
        print(f"best k={result.best_k} accuracy={result.best_score:.4f}")
    elif args.method == "bestfirst":
        result = best_first_wrapper(fm, spec, args.evaluator, args.stale_limit, config.seed)
        selected = result.selected
        print(f"score={result.best_score:.4f}")
    else:
        result = boruta(fm, spec, args.max_rounds, args.alpha, config.seed)
        selected = result.confirmed
        print(f"confirmed={len(result.confirmed)} rejected={len(result.rejected)} tentative={len(result.tentative)}")
    out = args.out or output_path(config, f"selection_{args.method}.csv")
    with open(out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["feature"])
        w.writerows([n] for n in selected)
    print(" ".join(selected))
    return 0


def cmd_evaluate(args, config):
    from .selection import rank_features

    fm = _matrix(args.dataset, args.classes)
    if args.order and args.order != "extraction":
        fm = permute_columns(fm, rank_features(fm, args.order, seed=config.seed).names)
    spec = ClassifierSpec(args.classifier, seed=config.seed)
    rep = cross_validate(fm, spec, args.folds, config.seed)
    for key, value in rep.as_row().items():
        print(f"{key:14s} {value:.4f}")
    cm = rep.confusion
    print(f"confusion      tp={cm.tp} tn={cm.tn} fp={cm.fp} fn={cm.fn}")
    if args.save_model:
        save_model(train(spec, fm), args.save_model)
    return 0


def cmd_combine(args, config):
    fm = _matrix(args.dataset)
    specs = [ClassifierSpec(args.classifier, seed=config.seed)] * 3
    res = combine(specs, args.mode, fm, k=args.folds, seed=config.seed)
    for cls, base in zip(("IU", "IC", "E"), res.base_reports):
        print(f"base {cls:3s} accuracy {base.accuracy:.4f}")
    print(f"{args.mode:8s} accuracy {res.report.accuracy:.4f} macro_f1 {res.report.macro_f1:.4f}")
    return 0


def cmd_profile(args, config):
    from .profiler import LatencySpec, inject_latency, profile_extraction, write_timing_report

    resources = build_resources(config)
    if args.inject_latency:
        resources = inject_latency(resources, LatencySpec.parse(args.inject_latency))
    urls = [l.strip() for l in Path(args.urls).read_text(encoding="utf-8").splitlines() if l.strip()]
    store = _store(config)
    snapshots = {u: store.get_or_fetch(u) for u in urls}
    report = profile_extraction(urls, resources, snapshots, args.repetitions)
    out = args.out or output_path(config, "timing.csv")
    write_timing_report(report, out)
    for cls, mean in report.classes.items():
        print(f"{cls:4s} {mean:10.3f} ms")
    return 0


def cmd_check(args, config):
    try:
        model = load_model(args.model)
        resources = build_resources(config)
        start = time.perf_counter()
        snap = _store(config).get_or_fetch(args.url)
        if snap is None or snap.failed:
            raise PhishsetError(f"no page available for {args.url}")
        ctx = FeatureContext(args.url, resources, snap)
        by_name = {f.name: f for f in FEATURES}
        values = {name: compute(ctx, by_name[name]) for name in model.feature_names}
        label = model.predict_label([values[n] for n in model.feature_names], model.feature_names)
        elapsed = time.perf_counter() - start
    except Exception as exc:  # any failure is a verdict of its own
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    summary = {cls: sum(1 for n in values if by_name[n].profile_class == cls) for cls in PROFILE_CLASSES}
    print(json.dumps({"url": args.url, "label": label, "features_per_class": summary,
                      "extraction_seconds": round(elapsed, 4)}))
    return EXIT_PHISHING if label == "phishing" else EXIT_LEGITIMATE


def cmd_run(args, config):
    out = Path(config.output_dir)
    if args.name == "exp5":
        urls = read_dataset(args.dataset).urls[: args.limit]
        store = _store(config)
        path = experiments.exp5(urls, out, build_resources(config), {u: store.get_or_fetch(u) for u in urls},
                                args.repetitions)
        print(path)
        return 0
    fm = _matrix(args.dataset)
    fn = getattr(experiments, args.name)
    extra = {"kind": args.classifier} if args.name in ("exp3", "exp4") else {}
    result = fn(fm, out, seed=config.seed, folds=args.folds, **extra)
    for p in result if isinstance(result, list) else [result]:
        print(p)
    return 0


# -- parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phishset", description="Phishing dataset construction and experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-dataset", help="collect, extract, balance and write a dataset")
    p.add_argument("--legit", action="append", help="file of legitimate URLs (repeatable)")
    p.add_argument("--phish", action="append", help="file of phishing URLs (repeatable)")
    p.add_argument("--crawl-seeds", help="CSV of domain,label to crawl")
    p.add_argument("--out", required=True)
    p.add_argument("--max-per-domain", type=int, default=12)
    p.add_argument("--balance", action="store_true")
    p.add_argument("--shuffle", action="store_true")
    p.add_argument("--drop-dead", action="store_true", help="drop rows whose page could not be fetched")
    p.add_argument("--created-at", type=date.fromisoformat, help="dataset date stamp (default today)")
    p.set_defaults(func=cmd_build_dataset)

    p = sub.add_parser("extract", help="print the 87 features of URLs")
    p.add_argument("urls", nargs="+")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("rank", help="rank features with a filter")
    p.add_argument("--dataset", required=True)
    p.add_argument("--filter", choices=("chi2", "pearson", "infogain", "relief"), required=True)
    p.add_argument("--classes")
    p.add_argument("--bins", type=int, default=10)
    p.add_argument("--m-samples", type=int)
    p.add_argument("--show", type=int, default=25)
    p.add_argument("--out")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("select", help="wrapper or decremental feature selection")
    p.add_argument("--dataset", required=True)
    p.add_argument("--method", choices=("decremental", "bestfirst", "boruta"), required=True)
    p.add_argument("--classifier", choices=("rf", "dt", "lr", "nb"), default="rf")
    p.add_argument("--filter", choices=("chi2", "pearson", "infogain", "relief"), default="chi2")
    p.add_argument("--evaluator", choices=("subset-consistency", "cv-accuracy"), default="cv-accuracy")
    p.add_argument("--stale-limit", type=int, default=5)
    p.add_argument("--max-rounds", type=int, default=100)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--classes")
    p.add_argument("--out")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("evaluate", help="k-fold cross-validation of one classifier")
    p.add_argument("--dataset", required=True)
    p.add_argument("--classifier", choices=("rf", "dt", "lr", "nb"), default="rf")
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--classes", help="comma-separated subset of IU,IC,E")
    p.add_argument("--order", choices=("chi2", "pearson", "infogain", "relief", "extraction"))
    p.add_argument("--save-model", help="also train on all rows and save the model here")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("combine", help="combine three per-class models")
    p.add_argument("--dataset", required=True)
    p.add_argument("--mode", choices=("and", "or", "vote", "stack"), required=True)
    p.add_argument("--classifier", choices=("rf", "dt", "lr", "nb"), default="rf")
    p.add_argument("--folds", type=int, default=10)
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("profile", help="time feature extraction")
    p.add_argument("--urls", required=True)
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--inject-latency", help='e.g. "external=400,probe=80"')
    p.add_argument("--out")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("check", help="verdict for one URL (exit 0 legitimate, 1 phishing, 2 error)")
    p.add_argument("url")
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("run", help="run one of the five experiments")
    p.add_argument("name", choices=("exp1", "exp2", "exp3", "exp4", "exp5"))
    p.add_argument("--dataset", required=True)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--limit", type=int, default=100, help="exp5: number of dataset URLs to profile")
    p.add_argument("--classifier", choices=("rf", "dt", "lr", "nb"), default="rf",
                   help="exp3/exp4: classifier inside the selection loop")
    p.set_defaults(func=cmd_run)

    for p in sub.choices.values():
        _common(p)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    config = _config(args)
    guard = offline_guard() if config.offline else contextlib.nullcontext()
    try:
        with guard:
            return args.func(args, config)
    except (PhishsetError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
