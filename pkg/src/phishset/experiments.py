"""The five experiments as report-producing functions.

exp1  classifiers x feature-class combinations, plus per-class models for exp2
exp2  AND / OR / vote / stack combinations of the three per-class models
exp3  filter rankings and decremental accuracy curves
exp4  wrapper selections (best-first with two evaluators, Boruta)
exp5  per-feature extraction timing
"""

from __future__ import annotations

import csv
from itertools import combinations
from pathlib import Path

from .errors import ModelNotLoaded
from .ml import ClassifierSpec, FeatureMatrix, combine, cross_validate, load_model, project_classes, save_model, train
from .ml.classifiers import KINDS
from .ml.evaluation import MODES
from .selection import FILTERS, best_first_wrapper, boruta, decremental_selection, rank_features, write_ranking

CLASSES = ("IU", "IC", "E")
CLASS_COMBINATIONS = [c for r in (1, 2, 3) for c in combinations(CLASSES, r)]
METRIC_COLUMNS = ["accuracy", "precision", "recall", "f1_phishing", "f1_legitimate", "macro_f1"]


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _writer(path):
    fh = open(path, "w", newline="", encoding="utf-8")
    return fh, csv.writer(fh, lineterminator="\n")


def model_path(out_dir, cls: str) -> Path:
    return Path(out_dir) / f"exp1_model_{cls}.pkl"


def exp1(fm: FeatureMatrix, out_dir, seed: int = 0, folds: int = 10, kinds=KINDS,
         groups: dict | None = None, model_kind: str = "random_forest") -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "exp1_classifiers.csv"
    fh, w = _writer(path)
    with fh:
        w.writerow(["classifier", "classes", "n_features", *METRIC_COLUMNS])
        for kind in kinds:
            spec = ClassifierSpec(kind, seed=seed)
            for combo in CLASS_COMBINATIONS:
                sub = project_classes(fm, combo, groups)
                rep = cross_validate(sub, spec, folds, seed)
                w.writerow([spec.kind, "+".join(combo), sub.n_features, *map(_fmt, rep.as_row().values())])
    for cls in CLASSES:
        sub = project_classes(fm, [cls], groups)
        model = train(ClassifierSpec(model_kind, seed=seed), sub)
        model.groups = {cls: list(sub.names)}
        save_model(model, model_path(out_dir, cls))
    return path


def exp2(fm: FeatureMatrix, out_dir, seed: int = 0, folds: int = 10) -> Path:
    out_dir = Path(out_dir)
    models = []
    for cls in CLASSES:
        try:
            models.append(load_model(model_path(out_dir, cls)))
        except ModelNotLoaded as exc:
            raise ModelNotLoaded(f"exp2 needs the three per-class models; run exp1 first ({exc})") from exc
    specs = [m.spec for m in models]
    groups = {cls: m.groups[cls] for cls, m in zip(CLASSES, models)}
    path = out_dir / "exp2_combinations.csv"
    fh, w = _writer(path)
    with fh:
        w.writerow(["mode", *METRIC_COLUMNS, "base_IU", "base_IC", "base_E"])
        for mode in MODES:
            res = combine(specs, mode, fm, CLASSES, groups, folds, seed)
            w.writerow([mode, *map(_fmt, res.report.as_row().values()),
                        *(_fmt(b.accuracy) for b in res.base_reports)])
    return path


def exp3(fm: FeatureMatrix, out_dir, seed: int = 0, folds: int = 10, kind: str = "random_forest",
         filters=FILTERS) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    spec = ClassifierSpec(kind, seed=seed)
    paths = []
    for name in filters:
        ranking = rank_features(fm, name, seed=seed)
        rank_path = out_dir / f"exp3_ranking_{name}.csv"
        write_ranking(ranking, rank_path)
        result = decremental_selection(fm, ranking, spec, folds, seed)
        curve_path = out_dir / f"exp3_curve_{name}.csv"
        fh, w = _writer(curve_path)
        with fh:
            w.writerow(["k", "accuracy", "best"])
            for k, acc in result.curve.items():
                w.writerow([k, _fmt(acc), int(k == result.best_k)])
        paths += [rank_path, curve_path]
    return paths


def exp4(fm: FeatureMatrix, out_dir, seed: int = 0, folds: int = 10, kind: str = "random_forest",
         stale_limit: int = 5) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    spec = ClassifierSpec(kind, seed=seed)
    selections = {
        "bestfirst-subset-consistency": best_first_wrapper(fm, spec, "subset-consistency", stale_limit, seed).selected,
        "bestfirst-cv-accuracy": best_first_wrapper(fm, spec, "cv-accuracy", stale_limit, seed).selected,
        "boruta": boruta(fm, spec, seed=seed).confirmed,
    }
    path = out_dir / "exp4_wrappers.csv"
    fh, w = _writer(path)
    with fh:
        w.writerow(["method", "n_selected", "accuracy", "features"])
        for method, names in selections.items():
            acc = cross_validate(fm.columns(names), spec, folds, seed).accuracy if names else 0.0
            w.writerow([method, len(names), _fmt(acc), " ".join(names)])
    return path


def exp5(urls, out_dir, resources=None, snapshots=None, repetitions: int = 1) -> Path:
    from .profiler import profile_extraction, write_timing_report

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report = profile_extraction(urls, resources, snapshots, repetitions)
    path = out_dir / "exp5_timing.csv"
    write_timing_report(report, path)
    return path
