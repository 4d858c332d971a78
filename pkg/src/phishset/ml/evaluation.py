"""Confusion-matrix metrics, stratified k-fold cross-validation and model
combination (AND / OR / vote / stacking).

Phishing (label 1) is the positive class throughout.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from ..errors import EmptyMatrix, ModelCountMismatch, TooFewRows
from .classifiers import ClassifierSpec, LogisticRegressionGA, train
from .data import FeatureMatrix, project_classes


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int = 0
    tn: int = 0
    fp: int = 0
    fn: int = 0

    @classmethod
    def from_predictions(cls, y_true, y_pred) -> "ConfusionMatrix":
        y_true = np.asarray(y_true, dtype=int)
        y_pred = np.asarray(y_pred, dtype=int)
        return cls(
            tp=int(np.sum((y_true == 1) & (y_pred == 1))),
            tn=int(np.sum((y_true == 0) & (y_pred == 0))),
            fp=int(np.sum((y_true == 0) & (y_pred == 1))),
            fn=int(np.sum((y_true == 1) & (y_pred == 0))),
        )

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    def __add__(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        return ConfusionMatrix(self.tp + other.tp, self.tn + other.tn, self.fp + other.fp, self.fn + other.fn)

    def swapped(self) -> "ConfusionMatrix":
        """Same matrix with legitimate taken as the positive class."""
        return ConfusionMatrix(self.tn, self.tp, self.fn, self.fp)


def _div(a, b):
    return a / b if b else 0.0


def _f1(p, r):
    return _div(2 * p * r, p + r)


@dataclass
class EvalReport:
    accuracy: float
    precision: float
    recall: float
    f1_phishing: float
    f1_legitimate: float
    macro_f1: float
    confusion: ConfusionMatrix
    folds: list[ConfusionMatrix] = field(default_factory=list)
    train_seconds: float = 0.0
    test_seconds: float = 0.0
    predictions: np.ndarray | None = None  # out-of-fold predictions in row order

    def as_row(self) -> dict:
        return {k: getattr(self, k) for k in ("accuracy", "precision", "recall", "f1_phishing", "f1_legitimate", "macro_f1")}


def metrics(cm: ConfusionMatrix) -> EvalReport:
    if cm.total <= 0:
        raise EmptyMatrix("confusion matrix is empty")
    precision = _div(cm.tp, cm.tp + cm.fp)
    recall = _div(cm.tp, cm.tp + cm.fn)
    f1_phish = _f1(precision, recall)
    f1_legit = _f1(_div(cm.tn, cm.tn + cm.fn), _div(cm.tn, cm.tn + cm.fp))
    return EvalReport(
        accuracy=(cm.tp + cm.tn) / cm.total,
        precision=precision,
        recall=recall,
        f1_phishing=f1_phish,
        f1_legitimate=f1_legit,
        macro_f1=(f1_phish + f1_legit) / 2,
        confusion=cm,
    )


def stratified_folds(y, k: int, seed: int) -> np.ndarray:
    """Fold id per row.

    Each class is shuffled with the seed, the shuffled classes are laid end to
    end (legitimate first) and position ``i`` goes to fold ``i % k``; fold sizes
    therefore differ by at most one, overall and within each class.
    """
    y = np.asarray(y, dtype=int)
    if len(y) < k:
        raise TooFewRows(f"{len(y)} rows cannot fill {k} folds")
    rng = np.random.default_rng(seed)
    order = np.concatenate([rng.permutation(np.flatnonzero(y == c)) for c in (0, 1)])
    folds = np.empty(len(y), dtype=int)
    folds[order] = np.arange(len(y)) % k
    return folds


def cross_validate(fm: FeatureMatrix, spec: ClassifierSpec, k: int = 10, seed: int = 0) -> EvalReport:
    folds = stratified_folds(fm.y, k, seed)
    predictions = np.zeros(fm.n_rows, dtype=int)
    fold_cms, t_train, t_test = [], 0.0, 0.0
    for f in range(k):
        test = folds == f
        start = time.perf_counter()
        model = train(spec, fm.rows(~test))
        mid = time.perf_counter()
        predictions[test] = model.predict(fm.X[test])
        t_train += mid - start
        t_test += time.perf_counter() - mid
        fold_cms.append(ConfusionMatrix.from_predictions(fm.y[test], predictions[test]))
    report = metrics(sum(fold_cms, ConfusionMatrix()))
    report.folds = fold_cms
    report.train_seconds, report.test_seconds = t_train, t_test
    report.predictions = predictions
    return report


# -- combination -----------------------------------------------------------------------

MODES = ("and", "or", "vote", "stack")
DEFAULT_CLASSES = ("IU", "IC", "E")


def combine_predictions(base: np.ndarray, mode: str) -> np.ndarray:
    """Rule-based combination of a (3, n) 0/1 array of base predictions."""
    base = np.asarray(base, dtype=int)
    if base.shape[0] != 3:
        raise ModelCountMismatch(f"expected 3 base predictions, got {base.shape[0]}")
    votes = base.sum(axis=0)
    if mode == "and":
        return (votes == 3).astype(int)
    if mode == "or":
        return (votes >= 1).astype(int)
    if mode == "vote":
        return (votes >= 2).astype(int)
    raise ValueError(f"mode {mode!r} is not a rule; use one of and, or, vote")


@dataclass
class CombinationReport:
    mode: str
    report: EvalReport
    base_reports: list[EvalReport]
    base_predictions: np.ndarray  # (3, n) out-of-fold
    combined_predictions: np.ndarray


def _base_predict(specs, classes, groups, train_fm, test_X_full):
    preds = []
    for spec, cls in zip(specs, classes):
        sub = project_classes(train_fm, [cls], groups)
        model = train(spec, sub)
        idx = [train_fm.names.index(n) for n in sub.names]
        preds.append(model.predict(test_X_full[:, idx]))
    return np.array(preds)


def _stack_meta_features(specs, classes, groups, fm: FeatureMatrix, inner_k: int, seed: int) -> np.ndarray:
    """Out-of-fold base predictions on ``fm`` (so the meta-model never sees leaked labels)."""
    folds = stratified_folds(fm.y, inner_k, seed)
    out = np.zeros((3, fm.n_rows), dtype=int)
    for f in range(inner_k):
        test = folds == f
        out[:, test] = _base_predict(specs, classes, groups, fm.rows(~test), fm.X[test])
    return out


def combine(specs, mode: str, fm: FeatureMatrix, classes=DEFAULT_CLASSES, groups: dict | None = None,
            k: int = 10, seed: int = 0, inner_k: int = 5) -> CombinationReport:
    """Cross-validate a combination of three per-class models.

    Base model ``i`` sees only the columns of ``classes[i]``.  The rule modes
    combine the three out-of-fold labels directly; ``stack`` fits a
    logistic-regression meta-model on inner out-of-fold base labels of each
    training fold.
    """
    specs, classes = list(specs), list(classes)
    if len(specs) != 3 or len(classes) != 3:
        raise ModelCountMismatch(f"combination needs exactly 3 models, got {len(specs)}")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; choose from {MODES}")
    folds = stratified_folds(fm.y, k, seed)
    base = np.zeros((3, fm.n_rows), dtype=int)
    combined = np.zeros(fm.n_rows, dtype=int)
    for f in range(k):
        test = folds == f
        train_fm = fm.rows(~test)
        base[:, test] = _base_predict(specs, classes, groups, train_fm, fm.X[test])
        if mode == "stack":
            meta_X = _stack_meta_features(specs, classes, groups, train_fm, inner_k, seed + f + 1).T
            meta = LogisticRegressionGA().fit(meta_X, train_fm.y)
            combined[test] = meta.predict(base[:, test].T)
        else:
            combined[test] = combine_predictions(base[:, test], mode)

    def report_for(pred):
        fold_cms = [ConfusionMatrix.from_predictions(fm.y[folds == f], pred[folds == f]) for f in range(k)]
        rep = metrics(sum(fold_cms, ConfusionMatrix()))
        rep.folds, rep.predictions = fold_cms, pred
        return rep

    return CombinationReport(mode, report_for(combined), [report_for(b) for b in base], base, combined)
