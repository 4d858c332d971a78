"""The four classifiers and the trained-model container.

Trees and forests are scikit-learn estimators with fixed, documented
defaults.  Logistic regression and Gaussian naive Bayes are small in-house
implementations whose arithmetic is arranged so that permuting the input
columns cannot change a single prediction: every per-row reduction over
features sorts its terms before summing.
"""

from __future__ import annotations

import math
import pickle
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from sklearn.ensemble import RandomForestClassifier
from sklearn.tree import DecisionTreeClassifier

from ..errors import FeatureOrderMismatch, ModelNotLoaded, SingleClassDataset
from .data import FeatureMatrix

KINDS = ("decision_tree", "random_forest", "logistic_regression", "naive_bayes")
ALIASES = {"dt": "decision_tree", "rf": "random_forest", "lr": "logistic_regression", "nb": "naive_bayes"}
LABEL_NAMES = ("legitimate", "phishing")

DEFAULTS = {
    "decision_tree": {"min_samples_split": 2},
    "random_forest": {"n_estimators": 100, "min_samples_split": 2},
    "logistic_regression": {"iterations": 500, "l2": 1e-8, "learning_rate": None},
    "naive_bayes": {"var_floor": 1e-9},
}

MODEL_FORMAT = "phishset-model"
MODEL_VERSION = 1


@dataclass(frozen=True)
class ClassifierSpec:
    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        kind = ALIASES.get(self.kind, self.kind)
        if kind not in KINDS:
            raise ValueError(f"unknown classifier {self.kind!r}; choose from {KINDS + tuple(ALIASES)}")
        object.__setattr__(self, "kind", kind)

    @property
    def hyperparameters(self) -> dict:
        return {**DEFAULTS[self.kind], **self.params}


def forest_split_candidates(n_features: int) -> int:
    return min(n_features, int(math.floor(math.log2(n_features))) + 1) if n_features > 0 else 1


class LogisticRegressionGA:
    """Full-batch gradient ascent on the L2-penalised log-likelihood.

    Features are standardised with training statistics; the default step
    4/F keeps ascent stable because the Hessian norm of standardised data is
    at most F/4.
    """

    def __init__(self, iterations=500, l2=1e-8, learning_rate=None):
        self.iterations = iterations
        self.l2 = l2
        self.learning_rate = learning_rate

    def _scores(self, Z):
        terms = np.sort(Z * self.coef_, axis=1)
        return terms.sum(axis=1) + self.intercept_

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        self.mean_ = X.mean(axis=0)
        std = X.std(axis=0)
        self.scale_ = np.where(std > 0, std, 1.0)
        Z = (X - self.mean_) / self.scale_
        n, F = Z.shape
        lr = self.learning_rate or 4.0 / max(F, 1)
        self.coef_ = np.zeros(F)
        self.intercept_ = 0.0
        for _ in range(self.iterations):
            p = 1.0 / (1.0 + np.exp(-self._scores(Z)))
            r = y - p
            self.coef_ = self.coef_ + lr * ((Z * r[:, None]).sum(axis=0) / n - self.l2 * self.coef_)
            self.intercept_ += lr * r.mean()
        return self

    def decision_function(self, X):
        return self._scores((np.asarray(X, dtype=float) - self.mean_) / self.scale_)

    def predict(self, X):
        return (self.decision_function(X) > 0).astype(int)


class GaussianNaiveBayes:
    """Per-feature Gaussian class-conditionals; ties go to legitimate."""

    def __init__(self, var_floor=1e-9):
        self.var_floor = var_floor

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        self.mean_ = np.array([X[y == c].mean(axis=0) for c in (0, 1)])
        self.var_ = np.maximum(np.array([X[y == c].var(axis=0) for c in (0, 1)]), self.var_floor)
        self.log_prior_ = np.log(np.array([np.mean(y == c) for c in (0, 1)]))
        return self

    def joint_log_likelihood(self, X):
        X = np.asarray(X, dtype=float)
        out = []
        for c in (0, 1):
            terms = -0.5 * np.log(2 * np.pi * self.var_[c]) - (X - self.mean_[c]) ** 2 / (2 * self.var_[c])
            out.append(np.sort(terms, axis=1).sum(axis=1) + self.log_prior_[c])
        return np.column_stack(out)

    def predict(self, X):
        jll = self.joint_log_likelihood(X)
        return (jll[:, 1] > jll[:, 0]).astype(int)


def build_estimator(spec: ClassifierSpec, n_features: int):
    hp = spec.hyperparameters
    if spec.kind == "decision_tree":
        return DecisionTreeClassifier(criterion="gini", random_state=spec.seed, **hp)
    if spec.kind == "random_forest":
        hp = {"max_features": forest_split_candidates(n_features), **hp}
        return RandomForestClassifier(criterion="gini", bootstrap=True, random_state=spec.seed, **hp)
    if spec.kind == "logistic_regression":
        return LogisticRegressionGA(**hp)
    return GaussianNaiveBayes(**hp)


@dataclass
class TrainedModel:
    spec: ClassifierSpec
    estimator: object
    feature_names: tuple[str, ...]
    groups: dict | None = None  # feature classes the model was trained on, for reporting

    def _check(self, names):
        if names is not None and tuple(names) != self.feature_names:
            raise FeatureOrderMismatch("feature order differs from the training order")

    def predict(self, X, names=None) -> np.ndarray:
        """0/1 predictions (1 = phishing) for a matrix or :class:`FeatureMatrix`."""
        if isinstance(X, FeatureMatrix):
            names, X = X.names, X.X
        self._check(names)
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != len(self.feature_names):
            raise FeatureOrderMismatch(f"expected {len(self.feature_names)} features, got {X.shape[1]}")
        return np.asarray(self.estimator.predict(X), dtype=int)

    def predict_label(self, vector, names=None) -> str:
        return LABEL_NAMES[int(self.predict(np.asarray(vector, dtype=float)[None, :], names)[0])]

    def feature_importances(self) -> np.ndarray | None:
        return getattr(self.estimator, "feature_importances_", None)


def train(spec: ClassifierSpec, fm: FeatureMatrix) -> TrainedModel:
    if fm.n_rows == 0 or len(np.unique(fm.y)) < 2:
        raise SingleClassDataset("training needs both classes")
    estimator = build_estimator(spec, fm.n_features).fit(fm.X, fm.y)
    return TrainedModel(spec, estimator, fm.names)


def predict(model: TrainedModel, vector, names=None) -> str:
    return model.predict_label(vector, names)


def save_model(model: TrainedModel, path) -> None:
    payload = {"format": MODEL_FORMAT, "version": MODEL_VERSION, "spec": model.spec,
               "feature_names": list(model.feature_names), "groups": model.groups,
               "estimator": model.estimator}
    with open(path, "wb") as fh:
        pickle.dump(payload, fh, protocol=pickle.HIGHEST_PROTOCOL)


def load_model(path) -> TrainedModel:
    if not Path(path).exists():
        raise ModelNotLoaded(f"no model file at {path}")
    with open(path, "rb") as fh:
        payload = pickle.load(fh)
    if not isinstance(payload, dict) or payload.get("format") != MODEL_FORMAT:
        raise ModelNotLoaded(f"{path} is not a model file")
    if payload["version"] != MODEL_VERSION:
        raise ModelNotLoaded(f"{path}: unsupported model version {payload['version']}")
    return TrainedModel(payload["spec"], payload["estimator"], tuple(payload["feature_names"]), payload["groups"])
