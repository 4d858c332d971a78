"""Numeric view of a dataset: matrix, labels and column names."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NotAPermutation, UnknownClass
from ..features.catalog import GROUPS


@dataclass(frozen=True)
class FeatureMatrix:
    X: np.ndarray
    y: np.ndarray  # 1 = phishing
    names: tuple[str, ...]
    urls: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "X", np.asarray(self.X, dtype=float))
        object.__setattr__(self, "y", np.asarray(self.y, dtype=int))
        object.__setattr__(self, "names", tuple(self.names))
        if self.X.ndim != 2 or self.X.shape != (len(self.y), len(self.names)):
            raise ValueError(f"shape {self.X.shape} does not match {len(self.y)} labels x {len(self.names)} names")

    @classmethod
    def from_dataset(cls, dataset) -> "FeatureMatrix":
        return cls(dataset.X(), dataset.y(), tuple(dataset.feature_order), tuple(dataset.urls))

    @property
    def n_rows(self) -> int:
        return self.X.shape[0]

    @property
    def n_features(self) -> int:
        return self.X.shape[1]

    def rows(self, index) -> "FeatureMatrix":
        urls = None if self.urls is None else tuple(np.asarray(self.urls, dtype=object)[index])
        return FeatureMatrix(self.X[index], self.y[index], self.names, urls)

    def columns(self, names) -> "FeatureMatrix":
        """Restrict to ``names``, in the order given."""
        pos = {n: i for i, n in enumerate(self.names)}
        missing = [n for n in names if n not in pos]
        if missing:
            raise KeyError(f"unknown columns {missing}")
        idx = [pos[n] for n in names]
        return FeatureMatrix(self.X[:, idx], self.y, tuple(names), self.urls)


def project_classes(fm: FeatureMatrix, classes, groups: dict | None = None) -> FeatureMatrix:
    """Keep the columns of the given feature classes, preserving current order.

    ``groups`` maps class name to member column names and defaults to the
    IU/IC/E split of the 87 features.
    """
    groups = groups or GROUPS
    classes = list(classes)
    if not classes:
        raise UnknownClass("empty class selection")
    wanted = set()
    for cls in classes:
        if cls not in groups:
            raise UnknownClass(cls)
        wanted.update(groups[cls])
    return fm.columns([n for n in fm.names if n in wanted])


def permute_columns(fm: FeatureMatrix, ranking) -> FeatureMatrix:
    ranking = list(ranking)
    if len(ranking) != len(fm.names) or set(ranking) != set(fm.names):
        raise NotAPermutation(f"ranking of {len(ranking)} names is not a permutation of {len(fm.names)} columns")
    return fm.columns(ranking)
