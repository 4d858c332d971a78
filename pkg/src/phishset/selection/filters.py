"""Classifier-independent feature scores: chi-square, Pearson, information
gain and Relief.

Chi-square and information gain operate on discretised columns
(equal-frequency bins); Pearson and Relief use raw values.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from ..errors import SingleClassDataset
from ..ml.data import FeatureMatrix

FILTERS = ("chi2", "pearson", "infogain", "relief")
DEFAULT_BINS = 10
RELIEF_MAX_SAMPLES = 200


def discretize(column, labels=None, bins: int = DEFAULT_BINS) -> np.ndarray:
    """Equal-frequency bin ids (0-based) for one numeric column.

    Columns with at most ``bins`` distinct values keep one bin per value.
    ``labels`` is accepted for signature symmetry and unused: the binning is
    unsupervised.
    """
    column = np.asarray(column, dtype=float)
    distinct = np.unique(column)
    if len(distinct) <= bins:
        return np.searchsorted(distinct, column)
    edges = np.unique(np.quantile(column, np.arange(1, bins) / bins))
    return np.searchsorted(edges, column, side="right")


def contingency(binned, y) -> np.ndarray:
    """bins x classes count table."""
    binned = np.asarray(binned, dtype=int)
    y = np.asarray(y, dtype=int)
    table = np.zeros((binned.max() + 1 if len(binned) else 1, 2))
    np.add.at(table, (binned, y), 1)
    return table[table.sum(axis=1) > 0]


def chi_square(binned, y) -> float:
    observed = contingency(binned, y)
    expected = observed.sum(axis=1, keepdims=True) * observed.sum(axis=0, keepdims=True) / observed.sum()
    mask = expected > 0
    return float((((observed - expected) ** 2)[mask] / expected[mask]).sum())


def entropy(counts) -> float:
    counts = np.asarray(counts, dtype=float)
    p = counts[counts > 0] / counts.sum()
    return float(-(p * np.log2(p)).sum())


def information_gain(binned, y) -> float:
    table = contingency(binned, y)
    n = table.sum()
    conditional = sum(row.sum() / n * entropy(row) for row in table)
    return max(0.0, entropy(table.sum(axis=0)) - conditional)


def pearson(column, y) -> float:
    column = np.asarray(column, dtype=float)
    y = np.asarray(y, dtype=float)
    xc, yc = column - column.mean(), y - y.mean()
    denom = np.sqrt((xc ** 2).sum() * (yc ** 2).sum())
    return float(min(1.0, abs((xc * yc).sum()) / denom)) if denom > 0 else 0.0


def relief(X, y, m: int | None = None, seed: int = 0) -> np.ndarray:
    """Two-class Relief weights with one nearest hit and one nearest miss.

    Differences are scaled by each feature's range so every weight lies in
    [-1, 1]; distances are Manhattan over the scaled features.  Distance ties
    resolve to the lowest row index.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    n, F = X.shape
    m = min(RELIEF_MAX_SAMPLES, n) if m is None else min(m, n)
    span = X.max(axis=0) - X.min(axis=0)
    scaled = np.divide(X - X.min(axis=0), span, out=np.zeros_like(X), where=span > 0)
    rng = np.random.default_rng(seed)
    weights = np.zeros(F)
    for i in rng.choice(n, size=m, replace=False):
        dist = np.abs(scaled - scaled[i]).sum(axis=1)
        dist[i] = np.inf
        same = y == y[i]
        hit = np.flatnonzero(same)[np.argmin(dist[same])] if same.sum() > 1 else None
        miss = np.flatnonzero(~same)[np.argmin(dist[~same])]
        if hit is not None:
            weights -= np.abs(scaled[i] - scaled[hit])
        weights += np.abs(scaled[i] - scaled[miss])
    return weights / m


@dataclass
class FeatureRanking:
    items: list[tuple[str, float]]
    filter: str
    params: dict = field(default_factory=dict)

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.items]

    def score(self, name: str) -> float:
        return dict(self.items)[name]

    def top(self, k: int) -> list[str]:
        return self.names[:k]


def rank_features(fm: FeatureMatrix, filter: str, bins: int = DEFAULT_BINS, m_samples: int | None = None,
                  seed: int = 0) -> FeatureRanking:
    """Score every column and sort by descending score; ties keep column order."""
    if filter not in FILTERS:
        raise ValueError(f"unknown filter {filter!r}; choose from {FILTERS}")
    if len(np.unique(fm.y)) < 2:
        raise SingleClassDataset("ranking needs both classes")
    params: dict = {}
    if filter == "relief":
        m = min(RELIEF_MAX_SAMPLES, fm.n_rows) if m_samples is None else m_samples
        scores = relief(fm.X, fm.y, m, seed)
        params = {"m_samples": m, "k": 1, "seed": seed}
    elif filter == "pearson":
        scores = np.array([pearson(fm.X[:, j], fm.y) for j in range(fm.n_features)])
    else:
        score = chi_square if filter == "chi2" else information_gain
        scores = np.array([score(discretize(fm.X[:, j], fm.y, bins), fm.y) for j in range(fm.n_features)])
        params = {"bins": bins, "binning": "equal-frequency"}
    order = sorted(range(fm.n_features), key=lambda j: (-scores[j], j))
    return FeatureRanking([(fm.names[j], float(scores[j])) for j in order], filter, params)


def write_ranking(ranking: FeatureRanking, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["rank", "feature", "score"])
        for i, (name, score) in enumerate(ranking.items, start=1):
            writer.writerow([i, name, repr(score)])


def read_ranking(path, filter: str = "file") -> FeatureRanking:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    rows.sort(key=lambda r: int(r["rank"]))
    return FeatureRanking([(r["feature"], float(r["score"])) for r in rows], filter)
