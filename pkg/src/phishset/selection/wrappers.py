"""Classifier-in-the-loop selection: decremental curves over a ranking,
forward best-first subset search and Boruta shadow-feature testing.
"""

from __future__ import annotations

import heapq
import time
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import binomtest

from ..ml.classifiers import ClassifierSpec, train
from ..ml.data import FeatureMatrix
from ..ml.evaluation import cross_validate
from .filters import DEFAULT_BINS, FeatureRanking, discretize

EVALUATORS = ("subset-consistency", "cv-accuracy")
INNER_FOLDS = 5


@dataclass
class SelectionResult:
    selected: list[str]
    curve: dict[int, float]
    best_k: int
    method: str
    seconds: float = 0.0
    best_score: float = 0.0


def _best_k(curve: dict[int, float]) -> int:
    # highest score; among equals the smallest subset
    return min(curve, key=lambda k: (-curve[k], k))


def decremental_selection(fm: FeatureMatrix, ranking: FeatureRanking | list, spec: ClassifierSpec,
                          k_folds: int = 10, seed: int = 0) -> SelectionResult:
    """Cross-validate on the top-k ranked features for every k, dropping the
    lowest-ranked feature one at a time."""
    start = time.perf_counter()
    names = ranking.names if isinstance(ranking, FeatureRanking) else list(ranking)
    if set(names) != set(fm.names):
        raise ValueError("ranking must cover exactly the dataset's features")
    curve = {}
    for k in range(len(names), 0, -1):
        curve[k] = cross_validate(fm.columns(names[:k]), spec, k_folds, seed).accuracy
    curve = dict(sorted(curve.items()))
    best = _best_k(curve)
    method = f"decremental-{ranking.filter}" if isinstance(ranking, FeatureRanking) else "decremental"
    return SelectionResult(names[:best], curve, best, method, time.perf_counter() - start, curve[best])


# -- best-first -----------------------------------------------------------------------------

def consistency(binned: np.ndarray, y) -> float:
    """1 - fraction of rows outvoted within their group of identical projected rows."""
    if binned.shape[1] == 0:
        counts = np.bincount(y, minlength=2)
        return float(counts.max() / len(y))
    groups: dict[tuple, Counter] = {}
    for row, label in zip(map(tuple, binned), y):
        groups.setdefault(row, Counter())[label] += 1
    inconsistent = sum(sum(c.values()) - max(c.values()) for c in groups.values())
    return 1.0 - inconsistent / len(y)


def best_first_wrapper(fm: FeatureMatrix, spec: ClassifierSpec | None = None,
                       evaluator: str = "cv-accuracy", stale_limit: int = 5, seed: int = 0,
                       bins: int = DEFAULT_BINS, max_expansions: int | None = None) -> SelectionResult:
    """Forward best-first search from the empty subset.

    Each expansion pops the best open subset and scores every one-feature
    extension.  The search stops once ``stale_limit`` consecutive expansions
    failed to improve the best score (checked after each expansion), when the
    open list empties, or after ``max_expansions``.
    """
    if evaluator not in EVALUATORS:
        raise ValueError(f"unknown evaluator {evaluator!r}; choose from {EVALUATORS}")
    if evaluator == "cv-accuracy" and spec is None:
        raise ValueError("cv-accuracy needs a classifier spec")
    start = time.perf_counter()
    F = fm.n_features
    binned = np.column_stack([discretize(fm.X[:, j], fm.y, bins) for j in range(F)]) if evaluator == "subset-consistency" else None
    cache: dict[frozenset, float] = {}

    def score(subset: frozenset) -> float:
        if subset not in cache:
            cols = sorted(subset)
            if evaluator == "subset-consistency":
                cache[subset] = consistency(binned[:, cols], fm.y)
            else:
                sub = fm.columns([fm.names[j] for j in cols])
                cache[subset] = cross_validate(sub, spec, INNER_FOLDS, seed).accuracy
        return cache[subset]

    def key(subset):
        return (-cache[subset], len(subset), sorted(subset))

    open_heap: list = []
    closed: set[frozenset] = set()
    best, best_score = None, -np.inf
    frontier = frozenset()
    stale = expansions = 0
    curve: dict[int, float] = {}
    while True:
        closed.add(frontier)
        improved = False
        for j in range(F):
            if j in frontier:
                continue
            child = frontier | {j}
            if child in closed or child in cache:
                continue
            s = score(child)
            heapq.heappush(open_heap, (key(child), child))
            if s > best_score:
                best, best_score, improved = child, s, True
        expansions += 1
        stale = 0 if improved else stale + 1
        if stale >= stale_limit or (max_expansions is not None and expansions >= max_expansions):
            break
        while open_heap and open_heap[0][1] in closed:
            heapq.heappop(open_heap)
        if not open_heap:
            break
        frontier = heapq.heappop(open_heap)[1]
    for subset, s in cache.items():
        curve[len(subset)] = max(curve.get(len(subset), -np.inf), s)
    selected = [fm.names[j] for j in sorted(best)] if best is not None else []
    return SelectionResult(selected, dict(sorted(curve.items())), len(selected), f"bestfirst-{evaluator}",
                           time.perf_counter() - start, float(best_score))


# -- Boruta ---------------------------------------------------------------------------------

@dataclass
class BorutaResult:
    confirmed: list[str]
    rejected: list[str]
    tentative: list[str]
    hits: dict[str, int] = field(default_factory=dict)
    rounds: int = 0
    seconds: float = 0.0

    @property
    def selected(self) -> list[str]:
        return list(self.confirmed)


def boruta(fm: FeatureMatrix, spec: ClassifierSpec | None = None, max_rounds: int = 100,
           alpha: float = 0.05, seed: int = 0) -> BorutaResult:
    """All-relevant selection against per-round shuffled copies of every column.

    A feature scores a hit in a round when its forest importance exceeds the
    largest shadow importance.  After each round a two-sided binomial test
    (p = 1/2) decides every undecided feature: significant with more hits than
    half the rounds confirms, significant with fewer rejects.
    """
    start = time.perf_counter()
    spec = spec or ClassifierSpec("random_forest", seed=seed)
    rng = np.random.default_rng(seed)
    F = fm.n_features
    hits = np.zeros(F, dtype=int)
    status = np.zeros(F, dtype=int)  # 0 undecided, 1 confirmed, -1 rejected
    rounds = 0
    for r in range(1, max_rounds + 1):
        shadow = np.column_stack([rng.permutation(fm.X[:, j]) for j in range(F)])
        names = fm.names + tuple(f"shadow_{n}" for n in fm.names)
        round_spec = ClassifierSpec(spec.kind, spec.params, spec.seed + r)
        model = train(round_spec, FeatureMatrix(np.hstack([fm.X, shadow]), fm.y, names))
        importance = model.feature_importances()
        hits += importance[:F] > importance[F:].max()
        rounds = r
        for j in np.flatnonzero(status == 0):
            if binomtest(int(hits[j]), r, 0.5, alternative="two-sided").pvalue < alpha:
                status[j] = 1 if hits[j] > r / 2 else -1
        if not (status == 0).any():
            break
    pick = lambda s: [fm.names[j] for j in range(F) if status[j] == s]
    return BorutaResult(pick(1), pick(-1), pick(0), dict(zip(fm.names, map(int, hits))), rounds,
                        time.perf_counter() - start)
