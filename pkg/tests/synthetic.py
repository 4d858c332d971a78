"""Seeded synthetic benchmark: informative columns shifted by the label, plus pure noise."""

import numpy as np

from phishset.ml import FeatureMatrix


def make_synthetic(seed: int, n: int = 2000, informative: int = 5, noise: int = 10, shift: float = 2.0):
    rng = np.random.default_rng(seed)
    y = rng.permutation(np.repeat([0, 1], [n - n // 2, n // 2]))
    signal = shift * y[:, None] + rng.normal(size=(n, informative))
    X = np.hstack([signal, rng.normal(size=(n, noise))])
    names = [f"info{j}" for j in range(informative)] + [f"noise{j}" for j in range(noise)]
    return FeatureMatrix(X, y, names)


INFORMATIVE = {f"info{j}" for j in range(5)}
NOISE = {f"noise{j}" for j in range(10)}

# three disjoint "feature classes" over the 15 synthetic columns, for combination tests
GROUPS = {
    "IU": ["info0", "info1", "noise0", "noise1", "noise2"],
    "IC": ["info2", "info3", "noise3", "noise4", "noise5", "noise6"],
    "E": ["info4", "noise7", "noise8", "noise9"],
}


def synthetic_dataset(seed: int, n: int = 200, shift: float = 2.0):
    """An 87-column dataset with one label-shifted column in each feature class."""
    from datetime import date

    from phishset.dataset import Dataset, FeatureVector
    from phishset.features.catalog import FEATURES

    rng = np.random.default_rng(seed)
    y = rng.permutation(np.repeat([0, 1], [n - n // 2, n // 2]))
    X = np.round(rng.normal(size=(n, len(FEATURES))), 3)
    for key in ("f1", "f57", "f81"):
        j = next(i for i, f in enumerate(FEATURES) if f.key == key)
        X[:, j] = np.round(X[:, j] + shift * y, 3)
    rows = [FeatureVector(f"http://site{i}.example/", tuple(X[i]), "phishing" if y[i] else "legitimate")
            for i in range(n)]
    return Dataset(rows, date(2020, 3, 1), {"synthetic": n}, seed=seed)
