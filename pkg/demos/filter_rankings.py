"""
Filter rankings and decremental selection
=========================================

Five columns carry the label, ten are noise.  The four filters score each
column on its own; decremental selection then drops the lowest-ranked column
one at a time and records cross-validated accuracy.
"""

import numpy as np

from phishset.ml import ClassifierSpec, FeatureMatrix
from phishset.selection import FILTERS, boruta, decremental_selection, rank_features

rng = np.random.default_rng(0)
n = 600
y = rng.permutation(np.repeat([0, 1], n // 2))
signal = 2.0 * y[:, None] + rng.normal(size=(n, 5))
X = np.hstack([signal, rng.normal(size=(n, 10))])
names = [f"info{j}" for j in range(5)] + [f"noise{j}" for j in range(10)]
fm = FeatureMatrix(X, y, names)

for name in FILTERS:
    ranking = rank_features(fm, name)
    print(f"{name:9s}", " ".join(ranking.top(6)))

# naive Bayes keeps the curve cheap to compute
ranking = rank_features(fm, "chi2")
result = decremental_selection(fm, ranking, ClassifierSpec("nb"), k_folds=5)
for k, acc in result.curve.items():
    print(f"top {k:2d}  {acc:.3f}{'  <- best' if k == result.best_k else ''}")

# Boruta asks a different question: which columns beat their own shuffled copies?
print("boruta confirmed:", boruta(fm, max_rounds=30).confirmed)
