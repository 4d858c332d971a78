"""
One model per feature class, combined
=====================================

Each base model sees only its own class of columns (URL, content, external).
Rules combine their labels; stacking learns the combination instead.
"""

import numpy as np

from phishset.ml import ClassifierSpec, FeatureMatrix, combine

rng = np.random.default_rng(1)
n = 800
y = rng.permutation(np.repeat([0, 1], n // 2))
# each class gets one weak and one moderate signal plus noise
cols, names = [], []
for cls, shifts in {"IU": (0.8, 1.5), "IC": (0.5, 1.2), "E": (1.0, 0.3)}.items():
    for j, s in enumerate(shifts):
        cols.append(s * y + rng.normal(size=n))
        names.append(f"{cls.lower()}{j}")
    cols.append(rng.normal(size=n))
    names.append(f"{cls.lower()}_noise")
fm = FeatureMatrix(np.column_stack(cols), y, names)
groups = {cls: [c for c in names if c.startswith(cls.lower())] for cls in ("IU", "IC", "E")}

specs = [ClassifierSpec("lr")] * 3
for mode in ("and", "or", "vote", "stack"):
    res = combine(specs, mode, fm, ("IU", "IC", "E"), groups, k=5)
    bases = " ".join(f"{b.accuracy:.3f}" for b in res.base_reports)
    print(f"{mode:6s} accuracy {res.report.accuracy:.3f}  recall {res.report.recall:.3f}  (bases {bases})")

# AND only flags what all three agree on, OR flags anything one of them sees
