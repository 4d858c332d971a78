"""Filter rankings and wrapper-style feature selection."""

from .filters import (FILTERS, FeatureRanking, chi_square, contingency, discretize, information_gain, pearson,
                      rank_features, read_ranking, relief, write_ranking)
from .wrappers import (BorutaResult, SelectionResult, best_first_wrapper, boruta, consistency,
                       decremental_selection)

__all__ = [
    "FILTERS", "FeatureRanking", "chi_square", "contingency", "discretize", "information_gain", "pearson",
    "rank_features", "read_ranking", "relief", "write_ranking", "BorutaResult", "SelectionResult",
    "best_first_wrapper", "boruta", "consistency", "decremental_selection",
]
