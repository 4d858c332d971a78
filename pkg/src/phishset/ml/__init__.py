"""Classifiers, cross-validation, metrics and model combination."""

from .classifiers import (ClassifierSpec, GaussianNaiveBayes, LogisticRegressionGA, TrainedModel,
                          load_model, predict, save_model, train)
from .data import FeatureMatrix, permute_columns, project_classes
from .evaluation import (CombinationReport, ConfusionMatrix, EvalReport, combine, combine_predictions,
                         cross_validate, metrics, stratified_folds)

__all__ = [
    "ClassifierSpec", "GaussianNaiveBayes", "LogisticRegressionGA", "TrainedModel", "load_model", "predict",
    "save_model", "train", "FeatureMatrix", "permute_columns", "project_classes", "CombinationReport",
    "ConfusionMatrix", "EvalReport", "combine", "combine_predictions", "cross_validate", "metrics",
    "stratified_folds",
]
