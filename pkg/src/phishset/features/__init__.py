"""The 87 phishing-detection features."""

from .catalog import FEATURE_NAMES, FEATURES, GROUPS, SENTINEL, feature, group_names
from .context import ExtractionResources, FeatureContext
from .extract import extract_context, extract_vector

__all__ = [
    "FEATURES", "FEATURE_NAMES", "GROUPS", "SENTINEL", "feature", "group_names",
    "ExtractionResources", "FeatureContext", "extract_context", "extract_vector",
]
