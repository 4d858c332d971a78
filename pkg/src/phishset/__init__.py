"""Phishing-detection dataset construction, feature extraction and experiments."""

from .features import FEATURE_NAMES, ExtractionResources, extract_vector
from .urls import RawUrl, parse_url

__version__ = "0.1.0"
__all__ = ["FEATURE_NAMES", "ExtractionResources", "extract_vector", "RawUrl", "parse_url"]
