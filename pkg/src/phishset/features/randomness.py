"""Character-bigram language model used to flag randomly generated domain labels."""

from __future__ import annotations

import math
import string
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import ModelNotLoaded
from ..reference import bundled_data_dir, read_list

_ALPHABET = string.ascii_lowercase
_OTHER = len(_ALPHABET)  # digits, hyphens, anything else
_BOUNDARY = _OTHER + 1
_SIZE = _BOUNDARY + 1

MIN_LENGTH = 3
FLAGGED_FRACTION = 0.01


def _symbols(word: str) -> list[int]:
    out = [_BOUNDARY]
    for ch in word.lower():
        pos = _ALPHABET.find(ch)
        out.append(pos if pos >= 0 else _OTHER)
    out.append(_BOUNDARY)
    return out


@dataclass(frozen=True)
class BigramModel:
    log_probs: np.ndarray  # (_SIZE, _SIZE) conditional log P(next | prev)
    threshold: float

    @classmethod
    def train(cls, words, flagged_fraction: float = FLAGGED_FRACTION) -> "BigramModel":
        counts = np.ones((_SIZE, _SIZE))  # add-one smoothing
        words = [w for w in words if w]
        for w in words:
            s = _symbols(w)
            np.add.at(counts, (s[:-1], s[1:]), 1)
        log_probs = np.log(counts / counts.sum(axis=1, keepdims=True))
        model = cls(log_probs, -math.inf)
        scores = np.array([model.score(w) for w in words if len(w) >= MIN_LENGTH])
        # flag strictly below the quantile: at most `flagged_fraction` of the words
        threshold = float(np.quantile(scores, flagged_fraction, method="lower"))
        return cls(log_probs, threshold)

    def score(self, label: str) -> float:
        """Mean log-probability per transition; lower means less word-like."""
        s = _symbols(label)
        return float(self.log_probs[s[:-1], s[1:]].mean())

    def is_random(self, label: str) -> bool:
        if len(label) < MIN_LENGTH:
            return False
        return self.score(label) < self.threshold


@lru_cache(maxsize=1)
def default_model() -> BigramModel:
    path = bundled_data_dir() / "english_words.txt"
    if not path.is_file():
        raise ModelNotLoaded(f"word list missing: {path}")
    return BigramModel.train(read_list(path))
