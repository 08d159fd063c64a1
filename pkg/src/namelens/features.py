"""Sparse feature extraction for full names.

Four feature families feed the classifier: raw character n-grams (with ^/$
word-boundary sentinels), Soundex codes, n-grams over Double Metaphone codes,
and non-ASCII characters. Family prefixes ("SDX:", "DM:", "NA:", none for raw
n-grams) keep the vocabulary collision-free across families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Iterable

from .dmetaphone import double_metaphone
from .errors import NotEncodableError
from .names import FullName, soundex

# A feature vector is a sparse map: vocabulary index -> non-negative weight.
FeatureVector = dict[int, float]


@dataclass(frozen=True)
class FeatureConfig:
    """Knobs for feature extraction; serialized into the model file."""

    char_ngram_min: int = 1
    char_ngram_max: int = 4
    metaphone_ngram_min: int = 1
    metaphone_ngram_max: int = 2
    metaphone_max_length: int | None = 4
    use_char_ngrams: bool = True
    use_phonetic: bool = True
    use_nonascii: bool = True
    l2_normalize: bool = True
    min_feature_count: int = 2

    def __post_init__(self):
        if not 1 <= self.char_ngram_min <= self.char_ngram_max <= 6:
            raise ValueError("char n-gram range must lie within [1, 6]")
        if not 1 <= self.metaphone_ngram_min <= self.metaphone_ngram_max <= 6:
            raise ValueError("metaphone n-gram range must lie within [1, 6]")

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: dict) -> "FeatureConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown feature config keys: {sorted(unknown)}")
        return cls(**data)


class Vocabulary:
    """Bijective feature-string -> dense index map.

    Grows on lookup until frozen; a frozen vocabulary maps unknown features to
    None instead. Indices are contiguous from 0.
    """

    def __init__(self, features: Iterable[str] = (), frozen: bool = False):
        self._index: dict[str, int] = {}
        for feat in features:
            if feat not in self._index:
                self._index[feat] = len(self._index)
        self.frozen = frozen

    def __len__(self) -> int:
        return len(self._index)

    def __contains__(self, feature: str) -> bool:
        return feature in self._index

    def lookup(self, feature: str) -> int | None:
        """Index of the feature; grows the vocabulary when not frozen."""
        idx = self._index.get(feature)
        if idx is None and not self.frozen:
            idx = len(self._index)
            self._index[feature] = idx
        return idx

    def freeze(self) -> "Vocabulary":
        self.frozen = True
        return self

    def feature_strings(self) -> list[str]:
        """All features ordered by index."""
        ordered = sorted(self._index.items(), key=lambda kv: kv[1])
        return [feat for feat, _ in ordered]


def extract_char_ngrams(name: FullName, n_range: tuple[int, int]) -> list[str]:
    """Character n-grams of every token, padded with ^ and $ sentinels.

    Occurrences are kept, not deduplicated, so repeats count.
    """
    lo, hi = n_range
    if not 1 <= lo <= hi <= 6:
        raise ValueError("n-gram range must lie within [1, 6]")
    grams = []
    for token in name.tokens():
        padded = "^" + token + "$"
        for n in range(lo, hi + 1):
            grams.extend(padded[j : j + n] for j in range(len(padded) - n + 1))
    return grams


def extract_phonetic_features(
    name: FullName,
    metaphone_n_range: tuple[int, int] = (1, 2),
    metaphone_max_length: int | None = 4,
) -> list[str]:
    """Per-token Soundex codes plus n-grams over Double Metaphone codes.

    Tokens with no encodable letters simply contribute nothing; the call never
    fails at name level.
    """
    lo, hi = metaphone_n_range
    feats = []
    for token in name.tokens():
        try:
            feats.append("SDX:" + soundex(token).primary)
        except NotEncodableError:
            continue
        code = double_metaphone(token, max_length=metaphone_max_length)
        for variant in (code.primary, code.alternate):
            if not variant:
                continue
            for n in range(lo, hi + 1):
                feats.extend("DM:" + variant[j : j + n] for j in range(len(variant) - n + 1))
    return feats


def extract_nonascii_features(name: FullName) -> list[str]:
    """One feature per distinct non-ASCII character, plus a presence flag."""
    distinct = sorted({ch for ch in name.normalized if ord(ch) > 127})
    if not distinct:
        return []
    return ["NA:" + ch for ch in distinct] + ["NA:ANY"]


def all_features(name: FullName, config: FeatureConfig) -> list[str]:
    """Concatenation of every enabled family's features for one name."""
    feats: list[str] = []
    if config.use_char_ngrams:
        feats.extend(extract_char_ngrams(name, (config.char_ngram_min, config.char_ngram_max)))
    if config.use_phonetic:
        feats.extend(
            extract_phonetic_features(
                name,
                (config.metaphone_ngram_min, config.metaphone_ngram_max),
                config.metaphone_max_length,
            )
        )
    if config.use_nonascii:
        feats.extend(extract_nonascii_features(name))
    return feats


def build_vocabulary(names: Iterable[FullName], config: FeatureConfig) -> Vocabulary:
    """Scan a corpus and index every feature seen at least min_feature_count times.

    Features are indexed in sorted order, so the vocabulary does not depend on
    corpus order. The returned vocabulary is frozen.
    """
    counts: dict[str, int] = {}
    for name in names:
        for feat in all_features(name, config):
            counts[feat] = counts.get(feat, 0) + 1
    kept = sorted(f for f, c in counts.items() if c >= config.min_feature_count)
    return Vocabulary(kept, frozen=True)


def vectorize(name: FullName, vocab: Vocabulary, config: FeatureConfig) -> FeatureVector:
    """Map a name's features through the vocabulary into a sparse count vector.

    Unknown features are dropped when the vocabulary is frozen. With
    l2_normalize on, the vector is scaled to unit Euclidean norm.
    """
    vec: FeatureVector = {}
    for feat in all_features(name, config):
        idx = vocab.lookup(feat)
        if idx is not None:
            vec[idx] = vec.get(idx, 0.0) + 1.0
    if config.l2_normalize and vec:
        norm = math.sqrt(sum(v * v for v in vec.values()))
        vec = {i: v / norm for i, v in vec.items()}
    return vec
