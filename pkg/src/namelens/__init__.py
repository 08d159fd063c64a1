"""namelens: name-driven classification and bibliometric analysis.

A library and CLI that classifies personal names into twelve classes from
character and phonetic structure, and analyzes publication corpora by class:
population dynamics, fractional output, venue composition ratios, coauthor
homophily and collaboration-strength evolution.
"""

from .classifier import (
    Hyperparameters,
    Model,
    Prediction,
    evaluate,
    load_model,
    predict,
    save_model,
    split,
    train,
)
from .corpus import (
    LabeledName,
    PublicationRecord,
    category_filter,
    label_authors,
    load_labeled_names,
    load_publications,
)
from .dmetaphone import double_metaphone
from .labels import ALL_LABELS, CLASSES, OTH
from .names import FullName, PhoneticCode, normalize, soundex

__version__ = "0.1.0"

__all__ = [
    "ALL_LABELS",
    "CLASSES",
    "FullName",
    "Hyperparameters",
    "LabeledName",
    "Model",
    "OTH",
    "PhoneticCode",
    "Prediction",
    "PublicationRecord",
    "category_filter",
    "double_metaphone",
    "evaluate",
    "label_authors",
    "load_labeled_names",
    "load_model",
    "load_publications",
    "normalize",
    "predict",
    "save_model",
    "soundex",
    "split",
    "train",
]
