"""Ethnicity label constants shared across the package.

Twelve trained classes plus OTH, the fallback assigned when no class clears
the 1/3 confidence threshold. OTH never appears in training data.
"""

# Canonical class order; used for tie-breaking and all tabular output.
CLASSES = (
    "ENG",
    "GER",
    "FRN",
    "SPA",
    "RUS",
    "ITA",
    "IND",
    "CHI",
    "JAP",
    "KOR",
    "VIE",
    "ARA",
)

OTH = "OTH"

# All labels an author can carry after classification.
ALL_LABELS = CLASSES + (OTH,)

CLASS_INDEX = {label: i for i, label in enumerate(CLASSES)}

# Default nationality tag -> class grouping for labeled-name ingestion.
# Tags are matched case-insensitively; bare class codes are also accepted.
NATIONALITY_TO_CLASS = {
    "british": "ENG",
    "english": "ENG",
    "german": "GER",
    "french": "FRN",
    "spanish": "SPA",
    "columbian": "SPA",
    "colombian": "SPA",
    "venezuelan": "SPA",
    "russian": "RUS",
    "italian": "ITA",
    "indian": "IND",
    "chinese": "CHI",
    "japanese": "JAP",
    "korean": "KOR",
    "vietnamese": "VIE",
    "egyptian": "ARA",
    "iranian": "ARA",
    "iraqi": "ARA",
    "lebanese": "ARA",
    "syrian": "ARA",
    "tunisian": "ARA",
}

# Default group split used by venue-ratio analysis. OTH belongs to neither.
ASIAN_GROUP = frozenset({"CHI", "JAP", "KOR", "VIE", "IND", "ARA"})
EUROPEAN_GROUP = frozenset({"ENG", "GER", "FRN", "SPA", "RUS", "ITA"})


def is_class(label: str) -> bool:
    """True for one of the twelve trained classes (OTH excluded)."""
    return label in CLASS_INDEX
