"""Ingestion of labeled-name lists and publication records.

File formats (all UTF-8):
  * labeled names: one record per line, "name<TAB>tag" where the tag is a
    nationality (mapped through a grouping table) or a bare class code;
  * publications: one JSON object per line with exactly the fields
    title (string), authors (non-empty list of strings), year (integer in
    [1900, 2100]) and venue (string, possibly empty);
  * author labels: one record per line, "name<TAB>label".

Malformed lines never abort a load; they are collected into a rejects report
with stable line numbers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Mapping

from . import labels as lbl
from .errors import AllLinesRejectedError, EmptyNameError, FileUnreadableError
from .names import FullName, normalize

if TYPE_CHECKING:
    from .classifier import Model

YEAR_MIN = 1900
YEAR_MAX = 2100


@dataclass(frozen=True)
class LabeledName:
    """A name with ground-truth class; OTH never occurs here."""

    name: FullName
    label: str


@dataclass(frozen=True)
class PublicationRecord:
    title: str
    authors: tuple[FullName, ...]
    year: int
    venue: str


@dataclass(frozen=True)
class Reject:
    line_no: int
    reason: str


def _read_lines(path: str | Path) -> list[str]:
    try:
        return Path(path).read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise FileUnreadableError(f"cannot read {path}: {exc}") from exc


def load_labeled_names(
    path: str | Path,
    grouping: Mapping[str, str] | None = None,
) -> tuple[list[LabeledName], list[Reject]]:
    """Parse a name<TAB>tag file into labeled names plus a rejects report.

    Tags are matched case-insensitively against the grouping table (default:
    the built-in nationality table); bare class codes pass through. Raises
    AllLinesRejectedError when a non-empty file yields nothing.
    """
    table = {k.lower(): v for k, v in (grouping or lbl.NATIONALITY_TO_CLASS).items()}
    names: list[LabeledName] = []
    rejects: list[Reject] = []
    non_empty = 0
    for line_no, line in enumerate(_read_lines(path), start=1):
        if not line.strip():
            continue
        non_empty += 1
        if "\t" not in line:
            rejects.append(Reject(line_no, "no tab separator"))
            continue
        raw_name, _, raw_tag = line.partition("\t")
        tag = raw_tag.strip().lower()
        label = table.get(tag)
        if label is None and raw_tag.strip().upper() in lbl.CLASS_INDEX:
            label = raw_tag.strip().upper()
        if label is None:
            rejects.append(Reject(line_no, f"unknown tag: {raw_tag.strip()!r}"))
            continue
        if label not in lbl.CLASS_INDEX:
            rejects.append(Reject(line_no, f"tag maps outside the trained classes: {label!r}"))
            continue
        try:
            full = normalize(raw_name)
        except EmptyNameError:
            rejects.append(Reject(line_no, "name contains no letters"))
            continue
        names.append(LabeledName(name=full, label=label))
    if non_empty and not names:
        raise AllLinesRejectedError(f"no usable lines in {path}")
    return names, rejects


# Final tokens ending in 's' that are not plural nouns.
_PLURAL_STOPLIST = frozenset(
    {
        "of",
        "as",
        "its",
        "is",
        "was",
        "has",
        "this",
        "thus",
        "does",
        "news",
        "status",
        "atlas",
        "chaos",
        "census",
        "campus",
        "physics",
        "politics",
        "economics",
        "mathematics",
        "analysis",
        "series",
    }
)


def category_filter(title: str) -> bool:
    """Keep a category title that plausibly lists people.

    True when the title contains the word "people", contains the substring
    "s of", or its final token looks like a plural noun (ends in a lone 's'
    and is not a known non-plural).
    """
    lowered = title.lower()
    if "people" in lowered:
        return True
    if "s of" in lowered:
        return True
    tokens = lowered.split()
    if not tokens:
        return False
    final = tokens[-1].strip("().,;:'\"!?")
    return (
        len(final) >= 4
        and final.endswith("s")
        and not final.endswith(("ss", "us", "is"))
        and final not in _PLURAL_STOPLIST
    )


def load_publications(path: str | Path) -> tuple[list[PublicationRecord], list[Reject]]:
    """Parse a line-delimited JSON publications file; bad lines are rejected."""
    records: list[PublicationRecord] = []
    rejects: list[Reject] = []
    for line_no, line in enumerate(_read_lines(path), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            rejects.append(Reject(line_no, f"invalid JSON: {exc.msg}"))
            continue
        if not isinstance(obj, dict):
            rejects.append(Reject(line_no, "record is not an object"))
            continue
        title = obj.get("title")
        authors = obj.get("authors")
        year = obj.get("year")
        venue = obj.get("venue", "")
        if not isinstance(title, str):
            rejects.append(Reject(line_no, "missing or non-string title"))
            continue
        if not isinstance(authors, list) or not authors:
            rejects.append(Reject(line_no, "missing or empty author list"))
            continue
        if not isinstance(year, int) or isinstance(year, bool) or not YEAR_MIN <= year <= YEAR_MAX:
            rejects.append(Reject(line_no, f"year out of range [{YEAR_MIN}, {YEAR_MAX}]: {year!r}"))
            continue
        if not isinstance(venue, str):
            rejects.append(Reject(line_no, "non-string venue"))
            continue
        try:
            full_names = tuple(normalize(a) for a in authors if isinstance(a, str))
            if len(full_names) != len(authors):
                rejects.append(Reject(line_no, "non-string author name"))
                continue
        except EmptyNameError:
            rejects.append(Reject(line_no, "author name contains no letters"))
            continue
        records.append(PublicationRecord(title=title, authors=full_names, year=year, venue=venue))
    return records, rejects


def label_authors(
    records: Iterable[PublicationRecord],
    model: "Model",
    cache: dict[str, str] | None = None,
) -> dict[str, str]:
    """Classify each distinct normalized author name exactly once.

    Returns normalized name -> decided label (OTH included). A pre-seeded
    cache short-circuits names already labeled.
    """
    from .classifier import predict

    labels = dict(cache) if cache else {}
    for record in records:
        for author in record.authors:
            key = author.normalized
            if key not in labels:
                labels[key] = predict(model, author).decided
    return labels


def write_label_map(labels: Mapping[str, str], path: str | Path) -> None:
    """Write a name<TAB>label map, sorted by name for reproducibility."""
    lines = [f"{name}\t{label}" for name, label in sorted(labels.items())]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def read_label_map(path: str | Path) -> dict[str, str]:
    """Read a name<TAB>label map written by write_label_map."""
    labels: dict[str, str] = {}
    for line_no, line in enumerate(_read_lines(path), start=1):
        if not line.strip():
            continue
        if "\t" not in line:
            raise FileUnreadableError(f"{path}:{line_no}: no tab separator")
        name, _, label = line.partition("\t")
        labels[name] = label.strip()
    return labels
